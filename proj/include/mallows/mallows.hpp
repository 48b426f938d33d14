#pragma once

#include "mallows/errors.hpp"
#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"
#include "mallows/sampler.hpp"
#include "mallows/quadrature.hpp"
#include "mallows/rect.hpp"
#include "mallows/density.hpp"
#include "mallows/measure.hpp"
#include "mallows/oracle.hpp"
#include "mallows/format.hpp"
#include "mallows/io.hpp"
#include "mallows/parallel.hpp"
#include "mallows/verify.hpp"
#include "mallows/experiments.hpp"
