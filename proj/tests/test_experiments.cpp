#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mallows/experiments.hpp"

using namespace mallows;

namespace {

ExperimentConfig base(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.n_list = {200};
  c.samples = 200;
  c.replicates = 2;
  c.seed = SeedSpec{123};
  return c;
}

std::string report_text(const ExperimentReport& r) { return to_json(r, false).dump() + to_csv(r); }

}  // namespace

TEST(ExperimentConfig, Validation) {
  auto c = base(ExperimentKind::m1_coordinate);
  EXPECT_NO_THROW(c.validate());
  c.n_list = {};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.n_list = {100, 50};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.n_list = {100};
  c.samples = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.samples = 10;
  c.beta = 150.0;  // q_n <= 0
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.beta = 1.0;
  c.y1 = 0.7;
  c.y2 = 0.2;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(ExperimentConfig, IndexRule) {
  auto c = base(ExperimentKind::m1_coordinate);
  c.a = 0.5;
  EXPECT_EQ(c.index_for(7), 4u);
  EXPECT_EQ(c.index_for(8), 4u);
  c.a = 0.0;
  EXPECT_EQ(c.index_for(10), 1u);
  c.a = 1.0;
  EXPECT_EQ(c.index_for(10), 10u);
}

TEST(ExperimentConfig, JsonRoundTrip) {
  const auto j = nlohmann::json::parse(R"({"kind": "m2_product", "beta": 2, "gamma": -1, "n_list": [50, 100],
      "samples": 3, "replicates": 4, "seed": 9, "mode": "anchored", "threshold": 0.2})");
  const auto c = config_from_json(j);
  EXPECT_EQ(c.kind, ExperimentKind::m2_product);
  EXPECT_EQ(c.n_list, (std::vector<std::size_t>{50, 100}));
  EXPECT_EQ(c.mode, DiscrepancyMode::anchored);
  EXPECT_EQ(c.grid_m, 10u);
  EXPECT_DOUBLE_EQ(c.effective_threshold(), 0.2);
  EXPECT_TRUE(c.effective_require_decreasing());
  const auto again = config_from_json(to_json(c));
  EXPECT_EQ(to_json(again), to_json(c));
}

TEST(ExperimentConfig, JsonErrors) {
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"kind": "m1_coordinate", "n_list": []})")),
               InvalidArgument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"kind": "nope", "n_list": [5]})")), InvalidArgument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"n_list": [5]})")), InvalidArgument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"kind": "m1_coordinate", "n_list": "x"})")),
               InvalidArgument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse("[1,2]")), InvalidArgument);
}

TEST(Experiments, MedianOf) {
  EXPECT_DOUBLE_EQ(median_of({3.0, 1.0, 2.0}), 2.0);
  EXPECT_DOUBLE_EQ(median_of({4.0, 1.0, 2.0, 3.0}), 2.5);
  EXPECT_THROW(median_of({}), InvalidArgument);
}

TEST(Experiments, M1UniformCase) {
  auto c = base(ExperimentKind::m1_coordinate);
  c.beta = 0.0;
  c.samples = 5000;
  c.n_list = {100};
  const auto rep = run_m1(c, 2);
  ASSERT_EQ(rep.rows.size(), 2u);
  // null KS: 1/n discretization plus ~1.36/sqrt(N) at the 95% level
  for (const auto& row : rep.rows) EXPECT_LT(row.statistic, 0.01 + 1.63 / std::sqrt(5000.0));
}

TEST(Experiments, DeterministicAcrossThreadCounts) {
  for (auto kind : {ExperimentKind::m1_coordinate, ExperimentKind::t1_single, ExperimentKind::covariance_decay,
                    ExperimentKind::uniform_marginal, ExperimentKind::interval_bounds}) {
    auto c = base(kind);
    c.beta = 2.0;
    c.n_list = {6, 60};
    c.samples = 50;
    c.replicates = 3;
    c.grid_m = 4;
    const std::string one = report_text(run_experiment(c, 1));
    EXPECT_EQ(one, report_text(run_experiment(c, 4))) << to_string(kind);
    EXPECT_EQ(one, report_text(run_experiment(c, 8))) << to_string(kind);
  }
}

TEST(Experiments, M2UniformAndRelabel) {
  auto c = base(ExperimentKind::m2_product);
  c.n_list = {2000};
  c.samples = 1;
  c.replicates = 4;
  c.mode = DiscrepancyMode::anchored;
  const auto rep = run_m2(c, 4);
  for (const auto& row : rep.rows) EXPECT_LT(row.statistic, 0.03);
  bool relabel = false;
  for (const auto& chk : rep.checks)
    if (chk.name == "relabel_identity") relabel = chk.pass;
  EXPECT_TRUE(relabel);
}

TEST(Experiments, T1ContrastIsWorse) {
  auto c = base(ExperimentKind::t1_single);
  c.beta = 5.0;
  c.contrast_beta = -5.0;
  c.n_list = {1000};
  c.samples = 2;
  c.replicates = 3;
  const auto rep = run_t1(c, 2);
  bool found = false;
  for (const auto& chk : rep.checks)
    if (chk.name == "contrast_density_worse") {
      found = true;
      EXPECT_TRUE(chk.pass) << chk.detail;
    }
  EXPECT_TRUE(found);
}

TEST(Experiments, CovarianceOfFullIntervalIsZero) {
  auto c = base(ExperimentKind::covariance_decay);
  c.beta = 2.0;
  c.y1 = 0.0;
  c.y2 = 1.0;
  c.n_list = {4, 5, 300};
  c.samples = 100;
  c.replicates = 1;
  const auto rep = run_covariance_decay(c, 2);
  for (const auto& row : rep.rows) EXPECT_NEAR(row.statistic, 0.0, 1e-15);
}

TEST(Experiments, CovarianceExactDecay) {
  auto c = base(ExperimentKind::covariance_decay);
  c.beta = 2.0;
  c.y1 = 0.0;
  c.y2 = 0.5;
  c.n_list = {4, 5, 6, 7};
  const auto rep = run_covariance_decay(c, 2);
  ASSERT_EQ(rep.summaries.size(), 4u);
  for (const auto& s : rep.summaries) EXPECT_TRUE(s.exact);
  EXPECT_TRUE(rep.pass());
}

TEST(Experiments, CovarianceEstimatorMatchesDefinition) {
  // four draws of (X, Y): (1,1), (1,0), (0,0), (0,0)
  const auto [cov, se] = detail::indicator_covariance(1, 1, 0, 4);
  EXPECT_DOUBLE_EQ(cov, 0.25 - 0.5 * 0.25);
  EXPECT_GT(se, 0.0);
}

TEST(Experiments, UniformMarginalMatchesOracleAtSmallN) {
  // At n = 6 the exact marginals are available, so the Monte Carlo estimates
  // of the per-index probabilities must sit within a few standard errors.
  const std::size_t n = 6;
  const double beta = 2.0, y1 = 0.2, y2 = 0.6;
  const auto d = enumerate_measure(n, BetaSchedule{beta}.q(n));
  const auto a = ValueInterval::from_real(y1, y2, n);
  auto rng = make_engine(SeedSpec{31}, 0);
  const std::size_t draws = 40000;
  std::vector<std::size_t> hits(n + 1, 0);
  for (std::size_t s = 0; s < draws; ++s) {
    const auto p = sample_mallows(BetaSchedule{beta}.params(n), rng);
    for (std::size_t i = 1; i <= n; ++i) hits[i] += a.contains(p(i));
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const double exact = exact_interval_probability(d, i, a);
    const double est = hits[i] / double(draws);
    const double se = std::sqrt(exact * (1 - exact) / draws);
    EXPECT_LT(std::abs(est - exact), 3.0 * se + 1e-12) << "i=" << i;
  }
}

TEST(Experiments, UniformMarginalAtBetaZeroIsNoise) {
  auto c = base(ExperimentKind::uniform_marginal);
  c.beta = 0.0;
  c.y1 = 0.2;
  c.y2 = 0.6;
  c.n_list = {500};
  c.samples = 4000;
  c.replicates = 1;
  const auto rep = run_uniform_marginal(c, 2);
  // 20 indices, p ≈ 0.4, sd ≈ 0.0077; 4.5 sd bound plus the 1/n lattice offset
  EXPECT_LT(rep.rows[0].statistic, 4.5 * 0.0078 + 2.0 / 500);
}

TEST(Experiments, IntervalBoundsAreWarnings) {
  auto c = base(ExperimentKind::interval_bounds);
  c.beta = 1.0;
  c.a = 0.5;
  c.y1 = 0.4;
  c.y2 = 0.6;
  c.n_list = {2000};
  c.samples = 4000;
  c.replicates = 1;
  const auto rep = run_interval_bounds(c, 2);
  ASSERT_EQ(rep.checks.size(), 1u);
  EXPECT_FALSE(rep.checks[0].hard);
  EXPECT_TRUE(rep.checks[0].pass) << rep.checks[0].detail;
  // A forced violation stays a warning.
  c.slack = 1.0;
  c.y1 = 0.0;
  c.y2 = 0.01;
  c.beta = 0.0;
  c.samples = 10;
  EXPECT_TRUE(run_interval_bounds(c, 2).pass());
}

TEST(Experiments, ReportShape) {
  auto c = base(ExperimentKind::m1_coordinate);
  c.beta = 1.0;
  c.n_list = {50, 100};
  const auto rep = run_experiment(c, 2);
  const auto j = to_json(rep);
  EXPECT_TRUE(j.contains("wall_clock_seconds"));
  EXPECT_FALSE(to_json(rep, false).contains("wall_clock_seconds"));
  EXPECT_EQ(j["config"]["schedule"], "q_n = 1 - beta/n");
  EXPECT_FALSE(j["config"].contains("threads"));
  const std::string csv = to_csv(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "kind,n,replicate,statistic,stderr,threshold,pass");
  // 2 n values x 2 replicates + 2 median rows + header
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
}
