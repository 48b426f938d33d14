#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "mallows/permutation.hpp"

using namespace mallows;

namespace {

const Permutation kExample{4, 1, 7, 3, 6, 2, 5};

std::uint64_t brute_inversions(const Permutation& p) {
  std::uint64_t count = 0;
  for (std::size_t i = 1; i <= p.size(); ++i)
    for (std::size_t j = i + 1; j <= p.size(); ++j) count += p(i) > p(j);
  return count;
}

Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 1u);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(v);
}

}  // namespace

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(Permutation({1, 1, 2}), InvalidArgument);
  EXPECT_THROW(Permutation({0, 1}), InvalidArgument);
  EXPECT_THROW(Permutation({1, 4, 2}), InvalidArgument);
  EXPECT_THROW(Permutation(std::vector<std::uint32_t>{}), InvalidArgument);
  EXPECT_THROW(Permutation::identity(0), InvalidArgument);
  EXPECT_THROW(kExample.at(8), InvalidArgument);
  EXPECT_EQ(kExample.at(3), 7u);
}

TEST(Permutation, PointSetRejectsTies) {
  EXPECT_THROW(PointSet({{0.1, 0.2}, {0.1, 0.3}}), InvalidArgument);
  EXPECT_THROW(PointSet({{0.1, 0.2}, {0.4, 0.2}}), InvalidArgument);
  EXPECT_NO_THROW(PointSet({{0.1, 0.2}, {0.4, 0.3}}));
}

TEST(Permutation, InversionNumber) {
  EXPECT_EQ(inversion_number(Permutation::identity(5)), 0u);
  EXPECT_EQ(brute_inversions(kExample), 10u);
  EXPECT_EQ(inversion_number(kExample), brute_inversions(kExample));
  EXPECT_EQ(inversion_number(Permutation{4, 3, 2, 1}), 6u);
  EXPECT_EQ(inversion_number(Permutation{1}), 0u);
}

TEST(Permutation, InversionNumberMatchesPairScan) {
  std::mt19937_64 rng(17);
  for (std::size_t n : {2u, 3u, 10u, 57u, 300u})
    for (int rep = 0; rep < 20; ++rep) {
      const auto p = random_permutation(n, rng);
      EXPECT_EQ(inversion_number(p), brute_inversions(p)) << to_string(p);
    }
}

TEST(Permutation, PointInversions) {
  EXPECT_EQ(point_inversions(points_of(kExample)), 10u);
  EXPECT_EQ(point_inversions(PointSet({{0.3, 0.4}})), 0u);
  EXPECT_EQ(point_inversions(PointSet({{0.1, 0.9}, {0.2, 0.1}})), 1u);
}

TEST(Permutation, Compose) {
  EXPECT_EQ(compose(Permutation::identity(7), kExample), kExample);
  EXPECT_EQ(compose(kExample, inverse(kExample)), Permutation::identity(7));
  EXPECT_EQ(compose(Permutation{2, 3, 1}, Permutation{1, 3, 2}), (Permutation{2, 1, 3}));
  EXPECT_THROW(compose(Permutation{1, 2}, Permutation{1, 2, 3}), InvalidArgument);
}

TEST(Permutation, Inverse) {
  EXPECT_EQ(inverse(Permutation::identity(4)), Permutation::identity(4));
  EXPECT_EQ(inverse(Permutation{3, 1, 2}), (Permutation{2, 3, 1}));
  EXPECT_EQ(inversion_number(inverse(kExample)), 10u);
  EXPECT_EQ(brute_inversions(inverse(kExample)), 10u);
}

TEST(Permutation, Reverse) {
  EXPECT_EQ(reverse(Permutation::identity(3)), (Permutation{3, 2, 1}));
  EXPECT_EQ(reverse(kExample), (Permutation{5, 2, 6, 3, 7, 1, 4}));
  EXPECT_EQ(brute_inversions(reverse(kExample)), 21u - 10u);
  EXPECT_EQ(inversion_number(reverse(kExample)), 11u);
}

TEST(Permutation, Induce) {
  EXPECT_EQ(induce(PointSet({{0.1, 0.5}, {0.2, 0.2}, {0.9, 0.7}})), (Permutation{2, 1, 3}));
  // x-order need not match storage order
  EXPECT_EQ(induce(PointSet({{0.9, 0.7}, {0.1, 0.5}, {0.2, 0.2}})), (Permutation{2, 1, 3}));
  EXPECT_EQ(induce(points_of(kExample)), kExample);
  EXPECT_THROW(induce(PointSet({})), InvalidArgument);

  const auto all = points_of(kExample);
  const auto pts = all.points();
  std::vector<Point> rest;
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (k != 3) rest.push_back(pts[k]);
  EXPECT_EQ(induce(PointSet(rest)), (Permutation{3, 1, 6, 5, 2, 4}));
}

TEST(Permutation, DeleteIndex) {
  EXPECT_EQ(delete_index(kExample, 4), (Permutation{3, 1, 6, 5, 2, 4}));
  for (std::size_t i = 1; i <= 6; ++i) EXPECT_EQ(delete_index(Permutation::identity(6), i), Permutation::identity(5));
  EXPECT_EQ(delete_index(Permutation{2, 1}, 1), Permutation{1});
  EXPECT_THROW(delete_index(Permutation{1}, 1), InvalidArgument);
  EXPECT_THROW(delete_index(kExample, 8), InvalidArgument);
}

TEST(Permutation, QNeighbors) {
  const auto q = q_neighbors(kExample, 4);
  ASSERT_EQ(q.size(), 7u);
  EXPECT_NE(std::find(q.begin(), q.end(), Permutation{3, 1, 7, 6, 5, 2, 4}), q.end());
  for (std::size_t i = 1; i <= 7; ++i) {
    const auto nb = q_neighbors(kExample, i);
    EXPECT_NE(std::find(nb.begin(), nb.end(), kExample), nb.end());
    for (std::size_t k = 0; k < nb.size(); ++k) {
      EXPECT_EQ(nb[k](i), k + 1);
      EXPECT_EQ(delete_index(nb[k], i), delete_index(kExample, i));
    }
  }
}

TEST(Permutation, InversionDelta) {
  EXPECT_EQ(inversion_delta(kExample, 4, 6), 1);
  EXPECT_EQ(inversion_number(Permutation{3, 1, 7, 6, 5, 2, 4}), 11u);
  for (std::size_t i = 1; i <= 7; ++i) EXPECT_EQ(inversion_delta(kExample, i, kExample(i)), 0);
  EXPECT_THROW(inversion_delta(kExample, 0, 1), InvalidArgument);
  EXPECT_THROW(inversion_delta(kExample, 1, 8), InvalidArgument);
}

TEST(Permutation, InversionDeltaExhaustiveS5) {
  std::vector<std::uint32_t> v{1, 2, 3, 4, 5};
  std::size_t cases = 0;
  do {
    const Permutation p(v);
    const auto base = static_cast<std::int64_t>(brute_inversions(p));
    for (std::size_t i = 1; i <= 5; ++i)
      for (std::uint32_t k = 1; k <= 5; ++k) {
        const auto tau = reinsert(p, i, k);
        ASSERT_EQ(inversion_delta(p, i, k), static_cast<std::int64_t>(brute_inversions(tau)) - base)
            << to_string(p) << " i=" << i << " k=" << k;
        ++cases;
      }
  } while (std::next_permutation(v.begin(), v.end()));
  EXPECT_EQ(cases, 120u * 25u);
}

TEST(Permutation, Restrict) {
  EXPECT_EQ(restrict_to(Permutation::identity(5), 2, 4), Permutation::identity(3));
  EXPECT_EQ(restrict_to(kExample, 1, 3), (Permutation{2, 1, 3}));
  EXPECT_EQ(restrict_to(kExample, 1, 7), kExample);
  EXPECT_THROW(restrict_to(kExample, 3, 3), InvalidArgument);
  EXPECT_THROW(restrict_to(kExample, 2, 8), InvalidArgument);
}

TEST(Permutation, TextRoundTrip) {
  EXPECT_EQ(to_string(kExample), "4,1,7,3,6,2,5");
  EXPECT_EQ(parse_permutation("4,1,7,3,6,2,5"), kExample);
  EXPECT_EQ(parse_permutation(" 2, 1 ,3"), (Permutation{2, 1, 3}));
  EXPECT_THROW(parse_permutation(""), InvalidArgument);
  EXPECT_THROW(parse_permutation("1,,2"), InvalidArgument);
  EXPECT_THROW(parse_permutation("1,2,2"), InvalidArgument);
  EXPECT_THROW(parse_permutation("1,x"), InvalidArgument);
}

TEST(Permutation, RandomizedIdentities) {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng() % 40;
    const auto p = random_permutation(n, rng);
    const auto t = random_permutation(n, rng);
    const auto l = inversion_number(p);
    EXPECT_EQ(inversion_number(inverse(p)), l);
    EXPECT_EQ(inversion_number(reverse(p)), n * (n - 1) / 2 - l);
    EXPECT_EQ(inverse(inverse(p)), p);
    EXPECT_EQ(inverse(compose(t, p)), compose(inverse(p), inverse(t)));
    EXPECT_EQ(parse_permutation(to_string(p)), p);
    const std::size_t i = 1 + rng() % n;
    const auto k = static_cast<std::uint32_t>(1 + rng() % n);
    EXPECT_EQ(inversion_delta(p, i, k),
              static_cast<std::int64_t>(inversion_number(reinsert(p, i, k))) - static_cast<std::int64_t>(l));
  }
}
