#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "mallows/verify.hpp"

using namespace mallows;

namespace {

const CheckResult& find(const std::vector<CheckResult>& rows, const std::string& name) {
  auto it = std::find_if(rows.begin(), rows.end(), [&](const CheckResult& r) { return r.name == name; });
  if (it == rows.end()) throw std::runtime_error("missing check " + name);
  return *it;
}

}  // namespace

TEST(Verify, AllPassAtModerateSize) {
  VerifyOptions opt;
  opt.max_n = 5;
  opt.q_list = {0.5, 1.0, 2.0};
  const auto rows = run_verify(opt);
  for (const auto& r : rows) EXPECT_NE(r.status, CheckStatus::fail) << r.name << ": " << r.detail;
  EXPECT_EQ(find(rows, "sampler_exactness").status, CheckStatus::pass);
  EXPECT_EQ(find(rows, "restriction").status, CheckStatus::pass);
}

TEST(Verify, VacuousAtSizeOne) {
  VerifyOptions opt;
  opt.max_n = 1;
  opt.include_density = false;
  const auto rows = run_verify(opt);
  std::size_t skipped = 0;
  for (const auto& r : rows) {
    EXPECT_NE(r.status, CheckStatus::fail) << r.name;
    skipped += r.status == CheckStatus::skipped;
  }
  EXPECT_GT(skipped, 0u);
  EXPECT_EQ(find(rows, "reversal_inverse").status, CheckStatus::skipped);
}

TEST(Verify, CorruptedDecodeIsCaught) {
  VerifyOptions opt;
  opt.max_n = 4;
  opt.include_density = false;
  opt.corrupt_decode = true;
  const auto rows = run_verify(opt);
  EXPECT_EQ(find(rows, "sampler_exactness").status, CheckStatus::fail);
}

TEST(Verify, RejectsBadOptions) {
  VerifyOptions opt;
  opt.max_n = 10;
  EXPECT_THROW(run_verify(opt), InvalidArgument);
  opt.max_n = 0;
  EXPECT_THROW(run_verify(opt), InvalidArgument);
  opt.max_n = 3;
  opt.q_list = {0.5, -1.0};
  EXPECT_THROW(run_verify(opt), InvalidArgument);
}

TEST(Verify, DensityIdentities) {
  EXPECT_TRUE(check_density_marginals().ok());
  EXPECT_TRUE(check_log_density_pde().ok());
  EXPECT_TRUE(check_log_ratio_identity().ok());
  EXPECT_TRUE(check_scaling_identity().ok());
  EXPECT_TRUE(check_rho_marginals().ok());
  EXPECT_TRUE(check_rho_gamma_zero().ok());
}

TEST(Verify, InteriorPositionVariantIsRecordedNotGraded) {
  const auto r = check_pair_ratio_bound(5, {0.3, 1.25}, true);
  EXPECT_EQ(r.status, CheckStatus::recorded);
}
