#include "splitci/corpus.hpp"
#include "splitci/errors.hpp"
#include "splitci/fusion.hpp"
#include "splitci/random.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace splitci;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index k = 0;
  for (double x : v) out(k++) = x;
  return out;
}

SplitEstimate scalar_estimate(double x, double d, double i) {
  return {vec({x}), SymMatrix::diagonal({d}), SymMatrix::diagonal({i})};
}

SplitEstimate random_estimate(Index n, std::uint64_t seed, bool zero_d, bool zero_i) {
  NormalStream normal(derive_seed(seed, 0));
  Vector x(n);
  for (Index k = 0; k < n; ++k) x(k) = normal.next();
  const SymMatrix pd = random_pd(n, derive_seed(seed, 1));
  if (zero_d) return {x, SymMatrix::zero(n), pd};
  if (zero_i) return {x, pd, SymMatrix::zero(n)};
  return {x, random_psd(n, 1 + static_cast<Index>(seed % n), 1.0 / n, derive_seed(seed, 2)), pd};
}

void expect_split_consistent(const FusionResult& r) {
  const Matrix sum = r.fused.cov_d.matrix() + r.fused.cov_i.matrix();
  EXPECT_EQ(sum, r.p.matrix());
  EXPECT_TRUE(is_psd(r.fused.cov_d, 1e-9));
  EXPECT_TRUE(is_psd(r.fused.cov_i, 1e-9));
}

TEST(SplitCiFuse, KalmanScalar) {
  const auto r = split_ci_fuse(scalar_estimate(0, 0, 1), scalar_estimate(2, 0, 1));
  EXPECT_NEAR(r.fused.x(0), 1.0, 1e-15);
  EXPECT_NEAR(r.p(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(r.fused.cov_d(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(r.fused.cov_i(0, 0), 0.5, 1e-15);
  EXPECT_EQ(r.optimize.status, Status::Flat);
}

TEST(SplitCiFuse, IdenticalPureCiDoesNotShrink) {
  const SplitEstimate e{vec({1.0, -2.0}), random_pd(2, 5), SymMatrix::zero(2)};
  const auto r = split_ci_fuse(e, e);
  EXPECT_LE(oracle::max_abs_diff(r.fused.x, e.x), 1e-12);
  EXPECT_LE(oracle::max_abs_diff(r.p.matrix(), e.cov_d.matrix()), 1e-12);
  EXPECT_LE(oracle::max_abs_diff(r.fused.cov_d.matrix(), e.cov_d.matrix()), 1e-12);
  expect_split_consistent(r);
}

TEST(SplitCiFuse, MixedScalarComposedFromGridOracle) {
  const auto [w_grid, det_grid] = oracle::scan_min(
      [](double w) {
        const double p1 = 2.0 / w + 1.0;
        const double p2 = 1.0 / (1.0 - w) + 0.5;
        return p1 * p2 / (p1 + p2);
      },
      1e-6, 1 - 1e-6, 100001);
  auto by_hand = [](double w) {
    const double p1 = 2.0 / w + 1.0;
    const double p2 = 1.0 / (1.0 - w) + 0.5;
    const double p = p1 * p2 / (p1 + p2);
    const double x = p * (0.0 / p1 + 1.0 / p2);
    const double d = p * p * ((2.0 / w) / (p1 * p1) + (1.0 / (1.0 - w)) / (p2 * p2));
    return std::array<double, 4>{x, p, d, p - d};
  };

  const auto e1 = scalar_estimate(0, 2, 1);
  const auto e2 = scalar_estimate(1, 1, 0.5);
  const auto at_grid = fuse_at(e1, e2, w_grid);
  const auto expected_grid = by_hand(w_grid);
  EXPECT_NEAR(at_grid.fused.x(0), expected_grid[0], 1e-14);
  EXPECT_NEAR(at_grid.p(0, 0), expected_grid[1], 1e-14);
  EXPECT_NEAR(at_grid.fused.cov_d(0, 0), expected_grid[2], 1e-14);
  EXPECT_NEAR(at_grid.fused.cov_i(0, 0), expected_grid[3], 1e-14);

  const auto r = split_ci_fuse(e1, e2);
  EXPECT_NEAR(r.w, w_grid, 1e-4);
  EXPECT_LE(r.p(0, 0), det_grid + 1e-12);
  const auto expected = by_hand(r.w);
  EXPECT_NEAR(r.fused.x(0), expected[0], 1e-14);
  EXPECT_NEAR(r.fused.cov_d(0, 0), expected[2], 1e-14);
  // The fused mean moves by O(|dw|) between the two points.
  EXPECT_NEAR(r.fused.x(0), expected_grid[0], 1e-4);
}

TEST(SplitCiFuse, ErrorsName) {
  const auto e1 = scalar_estimate(0, 1, 1);
  const SplitEstimate e2{vec({0.0, 0.0}), SymMatrix::identity(2), SymMatrix::identity(2)};
  EXPECT_THROW(split_ci_fuse(e1, e2), DimensionMismatch);

  auto expect_field = [](const SplitEstimate& e, const std::string& field) {
    try {
      validate(e);
      FAIL() << "expected InvalidSplitPair for " << field;
    } catch (const InvalidSplitPair& err) {
      EXPECT_EQ(err.field(), field);
    }
  };
  expect_field({vec({0.0}), SymMatrix::diagonal({-1.0}), SymMatrix::diagonal({2.0})}, "cov_d");
  expect_field({vec({0.0}), SymMatrix::diagonal({1.0}), SymMatrix::diagonal({-1.0})}, "cov_i");
  expect_field({vec({0.0}), SymMatrix::zero(1), SymMatrix::zero(1)}, "cov_d+cov_i");
  expect_field({vec({0.0, 1.0}), SymMatrix::identity(1), SymMatrix::identity(1)}, "cov_d");
  expect_field({vec({0.0}), SymMatrix::identity(1), SymMatrix::identity(2)}, "cov_i");
  expect_field({Vector(0), SymMatrix::identity(1), SymMatrix::identity(1)}, "x");
  EXPECT_THROW(fuse_at(e1, e1, 0.0), InvalidArgument);
  EXPECT_THROW(fuse_at(e1, e1, 1.0), InvalidArgument);
}

// Properties over seeded random estimates.

class FusionProperties : public ::testing::TestWithParam<std::uint64_t> {
 protected:
  Index dim() const { return 1 + static_cast<Index>(GetParam() % 5); }
};

TEST_P(FusionProperties, ReducesToInformationFusion) {
  const auto e1 = random_estimate(dim(), derive_seed(GetParam(), 10), true, false);
  const auto e2 = random_estimate(dim(), derive_seed(GetParam(), 11), true, false);
  const auto r = split_ci_fuse(e1, e2);
  const auto ref = oracle::information_fusion(e1.x, e1.cov_i.matrix(), e2.x, e2.cov_i.matrix());
  EXPECT_LE(oracle::max_abs_diff(r.fused.x, ref.x), 1e-12);
  EXPECT_LE(oracle::max_abs_diff(r.p.matrix(), ref.p), 1e-12);
  EXPECT_LE(r.fused.cov_d.max_abs(), 1e-12);
  expect_split_consistent(r);
}

TEST_P(FusionProperties, ReducesToClassicCi) {
  const auto e1 = random_estimate(dim(), derive_seed(GetParam(), 20), false, true);
  const auto e2 = random_estimate(dim(), derive_seed(GetParam(), 21), false, true);
  const auto r = split_ci_fuse(e1, e2);
  const Matrix ref = oracle::classic_ci(e1.cov_d.matrix(), e2.cov_d.matrix(), r.w);
  EXPECT_LE(oracle::max_abs_diff(r.p.matrix(), ref), 1e-10);
  EXPECT_LE(r.fused.cov_i.max_abs(), 1e-10 * (1.0 + r.p.max_abs()));
  expect_split_consistent(r);
  for (double w : {0.2, 0.5, 0.9}) {
    const auto at = fuse_at(e1, e2, w);
    EXPECT_LE(oracle::max_abs_diff(at.p.matrix(),
                                   oracle::classic_ci(e1.cov_d.matrix(), e2.cov_d.matrix(), w)),
              1e-10);
  }
}

TEST_P(FusionProperties, SplitConsistencyAndPermutationSymmetry) {
  const auto e1 = random_estimate(dim(), derive_seed(GetParam(), 30), false, false);
  const auto e2 = random_estimate(dim(), derive_seed(GetParam(), 31), false, false);
  const auto r = split_ci_fuse(e1, e2);
  const auto s = split_ci_fuse(e2, e1);
  expect_split_consistent(r);
  expect_split_consistent(s);
  EXPECT_LE(oracle::max_abs_diff(r.fused.x, s.fused.x), 1e-9);
  EXPECT_LE(oracle::max_abs_diff(r.p.matrix(), s.p.matrix()), 1e-9);
  EXPECT_NEAR(r.w, 1.0 - s.w, 1e-9);
}

TEST_P(FusionProperties, DeterminantDominance) {
  const auto e1 = random_estimate(dim(), derive_seed(GetParam(), 40), false, false);
  const auto e2 = random_estimate(dim(), derive_seed(GetParam(), 41), false, false);
  const auto r = split_ci_fuse(e1, e2);
  const double det = oracle::cofactor_det(r.p.matrix());
  for (int k = 1; k <= 9; ++k) {
    const double w = 0.1 * k;
    const Matrix pw = oracle::fused_cov_naive(e1.cov_d.matrix(), e1.cov_i.matrix(),
                                              e2.cov_d.matrix(), e2.cov_i.matrix(), w);
    EXPECT_LE(det, oracle::cofactor_det(pw) + 1e-10) << w;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, FusionProperties, ::testing::Range<std::uint64_t>(0, 30));

}  // namespace
