#include "splitci/corpus.hpp"
#include "splitci/errors.hpp"
#include "splitci/objective.hpp"
#include "splitci/random.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace splitci;

namespace {

SplitPair scalar_pair(double p1d, double p1i, double p2d, double p2i) {
  return SplitPair(SymMatrix::diagonal({p1d}), SymMatrix::diagonal({p1i}),
                   SymMatrix::diagonal({p2d}), SymMatrix::diagonal({p2i}));
}

std::vector<double> sample_ws() {
  std::vector<double> ws;
  for (int j = 0; j < 21; ++j) ws.push_back(0.01 + 0.049 * j);
  return ws;
}

TEST(SplitPair, Validation) {
  const SymMatrix i2 = SymMatrix::identity(2);
  const SymMatrix z2 = SymMatrix::zero(2);
  Matrix bad(2, 2);
  bad << 1, 2, 2, 1;
  try {
    SplitPair(SymMatrix(bad), i2, i2, i2);
    FAIL() << "indefinite P1d accepted";
  } catch (const InvalidSplitPair& e) {
    EXPECT_EQ(e.field(), "P1d");
  }
  try {
    SplitPair(i2, i2, SymMatrix::diagonal({1.0, 0.0}), SymMatrix::diagonal({1.0, 0.0}));
    FAIL() << "shared null vector accepted";
  } catch (const InvalidSplitPair& e) {
    EXPECT_EQ(e.field(), "P2d+P2i");
  }
  EXPECT_THROW(SplitPair(i2, i2, i2, SymMatrix::identity(3)), InvalidSplitPair);
  EXPECT_NO_THROW(SplitPair(z2, i2, i2, z2));
}

TEST(EvalFamily, Examples) {
  auto f = eval_family(scalar_pair(1, 0, 1, 0), 0.5);
  EXPECT_DOUBLE_EQ(f.p1(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(f.p2(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(f.p(0, 0), 1.0);

  f = eval_family(scalar_pair(1, 1, 1, 1), 0.5);
  EXPECT_DOUBLE_EQ(f.p1(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(f.p2(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(f.p(0, 0), 1.5);

  const SymMatrix a = random_pd(3, 11);
  const SymMatrix b = random_pd(3, 12);
  const SplitPair flat(SymMatrix::zero(3), a, SymMatrix::zero(3), b);
  const Matrix expected =
      (a.matrix().inverse() + b.matrix().inverse()).inverse();
  for (double w : {0.1, 0.5, 0.9}) {
    EXPECT_LT(oracle::max_abs_diff(eval_family(flat, w).p.matrix(), expected), 1e-13);
  }
}

TEST(EvalFamily, MatchesDoubleInversion) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SplitPair pair = random_split_pair(1 + seed % 5, seed);
    for (double w : {0.05, 0.37, 0.8}) {
      const Matrix naive = oracle::fused_cov_naive(pair.p1d().matrix(), pair.p1i().matrix(),
                                                   pair.p2d().matrix(), pair.p2i().matrix(), w);
      EXPECT_LT(oracle::max_abs_diff(eval_family(pair, w).p.matrix(), naive),
                1e-10 * (1.0 + naive.cwiseAbs().maxCoeff()));
    }
  }
}

TEST(EvalFamily, RejectsWOutsideOpenInterval) {
  const auto pair = scalar_pair(1, 1, 1, 1);
  EXPECT_THROW(eval_family(pair, 0.0), InvalidArgument);
  EXPECT_THROW(eval_family(pair, 1.0), InvalidArgument);
  EXPECT_THROW(logdet_objective(pair, -0.1), InvalidArgument);
  EXPECT_THROW(d1_logdet(pair, std::nan("")), InvalidArgument);
}

TEST(LogdetObjective, Examples) {
  const auto flat = scalar_pair(1, 0, 1, 0);
  for (double w : {0.1, 0.3, 0.5, 0.77}) EXPECT_NEAR(logdet_objective(flat, w), 0.0, 1e-15);
  EXPECT_NEAR(logdet_objective(scalar_pair(1, 1, 1, 1), 0.5), std::log(1.5), 1e-15);

  const SplitPair pair = random_split_pair(4, 42);
  const double w = 0.37;
  const double via_p = chol_logdet(eval_family(pair, w).p);
  EXPECT_NEAR(logdet_objective(pair, w), via_p, 1e-9 * std::abs(via_p));
}

TEST(D1Logdet, Examples) {
  const SymMatrix a = random_pd(3, 1);
  const SymMatrix b = random_pd(3, 2);
  EXPECT_NEAR(d1_logdet(SplitPair(a, b, a, b), 0.5), 0.0, 1e-13);
  EXPECT_NEAR(d1_logdet(scalar_pair(1, 0, 1, 0), 0.3), 0.0, 1e-13);

  // f(w) = ln(1+w) + ln(2-w) - ln(1+2w-2w^2) for the (1,1,1,1) pair;
  // f'(1/4) = 4/5 - 4/7 - 8/11 = -0.498701298701...
  const auto unit = scalar_pair(1, 1, 1, 1);
  const double d1 = d1_logdet(unit, 0.25);
  EXPECT_NEAR(d1, -0.49870129870129870, 1e-13);
  const double fd = oracle::central_first([&](double w) { return logdet_objective(unit, w); },
                                          0.25, 1e-7);
  EXPECT_LT(d1, 0.0);
  EXPECT_NEAR(d1, fd, 1e-5 * (1.0 + std::abs(fd)));
}

TEST(D2LogdetDirect, Examples) {
  for (double w : {0.05, 0.5, 0.9}) {
    EXPECT_NEAR(d2_logdet_direct(scalar_pair(1, 0, 1, 0), w), 0.0, 1e-9);
  }
  // f''(1/2) = 16/9 for the (1,1,1,1) pair.
  const auto unit = scalar_pair(1, 1, 1, 1);
  const double d2 = d2_logdet_direct(unit, 0.5);
  EXPECT_NEAR(d2, 16.0 / 9.0, 1e-13);
  const double fd = oracle::central_second5(
      [&](double w) { return logdet_objective(unit, w); }, 0.5, 3e-2 * 0.5);
  EXPECT_NEAR(d2, fd, 1e-4 * (1.0 + std::abs(fd)));

  const SplitPair no_dep(SymMatrix::zero(2), random_pd(2, 3), SymMatrix::zero(2), random_pd(2, 4));
  EXPECT_EQ(d2_logdet_direct(no_dep, 0.4), 0.0);
}

TEST(D2LogdetDecomposed, Examples) {
  const SplitPair p1d_zero(SymMatrix::zero(2), random_pd(2, 5), random_pd(2, 6), random_pd(2, 7));
  const double w = 0.3;
  const auto dec = d2_logdet_decomposed(p1d_zero, w);
  EXPECT_EQ(dec.t1, 0.0);
  EXPECT_EQ(dec.t3, 0.0);
  EXPECT_DOUBLE_EQ(dec.d2, dec.t2 / ((1 - w) * (1 - w)));

  // Scalar (1,0,1,0) at w = 1/2: D1 = D2 = P1 = P2 = 2, P3 = 4, so
  //   T1 = 2*(1/2)*2 - 2*(1/4)*2 - 1 + 1/4 = 1/4, T2 = 1/4,
  //   T3 = (2/4)^2 = 1/4, d2 = 1 + 1 - 2 = 0.
  const auto flat = d2_logdet_decomposed(scalar_pair(1, 0, 1, 0), 0.5);
  EXPECT_DOUBLE_EQ(flat.t1, 0.25);
  EXPECT_DOUBLE_EQ(flat.t2, 0.25);
  EXPECT_DOUBLE_EQ(flat.t3, 0.25);
  EXPECT_DOUBLE_EQ(flat.d2, 0.0);

  const SplitPair pair = random_split_pair(5, 61);
  const double direct = d2_logdet_direct(pair, 0.61);
  EXPECT_NEAR(d2_logdet_decomposed(pair, 0.61).d2, direct, 1e-8 * (1.0 + std::abs(direct)));
}

TEST(ConvexityLowerBound, Examples) {
  for (double w : {0.2, 0.5, 0.7}) {
    EXPECT_NEAR(convexity_lower_bound(scalar_pair(1, 0, 1, 0), w), 0.0, 1e-12);
  }
  const SplitPair no_dep(SymMatrix::zero(3), random_pd(3, 8), SymMatrix::zero(3), random_pd(3, 9));
  EXPECT_EQ(convexity_lower_bound(no_dep, 0.5), 0.0);

  const SplitPair pair = random_split_pair(3, 21);
  const double lb = convexity_lower_bound(pair, 0.5);
  EXPECT_GE(lb, 0.0);
  EXPECT_LE(lb, d2_logdet_direct(pair, 0.5) + 1e-7);
}

TEST(Evaluate, Examples) {
  auto ev = evaluate(scalar_pair(1, 1, 1, 1), 0.5);
  EXPECT_DOUBLE_EQ(ev.det_p, 1.5);
  EXPECT_NEAR(ev.d1, 0.0, 1e-15);

  ev = evaluate(scalar_pair(1, 0, 1, 0), 0.8);
  EXPECT_NEAR(ev.det_p, 1.0, 1e-15);
  EXPECT_NEAR(ev.d1, 0.0, 1e-12);
  EXPECT_NEAR(ev.d2_direct, 0.0, 1e-9);
  EXPECT_NEAR(ev.lower_bound, 0.0, 1e-12);
}

TEST(Evaluate, InvariantsOnSeed42Fixture) {
  const SplitPair pair = random_split_pair(3, 42);
  for (double w : sample_ws()) {
    const WEvaluation ev = evaluate(pair, w);
    for (const SymMatrix* m : {&ev.p, &ev.p1, &ev.p2, &ev.p3, &ev.b3}) {
      EXPECT_NO_THROW(chol_logdet(*m));
    }
    const double scale = 1.0 + std::abs(ev.d2_direct);
    EXPECT_LE(std::abs(ev.d2_direct - ev.d2_decomposed), 1e-8 * scale);
    EXPECT_GE(ev.d2_direct, ev.lower_bound - 1e-7 * scale);
    EXPECT_GE(ev.lower_bound, -1e-9 * scale);
    EXPECT_NEAR(ev.det_p, std::exp(ev.logdet_p), 1e-15 * ev.det_p);
    EXPECT_NEAR(ev.logdet_p, chol_logdet(ev.p), 1e-9 * (1.0 + std::abs(ev.logdet_p)));
  }
}

// Properties over the random corpus.

class ObjectiveProperties : public ::testing::TestWithParam<std::uint64_t> {
 protected:
  SplitPair pair() const {
    const std::uint64_t seed = GetParam();
    return random_split_pair(1 + static_cast<Index>(seed % 8), derive_seed(1000, seed));
  }
};

TEST_P(ObjectiveProperties, ConvexityOfLogdetAndDet) {
  const SplitPair p = pair();
  auto det = [&](double w) { return std::exp(logdet_objective(p, w)); };
  for (double w : sample_ws()) {
    const double d2 = d2_logdet_direct(p, w);
    EXPECT_GE(d2, -1e-8 * (1.0 + std::abs(d2))) << w;
    const double fd = oracle::central_second3(det, w, 0.1 * std::min(w, 1 - w));
    EXPECT_GE(fd, -1e-6 * (1.0 + det(w))) << w;
  }
}

TEST_P(ObjectiveProperties, ChainAndEquivalence) {
  const SplitPair p = pair();
  for (double w : sample_ws()) {
    const double d2 = d2_logdet_direct(p, w);
    const double lb = convexity_lower_bound(p, w);
    const double tol = 1e-7 * (1.0 + std::abs(d2));
    EXPECT_GE(d2, lb - tol) << w;
    EXPECT_GE(lb, -tol) << w;
    EXPECT_NEAR(d2_logdet_decomposed(p, w).d2, d2, 1e-8 * (1.0 + std::abs(d2))) << w;
  }
}

TEST_P(ObjectiveProperties, DerivativesMatchFiniteDifferences) {
  const SplitPair p = pair();
  auto f = [&](double w) { return logdet_objective(p, w); };
  for (double w : sample_ws()) {
    const double m = std::min(w, 1 - w);
    const double fd1 = oracle::central_first(f, w, 1e-4 * m);
    EXPECT_NEAR(d1_logdet(p, w), fd1, 1e-5 * (1.0 + std::abs(fd1))) << w;
    const double fd2 = oracle::central_second5(f, w, 3e-2 * m);
    EXPECT_NEAR(d2_logdet_direct(p, w), fd2, 1e-4 * (1.0 + std::abs(fd2))) << w;
  }
}

TEST_P(ObjectiveProperties, SwapSymmetry) {
  const SplitPair p = pair();
  const SplitPair s = p.swapped();
  for (double w : sample_ws()) {
    EXPECT_NEAR(logdet_objective(p, w), logdet_objective(s, 1.0 - w), 1e-12) << w;
  }
}

TEST_P(ObjectiveProperties, FlatWithoutDependentParts) {
  const SplitPair p = pair();
  const Index n = p.dim();
  const SplitPair flat(SymMatrix::zero(n), p.p1i() + 0.1 * SymMatrix::identity(n),
                       SymMatrix::zero(n), p.p2i() + 0.1 * SymMatrix::identity(n));
  double lo = logdet_objective(flat, 0.01);
  double hi = lo;
  for (double w : sample_ws()) {
    lo = std::min(lo, logdet_objective(flat, w));
    hi = std::max(hi, logdet_objective(flat, w));
  }
  EXPECT_LE(hi - lo, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, ObjectiveProperties, ::testing::Range<std::uint64_t>(0, 40));

}  // namespace
