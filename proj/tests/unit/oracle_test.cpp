#include <gtest/gtest.h>

#include <cmath>

#include "ffdm/error.hpp"
#include "ffdm/oracle.hpp"

namespace ffdm {
namespace {

TEST(BruteForceTail, ClassicalOrderHasNoTail) {
  const auto p = validate_params(2.0, 0.0);
  EXPECT_EQ(bruteforce_tail_right(1, p, {}, 100), 0.0);
  EXPECT_EQ(bruteforce_tail_left(1, p, {}, 100), 0.0);
}

TEST(BruteForceTail, AgreesWithClosedForm) {
  const auto p = validate_params(1.5, 0.0);
  const long K = 1'000'000;
  const double tol = std::max(1e-8, 10.0 * std::pow(static_cast<double>(K), -1.5));
  EXPECT_NEAR(bruteforce_tail_right(2, p, {}, K), tail_sum_right(2, p, {}), tol);
  EXPECT_NEAR(bruteforce_tail_left(2, p, {}, K), tail_sum_left(2, p, {}), tol);
}

TEST(BruteForceTail, TruncationErrorShrinks) {
  for (double a : {0.5, 1.5}) {
    const auto p = validate_params(a, 0.25);
    double prev = INFINITY;
    for (long K : {1'000L, 10'000L, 100'000L}) {
      const double gap =
          std::fabs(bruteforce_tail_right(3, p, {}, K) - bruteforce_tail_right(3, p, {}, 2 * K));
      EXPECT_LT(gap, prev) << a << ' ' << K;
      prev = gap;
    }
  }
}

TEST(TailTolerance, Model) {
  EXPECT_EQ(tail_tolerance(2.0, 1'000'000), 1e-6);
  EXPECT_DOUBLE_EQ(tail_tolerance(0.25, 1'000'000), 10.0 * std::pow(1e6, -0.25));
  EXPECT_EQ(tail_tolerance(1.5, 100, 1e-3), 1e-2);
}

TEST(TailCheck, PassesAndReportsTolerance) {
  const auto r = tail_check(validate_params(0.75, -0.375), {}, 5, 200'000);
  EXPECT_TRUE(r.passed) << r.max_error << " > " << r.tolerance;
  EXPECT_EQ(r.passed, r.max_error <= r.tolerance);
  EXPECT_EQ(r.tolerance, tail_tolerance(0.75, 200'000));
}

TEST(PinnedSweep, Contents) {
  const auto s = pinned_sweep();
  ASSERT_EQ(s.size(), 21u);
  int zero = 0;
  for (const auto& p : s) {
    if (p.theta() == 0.0) ++zero;
    EXPECT_TRUE(p.theta() == 0.0 || std::fabs(p.theta()) == 0.5 * max_skewness(p.alpha()));
  }
  EXPECT_EQ(zero, 7 + 2);  // alpha = 2 contributes theta = 0 three times
}

TEST(Reduction, DefaultPasses) {
  const auto r = reduction_check();
  EXPECT_TRUE(r.passed) << r.detail;
  EXPECT_LE(r.max_error, 1e-12);
}

TEST(Reduction, NonzeroLambdaFails) {
  const auto r = reduction_check({0.0, 0.5});
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.max_error, 0.75, 1e-12);  // w_0 = (3*0.5 - 4)/2 = -1.25 instead of -2
}

TEST(Reduction, SkewnessAtClassicalOrderIsSurfaced) {
  const auto r = reduction_check({}, 0.1);
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.detail.find("SkewnessOutOfRange"), std::string::npos) << r.detail;
}

TEST(Symmetry, Examples) {
  EXPECT_TRUE(symmetry_check(validate_params(1.5, 0.3), {2.0, 1.0}, 64).passed);
  EXPECT_TRUE(symmetry_check(validate_params(0.5, 0.25), {0.0, 1.0}, 32).passed);
  const auto r = symmetry_check(validate_params(0.8, 0.0), {3.0, 3.0}, 40);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.max_error, 1e-9);
}

TEST(Convergence, ClassicalOrderIsExact) {
  const auto r = convergence_study(validate_params(2.0, 0.0), {2.0, 1.0}, {32, 64, 128, 256});
  EXPECT_TRUE(r.passed);
  ASSERT_EQ(r.series.size(), 3u);
  for (double d : r.series) EXPECT_LE(d, 1e-10);
}

TEST(Convergence, StrictlyDecreasingDifferences) {
  for (const auto& p : {validate_params(1.5, 0.0), validate_params(0.5, 0.25)}) {
    const auto r = convergence_study(p, {2.0, 1.0}, {32, 64, 128, 256});
    EXPECT_TRUE(r.passed) << p.alpha();
    ASSERT_EQ(r.series.size(), 3u);
    ASSERT_EQ(r.orders.size(), 2u);
    EXPECT_GT(r.series[0], r.series[1]);
    EXPECT_GT(r.series[1], r.series[2]);
    EXPECT_EQ(r.passed, r.max_error <= r.tolerance);
  }
}

TEST(Convergence, RejectsBadRefinement) {
  const auto p = validate_params(1.5, 0.0);
  EXPECT_THROW(convergence_study(p, {2.0, 1.0}, {32, 48, 96}), Error);
  EXPECT_THROW(convergence_study(p, {2.0, 1.0}, {32, 64}), Error);
  EXPECT_THROW(convergence_study(p, {2.0, 1.0}, {64, 32, 16}), Error);
}

}  // namespace
}  // namespace ffdm
