#pragma once

// Riesz-Feller discrete weights on a uniform grid.
//
// The two-sided operator of order alpha and skewness theta is approximated by
//
//   D T(x_i) ~ h^-alpha * sum_k w_k T_{i+k}
//
// with one family of weights for 0 < alpha < 1 (built on a weighted
// first-derivative scheme, parameter lambda1) and another for 1 < alpha <= 2
// (weighted second-derivative scheme, parameter lambda2). The semi-infinite
// sums of the weights beyond a boundary have closed forms; those fold the
// exterior Dirichlet values into the right-hand side.

#include <cstddef>
#include <span>
#include <vector>

namespace ffdm {

/// |alpha - 1| below this is rejected outright.
inline constexpr double kSingularOrderBand = 1e-6;
/// |alpha - 1| below this is accepted but flagged as ill-conditioned.
inline constexpr double kConditioningBand = 0.005;
/// Slack on the skewness constraint so boundary values such as
/// theta = 2 - alpha survive rounding.
inline constexpr double kSkewnessSlack = 1e-12;

/// Largest admissible |theta| for a given order: min(alpha, 2 - alpha).
double max_skewness(double alpha) noexcept;

/// A validated (alpha, theta) pair. Only obtainable through validate_params.
class FractionalParams {
 public:
  double alpha() const noexcept { return alpha_; }
  double theta() const noexcept { return theta_; }

  /// True inside the conditioning band around alpha = 1.
  bool near_singular() const noexcept;
  /// Same order, opposite skewness.
  FractionalParams mirrored() const noexcept { return {alpha_, -theta_}; }

  friend bool operator==(const FractionalParams&, const FractionalParams&) = default;

 private:
  FractionalParams(double alpha, double theta) noexcept : alpha_(alpha), theta_(theta) {}
  friend FractionalParams validate_params(double alpha, double theta);

  double alpha_;
  double theta_;
};

/// Throws Error with OrderOutOfRange, OrderSingular or SkewnessOutOfRange.
FractionalParams validate_params(double alpha, double theta);

/// Weighting parameters of the underlying first/second derivative schemes.
/// lambda2 = 0 is what makes alpha = 2 collapse to the 1, -2, 1 stencil.
struct SchemeWeights {
  double lambda1 = 0.0;
  double lambda2 = 0.0;

  friend bool operator==(const SchemeWeights&, const SchemeWeights&) = default;
};

/// Throws InvalidScheme unless both lambdas are finite.
void validate_scheme(const SchemeWeights& scheme);

struct SideCoefficients {
  double left;
  double right;
};

/// cL = sin((alpha - theta) pi/2) / sin(alpha pi), cR likewise with alpha + theta.
/// At alpha = 2 the quotient is 0/0 and the limit -1/2 is returned for both.
SideCoefficients side_coefficients(const FractionalParams& params);

/// Gamma function on the positive reals. Throws DomainError for x <= 0.
double gamma_fn(double x);

/// Evaluates weights and tail sums for one (params, scheme) pair. Holds the
/// side coefficients and normalising constant so repeated evaluation costs
/// only the fractional powers.
class WeightFormula {
 public:
  WeightFormula(const FractionalParams& params, const SchemeWeights& scheme);

  /// w_k for any integer offset k.
  double operator()(long k) const;

  /// sum_{k <= -j-1} w_k. Throws IndexError for j < 1.
  double tail_left(long j) const;
  /// sum_{k >= j+1} w_k. Throws IndexError for j < 1.
  double tail_right(long j) const;

  const FractionalParams& params() const noexcept { return params_; }
  const SchemeWeights& scheme() const noexcept { return scheme_; }
  const SideCoefficients& sides() const noexcept { return sides_; }

 private:
  double power(double base) const noexcept;
  double far_bracket(long m) const noexcept;
  double tail_bracket(long j) const noexcept;

  FractionalParams params_;
  SchemeWeights scheme_;
  SideCoefficients sides_;
  bool low_order_;   // 0 < alpha < 1 branch
  double exponent_;  // 1 - alpha or 2 - alpha
  double lambda_;    // lambda1 or lambda2, whichever the branch uses
  double norm_;      // 2 * Gamma(2 - alpha) or 2 * Gamma(3 - alpha)
};

double weight(long k, const FractionalParams& params, const SchemeWeights& scheme = {});
double tail_sum_left(long j, const FractionalParams& params, const SchemeWeights& scheme = {});
double tail_sum_right(long j, const FractionalParams& params, const SchemeWeights& scheme = {});

/// Immutable table of w_k for |k| <= kmax and tail sums for 1 <= j <= kmax.
class WeightTable {
 public:
  const FractionalParams& params() const noexcept { return params_; }
  const SchemeWeights& scheme() const noexcept { return scheme_; }
  long kmax() const noexcept { return kmax_; }

  /// Unchecked in release builds; |k| <= kmax.
  double w(long k) const noexcept { return weights_[static_cast<std::size_t>(k + kmax_)]; }
  double tail_left(long j) const noexcept { return left_tails_[static_cast<std::size_t>(j - 1)]; }
  double tail_right(long j) const noexcept { return right_tails_[static_cast<std::size_t>(j - 1)]; }

  /// Weights ordered k = -kmax .. kmax.
  std::span<const double> weights() const noexcept { return weights_; }
  double max_abs_weight() const noexcept;

 private:
  WeightTable(const FractionalParams& params, const SchemeWeights& scheme, long kmax)
      : params_(params), scheme_(scheme), kmax_(kmax) {}
  friend WeightTable build_weight_table(const FractionalParams&, const SchemeWeights&, long);

  FractionalParams params_;
  SchemeWeights scheme_;
  long kmax_;
  std::vector<double> weights_;
  std::vector<double> left_tails_;
  std::vector<double> right_tails_;
};

/// Throws IndexError for kmax < 2.
WeightTable build_weight_table(const FractionalParams& params, const SchemeWeights& scheme,
                               long kmax);

}  // namespace ffdm
