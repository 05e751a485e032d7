#include "ffdm/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ffdm/error.hpp"

namespace ffdm {
namespace {

// sin(pi x) with the argument reduced exactly first, so the zeros at the
// integers (alpha = 1, alpha = 2) are approached without cancellation.
double sin_pi(double x) {
  double r = x - 2.0 * std::nearbyint(0.5 * x);  // r in [-1, 1], exact
  const double sign = r < 0.0 ? -1.0 : 1.0;
  r = std::fabs(r);
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(std::numbers::pi * r);
}

std::string describe(double alpha, double theta) {
  std::ostringstream os;
  os.precision(17);
  os << "(alpha=" << alpha << ", theta=" << theta << ")";
  return os.str();
}

}  // namespace

double max_skewness(double alpha) noexcept { return std::min(alpha, 2.0 - alpha); }

bool FractionalParams::near_singular() const noexcept {
  return std::fabs(alpha_ - 1.0) < kConditioningBand;
}

FractionalParams validate_params(double alpha, double theta) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 2.0) {
    throw Error(ErrorCode::OrderOutOfRange,
                "order alpha must lie in (0, 2], got " + describe(alpha, theta));
  }
  if (std::fabs(alpha - 1.0) < kSingularOrderBand) {
    throw Error(ErrorCode::OrderSingular,
                "alpha = 1 is the singular order of the Riesz-Feller operator "
                "(|alpha - 1| < 1e-6), got " +
                    describe(alpha, theta));
  }
  if (!std::isfinite(theta) || std::fabs(theta) > max_skewness(alpha) + kSkewnessSlack) {
    throw Error(ErrorCode::SkewnessOutOfRange,
                "skewness must satisfy |theta| <= min(alpha, 2 - alpha), got " +
                    describe(alpha, theta));
  }
  return FractionalParams(alpha, theta);
}

void validate_scheme(const SchemeWeights& scheme) {
  if (!std::isfinite(scheme.lambda1) || !std::isfinite(scheme.lambda2)) {
    throw Error(ErrorCode::InvalidScheme, "scheme weights lambda1, lambda2 must be finite");
  }
}

SideCoefficients side_coefficients(const FractionalParams& params) {
  const double alpha = params.alpha();
  const double theta = params.theta();
  if (alpha == 2.0) return {-0.5, -0.5};
  const double denom = sin_pi(alpha);
  return {sin_pi(0.5 * (alpha - theta)) / denom, sin_pi(0.5 * (alpha + theta)) / denom};
}

double gamma_fn(double x) {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::DomainError, "gamma_fn is defined here for x > 0 only");
  }
  return std::tgamma(x);
}

WeightFormula::WeightFormula(const FractionalParams& params, const SchemeWeights& scheme)
    : params_(params),
      scheme_(scheme),
      sides_(side_coefficients(params)),
      low_order_(params.alpha() < 1.0) {
  validate_scheme(scheme);
  const double alpha = params.alpha();
  if (low_order_) {
    exponent_ = 1.0 - alpha;
    lambda_ = scheme.lambda1;
    norm_ = 2.0 * gamma_fn(2.0 - alpha);
  } else {
    exponent_ = 2.0 - alpha;
    lambda_ = scheme.lambda2;
    norm_ = 2.0 * gamma_fn(3.0 - alpha);
  }
}

// 0^p = 0 for p > 0 and 0^0 = 1; negative bases never reach here.
double WeightFormula::power(double base) const noexcept {
  if (base == 0.0) return exponent_ == 0.0 ? 1.0 : 0.0;
  return std::pow(base, exponent_);
}

// Coefficient of the one-sided coefficient cL or cR in w_{+-m}, m >= 2.
double WeightFormula::far_bracket(long m) const noexcept {
  const double x = static_cast<double>(m);
  const double l = lambda_;
  if (low_order_) {
    return power(x + 2) * l + power(x + 1) * (2 - 3 * l) + power(x) * (3 * l - 4) +
           power(x - 1) * (2 - l);
  }
  return power(x + 2) * (2 - l) + power(x + 1) * (4 * l - 6) + power(x) * (6 - 6 * l) +
         power(x - 1) * (4 * l - 2) + power(x - 2) * (-l);
}

// r_j such that the one-sided tail equals c * r_j.
double WeightFormula::tail_bracket(long j) const noexcept {
  const double x = static_cast<double>(j);
  const double l = lambda_;
  if (low_order_) {
    return (power(x + 2) * l + power(x + 1) * (2 - 2 * l) + power(x) * (l - 2)) / norm_;
  }
  return (power(x + 2) * (2 - l) + power(x + 1) * (3 * l - 4) + power(x) * (2 - 3 * l) +
          power(x - 1) * l) /
         norm_;
}

double WeightFormula::operator()(long k) const {
  const double cl = sides_.left;
  const double cr = sides_.right;
  const double l = lambda_;
  double bracket = 0.0;
  if (k <= -2) {
    bracket = far_bracket(-k) * cl;
  } else if (k >= 2) {
    bracket = far_bracket(k) * cr;
  } else if (low_order_) {
    const double near = power(3) * l + power(2) * (2 - 3 * l) + 3 * l - 4;
    if (k == -1) bracket = near * cl + l * cr;
    if (k == 0) bracket = (power(2) * l - 3 * l + 2) * (cl + cr);
    if (k == 1) bracket = near * cr + l * cl;
  } else {
    const double near = power(3) * (2 - l) + power(2) * (4 * l - 6) - 6 * l + 6;
    if (k == -1) bracket = near * cl + (2 - l) * cr;
    if (k == 0) bracket = (power(2) * (2 - l) + 4 * l - 6) * (cl + cr);
    if (k == 1) bracket = near * cr + (2 - l) * cl;
  }
  return -bracket / norm_;
}

double WeightFormula::tail_left(long j) const {
  if (j < 1) throw Error(ErrorCode::IndexError, "tail sums are defined for j >= 1");
  return sides_.left * tail_bracket(j) + 0.0;  // no signed zeros
}

double WeightFormula::tail_right(long j) const {
  if (j < 1) throw Error(ErrorCode::IndexError, "tail sums are defined for j >= 1");
  return sides_.right * tail_bracket(j) + 0.0;
}

double weight(long k, const FractionalParams& params, const SchemeWeights& scheme) {
  return WeightFormula(params, scheme)(k);
}

double tail_sum_left(long j, const FractionalParams& params, const SchemeWeights& scheme) {
  return WeightFormula(params, scheme).tail_left(j);
}

double tail_sum_right(long j, const FractionalParams& params, const SchemeWeights& scheme) {
  return WeightFormula(params, scheme).tail_right(j);
}

double WeightTable::max_abs_weight() const noexcept {
  double m = 0.0;
  for (double w : weights_) m = std::max(m, std::fabs(w));
  return m;
}

WeightTable build_weight_table(const FractionalParams& params, const SchemeWeights& scheme,
                               long kmax) {
  if (kmax < 2) throw Error(ErrorCode::IndexError, "weight table needs kmax >= 2");
  const WeightFormula formula(params, scheme);
  WeightTable table(params, scheme, kmax);
  const auto n = static_cast<std::size_t>(kmax);
  table.weights_.resize(2 * n + 1);
  table.left_tails_.resize(n);
  table.right_tails_.resize(n);
  for (long k = -kmax; k <= kmax; ++k) {
    table.weights_[static_cast<std::size_t>(k + kmax)] = formula(k);
  }
  for (long j = 1; j <= kmax; ++j) {
    table.left_tails_[static_cast<std::size_t>(j - 1)] = formula.tail_left(j);
    table.right_tails_[static_cast<std::size_t>(j - 1)] = formula.tail_right(j);
  }
  return table;
}

}  // namespace ffdm
