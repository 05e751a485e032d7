#pragma once

#include <span>
#include <vector>

#include "ffdm/discretize.hpp"

namespace ffdm {

/// Gaussian elimination with partial pivoting, factorised once.
class LuFactorization {
 public:
  /// Throws SingularMatrix if a pivot falls below kMinPivot and NonFinite on
  /// NaN/Inf input.
  explicit LuFactorization(DenseMatrix a);

  std::vector<double> solve(std::span<const double> b) const;
  std::size_t size() const noexcept { return lu_.rows(); }

  static constexpr double kMinPivot = 1e-300;

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

struct Solution {
  Domain1D domain;
  FractionalParams params;
  SchemeWeights scheme;
  DirichletBC bc;
  std::vector<double> nodes;
  std::vector<double> values;
  double residual_inf;
};

/// max_i |(A . values - rhs)_i|, with the interior rows applied matrix-free
/// from the weight table. Throws DimensionMismatch.
double residual_inf(const AssembledSystem& system, std::span<const double> values);

/// Direct solve. The identity boundary rows are eliminated up front, so
/// values[0] and values[N] are the Dirichlet data bit for bit; the interior
/// block goes through LuFactorization.
Solution lu_solve(const AssembledSystem& system);

/// assemble + lu_solve.
Solution solve_bvp(const Domain1D& domain, const FractionalParams& params,
                   const SchemeWeights& scheme, const DirichletBC& bc);

}  // namespace ffdm
