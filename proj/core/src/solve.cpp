#include "ffdm/solve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "ffdm/error.hpp"

namespace ffdm {

LuFactorization::LuFactorization(DenseMatrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
  const std::size_t n = lu_.rows();
  if (lu_.cols() != n) throw Error(ErrorCode::DimensionMismatch, "LU needs a square matrix");
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});

  for (std::size_t i = 0; i < n; ++i) {
    for (double v : lu_.row(i)) {
      if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::fabs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::fabs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best >= kMinPivot)) {
      throw Error(ErrorCode::SingularMatrix,
                  "pivot below 1e-300 in column " + std::to_string(k));
    }
    if (p != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
      std::swap(perm_[k], perm_[p]);
    }
    const auto pivot_row = lu_.row(k);
    const double inv = 1.0 / pivot_row[k];
    for (std::size_t i = k + 1; i < n; ++i) {
      auto r = lu_.row(i);
      const double f = r[k] * inv;
      r[k] = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) r[j] -= f * pivot_row[j];
    }
  }
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "rhs size mismatch");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = lu_.row(i);
    double acc = x[i];
    for (std::size_t j = 0; j < i; ++j) acc -= r[j] * x[j];
    x[i] = acc;
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto r = lu_.row(i);
    double acc = x[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= r[j] * x[j];
    x[i] = acc / r[i];
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "solve produced non-finite values");
  }
  return x;
}

double residual_inf(const AssembledSystem& system, std::span<const double> values) {
  const std::size_t size = system.size();
  if (values.size() != size) {
    throw Error(ErrorCode::DimensionMismatch, "residual needs N + 1 values");
  }
  const long n = static_cast<long>(size) - 1;
  const WeightTable& w = system.weights;
  double worst = std::max(std::fabs(values[0] - system.rhs[0]),
                          std::fabs(values[size - 1] - system.rhs[size - 1]));
  for (long i = 1; i < n; ++i) {
    double acc = 0.0;
    for (long j = 0; j <= n; ++j) acc += w.w(j - i) * values[static_cast<std::size_t>(j)];
    worst = std::max(worst, std::fabs(acc - system.rhs[static_cast<std::size_t>(i)]));
  }
  return worst;
}

Solution lu_solve(const AssembledSystem& system) {
  const std::size_t size = system.size();
  if (system.matrix.rows() != size || system.matrix.cols() != size || size < 3) {
    throw Error(ErrorCode::DimensionMismatch, "assembled system is not square");
  }
  const std::size_t last = size - 1;
  const double left = system.rhs[0];
  const double right = system.rhs[last];

  // Interior block with the known boundary columns moved to the right.
  const std::size_t m = size - 2;
  DenseMatrix interior(m, m);
  std::vector<double> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto src = system.matrix.row(i + 1);
    std::copy(src.begin() + 1, src.begin() + 1 + static_cast<std::ptrdiff_t>(m),
              interior.row(i).begin());
    b[i] = system.rhs[i + 1] - src[0] * left - src[last] * right;
  }

  const std::vector<double> inner = LuFactorization(std::move(interior)).solve(b);
  std::vector<double> values(size);
  values[0] = left;
  std::copy(inner.begin(), inner.end(), values.begin() + 1);
  values[last] = right;

  const double res = residual_inf(system, values);
  if (!std::isfinite(res)) throw Error(ErrorCode::NonFinite, "residual is not finite");
  return Solution{system.domain,        system.params(), system.scheme(), system.bc,
                  build_grid(system.domain), std::move(values), res};
}

Solution solve_bvp(const Domain1D& domain, const FractionalParams& params,
                   const SchemeWeights& scheme, const DirichletBC& bc) {
  return lu_solve(assemble(domain, params, scheme, bc));
}

}  // namespace ffdm
