#include "ffdm/discretize.hpp"

#include <cmath>
#include <string>

#include "ffdm/error.hpp"

namespace ffdm {

Domain1D::Domain1D(double left, double right, long intervals)
    : left_(left), right_(right), intervals_(intervals) {
  if (!std::isfinite(left) || !std::isfinite(right) || !(right > left)) {
    throw Error(ErrorCode::InvalidDomain, "domain needs finite endpoints with R > L");
  }
  if (intervals < 2) {
    throw Error(ErrorCode::InvalidDomain,
                "domain needs N >= 2 sub-intervals, got " + std::to_string(intervals));
  }
}

double Domain1D::node(long i) const noexcept {
  if (i == intervals_) return right_;
  return left_ + static_cast<double>(i) * step();
}

std::vector<double> build_grid(const Domain1D& domain) {
  std::vector<double> x(domain.node_count());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = domain.node(static_cast<long>(i));
  return x;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != cols_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector product size mismatch");
  }
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto r = row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> apply_rf_operator(const GridFunction& fn, const WeightTable& table,
                                      const DirichletBC& bc) {
  const long n = fn.domain.intervals();
  if (fn.values.size() != fn.domain.node_count()) {
    throw Error(ErrorCode::DimensionMismatch, "grid function must carry N + 1 values");
  }
  if (table.kmax() < n) {
    throw Error(ErrorCode::DimensionMismatch, "weight table must reach offset N");
  }
  const double scale = std::pow(fn.domain.step(), -table.params().alpha());
  std::vector<double> out(static_cast<std::size_t>(n - 1));
  for (long i = 1; i < n; ++i) {
    double acc = 0.0;
    for (long k = -i; k <= n - i; ++k) {
      acc += fn.values[static_cast<std::size_t>(i + k)] * table.w(k);
    }
    acc += bc.left * table.tail_left(i) + bc.right * table.tail_right(n - i);
    out[static_cast<std::size_t>(i - 1)] = scale * acc;
  }
  return out;
}

std::vector<double> apply_rf_operator(const GridFunction& fn, const FractionalParams& params,
                                      const SchemeWeights& scheme, const DirichletBC& bc) {
  return apply_rf_operator(fn, build_weight_table(params, scheme, fn.domain.intervals()), bc);
}

AssembledSystem assemble(const Domain1D& domain, const FractionalParams& params,
                         const SchemeWeights& scheme, const DirichletBC& bc) {
  if (!std::isfinite(bc.left) || !std::isfinite(bc.right)) {
    throw Error(ErrorCode::NonFinite, "Dirichlet values must be finite");
  }
  const long n = domain.intervals();
  const std::size_t size = domain.node_count();
  AssembledSystem sys{domain, bc, build_weight_table(params, scheme, n), DenseMatrix(size, size),
                      std::vector<double>(size, 0.0)};

  sys.matrix(0, 0) = 1.0;
  sys.rhs[0] = bc.left;
  for (long i = 1; i < n; ++i) {
    auto r = sys.matrix.row(static_cast<std::size_t>(i));
    for (long j = 0; j <= n; ++j) r[static_cast<std::size_t>(j)] = sys.weights.w(j - i);
    sys.rhs[static_cast<std::size_t>(i)] =
        -(bc.left * sys.weights.tail_left(i) + bc.right * sys.weights.tail_right(n - i));
  }
  sys.matrix(size - 1, size - 1) = 1.0;
  sys.rhs[size - 1] = bc.right;
  return sys;
}

}  // namespace ffdm
