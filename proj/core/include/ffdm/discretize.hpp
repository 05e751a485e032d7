#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ffdm/kernel.hpp"

namespace ffdm {

/// Uniform partition of [left, right] into `intervals` pieces.
class Domain1D {
 public:
  /// Throws InvalidDomain unless right > left (both finite) and intervals >= 2.
  Domain1D(double left, double right, long intervals);

  double left() const noexcept { return left_; }
  double right() const noexcept { return right_; }
  long intervals() const noexcept { return intervals_; }
  std::size_t node_count() const noexcept { return static_cast<std::size_t>(intervals_) + 1; }
  double step() const noexcept { return (right_ - left_) / static_cast<double>(intervals_); }
  /// x_i = left + i h, with x_N pinned to `right`.
  double node(long i) const noexcept;

 private:
  double left_;
  double right_;
  long intervals_;
};

struct DirichletBC {
  double left;
  double right;
};

struct GridFunction {
  Domain1D domain;
  std::vector<double> values;  // N + 1 nodal values
};

/// Node coordinates x_0 .. x_N.
std::vector<double> build_grid(const Domain1D& domain);

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  std::vector<double> multiply(std::span<const double> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// A . T = rhs for the bounded-domain scheme. Rows 0 and N are identity rows
/// carrying the Dirichlet values; interior row i has matrix(i, j) = w_{j-i}
/// and rhs_i = -(gL sL_i + gR sR_{N-i}), the exterior nodes being pinned to
/// the nearest boundary value.
struct AssembledSystem {
  Domain1D domain;
  DirichletBC bc;
  WeightTable weights;  // kmax = N
  DenseMatrix matrix;
  std::vector<double> rhs;

  std::size_t size() const noexcept { return rhs.size(); }
  const FractionalParams& params() const noexcept { return weights.params(); }
  const SchemeWeights& scheme() const noexcept { return weights.scheme(); }
};

/// Interior values (h^-alpha) * (sum_{k=-i}^{N-i} T_{i+k} w_k + gL sL_i + gR sR_{N-i})
/// for i = 1 .. N-1. The table must reach kmax >= N. Throws DimensionMismatch.
std::vector<double> apply_rf_operator(const GridFunction& fn, const WeightTable& table,
                                      const DirichletBC& bc);
std::vector<double> apply_rf_operator(const GridFunction& fn, const FractionalParams& params,
                                      const SchemeWeights& scheme, const DirichletBC& bc);

AssembledSystem assemble(const Domain1D& domain, const FractionalParams& params,
                         const SchemeWeights& scheme, const DirichletBC& bc);

}  // namespace ffdm
