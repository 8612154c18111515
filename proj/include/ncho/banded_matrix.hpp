#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "ncho/error.hpp"

namespace ncho {

/// Row-major dense matrix. Only used for transforms and test oracles.
class DenseMatrix
{
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill)
  {}

  static DenseMatrix identity(std::size_t n)
  {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double> column(std::size_t j) const
  {
    std::vector<double> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  DenseMatrix transposed() const
  {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b)
  {
    if (a.cols_ != b.rows_) throw DomainError("dense multiply: shape mismatch");
    DenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  double frobenius_norm() const
  {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b)
  {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("dense subtract: shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Real symmetric band matrix. Only the lower band (offsets 0..half_bandwidth)
/// is stored, so symmetry holds by construction.
class BandedSymmetricMatrix
{
 public:
  BandedSymmetricMatrix(std::size_t dim, std::size_t half_bandwidth)
      : dim_(dim), bw_(dim == 0 ? 0 : std::min(half_bandwidth, dim - 1)),
        bands_((bw_ + 1) * dim, 0.0)
  {
    if (dim == 0) throw DomainError("banded matrix: dimension must be positive");
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t half_bandwidth() const noexcept { return bw_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept
  {
    const std::size_t d = i > j ? i - j : j - i;
    return d <= bw_;
  }

  double operator()(std::size_t i, std::size_t j) const
  {
    if (i < j) std::swap(i, j);
    const std::size_t d = i - j;
    if (d > bw_) return 0.0;
    return bands_[d * dim_ + j];
  }

  void set(std::size_t i, std::size_t j, double value)
  {
    if (i < j) std::swap(i, j);
    const std::size_t d = i - j;
    if (i >= dim_) throw DomainError("banded matrix: index out of range");
    if (d > bw_) {
      if (value != 0.0) throw DomainError("banded matrix: entry outside band");
      return;
    }
    if (!std::isfinite(value)) throw DomainError("banded matrix: non-finite entry");
    bands_[d * dim_ + j] = value;
  }

  std::vector<double> multiply(std::span<const double> v) const
  {
    if (v.size() != dim_) throw DomainError("banded multiply: length mismatch");
    std::vector<double> out(dim_, 0.0);
    for (std::size_t j = 0; j < dim_; ++j) {
      out[j] += bands_[j] * v[j];
      for (std::size_t d = 1; d <= bw_ && j + d < dim_; ++d) {
        const double a = bands_[d * dim_ + j];
        out[j + d] += a * v[j];
        out[j] += a * v[j + d];
      }
    }
    return out;
  }

  DenseMatrix to_dense() const
  {
    DenseMatrix m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  double frobenius_norm() const
  {
    double s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      s += bands_[j] * bands_[j];
      for (std::size_t d = 1; d <= bw_ && j + d < dim_; ++d) s += 2.0 * bands_[d * dim_ + j] * bands_[d * dim_ + j];
    }
    return std::sqrt(s);
  }

  /// Gershgorin enclosure [lower, upper] of the spectrum.
  std::pair<double, double> gershgorin() const
  {
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      double r = 0.0;
      const std::size_t first = i > bw_ ? i - bw_ : 0;
      const std::size_t last = std::min(dim_ - 1, i + bw_);
      for (std::size_t j = first; j <= last; ++j)
        if (j != i) r += std::abs((*this)(i, j));
      const double d = (*this)(i, i);
      if (i == 0 || d - r < lo) lo = d - r;
      if (i == 0 || d + r > hi) hi = d + r;
    }
    return {lo, hi};
  }

  /// One `row col value` line per stored nonzero of the full matrix (0-based).
  void write_triplets(std::ostream& os) const
  {
    const auto old_precision = os.precision(17);
    for (std::size_t i = 0; i < dim_; ++i) {
      const std::size_t first = i > bw_ ? i - bw_ : 0;
      const std::size_t last = std::min(dim_ - 1, i + bw_);
      for (std::size_t j = first; j <= last; ++j) {
        const double v = (*this)(i, j);
        if (v != 0.0) os << i << ' ' << j << ' ' << v << '\n';
      }
    }
    os.precision(old_precision);
  }

  friend bool operator==(const BandedSymmetricMatrix&, const BandedSymmetricMatrix&) = default;

 private:
  std::size_t dim_;
  std::size_t bw_;
  std::vector<double> bands_;  // bands_[d*dim + j] = A(j+d, j)
};

}  // namespace ncho
