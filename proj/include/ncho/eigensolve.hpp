#pragma once

// Symmetric band eigensolver: Givens band-to-tridiagonal reduction, implicit
// QL on the tridiagonal, Sturm-sequence bisection as an independent check,
// and banded inverse iteration for eigenvectors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncho/banded_matrix.hpp"
#include "ncho/error.hpp"
#include "ncho/operator.hpp"
#include "ncho/params.hpp"

namespace ncho {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Tridiagonal
{
  std::vector<double> diag;
  std::vector<double> offdiag;  // offdiag[i] couples i and i+1
  /// Orthogonal Z with M = Z T Z^T. Empty unless accumulation was requested.
  DenseMatrix transform;
};

namespace detail {

/// Symmetric working copy with one extra band to hold the bulge.
class BandWork
{
 public:
  BandWork(const BandedSymmetricMatrix& m)
      : n_(m.dim()), w_(m.half_bandwidth() + 1), a_((w_ + 1) * n_, 0.0)
  {
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t d = 0; d <= m.half_bandwidth() && j + d < n_; ++d) a_[d * n_ + j] = m(j + d, j);
  }

  double get(std::size_t i, std::size_t j) const
  {
    if (i < j) std::swap(i, j);
    return i - j > w_ ? 0.0 : a_[(i - j) * n_ + j];
  }

  void put(std::size_t i, std::size_t j, double v)
  {
    if (i < j) std::swap(i, j);
    if (i - j > w_) {
      if (v != 0.0) throw SolverError("band reduction: fill outside working band");
      return;
    }
    a_[(i - j) * n_ + j] = v;
  }

  /// A <- R A R^T for the rotation R acting on rows (p, q) as [[c, s], [-s, c]].
  void rotate(std::size_t p, std::size_t q, double c, double s)
  {
    const std::size_t lo = p > w_ ? p - w_ : 0;
    const std::size_t hi = std::min(n_ - 1, q + w_);
    for (std::size_t m = lo; m <= hi; ++m) {
      if (m == p || m == q) continue;
      const double xp = get(p, m);
      const double xq = get(q, m);
      if (xp == 0.0 && xq == 0.0) continue;
      put(p, m, c * xp + s * xq);
      put(q, m, -s * xp + c * xq);
    }
    const double app = get(p, p), aqq = get(q, q), apq = get(p, q);
    put(p, p, c * c * app + 2.0 * c * s * apq + s * s * aqq);
    put(q, q, s * s * app - 2.0 * c * s * apq + c * c * aqq);
    put(p, q, c * s * (aqq - app) + (c * c - s * s) * apq);
  }

  std::size_t dim() const { return n_; }

 private:
  std::size_t n_;
  std::size_t w_;
  std::vector<double> a_;
};

inline void apply_to_transform(DenseMatrix& z, std::size_t p, std::size_t q, double c, double s)
{
  for (std::size_t k = 0; k < z.rows(); ++k) {
    const double zp = z(k, p), zq = z(k, q);
    z(k, p) = c * zp + s * zq;
    z(k, q) = -s * zp + c * zq;
  }
}

}  // namespace detail

/// Orthogonal reduction of a symmetric band matrix to tridiagonal form by
/// Givens rotations with bulge chasing.
inline Tridiagonal tridiagonalize(const BandedSymmetricMatrix& m, bool accumulate = true)
{
  const std::size_t n = m.dim();
  const std::size_t b = m.half_bandwidth();
  detail::BandWork work(m);
  Tridiagonal out;
  if (accumulate) out.transform = DenseMatrix::identity(n);

  // Zero `row` in column `col` using the entry just above it; returns false if nothing to do.
  auto eliminate = [&](std::size_t row, std::size_t col) {
    const double x = work.get(row - 1, col);
    const double y = work.get(row, col);
    if (y == 0.0) return false;
    const double h = std::hypot(x, y);
    const double c = x / h, s = y / h;
    work.rotate(row - 1, row, c, s);
    work.put(row, col, 0.0);
    if (accumulate) detail::apply_to_transform(out.transform, row - 1, row, c, s);
    return true;
  };

  if (b >= 2) {
    for (std::size_t j = 0; j + 2 < n; ++j) {
      for (std::size_t k = std::min(b, n - 1 - j); k >= 2; --k) {
        const std::size_t q = j + k;
        if (!eliminate(q, j)) continue;
        // The rotation leaves a bulge at (q + b, q - 1); chase it off the end.
        std::size_t col = q - 1;
        std::size_t row = q + b;
        while (row < n) {
          if (!eliminate(row, col)) break;
          col = row - 1;
          row += b;
        }
      }
    }
  }

  out.diag.resize(n);
  out.offdiag.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) out.diag[i] = work.get(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) out.offdiag[i] = work.get(i + 1, i);
  return out;
}

struct TridiagonalEigen
{
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // columns, empty unless requested
};

/// All eigenvalues (and optionally eigenvectors) of a symmetric tridiagonal
/// matrix by the implicit-shift QL method.
inline TridiagonalEigen eigen_tridiagonal(std::span<const double> diag, std::span<const double> offdiag,
                                          bool want_vectors, int max_sweeps = 50)
{
  const std::size_t n = diag.size();
  if (n == 0) throw DomainError("eigen_tridiagonal: empty matrix");
  if (offdiag.size() + 1 != n) throw DomainError("eigen_tridiagonal: offdiag must have length n-1");

  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  DenseMatrix z = want_vectors ? DenseMatrix::identity(n) : DenseMatrix{};

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m == l) break;
      if (iter++ == max_sweeps) {
        throw SolverError("eigen_tridiagonal: no convergence for eigenvalue " + std::to_string(l), l,
                          {d[l] - std::abs(e[l]), d[l] + std::abs(e[l])});
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(m) - 1; i >= static_cast<std::ptrdiff_t>(l); --i) {
        const auto iu = static_cast<std::size_t>(i);
        const double f = s * e[iu];
        const double bb = c * e[iu];
        r = std::hypot(f, g);
        e[iu + 1] = r;
        if (r == 0.0) {
          d[iu + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[iu + 1] - p;
        r = (d[iu] - g) * s + 2.0 * c * bb;
        p = s * r;
        d[iu + 1] = g + p;
        g = c * r - bb;
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double fz = z(k, iu + 1);
            z(k, iu + 1) = s * z(k, iu) + c * fz;
            z(k, iu) = c * z(k, iu) - s * fz;
          }
        }
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  TridiagonalEigen out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = d[order[i]];
  if (want_vectors) {
    out.vectors = DenseMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = z(k, order[j]);
  }
  return out;
}

/// Number of eigenvalues of the tridiagonal matrix strictly below x.
inline std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x)
{
  const std::size_t n = diag.size();
  double emax = 1.0;
  for (double v : offdiag) emax = std::max(emax, v * v);
  const double pivmin = std::numeric_limits<double>::min() * emax;
  std::size_t count = 0;
  double q = diag[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    q = diag[i] - x - offdiag[i - 1] * offdiag[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

inline std::pair<double, double> gershgorin(std::span<const double> diag, std::span<const double> offdiag)
{
  const std::size_t n = diag.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(offdiag[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  return {lo, hi};
}

/// Lowest k eigenvalues of a tridiagonal matrix by Sturm-count bisection,
/// each to within `tol` (or to floating-point resolution, whichever is larger).
inline std::vector<double> sturm_bisection(std::span<const double> diag, std::span<const double> offdiag,
                                           std::size_t k, double tol)
{
  const std::size_t n = diag.size();
  if (!(tol > 0.0)) throw DomainError("sturm_bisection: tol must be positive");
  if (n == 0 || offdiag.size() + 1 != n) throw DomainError("sturm_bisection: inconsistent lengths");
  if (k > n) throw DomainError("sturm_bisection: k exceeds dimension");

  auto [glo, ghi] = gershgorin(diag, offdiag);
  const double pad = 2.0 * kEps * std::max(std::abs(glo), std::abs(ghi)) + std::numeric_limits<double>::min();
  glo -= pad;
  ghi += pad;

  std::vector<double> out(k);
  double floor = glo;
  for (std::size_t j = 0; j < k; ++j) {
    double lo = floor, hi = ghi;
    for (;;) {
      const double mid = lo + 0.5 * (hi - lo);
      if (hi - lo <= tol || mid <= lo || mid >= hi) break;
      if (sturm_count(diag, offdiag, mid) > j) hi = mid;
      else lo = mid;
    }
    out[j] = lo + 0.5 * (hi - lo);
    floor = lo;  // eigenvalue j+1 >= eigenvalue j > lo
  }
  return out;
}

namespace detail {

/// LU factorisation with partial pivoting of (M - shift I) for a band matrix.
class BandLU
{
 public:
  BandLU(const BandedSymmetricMatrix& m, double shift)
      : n_(m.dim()), b_(m.half_bandwidth()), w_(3 * b_ + 1), a_(n_ * w_, 0.0), piv_(n_)
  {
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t first = i > b_ ? i - b_ : 0;
      const std::size_t last = std::min(n_ - 1, i + b_);
      for (std::size_t j = first; j <= last; ++j) at(i, j) = m(i, j) - (i == j ? shift : 0.0);
    }
    const double tiny = kEps * std::max(1.0, m.frobenius_norm());
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t rlast = std::min(n_ - 1, k + b_);
      const std::size_t clast = std::min(n_ - 1, k + 2 * b_);
      std::size_t p = k;
      for (std::size_t r = k + 1; r <= rlast; ++r)
        if (std::abs(at(r, k)) > std::abs(at(p, k))) p = r;
      piv_[k] = p;
      if (p != k)
        for (std::size_t j = k; j <= clast; ++j) std::swap(at(k, j), at(p, j));
      if (std::abs(at(k, k)) < tiny) at(k, k) = std::copysign(tiny, at(k, k) == 0.0 ? 1.0 : at(k, k));
      for (std::size_t r = k + 1; r <= rlast; ++r) {
        const double l = at(r, k) / at(k, k);
        at(r, k) = l;
        if (l == 0.0) continue;
        for (std::size_t j = k + 1; j <= clast; ++j) at(r, j) -= l * at(k, j);
      }
    }
  }

  void solve(std::vector<double>& x) const
  {
    for (std::size_t k = 0; k < n_; ++k) {
      std::swap(x[k], x[piv_[k]]);
      const std::size_t rlast = std::min(n_ - 1, k + b_);
      for (std::size_t r = k + 1; r <= rlast; ++r) x[r] -= at(r, k) * x[k];
    }
    for (std::size_t k = n_; k-- > 0;) {
      double s = x[k];
      const std::size_t clast = std::min(n_ - 1, k + 2 * b_);
      for (std::size_t j = k + 1; j <= clast; ++j) s -= at(k, j) * x[j];
      x[k] = s / at(k, k);
    }
  }

 private:
  double& at(std::size_t i, std::size_t j) { return a_[i * w_ + (j + b_ - i)]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * w_ + (j + b_ - i)]; }

  std::size_t n_, b_, w_;
  std::vector<double> a_;
  std::vector<std::size_t> piv_;
};

inline double dot(std::span<const double> a, std::span<const double> b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace detail

/// ||M v - lambda v||_2
inline double residual_norm(const BandedSymmetricMatrix& m, std::span<const double> v, double lambda)
{
  auto mv = m.multiply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = mv[i] - lambda * v[i];
    s += r * r;
  }
  return std::sqrt(s);
}

/// Unit eigenvectors for the given (ascending, accurately known) eigenvalues by
/// inverse iteration on the band matrix. Vectors of close eigenvalues are
/// reorthogonalised, so degenerate eigenspaces get an orthonormal basis.
inline std::vector<std::vector<double>> inverse_iteration(const BandedSymmetricMatrix& m,
                                                          std::span<const double> eigenvalues)
{
  const std::size_t n = m.dim();
  const double scale = std::max(1.0, m.frobenius_norm());
  std::vector<std::vector<double>> out;
  out.reserve(eigenvalues.size());
  for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
    const double lambda = eigenvalues[j];
    const double cluster = 1e-3 * std::max(1.0, std::abs(lambda));
    detail::BandLU lu(m, lambda);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + j);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = uni(rng);

    for (int it = 0; it < 6; ++it) {
      lu.solve(v);
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < out.size(); ++i) {
          if (std::abs(eigenvalues[i] - lambda) > cluster) continue;
          const double c = detail::dot(out[i], v);
          for (std::size_t t = 0; t < n; ++t) v[t] -= c * out[i][t];
        }
      }
      const double nv = detail::norm2(v);
      if (!(nv > 0.0) || !std::isfinite(nv)) throw SolverError("inverse iteration broke down", j);
      for (double& x : v) x /= nv;
      if (it >= 1 && residual_norm(m, v, lambda) <= 64.0 * kEps * scale) break;
    }
    // Fix the sign so the largest component is positive (deterministic output).
    const auto big = std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    if (*big < 0.0)
      for (double& x : v) x = -x;
    out.push_back(std::move(v));
  }
  return out;
}

/// Full dense route: reduce, QL with vectors, back-transform. Eigenvectors are
/// the columns of `vectors`.
inline TridiagonalEigen dense_eigensolve(const BandedSymmetricMatrix& m)
{
  auto tri = tridiagonalize(m, true);
  auto eig = eigen_tridiagonal(tri.diag, tri.offdiag, true);
  eig.vectors = tri.transform * eig.vectors;
  return eig;
}

// ---------------------------------------------------------------------------

struct SectorVector
{
  Parity parity = Parity::Even;
  std::vector<double> coeffs;
};

struct SolveOptions
{
  double tol = 1e-10;
  std::size_t initial_levels = 64;
  std::size_t max_levels = std::size_t{1} << 14;
  bool want_vectors = true;
};

struct SpectrumResult
{
  explicit SpectrumResult(const Params& p) : params(p) {}

  Params params;
  bool parity_merged = true;
  std::vector<double> eigenvalues;  // ascending, merged over both sectors
  std::vector<Parity> parities;
  std::vector<SectorVector> eigenvectors;  // empty unless requested
  std::vector<double> residuals;           // ||(Q_{2L} - lambda) psi||, psi zero-padded
  std::vector<double> changes;             // |lambda(L/2) - lambda(L)| at the last refinement
  std::size_t levels_even = 0;
  std::size_t levels_odd = 0;
  double tol = 0.0;
  std::vector<double> even_eigenvalues;  // lowest k of each sector
  std::vector<double> odd_eigenvalues;
  double oracle_deviation = 0.0;  // max |QL - bisection| over reported eigenvalues
  double matrix_scale = 0.0;      // Gershgorin radius of the largest sector used
};

namespace detail {

struct SectorSolve
{
  BandedSymmetricMatrix matrix;
  Tridiagonal tri;
  std::vector<double> values;  // all, ascending
};

inline SectorSolve solve_sector(const Params& p, Parity parity, std::size_t levels)
{
  auto m = assemble_sector(p, parity, levels);
  auto tri = tridiagonalize(m, false);
  auto eig = eigen_tridiagonal(tri.diag, tri.offdiag, false);
  return SectorSolve{std::move(m), std::move(tri), std::move(eig.values)};
}

struct Merged
{
  std::vector<double> values;
  std::vector<Parity> parities;
  std::vector<std::size_t> sector_index;
};

inline Merged merge_lowest(std::span<const double> even, std::span<const double> odd, std::size_t k)
{
  Merged out;
  std::size_t i = 0, j = 0;
  while (out.values.size() < k && (i < even.size() || j < odd.size())) {
    // Ties go to the even sector.
    if (j >= odd.size() || (i < even.size() && even[i] <= odd[j])) {
      out.values.push_back(even[i]);
      out.parities.push_back(Parity::Even);
      out.sector_index.push_back(i++);
    } else {
      out.values.push_back(odd[j]);
      out.parities.push_back(Parity::Odd);
      out.sector_index.push_back(j++);
    }
  }
  return out;
}

}  // namespace detail

/// Lowest k eigenpairs of Q(alpha, beta). Both parity sectors are solved at L
/// and 2L levels; L doubles until every reported eigenvalue moves by less than
/// `tol` and (with vectors) every residual in the doubled truncation is below `tol`.
inline SpectrumResult converged_spectrum(const Params& p, std::size_t k, const SolveOptions& opt = {})
{
  if (k == 0) throw DomainError("converged_spectrum: k must be at least 1");
  if (!(opt.tol > 0.0)) throw DomainError("converged_spectrum: tol must be positive");

  std::size_t levels = std::max<std::size_t>({opt.initial_levels, k, 2});
  if (levels > opt.max_levels) throw DomainError("converged_spectrum: initial truncation exceeds cap");

  auto even = detail::solve_sector(p, Parity::Even, levels);
  auto odd = detail::solve_sector(p, Parity::Odd, levels);

  for (;;) {
    const std::size_t next = 2 * levels;
    if (next > opt.max_levels) {
      const auto merged = detail::merge_lowest(even.values, odd.values, k);
      throw SolverError("converged_spectrum: truncation cap of " + std::to_string(opt.max_levels) +
                            " levels reached before convergence",
                        SolverError::npos, {merged.values.front(), merged.values.back()});
    }
    auto even2 = detail::solve_sector(p, Parity::Even, next);
    auto odd2 = detail::solve_sector(p, Parity::Odd, next);

    const double scale = std::max(even2.matrix.gershgorin().second, odd2.matrix.gershgorin().second);
    const double rounding = 64.0 * kEps * scale;

    // Rayleigh-Ritz: compressions onto nested subspaces can only move eigenvalues down.
    auto check_monotone = [&](const detail::SectorSolve& coarse, const detail::SectorSolve& fine) {
      const std::size_t count = std::min(k, coarse.values.size());
      for (std::size_t i = 0; i < count; ++i)
        if (fine.values[i] > coarse.values[i] + rounding)
          throw SolverError("converged_spectrum: truncation monotonicity violated", i,
                            {coarse.values[i], fine.values[i]});
    };
    check_monotone(even, even2);
    check_monotone(odd, odd2);

    const auto coarse = detail::merge_lowest(even.values, odd.values, k);
    const auto fine = detail::merge_lowest(even2.values, odd2.values, k);
    std::vector<double> changes(k);
    bool converged = true;
    for (std::size_t i = 0; i < k; ++i) {
      changes[i] = std::abs(coarse.values[i] - fine.values[i]);
      if (changes[i] >= opt.tol + rounding) converged = false;
    }

    if (converged) {
      SpectrumResult res(p);
      res.eigenvalues = fine.values;
      res.parities = fine.parities;
      res.changes = changes;
      res.levels_even = next;
      res.levels_odd = next;
      res.tol = opt.tol;
      res.matrix_scale = scale;
      res.even_eigenvalues.assign(even2.values.begin(), even2.values.begin() + std::min(k, even2.values.size()));
      res.odd_eigenvalues.assign(odd2.values.begin(), odd2.values.begin() + std::min(k, odd2.values.size()));

      // Independent check of the QL eigenvalues by bisection on the same tridiagonals.
      auto cross = [&](const detail::SectorSolve& s, std::span<const double> ql) {
        const auto bis = sturm_bisection(s.tri.diag, s.tri.offdiag, ql.size(), kEps * scale);
        for (std::size_t i = 0; i < ql.size(); ++i)
          res.oracle_deviation = std::max(res.oracle_deviation, std::abs(bis[i] - ql[i]));
      };
      cross(even2, res.even_eigenvalues);
      cross(odd2, res.odd_eigenvalues);
      if (res.oracle_deviation > 1e-10)
        throw SolverError("converged_spectrum: QL and bisection disagree by " + std::to_string(res.oracle_deviation));

      if (!opt.want_vectors) return res;

      const auto even_vecs = inverse_iteration(even2.matrix, res.even_eigenvalues);
      const auto odd_vecs = inverse_iteration(odd2.matrix, res.odd_eigenvalues);
      const auto even_big = assemble_sector(p, Parity::Even, 2 * next);
      const auto odd_big = assemble_sector(p, Parity::Odd, 2 * next);
      double worst = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const bool is_even = fine.parities[i] == Parity::Even;
        const auto& v = is_even ? even_vecs[fine.sector_index[i]] : odd_vecs[fine.sector_index[i]];
        std::vector<double> padded(2 * v.size(), 0.0);
        std::copy(v.begin(), v.end(), padded.begin());
        const double r = residual_norm(is_even ? even_big : odd_big, padded, fine.values[i]);
        res.residuals.push_back(r);
        res.eigenvectors.push_back(SectorVector{fine.parities[i], v});
        worst = std::max(worst, r);
      }
      if (worst <= opt.tol) return res;
    }

    levels = next;
    even = std::move(even2);
    odd = std::move(odd2);
  }
}

}  // namespace ncho
