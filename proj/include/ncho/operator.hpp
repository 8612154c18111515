#pragma once

// Matrix representation of Q(alpha, beta) in the Hermite-function basis.
//
// A parity sector holds the basis vectors e_s (x) phi_n with n = 2l + parity,
// flattened as k = 2l + (s - 1). Q only couples n <-> n, n +- 2, and the
// coupling flips the spin, so every sector is a band matrix of half-bandwidth 3.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ncho/banded_matrix.hpp"
#include "ncho/error.hpp"
#include "ncho/params.hpp"

namespace ncho {

inline constexpr std::size_t kSectorHalfBandwidth = 3;

namespace detail {

inline double diag_coefficient(const Params& p, int spin)
{
  return spin == 1 ? p.alpha() : p.beta();
}

/// J = [[0, -1], [1, 0]] indexed by spins (1-based).
inline double j_entry(int row_spin, int col_spin)
{
  if (row_spin == col_spin) return 0.0;
  return row_spin == 1 ? -1.0 : 1.0;
}

/// sqrt(n (n - 1)), the matrix element <phi_{n-2}, a^2 phi_n>.
inline double lowering2(std::size_t n)
{
  if (n < 2) return 0.0;
  return std::sqrt(static_cast<double>(n) * static_cast<double>(n - 1));
}

inline void check_layout(std::span<const double> v)
{
  if (v.size() % 2 != 0) throw DomainError("sector vector must have even length");
}

}  // namespace detail

/// <e_i (x) phi_m, Q e_j (x) phi_n> in the ladder form
/// Q = a* A a + A/2 + (1/2) J (a^2 - a*^2).
inline double matrix_element(const Params& p, const BasisIndex& row, const BasisIndex& col)
{
  if (row.parity != col.parity) throw DomainError("matrix_element: parity sectors do not couple");
  const std::size_t m = row.oscillator_number();
  const std::size_t n = col.oscillator_number();
  if (m == n) {
    if (row.spin != col.spin) return 0.0;
    return detail::diag_coefficient(p, row.spin) * (static_cast<double>(n) + 0.5);
  }
  const double j = detail::j_entry(row.spin, col.spin);
  if (m + 2 == n) return j * (0.5 * detail::lowering2(n));
  if (n + 2 == m) return -j * (0.5 * detail::lowering2(m));
  return 0.0;
}

/// Algebraically equivalent ways of writing Q. All produce the same sector matrix.
enum class OperatorForm {
  Ladder,  // a*Aa + A/2 + (aJa - a*Ja*)/2
  Tensor,  // A (x) (-d^2/dx^2 + x^2)/2 + J (x) (x d/dx + 1/2)
  Pauli,   // A (p^2 + x^2)/2 + sigma_2 (px + xp)/2
};

namespace detail {

// Hermite-basis matrix elements of x and d/dx (unit-frequency ladder).
inline double x_element(std::size_t m, std::size_t k)
{
  if (m + 1 == k) return std::sqrt(static_cast<double>(k)) / std::sqrt(2.0);
  if (k + 1 == m) return std::sqrt(static_cast<double>(m)) / std::sqrt(2.0);
  return 0.0;
}

inline double ddx_element(std::size_t k, std::size_t n)
{
  if (k + 1 == n) return std::sqrt(static_cast<double>(n)) / std::sqrt(2.0);
  if (n + 1 == k) return -std::sqrt(static_cast<double>(k)) / std::sqrt(2.0);
  return 0.0;
}

/// <phi_m, (x d/dx + 1/2) phi_n>, with the intermediate sum running over all
/// oscillator levels (no truncation inside the product).
inline double dilation_element(std::size_t m, std::size_t n)
{
  double s = m == n ? 0.5 : 0.0;
  for (std::size_t k = (m > 0 ? m - 1 : 0); k <= m + 1; ++k) s += x_element(m, k) * ddx_element(k, n);
  return s;
}

inline double tensor_element(const Params& p, const BasisIndex& row, const BasisIndex& col)
{
  const std::size_t m = row.oscillator_number();
  const std::size_t n = col.oscillator_number();
  const double a = row.spin == col.spin ? diag_coefficient(p, row.spin) : 0.0;
  const double h0 = m == n ? static_cast<double>(n) + 0.5 : 0.0;
  return a * h0 + j_entry(row.spin, col.spin) * dilation_element(m, n);
}

inline double pauli_element(const Params& p, const BasisIndex& row, const BasisIndex& col)
{
  using cplx = std::complex<double>;
  const std::size_t m = row.oscillator_number();
  const std::size_t n = col.oscillator_number();
  // sigma_2 = [[0, -i], [i, 0]]
  cplx sigma2{0.0, 0.0};
  if (row.spin == 1 && col.spin == 2) sigma2 = {0.0, -1.0};
  if (row.spin == 2 && col.spin == 1) sigma2 = {0.0, 1.0};
  // p^2 + x^2 = 2N + 1
  const double harmonic = m == n ? static_cast<double>(2 * n + 1) : 0.0;
  // px + xp = -i (a^2 - a*^2)
  cplx dil{0.0, 0.0};
  if (m + 2 == n) dil = cplx{0.0, -1.0} * lowering2(n);
  if (n + 2 == m) dil = cplx{0.0, 1.0} * lowering2(m);
  const double a = row.spin == col.spin ? diag_coefficient(p, row.spin) : 0.0;
  const cplx value = (0.5 * a) * harmonic + (0.5 * sigma2) * dil;
  if (value.imag() != 0.0) throw DomainError("pauli form produced a complex entry");
  return value.real();
}

}  // namespace detail

/// Principal compression of Q onto levels l = 0..L-1 of a parity sector.
inline BandedSymmetricMatrix assemble_sector(const Params& p, Parity parity, std::size_t levels,
                                             OperatorForm form = OperatorForm::Ladder)
{
  if (levels < 2) throw DomainError("assemble_sector: requires at least 2 levels");
  const std::size_t dim = 2 * levels;
  BandedSymmetricMatrix m(dim, kSectorHalfBandwidth);
  for (std::size_t col = 0; col < dim; ++col) {
    const auto cj = BasisIndex::from_flat(col, parity);
    for (std::size_t row = col; row < dim && row <= col + kSectorHalfBandwidth; ++row) {
      const auto ri = BasisIndex::from_flat(row, parity);
      double v = 0.0;
      switch (form) {
        case OperatorForm::Ladder: v = matrix_element(p, ri, cj); break;
        case OperatorForm::Tensor: v = detail::tensor_element(p, ri, cj); break;
        case OperatorForm::Pauli: v = detail::pauli_element(p, ri, cj); break;
      }
      m.set(row, col, v);
    }
  }
  return m;
}

/// N = a*a applied to a sector vector.
inline std::vector<double> apply_number(Parity parity, std::span<const double> v)
{
  detail::check_layout(v);
  std::vector<double> out(v.begin(), v.end());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] *= static_cast<double>(BasisIndex::from_flat(k, parity).oscillator_number());
  }
  return out;
}

/// V = (1/2) diag(0, 1) (p^2 + x^2) applied to a sector vector.
inline std::vector<double> apply_V(Parity parity, std::span<const double> v)
{
  detail::check_layout(v);
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t k = 1; k < out.size(); k += 2) {
    const auto idx = BasisIndex::from_flat(k, parity);
    out[k] = v[k] * (static_cast<double>(idx.oscillator_number()) + 0.5);
  }
  return out;
}

}  // namespace ncho
