#pragma once

// Explicit ground states of Q(alpha, alpha) and their matrix elements with
// V = (1/2) diag(0, 1) (p^2 + x^2), with a quadrature oracle for each formula.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string_view>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ncho/error.hpp"
#include "ncho/operator.hpp"
#include "ncho/params.hpp"

namespace ncho {

using cplx = std::complex<double>;

namespace detail {

inline void require_alpha(double alpha, const char* where)
{
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw DomainError(std::string(where) + ": requires alpha>1");
}

}  // namespace detail

inline double omega(double alpha)
{
  detail::require_alpha(alpha, "omega");
  return std::sqrt(alpha * alpha - 1.0);
}

/// v0(x) = (omega/pi)^{1/4} exp(-omega x^2 / 2)
inline double v0(double alpha, double x)
{
  const double w = omega(alpha);
  return std::pow(w / std::numbers::pi, 0.25) * std::exp(-0.5 * w * x * x);
}

/// The two ground states u1, u2 of Q(alpha, alpha), as C^2-valued functions.
/// Each component is c * exp(-gamma x^2 / 2) with gamma = (omega +- i) / alpha.
struct DiagonalGroundPair
{
  double alpha;
  double omega;

  explicit DiagonalGroundPair(double a) : alpha(a), omega(ncho::omega(a)) {}

  double amplitude() const
  {
    return std::pow(alpha, -0.25) * std::pow(omega / std::numbers::pi, 0.25) / std::numbers::sqrt2;
  }
  cplx gamma1() const { return cplx{omega, 1.0} / alpha; }
  cplx gamma2() const { return cplx{omega, -1.0} / alpha; }

  /// Component coefficients: u1 = c (1, i), u2 = c (1, -i).
  std::array<cplx, 2> coeff1() const { return {cplx{amplitude(), 0.0}, cplx{0.0, amplitude()}}; }
  std::array<cplx, 2> coeff2() const { return {cplx{amplitude(), 0.0}, cplx{0.0, -amplitude()}}; }

  static cplx gaussian(cplx gamma, double x) { return std::exp(-0.5 * gamma * x * x); }

  std::array<cplx, 2> u1(double x) const
  {
    const auto c = coeff1();
    const cplx g = gaussian(gamma1(), x);
    return {c[0] * g, c[1] * g};
  }
  std::array<cplx, 2> u2(double x) const
  {
    const auto c = coeff2();
    const cplx g = gaussian(gamma2(), x);
    return {c[0] * g, c[1] * g};
  }

  /// Spin-2 component of V u: for f = c e^{-gamma x^2/2},
  /// (1/2)(-f'' + x^2 f) = (c/2)(gamma + (1 - gamma^2) x^2) e^{-gamma x^2/2}.
  static cplx v_component(cplx c, cplx gamma, double x)
  {
    return 0.5 * c * (gamma + (1.0 - gamma * gamma) * x * x) * gaussian(gamma, x);
  }
  cplx vu1(double x) const { return v_component(coeff1()[1], gamma1(), x); }
  cplx vu2(double x) const { return v_component(coeff2()[1], gamma2(), x); }
};

/// <u1, V u1> = alpha / (4 omega)
inline double vu1_u1(double alpha)
{
  detail::require_alpha(alpha, "vu1_u1");
  return alpha / (4.0 * omega(alpha));
}

/// <u1, V u2> = -(omega^{3/2} / (4 alpha)) (omega - i)^{-1/2}, principal branch.
inline cplx vu1_u2(double alpha)
{
  detail::require_alpha(alpha, "vu1_u2");
  const double w = omega(alpha);
  return -(std::pow(w, 1.5) / (4.0 * alpha)) / std::sqrt(cplx{w, -1.0});
}

/// <v0, x^2 e^{i x^2} v0> = (1/2) omega^{1/2} (omega - i)^{-3/2}
inline cplx gaussian_x2_moment(double alpha)
{
  detail::require_alpha(alpha, "gaussian_x2_moment");
  const double w = omega(alpha);
  const cplx root = std::sqrt(cplx{w, -1.0});
  return 0.5 * std::sqrt(w) / (root * root * root);
}

// ---------------------------------------------------------------------------
// Quadrature oracle

enum class Quantity { VU1U1, VU1U2, X2MOMENT, NORM_U1, ORTHO_U12, VNORM_U1 };

inline constexpr std::string_view to_string(Quantity q)
{
  switch (q) {
    case Quantity::VU1U1: return "vu1_u1";
    case Quantity::VU1U2: return "vu1_u2";
    case Quantity::X2MOMENT: return "x2moment";
    case Quantity::NORM_U1: return "norm_u1";
    case Quantity::ORTHO_U12: return "ortho_u12";
    case Quantity::VNORM_U1: return "vnorm_u1";
  }
  return "?";
}

inline constexpr double kOracleTolerance = 1e-11;

namespace detail {

/// Integral of a complex integrand over [-X, X], real and imaginary parts separately.
template <class F>
cplx integrate_complex(F&& f, double X)
{
  using boost::math::quadrature::gauss_kronrod;
  double err_re = 0.0, err_im = 0.0;
  const double re = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).real(); }, -X, X, 20, 1e-14,
                                                         &err_re);
  const double im = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).imag(); }, -X, X, 20, 1e-14,
                                                         &err_im);
  if (!(err_re <= kOracleTolerance) || !(err_im <= kOracleTolerance) || !std::isfinite(re) || !std::isfinite(im))
    throw OracleError("quadrature did not reach 1e-11 (error estimates " + std::to_string(err_re) + ", " +
                      std::to_string(err_im) + ")");
  return {re, im};
}

/// Half-width beyond which exp(-c x^2) < e^{-50} for the slowest decaying factor.
inline double cutoff(double decay_rate) { return std::sqrt(50.0 / decay_rate); }

}  // namespace detail

/// Evaluates the requested quantity by numerical integration of the explicit
/// component formulas. <f, g> is conjugate-linear in f.
inline cplx quadrature_oracle(double alpha, Quantity which)
{
  detail::require_alpha(alpha, "quadrature_oracle");
  const DiagonalGroundPair u(alpha);
  // |u|^2 decays like exp(-omega x^2 / alpha).
  const double X = detail::cutoff(u.omega / alpha);
  switch (which) {
    case Quantity::VU1U1:
      return detail::integrate_complex([&](double x) { return std::conj(u.u1(x)[1]) * u.vu1(x); }, X);
    case Quantity::VU1U2:
      return detail::integrate_complex([&](double x) { return std::conj(u.u1(x)[1]) * u.vu2(x); }, X);
    case Quantity::X2MOMENT: {
      const double w = u.omega;
      const double norm = std::sqrt(w / std::numbers::pi);
      return detail::integrate_complex(
          [&](double x) { return norm * x * x * std::exp(cplx{-w * x * x, x * x}); }, detail::cutoff(w));
    }
    case Quantity::NORM_U1:
      return detail::integrate_complex(
          [&](double x) {
            const auto a = u.u1(x);
            return std::conj(a[0]) * a[0] + std::conj(a[1]) * a[1];
          },
          X);
    case Quantity::ORTHO_U12:
      return detail::integrate_complex(
          [&](double x) {
            const auto a = u.u1(x);
            const auto b = u.u2(x);
            return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
          },
          X);
    case Quantity::VNORM_U1: {
      const cplx sq = detail::integrate_complex([&](double x) { return cplx{std::norm(u.vu1(x)), 0.0}; }, X);
      return {std::sqrt(sq.real()), 0.0};
    }
  }
  throw DomainError("quadrature_oracle: unknown quantity");
}

// ---------------------------------------------------------------------------
// Projection onto the Hermite basis

/// phi_0..phi_{n_max}(x) by the three-term recurrence.
inline std::vector<double> hermite_functions(std::size_t n_max, double x)
{
  std::vector<double> phi(n_max + 1);
  phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n_max >= 1) phi[1] = std::numbers::sqrt2 * x * phi[0];
  for (std::size_t n = 1; n < n_max; ++n) {
    const double dn = static_cast<double>(n);
    phi[n + 1] = std::sqrt(2.0 / (dn + 1.0)) * x * phi[n] - std::sqrt(dn / (dn + 1.0)) * phi[n - 1];
  }
  return phi;
}

struct BasisGroundPair
{
  std::size_t levels = 0;
  std::vector<cplx> u1;  // Even sector, flat index k = 2l + (spin - 1)
  std::vector<cplx> u2;
  double residual_u1 = 0.0;  // ||(Q0 - E0) u1|| in the truncated sector
  double residual_u2 = 0.0;
  double eta() const { return std::max(residual_u1, residual_u2); }
};

/// Residual ||(M - lambda) v|| for a complex vector and a real band matrix.
inline double complex_residual(const BandedSymmetricMatrix& m, const std::vector<cplx>& v, double lambda)
{
  std::vector<double> re(v.size()), im(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    re[i] = v[i].real();
    im[i] = v[i].imag();
  }
  const auto mr = m.multiply(re);
  const auto mi = m.multiply(im);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = mr[i] - lambda * re[i];
    const double b = mi[i] - lambda * im[i];
    s += a * a + b * b;
  }
  return std::sqrt(s);
}

/// Overlaps <e_s (x) phi_n, u_i> for the Even sector, n = 2l, l < levels.
inline BasisGroundPair u_vectors_in_basis(double alpha, std::size_t levels)
{
  detail::require_alpha(alpha, "u_vectors_in_basis");
  if (levels < 4) throw DomainError("u_vectors_in_basis: requires L>=4");
  const DiagonalGroundPair u(alpha);
  const cplx g1 = u.gamma1();
  // Both spin components of u1 share exp(-gamma1 x^2/2); u2 uses its conjugate.
  // |phi_n| < 1, so the Gaussian alone sets the cutoff.
  const double X = detail::cutoff(0.5 * u.omega / alpha);
  BasisGroundPair out;
  out.levels = levels;
  out.u1.resize(2 * levels);
  out.u2.resize(2 * levels);
  for (std::size_t l = 0; l < levels; ++l) {
    const std::size_t n = 2 * l;
    const cplx overlap = detail::integrate_complex(
        [&](double x) { return hermite_functions(n, x)[n] * DiagonalGroundPair::gaussian(g1, x); },
        X);
    const auto c1 = u.coeff1();
    const auto c2 = u.coeff2();
    out.u1[2 * l] = c1[0] * overlap;
    out.u1[2 * l + 1] = c1[1] * overlap;
    out.u2[2 * l] = c2[0] * std::conj(overlap);
    out.u2[2 * l + 1] = c2[1] * std::conj(overlap);
  }
  const auto q0 = assemble_sector(Params::make(alpha, alpha), Parity::Even, levels);
  const double e0 = 0.5 * u.omega;
  out.residual_u1 = complex_residual(q0, out.u1, e0);
  out.residual_u2 = complex_residual(q0, out.u2, e0);
  return out;
}

/// <v, V v> for a complex Even-sector vector.
inline double expectation_V(const std::vector<cplx>& v)
{
  double s = 0.0;
  for (std::size_t k = 1; k < v.size(); k += 2) {
    const double n = static_cast<double>(BasisIndex::from_flat(k, Parity::Even).oscillator_number());
    s += std::norm(v[k]) * (n + 0.5);
  }
  return s;
}

}  // namespace ncho
