#pragma once

// Numerical checks of the inequalities used in the proofs, swap symmetry,
// spectral zeta partial sums with tail brackets, and verification suites.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ncho/certificates.hpp"
#include "ncho/closedform.hpp"
#include "ncho/eigensolve.hpp"
#include "ncho/error.hpp"
#include "ncho/operator.hpp"
#include "ncho/params.hpp"

namespace ncho {

/// Outcome of one check. `applicable == false` means the hypotheses of the
/// underlying inequality do not hold at this point; such records always pass.
struct CheckResult
{
  bool applicable = true;
  double margin = kNaN;
  double value = kNaN;  // the checked quantity itself, where it has one
  std::string note;
};

namespace detail {

template <class T>
double magnitude2(const T& v)
{
  if constexpr (std::is_same_v<T, std::complex<double>>) return std::norm(v);
  else return v * v;
}

template <class T>
CheckResult ptb1_impl(const Params& p, Parity parity, std::span<const T> g)
{
  if (g.size() % 2 != 0) throw DomainError("check_ptb1: sector vector must have even length");
  CheckResult r;
  const double m = p.min();
  if (!(m > 1.0)) {
    r.applicable = false;
    r.note = "min(alpha,beta)<=1";
    return r;
  }
  double norm2 = 0.0, number = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double w = magnitude2(g[k]);
    norm2 += w;
    number += w * static_cast<double>(BasisIndex::from_flat(k, parity).oscillator_number());
  }
  r.value = number;
  r.margin = norm2 / (m * m - 1.0) - number;
  return r;
}

template <class T>
CheckResult qhat_impl(const Params& p, Parity parity, std::span<const T> g, double E)
{
  if (g.size() % 2 != 0) throw DomainError("check_qhat_bound: sector vector must have even length");
  CheckResult r;
  const double m = p.min();
  const double half = 0.5 * p.max();
  if (!(m > 1.0) || !(half > E)) {
    r.applicable = false;
    r.note = !(m > 1.0) ? "min(alpha,beta)<=1" : "max(alpha,beta)/2<=E";
    return r;
  }
  double norm2 = 0.0;
  for (const auto& c : g) norm2 += magnitude2(c);
  // M-perp selects the spin carrying max(alpha, beta); P_Omega keeps level 0 of the even sector.
  double qhat2 = 0.0;
  if (parity == Parity::Even && !g.empty()) {
    const std::size_t spin_index = p.beta() >= p.alpha() ? 1 : 0;
    qhat2 = magnitude2(g[spin_index]);
  }
  const double gap = half - E;
  r.value = qhat2;
  r.margin = norm2 / (gap * gap * (m * m - 1.0)) - qhat2;
  return r;
}

}  // namespace detail

/// ||g||^2 / (m^2 - 1) - <g, N g> with m = min(alpha, beta).
inline CheckResult check_ptb1(const Params& p, const SectorVector& ground)
{
  return detail::ptb1_impl<double>(p, ground.parity, ground.coeffs);
}

inline CheckResult check_ptb1(const Params& p, Parity parity, std::span<const std::complex<double>> ground)
{
  return detail::ptb1_impl<std::complex<double>>(p, parity, ground);
}

/// (max/2 - E)^-2 ||g||^2 / (m^2 - 1) - ||M-perp P_Omega g||^2.
inline CheckResult check_qhat_bound(const Params& p, const SectorVector& ground, double E)
{
  return detail::qhat_impl<double>(p, ground.parity, ground.coeffs, E);
}

inline CheckResult check_qhat_bound(const Params& p, Parity parity, std::span<const std::complex<double>> ground,
                                    double E)
{
  return detail::qhat_impl<std::complex<double>>(p, parity, ground, E);
}

/// Even-sector minimum strictly below the odd-sector minimum by more than 10 tol.
/// margin = odd minimum - even minimum.
inline CheckResult check_parity_of_ground(const Params& p, const SpectrumResult& spec)
{
  if (spec.even_eigenvalues.empty() || spec.odd_eigenvalues.empty())
    throw DomainError("check_parity_of_ground: spectrum lacks one of the sectors");
  CheckResult r;
  r.applicable = p.min() > 2.0;
  if (!r.applicable) r.note = "recorded only: min(alpha,beta)<=2";
  r.value = spec.even_eigenvalues.front();
  r.margin = spec.odd_eigenvalues.front() - spec.even_eigenvalues.front();
  return r;
}

inline bool ground_is_even(const SpectrumResult& spec)
{
  return spec.odd_eigenvalues.front() - spec.even_eigenvalues.front() > 10.0 * spec.tol;
}

/// max_j |lambda_j(alpha, beta) - lambda_j(beta, alpha)|, j <= k.
inline double check_swap_symmetry(const Params& p, std::size_t k, double tol)
{
  SolveOptions opt;
  opt.tol = tol;
  opt.want_vectors = false;
  const auto a = converged_spectrum(p, k, opt);
  if (p.alpha() == p.beta()) return 0.0;
  const auto b = converged_spectrum(p.swapped(), k, opt);
  double dev = 0.0;
  for (std::size_t j = 0; j < k; ++j) dev = std::max(dev, std::abs(a.eigenvalues[j] - b.eigenvalues[j]));
  return dev;
}

// ---------------------------------------------------------------------------
// Spectral zeta

struct ZetaBracket
{
  double s = 0.0;
  std::size_t n_terms = 0;
  double partial = 0.0;
  double tail_low = 0.0;
  double tail_high = 0.0;
  // Allowances for the finite truncation and rounding of the computed eigenvalues.
  double partial_err_low = 0.0;
  double partial_err_high = 0.0;

  double lower() const { return partial - partial_err_low + tail_low; }
  double upper() const { return partial + partial_err_high + tail_high; }
  double width() const { return upper() - lower(); }
  bool contains(double x) const { return lower() <= x && x <= upper(); }
};

struct HurwitzBracket
{
  double low = 0.0;
  double high = 0.0;
};

/// Encloses sum_{n>=0} (n + a)^{-s} for s > 1, a > 0. The first K terms are summed
/// directly (compensated); the remainder f(n) = (n + a + K)^{-s} is bounded by
///   I + f(0)/2  <=  sum  <=  I + f(0)/2 + (f''(0) - f'(0)) / 12
/// (trapezoid rule on a decreasing convex function).
inline HurwitzBracket hurwitz_bracket(double s, double a, double width_target = 1e-13)
{
  if (!(s > 1.0)) throw DomainError("hurwitz_bracket: divergent for s<=1");
  if (!(a > 0.0)) throw DomainError("hurwitz_bracket: requires a>0");
  auto width_at = [&](double b) { return (s * (s + 1.0) * std::pow(b, -s - 2.0) + s * std::pow(b, -s - 1.0)) / 12.0; };
  std::size_t K = 0;
  constexpr std::size_t kMaxExplicit = std::size_t{1} << 24;
  while (width_at(a + static_cast<double>(K)) > width_target && K < kMaxExplicit) K = K == 0 ? 16 : 2 * K;
  const double b = a + static_cast<double>(K);
  double direct = 0.0, carry = 0.0;
  for (std::size_t n = K; n-- > 0;) {
    const double y = std::pow(static_cast<double>(n) + a, -s) - carry;
    const double t = direct + y;
    carry = (t - direct) - y;
    direct = t;
  }
  const double integral = std::pow(b, 1.0 - s) / (s - 1.0);
  const double f0 = std::pow(b, -s);
  const double rounding = 8.0 * kEps * (direct + integral);
  return {direct + integral + 0.5 * f0 - rounding, direct + integral + 0.5 * f0 + width_at(b) + rounding};
}

/// zeta_Q(s) = sum_n lambda_n^{-s}: the first n_terms from the converged spectrum,
/// the rest bracketed pairwise by the IW intervals.
inline ZetaBracket zeta_partial(const Params& p, double s, std::size_t n_terms, double tol = 1e-10)
{
  if (!(s > 1.0)) throw DomainError("zeta_partial: divergent for s<=1");
  if (n_terms < 2 || n_terms % 2 != 0) throw DomainError("zeta_partial: n_terms must be even and at least 2");
  SolveOptions opt;
  opt.tol = tol;
  opt.want_vectors = false;
  const auto spec = converged_spectrum(p, n_terms, opt);

  ZetaBracket z;
  z.s = s;
  z.n_terms = n_terms;
  for (std::size_t i = n_terms; i-- > 0;) {
    const double lam = spec.eigenvalues[i];
    const double term = std::pow(lam, -s);
    z.partial += term;
    // Computed values are Rayleigh-Ritz upper bounds, so terms can only be too small;
    // the last refinement step and rounding bound how far.
    const double rounding = 64.0 * kEps * spec.matrix_scale;
    const double shifted = std::max(lam - spec.changes[i] - rounding, 0.5 * lam);
    // Each eigenvalue also lies in its IW interval; intersecting keeps brackets nested under N doubling.
    const auto [lo, hi] = iw_bounds(p, i / 2 + 1);
    const double iw_high = std::pow(lo, -s) * (1.0 + 8.0 * kEps);
    const double iw_low = std::pow(hi, -s) * (1.0 - 8.0 * kEps);
    const double high = std::min(std::pow(shifted, -s), iw_high);
    const double low = std::max(std::pow(lam + rounding, -s) - 4.0 * kEps * term, iw_low);
    z.partial_err_high += high - term;
    z.partial_err_low += term - low;
  }
  const double ab = p.alpha() * p.beta();
  const double c = std::sqrt((ab - 1.0) / ab);
  const double J = static_cast<double>(n_terms / 2);
  const auto h = hurwitz_bracket(s, J + 0.5);
  z.tail_low = 2.0 * std::pow(p.max() * c, -s) * h.low;
  z.tail_high = 2.0 * std::pow(p.min() * c, -s) * h.high;
  return z;
}

// ---------------------------------------------------------------------------
// Verification suites

struct CheckRecord
{
  std::string check;
  double alpha = 0.0;
  double beta = 0.0;
  double margin = kNaN;
  bool pass = false;
  double value = kNaN;
  bool applicable = true;
};

inline const std::vector<std::string>& suite_names()
{
  static const std::vector<std::string> names{"ptb1", "parity", "qhat", "swap", "closedform", "iw"};
  return names;
}

namespace detail {

inline CheckRecord make_record(std::string name, const Params& p, const CheckResult& r, double threshold)
{
  CheckRecord rec{std::move(name), p.alpha(), p.beta(), r.margin, true, r.value, r.applicable};
  if (r.applicable) rec.pass = r.margin >= threshold;
  return rec;
}

inline void closedform_suite(const Params& p, std::vector<CheckRecord>& out)
{
  const double alpha = p.min();
  auto add = [&](std::string name, double deviation, double tol, double value) {
    CheckRecord rec{std::move(name), p.alpha(), p.beta(), tol - deviation, deviation <= tol, value, true};
    out.push_back(rec);
  };
  if (!(alpha > 1.0)) {
    out.push_back({"closedform", p.alpha(), p.beta(), kNaN, true, kNaN, false});
    return;
  }
  add("closedform.vu1_u1", std::abs(vu1_u1(alpha) - quadrature_oracle(alpha, Quantity::VU1U1)), 1e-10,
      vu1_u1(alpha));
  add("closedform.vu1_u2", std::abs(vu1_u2(alpha) - quadrature_oracle(alpha, Quantity::VU1U2)), 1e-10,
      std::abs(vu1_u2(alpha)));
  add("closedform.x2moment", std::abs(gaussian_x2_moment(alpha) - quadrature_oracle(alpha, Quantity::X2MOMENT)),
      1e-10, std::abs(gaussian_x2_moment(alpha)));
  const double g4 = g4_of(alpha, std::sqrt(alpha * alpha - 1.0));
  add("closedform.vu1_u2_modulus_g4", std::abs(std::abs(vu1_u2(alpha)) - g4), 1e-12, g4);
  add("closedform.norm_u1", std::abs(quadrature_oracle(alpha, Quantity::NORM_U1) - 1.0), 1e-10, 1.0);
  add("closedform.ortho_u12", std::abs(quadrature_oracle(alpha, Quantity::ORTHO_U12)), 1e-10, 0.0);
  const double vnorm = quadrature_oracle(alpha, Quantity::VNORM_U1).real();
  const double b1 = g1_of(alpha, std::sqrt(alpha * alpha - 1.0)) * 0.5 * std::sqrt(alpha * alpha - 1.0);
  out.push_back({"closedform.vnorm_u1_b1", p.alpha(), p.beta(), b1 - vnorm, vnorm <= b1, vnorm, true});
  const auto basis = u_vectors_in_basis(alpha, 64);
  add("closedform.eigen_residual", basis.eta(), 1e-8, basis.eta());
}

}  // namespace detail

/// Runs one named suite (or "all") at a parameter point.
inline std::vector<CheckRecord> run_suite(const std::string& suite, const Params& p, double tol = 1e-10)
{
  const bool all = suite == "all";
  if (!all && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw DomainError("unknown suite '" + suite + "'");
  std::vector<CheckRecord> out;
  const double threshold = -10.0 * tol;
  auto want = [&](const char* name) { return all || suite == name; };

  std::optional<SpectrumResult> spec;
  auto spectrum = [&]() -> const SpectrumResult& {
    if (!spec) {
      SolveOptions opt;
      opt.tol = tol;
      spec = converged_spectrum(p, 2, opt);
    }
    return *spec;
  };

  if (want("ptb1")) {
    const auto& s = spectrum();
    out.push_back(detail::make_record("ptb1", p, check_ptb1(p, s.eigenvectors.front()), threshold));
  }
  if (want("parity")) {
    const auto& s = spectrum();
    const auto r = check_parity_of_ground(p, s);
    CheckRecord rec{"parity", p.alpha(), p.beta(), r.margin, true, r.value, r.applicable};
    if (r.applicable) rec.pass = ground_is_even(s);
    out.push_back(rec);
  }
  if (want("qhat")) {
    const auto& s = spectrum();
    out.push_back(
        detail::make_record("qhat", p, check_qhat_bound(p, s.eigenvectors.front(), s.eigenvalues.front()), threshold));
  }
  if (want("swap")) {
    const double dev = check_swap_symmetry(p, 6, tol);
    out.push_back({"swap", p.alpha(), p.beta(), 10.0 * tol - dev, dev <= 10.0 * tol, dev, true});
  }
  if (want("closedform")) detail::closedform_suite(p, out);
  if (want("iw")) {
    SolveOptions opt;
    opt.tol = tol;
    opt.want_vectors = false;
    const auto s = converged_spectrum(p, 10, opt);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      const auto [lo, hi] = iw_bounds(p, i / 2 + 1);
      worst = std::min({worst, s.eigenvalues[i] - lo, hi - s.eigenvalues[i]});
    }
    out.push_back({"iw", p.alpha(), p.beta(), worst, worst >= threshold, s.eigenvalues.front(), true});
  }
  return out;
}

}  // namespace ncho
