#pragma once

// Closed-form eigenvalue bounds and simplicity/gap certificates for the
// lowest eigenvalue E = lambda_1, plus region scans over (alpha, beta).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "ncho/eigensolve.hpp"
#include "ncho/error.hpp"
#include "ncho/params.hpp"

namespace ncho {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Two-sided bracket for the eigenvalue pair (lambda_{2j-1}, lambda_{2j}).
inline std::pair<double, double> iw_bounds(const Params& p, std::size_t j)
{
  if (j == 0) throw DomainError("iw_bounds: j must be at least 1");
  const double ab = p.alpha() * p.beta();
  const double c = std::sqrt((ab - 1.0) / ab);
  const double h = static_cast<double>(j) - 0.5;
  return {h * p.min() * c, h * p.max() * c};
}

/// Upper bound for lambda_2 (the j = 1 upper IW bound).
inline double lambda2_upper_iw(const Params& p)
{
  const double ab = p.alpha() * p.beta();
  return 0.5 * p.max() * std::sqrt((ab - 1.0) / ab);
}

enum class RhoVariant {
  HalfAngle,  // Re rho = sqrt((sqrt(ab) + sqrt(ab - 1)) / 2), from rho^2 = sqrt(ab - 1) - i
  Paper,      // Re rho = sqrt(sqrt(ab) (sqrt(ab - 1) + 1) / 2), the printed value
};

inline constexpr std::string_view to_string(RhoVariant v)
{
  return v == RhoVariant::HalfAngle ? "half-angle" : "paper";
}

inline double re_rho(const Params& p, RhoVariant v)
{
  const double ab = p.alpha() * p.beta();
  const double s = std::sqrt(ab), w = std::sqrt(ab - 1.0);
  return v == RhoVariant::HalfAngle ? std::sqrt(0.5 * (s + w)) : std::sqrt(0.5 * s * (w + 1.0));
}

/// Closed-form upper bound for E.
inline double e_upper(const Params& p, RhoVariant v = RhoVariant::HalfAngle)
{
  const double a = p.alpha(), b = p.beta();
  const double ab = a * b;
  const double s = std::sqrt(ab), w = std::sqrt(ab - 1.0);
  const double denom = a + b + std::abs(a - b) * std::pow(ab - 1.0, 0.25) / s * re_rho(p, v);
  return s * w / denom;
}

// ---------------------------------------------------------------------------
// Constants g1..g4

enum class Lambda2Kind { CertifiedIW, Numeric, Diagonal };

inline constexpr std::string_view to_string(Lambda2Kind k)
{
  switch (k) {
    case Lambda2Kind::CertifiedIW: return "certified-iw";
    case Lambda2Kind::Numeric: return "numeric";
    case Lambda2Kind::Diagonal: return "diagonal";
  }
  return "?";
}

/// Where the value of lambda_2 inside g2 comes from.
struct Lambda2Source
{
  Lambda2Kind kind = Lambda2Kind::CertifiedIW;
  double value = 0.0;           // Numeric only
  double upper = kNaN;          // CertifiedIW only: upper end of the admissible interval

  static Lambda2Source certified_iw(const Params& p) { return {Lambda2Kind::CertifiedIW, 0.0, lambda2_upper_iw(p)}; }
  static Lambda2Source numeric(double lambda2) { return {Lambda2Kind::Numeric, lambda2, kNaN}; }
  static Lambda2Source diagonal() { return {Lambda2Kind::Diagonal, 0.0, kNaN}; }
};

struct GConstants
{
  double alpha = 0.0;
  Lambda2Source source;
  double lambda2 = 0.0;  // the proxy actually used in g2
  double g1 = 0.0, g2 = 0.0, g3 = 0.0, g4 = 0.0;
  double E0 = 0.0;     // sqrt(alpha^2 - 1) / 2, lowest eigenvalue at beta = alpha
  double omega = 0.0;  // sqrt(alpha^2 - 1)
};

inline double g1_of(double alpha, double omega) { return (3.0 + std::sqrt(3.0) / omega) / (alpha - 1.0); }
inline double g3_of(double alpha, double omega) { return alpha / (2.0 * omega); }
inline double g4_of(double alpha, double omega) { return std::pow(omega, 1.5) / (4.0 * std::pow(alpha, 1.5)); }

inline GConstants g_constants(double alpha, const Lambda2Source& source)
{
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw DomainError("g_constants: requires alpha>1");
  GConstants g;
  g.alpha = alpha;
  g.source = source;
  g.omega = std::sqrt(alpha * alpha - 1.0);
  g.E0 = 0.5 * g.omega;
  g.g1 = g1_of(alpha, g.omega);
  g.g3 = g3_of(alpha, g.omega);
  g.g4 = g4_of(alpha, g.omega);

  switch (source.kind) {
    case Lambda2Kind::Diagonal: g.lambda2 = g.E0; break;
    case Lambda2Kind::Numeric:
      if (!(source.value > 0.0)) throw DomainError("g_constants: numeric lambda2 must be positive");
      g.lambda2 = source.value;
      break;
    case Lambda2Kind::CertifiedIW: {
      // Worst case over [E0, upper]: the point closest to omega.
      const double upper = source.upper;
      if (!(upper >= g.E0)) throw DomainError("g_constants: admissible lambda2 interval is empty");
      if (upper >= g.omega)
        throw DomainError("g_constants: g2 singular, admissible lambda2 interval reaches sqrt(alpha^2-1)");
      g.lambda2 = upper;
      break;
    }
  }
  const double gap = std::abs(g.omega - g.lambda2);
  if (!(gap > 0.0)) throw DomainError("g_constants: g2 singular at lambda2 = sqrt(alpha^2-1)");
  g.g2 = g.omega / (2.0 * gap) * g.g1 * g.g1;
  return g;
}

struct KappaEll
{
  double kappa = 0.0;
  double ell = 0.0;
};

inline double kappa_of(double eps, const GConstants& g)
{
  const double E = g.E0, g1 = g.g1, g2 = g.g2;
  return E * g1 * g1 + eps * g2 * (E * g1 + g.g3 + g.g4) + eps * eps * 2.0 * E * g1 * g1 * g2 +
         eps * eps * eps * 2.0 * E * g1 * g2 * g2;
}

inline KappaEll kappa_ell(double eps, const GConstants& g)
{
  if (!(eps >= 0.0)) throw DomainError("kappa_ell: eps must be non-negative");
  const double e2g2 = eps * eps * g.g2;
  if (!(e2g2 < 0.5)) throw DomainError("kappa_ell: requires eps^2*g2<1/2");
  const double first = 1.0 - e2g2;
  const double radicand = 1.0 - 2.0 * eps * eps * g.g2 * g.g2;
  if (!(first > 0.0) || !(radicand > 0.0)) throw DomainError("kappa_ell: ell undefined (nonpositive radicand)");
  return {kappa_of(eps, g), first * std::sqrt(radicand)};
}

// ---------------------------------------------------------------------------
// Certificates

enum class CertificateKind { Th1Multiplicity, Th2Simple, Co13Simple, Th3Gap };
enum class Verdict { Certified, HypothesisFailed, ConditionFailed };

inline constexpr std::string_view to_string(CertificateKind k)
{
  switch (k) {
    case CertificateKind::Th1Multiplicity: return "th1";
    case CertificateKind::Th2Simple: return "th2";
    case CertificateKind::Co13Simple: return "co13";
    case CertificateKind::Th3Gap: return "th3";
  }
  return "?";
}

inline constexpr std::string_view to_string(Verdict v)
{
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::HypothesisFailed: return "hypothesis_failed";
    case Verdict::ConditionFailed: return "condition_failed";
  }
  return "?";
}

struct Hypothesis
{
  std::string name;
  bool holds = false;
  double slack = 0.0;
};

struct Certificate
{
  Certificate(CertificateKind k, const Params& p) : kind(k), params(p) {}

  CertificateKind kind;
  Params params;  // as given; formulas use params.canonical()
  std::vector<Hypothesis> hypotheses;
  Verdict verdict = Verdict::HypothesisFailed;
  double margin = kNaN;
  std::map<std::string, double> details;
  std::map<std::string, std::string> notes;

  bool hypotheses_hold() const
  {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) { return h.holds; });
  }
};

/// Multiplicity of E is at most two and ground states are even when alpha, beta > 2.
inline Certificate th1_certificate(const Params& p)
{
  Certificate c(CertificateKind::Th1Multiplicity, p);
  const double m = p.min();
  c.hypotheses.push_back({"alpha>2", p.alpha() > 2.0, p.alpha() - 2.0});
  c.hypotheses.push_back({"beta>2", p.beta() > 2.0, p.beta() - 2.0});
  c.margin = m - 2.0;
  if (m * m > 2.0) c.details["dim_bound"] = 2.0 * (m * m - 1.0) / (m * m - 2.0);
  c.details["min_alpha_beta"] = m;
  c.notes["claim"] = "dim ker(Q-E) <= 2 and ground states are even";
  c.verdict = c.hypotheses_hold() ? Verdict::Certified : Verdict::HypothesisFailed;
  return c;
}

/// Source of E in the simplicity condition.
struct ESource
{
  enum class Kind { EUpper, Numeric } kind = Kind::EUpper;
  RhoVariant variant = RhoVariant::HalfAngle;
  double value = 0.0;

  static ESource upper(RhoVariant v = RhoVariant::HalfAngle) { return {Kind::EUpper, v, 0.0}; }
  static ESource numeric(double e) { return {Kind::Numeric, RhoVariant::HalfAngle, e}; }
};

/// Simplicity from  1/2 > (beta/2 - E)^-2 / (alpha^2 - 1) + 1 / (alpha^2 - 1).
/// With E = E_upper this is the corollary form (kind Co13Simple).
inline Certificate th2_certificate(const Params& p, const ESource& source)
{
  const bool upper = source.kind == ESource::Kind::EUpper;
  Certificate c(upper ? CertificateKind::Co13Simple : CertificateKind::Th2Simple, p);
  const Params q = p.canonical();
  const double a = q.alpha(), b = q.beta();
  c.hypotheses.push_back({"beta>alpha>2", b > a && a > 2.0, std::min(b - a, a - 2.0)});

  const double E = upper ? e_upper(q, source.variant) : source.value;
  c.details["alpha"] = a;
  c.details["beta"] = b;
  c.details["E"] = E;
  c.details["half_beta"] = 0.5 * b;
  c.notes["E_source"] = upper ? std::string("e_upper:") + std::string(to_string(source.variant)) : "numeric";

  const double gap = 0.5 * b - E;
  const bool positive = gap > 0.0;
  c.hypotheses.push_back({"beta/2>E", positive, gap});
  if (!positive) {
    // (beta/2 - E)^-2 presumes beta/2 > E; the decisive inequality is that one.
    c.margin = gap;
    c.verdict = c.hypotheses.front().holds ? Verdict::ConditionFailed : Verdict::HypothesisFailed;
    return c;
  }
  if (!(a > 1.0)) {
    c.verdict = Verdict::HypothesisFailed;
    return c;
  }
  const double rhs = 1.0 / (gap * gap) / (a * a - 1.0) + 1.0 / (a * a - 1.0);
  c.details["rhs"] = rhs;
  c.margin = 0.5 - rhs;
  if (!c.hypotheses.front().holds) c.verdict = Verdict::HypothesisFailed;
  else c.verdict = c.margin > 0.0 ? Verdict::Certified : Verdict::ConditionFailed;
  return c;
}

/// Gap bound |lambda_1 - lambda_2| >= (2 eps / ell) (g4 - eps kappa) near the diagonal.
inline Certificate th3_gap_certificate(const Params& p, const Lambda2Source& source_in)
{
  Certificate c(CertificateKind::Th3Gap, p);
  const Params q = p.canonical();
  const double a = q.alpha(), b = q.beta();
  const double eps = b - a;
  c.details["alpha"] = a;
  c.details["beta"] = b;
  c.details["epsilon"] = eps;

  Lambda2Source source = source_in;
  if (source.kind == Lambda2Kind::CertifiedIW) source.upper = lambda2_upper_iw(q);
  c.notes["lambda2_source"] = std::string(to_string(source.kind));

  c.hypotheses.push_back({"alpha>1", a > 1.0, a - 1.0});
  if (!(a > 1.0)) {
    c.verdict = Verdict::HypothesisFailed;
    return c;
  }
  const double omega = std::sqrt(a * a - 1.0);
  const double spread = 3.0 * omega - std::sqrt(b * b - 1.0);
  c.hypotheses.push_back({"sqrt(beta^2-1)<=3sqrt(alpha^2-1)", spread >= 0.0, spread});

  GConstants g;
  try {
    g = g_constants(a, source);
  } catch (const DomainError& e) {
    c.hypotheses.push_back({"g2_finite", false, 0.0});
    c.notes["g2_error"] = e.what();
    c.verdict = Verdict::HypothesisFailed;
    return c;
  }
  c.details["g1"] = g.g1;
  c.details["g2"] = g.g2;
  c.details["g3"] = g.g3;
  c.details["g4"] = g.g4;
  c.details["E0"] = g.E0;
  c.details["omega"] = g.omega;
  c.details["lambda2"] = g.lambda2;
  // The appendix value of <u1, V u1> is alpha/(4 omega) = g3/2; kappa uses g3 as displayed.
  c.details["u1_V_u1"] = a / (4.0 * omega);

  const double e2g2 = eps * eps * g.g2;
  c.hypotheses.push_back({"eps^2*g2<1/2", e2g2 < 0.5, 0.5 - e2g2});
  const double radicand = 1.0 - 2.0 * eps * eps * g.g2 * g.g2;
  c.hypotheses.push_back({"1-2eps^2*g2^2>0", radicand > 0.0, radicand});

  const double kappa = kappa_of(eps, g);
  c.details["kappa"] = kappa;
  c.margin = g.g4 - eps * kappa;
  if (c.hypotheses_hold()) {
    const auto ke = kappa_ell(eps, g);
    c.details["ell"] = ke.ell;
    c.details["B"] = 2.0 * eps / ke.ell * c.margin;
    c.verdict = (eps > 0.0 && c.margin > 0.0) ? Verdict::Certified : Verdict::ConditionFailed;
  } else {
    c.verdict = Verdict::HypothesisFailed;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Region scans

enum class ScanSource { Closed, Numeric };

struct ScanOptions
{
  Lambda2Kind lambda2 = Lambda2Kind::CertifiedIW;  // th3
  RhoVariant variant = RhoVariant::HalfAngle;      // co13
  SolveOptions solve{};                            // numeric sources (th2, th3 numeric)
  std::size_t threads = 1;
};

struct RegionGrid
{
  CertificateKind kind = CertificateKind::Th1Multiplicity;
  std::vector<double> alpha_grid;
  std::vector<double> beta_grid;
  std::vector<Verdict> verdicts;  // row-major: index = i * beta_grid.size() + j
  std::vector<double> margins;

  Verdict verdict(std::size_t i, std::size_t j) const { return verdicts[i * beta_grid.size() + j]; }
  double margin(std::size_t i, std::size_t j) const { return margins[i * beta_grid.size() + j]; }
};

/// The certificate of the given kind at a single point, with numeric
/// eigenvalues computed when the kind or options require them.
inline Certificate evaluate_certificate(CertificateKind kind, const Params& p, const ScanOptions& opt)
{
  switch (kind) {
    case CertificateKind::Th1Multiplicity: return th1_certificate(p);
    case CertificateKind::Co13Simple: return th2_certificate(p, ESource::upper(opt.variant));
    case CertificateKind::Th2Simple: {
      SolveOptions so = opt.solve;
      so.want_vectors = false;
      const auto spec = converged_spectrum(p, 1, so);
      return th2_certificate(p, ESource::numeric(spec.eigenvalues[0]));
    }
    case CertificateKind::Th3Gap: {
      switch (opt.lambda2) {
        case Lambda2Kind::CertifiedIW: return th3_gap_certificate(p, Lambda2Source::certified_iw(p));
        case Lambda2Kind::Diagonal: return th3_gap_certificate(p, Lambda2Source::diagonal());
        case Lambda2Kind::Numeric: {
          SolveOptions so = opt.solve;
          so.want_vectors = false;
          const auto spec = converged_spectrum(p, 2, so);
          return th3_gap_certificate(p, Lambda2Source::numeric(spec.eigenvalues[1]));
        }
      }
    }
  }
  throw DomainError("evaluate_certificate: unknown kind");
}

inline void check_grid(const std::vector<double>& g, const char* name)
{
  if (g.empty()) throw DomainError(std::string(name) + " grid is empty");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g[i])) throw DomainError(std::string(name) + " grid has a non-finite value");
    if (i > 0 && !(g[i] > g[i - 1])) throw DomainError(std::string(name) + " grid must be strictly increasing");
  }
}

/// Evaluates a certificate on every grid point. Points are distributed over
/// `opt.threads` workers; results are stored by index so the output does not
/// depend on the worker count.
inline RegionGrid scan_region(const std::vector<double>& alpha_grid, const std::vector<double>& beta_grid,
                              CertificateKind kind, const ScanOptions& opt = {})
{
  check_grid(alpha_grid, "alpha");
  check_grid(beta_grid, "beta");
  std::vector<Params> points;
  points.reserve(alpha_grid.size() * beta_grid.size());
  for (double a : alpha_grid)
    for (double b : beta_grid) points.push_back(Params::make(a, b));

  RegionGrid grid;
  grid.kind = kind;
  grid.alpha_grid = alpha_grid;
  grid.beta_grid = beta_grid;
  grid.verdicts.assign(points.size(), Verdict::HypothesisFailed);
  grid.margins.assign(points.size(), kNaN);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size() || failed.load()) return;
      try {
        const auto c = evaluate_certificate(kind, points[i], opt);
        grid.verdicts[i] = c.verdict;
        grid.margins[i] = c.margin;
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  const std::size_t nthreads = std::clamp<std::size_t>(opt.threads, 1, std::max<std::size_t>(1, points.size()));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return grid;
}

}  // namespace ncho
