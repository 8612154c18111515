#pragma once

// Command-line front end. run_cli is separate from main so tests can drive it
// with in-memory streams.
//
// Exit codes: 0 success, 2 invalid input, 3 solver or oracle failure,
// 4 verification failure (or non-certified with --assert-certified),
// 5 output path not writable.

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncho/ncho.hpp"

namespace ncho::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kInvalid = 2, kSolver = 3, kVerify = 4, kUnwritable = 5 };

struct UnwritableError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct Range
{
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;

  std::vector<double> values() const
  {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
      v[i] = count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    return v;
  }
};

/// "start:stop:count" with start < stop (or start == stop when count is 1).
inline Range parse_range(const std::string& text, const char* name)
{
  Range r;
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos) throw DomainError(std::string(name) + ": expected start:stop:count");
  try {
    std::size_t used = 0;
    const std::string s0 = text.substr(0, a), s1 = text.substr(a + 1, b - a - 1), s2 = text.substr(b + 1);
    r.start = std::stod(s0, &used);
    if (used != s0.size()) throw std::invalid_argument(s0);
    r.stop = std::stod(s1, &used);
    if (used != s1.size()) throw std::invalid_argument(s1);
    const long long c = std::stoll(s2, &used);
    if (used != s2.size() || c < 1) throw std::invalid_argument(s2);
    r.count = static_cast<std::size_t>(c);
  } catch (const std::logic_error&) {
    throw DomainError(std::string(name) + ": malformed range '" + text + "'");
  }
  if (!std::isfinite(r.start) || !std::isfinite(r.stop)) throw DomainError(std::string(name) + ": non-finite bound");
  if (r.count == 1 ? r.stop < r.start : !(r.stop > r.start))
    throw DomainError(std::string(name) + ": range must be increasing");
  return r;
}

inline std::size_t default_threads()
{
  if (const char* env = std::getenv("NCHO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline CertificateKind parse_kind(const std::string& s)
{
  if (s == "th1") return CertificateKind::Th1Multiplicity;
  if (s == "th2") return CertificateKind::Th2Simple;
  if (s == "co13") return CertificateKind::Co13Simple;
  if (s == "th3") return CertificateKind::Th3Gap;
  throw DomainError("unknown certificate '" + s + "'");
}

inline Lambda2Kind parse_lambda2(const std::string& s)
{
  if (s == "certified-iw") return Lambda2Kind::CertifiedIW;
  if (s == "numeric") return Lambda2Kind::Numeric;
  if (s == "diagonal") return Lambda2Kind::Diagonal;
  throw DomainError("unknown lambda2 source '" + s + "'");
}

inline RhoVariant parse_variant(const std::string& s)
{
  if (s == "half-angle") return RhoVariant::HalfAngle;
  if (s == "paper") return RhoVariant::Paper;
  throw DomainError("unknown e-upper variant '" + s + "'");
}

inline json number(double v)
{
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline json to_json(const Certificate& c)
{
  json j;
  j["theorem"] = std::string(to_string(c.kind));
  j["alpha"] = c.params.alpha();
  j["beta"] = c.params.beta();
  json hyps = json::array();
  for (const auto& h : c.hypotheses) hyps.push_back({{"name", h.name}, {"holds", h.holds}, {"slack", number(h.slack)}});
  j["hypotheses"] = hyps;
  j["verdict"] = std::string(to_string(c.verdict));
  j["margin"] = number(c.margin);
  json details = json::object();
  for (const auto& [k, v] : c.details) details[k] = number(v);
  j["details"] = details;
  json notes = json::object();
  for (const auto& [k, v] : c.notes) notes[k] = v;
  j["notes"] = notes;
  return j;
}

inline json to_json(const CheckRecord& r)
{
  return json{{"check", r.check},
              {"params", {{"alpha", r.alpha}, {"beta", r.beta}}},
              {"margin", number(r.margin)},
              {"pass", r.pass},
              {"value", number(r.value)},
              {"applicable", r.applicable}};
}

struct Common
{
  double alpha = kNaN;
  double beta = kNaN;
  double tol = 1e-10;
};

inline void open_or_throw(std::ofstream& f, const std::string& path)
{
  f.open(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UnwritableError("cannot write '" + path + "'");
}

inline void finish_or_throw(std::ofstream& f, const std::string& path)
{
  f.flush();
  if (!f) throw UnwritableError("failed writing '" + path + "'");
}

inline Certificate certify_one(CertificateKind kind, const Params& p, Lambda2Kind l2, RhoVariant variant, double tol)
{
  ScanOptions opt;
  opt.lambda2 = l2;
  opt.variant = variant;
  opt.solve.tol = tol;
  return evaluate_certificate(kind, p, opt);
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Spectra and certificates for the non-commutative harmonic oscillator Q(alpha, beta)", "ncho"};
  app.require_subcommand(1);

  Common spec_c;
  std::size_t spec_k = 4, l_init = 64, l_max = std::size_t{1} << 14;
  std::string spec_format = "json", dump_path;
  auto* spectrum = app.add_subcommand("spectrum", "lowest k eigenvalues with parity tags");
  spectrum->add_option("--alpha", spec_c.alpha, "alpha")->required();
  spectrum->add_option("--beta", spec_c.beta, "beta")->required();
  spectrum->add_option("--k", spec_k, "number of eigenvalues");
  spectrum->add_option("--tol", spec_c.tol, "convergence tolerance");
  spectrum->add_option("--L-init", l_init, "initial levels per sector");
  spectrum->add_option("--L-max", l_max, "level cap per sector");
  spectrum->add_option("--format", spec_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  spectrum->add_option("--dump-matrix", dump_path, "write both sector matrices as row col value triplets");

  Common cert_c;
  std::string theorem = "auto", lambda2 = "certified-iw", variant = "half-angle";
  bool assert_certified = false;
  auto* certify = app.add_subcommand("certify", "evaluate a theorem condition at one point");
  certify->add_option("--alpha", cert_c.alpha, "alpha")->required();
  certify->add_option("--beta", cert_c.beta, "beta")->required();
  certify->add_option("--theorem", theorem, "th1, th2, th3, co13 or auto")
      ->check(CLI::IsMember({"th1", "th2", "th3", "co13", "auto"}));
  certify->add_option("--lambda2", lambda2, "certified-iw, numeric or diagonal")
      ->check(CLI::IsMember({"certified-iw", "numeric", "diagonal"}));
  certify->add_option("--e-upper-variant", variant, "half-angle or paper")->check(CLI::IsMember({"half-angle", "paper"}));
  certify->add_option("--tol", cert_c.tol, "tolerance for numeric sources");
  certify->add_flag("--assert-certified", assert_certified, "exit 4 unless certified");

  std::string scan_cert = "co13", alpha_range, beta_range, out_path, svg_path, scan_l2 = "certified-iw",
              scan_variant = "half-angle";
  std::optional<std::size_t> threads;
  double scan_tol = 1e-10;
  auto* scan = app.add_subcommand("scan", "evaluate a certificate over a parameter grid");
  scan->add_option("--certificate", scan_cert, "th1, th2, th3 or co13")
      ->check(CLI::IsMember({"th1", "th2", "th3", "co13"}));
  scan->add_option("--alpha-range", alpha_range, "start:stop:count")->required();
  scan->add_option("--beta-range", beta_range, "start:stop:count")->required();
  scan->add_option("--out", out_path, "CSV output path (default stdout)");
  scan->add_option("--svg", svg_path, "SVG heatmap path");
  scan->add_option("--threads", threads, "worker threads (overrides NCHO_THREADS)")->check(CLI::PositiveNumber);
  scan->add_option("--lambda2", scan_l2, "certified-iw, numeric or diagonal")
      ->check(CLI::IsMember({"certified-iw", "numeric", "diagonal"}));
  scan->add_option("--e-upper-variant", scan_variant, "half-angle or paper")
      ->check(CLI::IsMember({"half-angle", "paper"}));
  scan->add_option("--tol", scan_tol, "tolerance for numeric sources");

  Common zeta_c;
  double s = 2.0;
  std::size_t terms = 40;
  auto* zeta = app.add_subcommand("zeta", "spectral zeta partial sum with tail bracket");
  zeta->add_option("--alpha", zeta_c.alpha, "alpha")->required();
  zeta->add_option("--beta", zeta_c.beta, "beta")->required();
  zeta->add_option("--s", s, "exponent, s > 1");
  zeta->add_option("--terms", terms, "number of eigenvalues summed (even)");
  zeta->add_option("--tol", zeta_c.tol, "convergence tolerance");

  Common ver_c;
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run verification suites, one JSON line per check");
  verify->add_option("--suite", suite, "ptb1, parity, qhat, swap, closedform, iw or all");
  verify->add_option("--alpha", ver_c.alpha, "alpha")->required();
  verify->add_option("--beta", ver_c.beta, "beta (default: alpha)");
  verify->add_option("--tol", ver_c.tol, "convergence tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalid;
  }

  try {
    if (*spectrum) {
      if (spec_k < 1) throw DomainError("--k must be at least 1");
      const auto p = Params::make(spec_c.alpha, spec_c.beta);
      SolveOptions opt;
      opt.tol = spec_c.tol;
      opt.initial_levels = l_init;
      opt.max_levels = l_max;
      if (!(opt.tol > 0.0)) throw DomainError("--tol must be positive");
      std::ofstream dump;
      if (!dump_path.empty()) open_or_throw(dump, dump_path);
      const auto r = converged_spectrum(p, spec_k, opt);
      if (!dump_path.empty()) {
        for (auto parity : {Parity::Even, Parity::Odd}) {
          const std::size_t levels = parity == Parity::Even ? r.levels_even : r.levels_odd;
          dump << "# " << to_string(parity) << " L=" << levels << '\n';
          assemble_sector(p, parity, levels).write_triplets(dump);
        }
        finish_or_throw(dump, dump_path);
      }
      if (spec_format == "csv") {
        out << "index,value,parity,residual\n";
        for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
          out << i + 1 << ',' << shortest(r.eigenvalues[i]) << ',' << to_string(r.parities[i]) << ','
              << shortest(r.residuals[i]) << '\n';
      } else {
        json eigs = json::array();
        for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
          eigs.push_back({{"value", r.eigenvalues[i]},
                          {"parity", std::string(to_string(r.parities[i]))},
                          {"residual", r.residuals[i]}});
        json j{{"alpha", p.alpha()},   {"beta", p.beta()}, {"tol", opt.tol},
               {"eigs", eigs},         {"L", {{"even", r.levels_even}, {"odd", r.levels_odd}}}};
        out << j.dump() << '\n';
      }
      return kOk;
    }

    if (*certify) {
      const auto p = Params::make(cert_c.alpha, cert_c.beta);
      if (!(cert_c.tol > 0.0)) throw DomainError("--tol must be positive");
      const auto l2 = parse_lambda2(lambda2);
      const auto var = parse_variant(variant);
      Verdict verdict;
      if (theorem == "auto") {
        // Tried in order th1, th3, co13, th2; the first certified one is reported.
        json attempts = json::array();
        std::optional<json> chosen;
        verdict = Verdict::HypothesisFailed;
        for (const char* name : {"th1", "th3", "co13", "th2"}) {
          const auto c = certify_one(parse_kind(name), p, l2, var, cert_c.tol);
          attempts.push_back(
              {{"theorem", name}, {"verdict", std::string(to_string(c.verdict))}, {"margin", number(c.margin)}});
          if (c.verdict == Verdict::Certified) {
            chosen = to_json(c);
            verdict = c.verdict;
            break;
          }
        }
        json j = chosen ? *chosen : json{{"theorem", "auto"}, {"verdict", std::string(to_string(verdict))}};
        j["attempts"] = attempts;
        out << j.dump() << '\n';
      } else {
        const auto c = certify_one(parse_kind(theorem), p, l2, var, cert_c.tol);
        verdict = c.verdict;
        out << to_json(c).dump() << '\n';
      }
      return assert_certified && verdict != Verdict::Certified ? kVerify : kOk;
    }

    if (*scan) {
      const auto ar = parse_range(alpha_range, "--alpha-range");
      const auto br = parse_range(beta_range, "--beta-range");
      if (!(scan_tol > 0.0)) throw DomainError("--tol must be positive");
      ScanOptions opt;
      opt.lambda2 = parse_lambda2(scan_l2);
      opt.variant = parse_variant(scan_variant);
      opt.solve.tol = scan_tol;
      opt.threads = threads ? *threads : default_threads();
      std::ofstream csv, svg;
      if (!out_path.empty()) open_or_throw(csv, out_path);
      if (!svg_path.empty()) open_or_throw(svg, svg_path);
      const auto grid = scan_region(ar.values(), br.values(), parse_kind(scan_cert), opt);
      if (out_path.empty()) {
        write_csv(out, grid);
      } else {
        write_csv(csv, grid);
        finish_or_throw(csv, out_path);
      }
      if (!svg_path.empty()) {
        write_svg(svg, grid);
        finish_or_throw(svg, svg_path);
      }
      return kOk;
    }

    if (*zeta) {
      const auto p = Params::make(zeta_c.alpha, zeta_c.beta);
      const auto z = zeta_partial(p, s, terms, zeta_c.tol);
      json j{{"alpha", p.alpha()},
             {"beta", p.beta()},
             {"s", z.s},
             {"terms", z.n_terms},
             {"partial", z.partial},
             {"tail_low", z.tail_low},
             {"tail_high", z.tail_high},
             {"partial_err_low", z.partial_err_low},
             {"partial_err_high", z.partial_err_high},
             {"lower", z.lower()},
             {"upper", z.upper()},
             {"width", z.width()}};
      out << j.dump() << '\n';
      return kOk;
    }

    if (*verify) {
      const double beta = std::isnan(ver_c.beta) ? ver_c.alpha : ver_c.beta;
      const auto p = Params::make(ver_c.alpha, beta);
      if (!(ver_c.tol > 0.0)) throw DomainError("--tol must be positive");
      const auto records = run_suite(suite, p, ver_c.tol);
      bool ok = true;
      for (const auto& r : records) {
        out << to_json(r).dump() << '\n';
        ok = ok && r.pass;
      }
      return ok ? kOk : kVerify;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const OracleError& e) {
    err << "oracle error: " << e.what() << '\n';
    return kSolver;
  } catch (const UnwritableError& e) {
    err << "error: " << e.what() << '\n';
    return kUnwritable;
  }
  return kInvalid;
}

}  // namespace ncho::cli
