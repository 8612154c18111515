#pragma once

// Text serialization: shortest round-trip numbers, region CSV and SVG heatmap.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "ncho/certificates.hpp"

namespace ncho {

/// Shortest decimal string that parses back to the same double. Always uses '.'.
inline std::string shortest(double v)
{
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// `alpha,beta,verdict,margin` with a header row, row-major in (alpha, beta), LF endings.
inline void write_csv(std::ostream& os, const RegionGrid& grid)
{
  os << "alpha,beta,verdict,margin\n";
  for (std::size_t i = 0; i < grid.alpha_grid.size(); ++i)
    for (std::size_t j = 0; j < grid.beta_grid.size(); ++j)
      os << shortest(grid.alpha_grid[i]) << ',' << shortest(grid.beta_grid[j]) << ','
         << to_string(grid.verdict(i, j)) << ',' << shortest(grid.margin(i, j)) << '\n';
}

inline const char* verdict_color(Verdict v)
{
  switch (v) {
    case Verdict::Certified: return "#1b9e77";
    case Verdict::ConditionFailed: return "#d95f02";
    case Verdict::HypothesisFailed: return "#bdbdbd";
  }
  return "#000000";
}

/// 800x800 heatmap: alpha on the horizontal axis, beta increasing upwards.
/// Colour encodes the verdict, opacity the relative size of |margin|.
inline void write_svg(std::ostream& os, const RegionGrid& grid)
{
  constexpr double size = 800.0;
  const std::size_t na = grid.alpha_grid.size(), nb = grid.beta_grid.size();
  double scale = 0.0;
  for (double m : grid.margins)
    if (std::isfinite(m)) scale = std::max(scale, std::abs(m));
  const double w = size / static_cast<double>(na), h = size / static_cast<double>(nb);

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  os << "<title>" << to_string(grid.kind) << " verdicts</title>\n";
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      const double m = grid.margin(i, j);
      double opacity = 1.0;
      if (scale > 0.0 && std::isfinite(m)) opacity = 0.35 + 0.65 * std::min(1.0, std::abs(m) / scale);
      os << "<rect x=\"" << shortest(w * static_cast<double>(i)) << "\" y=\""
         << shortest(size - h * static_cast<double>(j + 1)) << "\" width=\"" << shortest(w) << "\" height=\""
         << shortest(h) << "\" fill=\"" << verdict_color(grid.verdict(i, j)) << "\" fill-opacity=\""
         << shortest(std::round(opacity * 1000.0) / 1000.0) << "\"/>\n";
    }
  os << "</svg>\n";
}

}  // namespace ncho
