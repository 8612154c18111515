#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string_view>

#include "ncho/error.hpp"

namespace ncho {

/// Model parameters (alpha, beta) of the oscillator. Always satisfies
/// alpha > 0, beta > 0 and alpha*beta > 1.
class Params
{
 public:
  static Params make(double alpha, double beta)
  {
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
      throw DomainError("alpha and beta must be finite");
    }
    if (!(alpha > 0.0)) throw DomainError("requires alpha>0");
    if (!(beta > 0.0)) throw DomainError("requires beta>0");
    if (!(alpha * beta > 1.0)) throw DomainError("requires alpha*beta>1");
    return Params(alpha, beta);
  }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double epsilon() const noexcept { return beta_ - alpha_; }
  double min() const noexcept { return std::min(alpha_, beta_); }
  double max() const noexcept { return std::max(alpha_, beta_); }
  bool diagonal() const noexcept { return alpha_ == beta_; }

  Params swapped() const noexcept { return Params(beta_, alpha_); }
  /// Representative with beta >= alpha (the swap is a unitary equivalence).
  Params canonical() const noexcept { return Params(min(), max()); }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  Params(double alpha, double beta) : alpha_(alpha), beta_(beta) {}

  double alpha_;
  double beta_;
};

enum class Parity { Even, Odd };

inline constexpr std::string_view to_string(Parity p)
{
  return p == Parity::Even ? "even" : "odd";
}

/// Offset of the oscillator quantum number within a parity sector.
inline constexpr std::size_t parity_offset(Parity p) { return p == Parity::Even ? 0 : 1; }

/// Basis vector e_spin (x) phi_n of a parity sector, n = 2*level + parity.
struct BasisIndex
{
  std::size_t level = 0;
  int spin = 1;  // 1 or 2
  Parity parity = Parity::Even;

  std::size_t oscillator_number() const { return 2 * level + parity_offset(parity); }
  std::size_t flat() const { return 2 * level + static_cast<std::size_t>(spin - 1); }

  static BasisIndex from_flat(std::size_t k, Parity p)
  {
    return BasisIndex{k / 2, static_cast<int>(k % 2) + 1, p};
  }
};

}  // namespace ncho
