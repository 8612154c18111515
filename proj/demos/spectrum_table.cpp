// Lowest eigenvalues of Q(alpha, beta) with parities and IW intervals.

#include <cstdio>
#include <cstdlib>

#include "ncho/ncho.hpp"

int main(int argc, char** argv)
{
  const double alpha = argc > 1 ? std::atof(argv[1]) : 2.0;
  const double beta = argc > 2 ? std::atof(argv[2]) : 3.0;
  try {
    const auto p = ncho::Params::make(alpha, beta);
    const auto r = ncho::converged_spectrum(p, 10, {});
    std::printf("Q(%g, %g), L = %zu/%zu\n", alpha, beta, r.levels_even, r.levels_odd);
    std::printf("%3s %22s %6s %12s %12s\n", "n", "lambda", "parity", "iw_low", "iw_high");
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
      const auto [lo, hi] = ncho::iw_bounds(p, i / 2 + 1);
      std::printf("%3zu %22.16f %6s %12.6f %12.6f\n", i + 1, r.eigenvalues[i], ncho::to_string(r.parities[i]).data(), lo, hi);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
}
