// Coarse text map of gap-certificate verdicts near the diagonal.

#include <cstdio>

#include "ncho/ncho.hpp"

int main()
{
  ncho::ScanOptions opt;
  std::vector<double> grid;
  for (int i = 0; i < 41; ++i) grid.push_back(1.9 + 0.005 * i);
  const auto g = ncho::scan_region(grid, grid, ncho::CertificateKind::Th3Gap, opt);
  for (std::size_t j = grid.size(); j-- > 0;) {
    std::printf("%6.3f ", grid[j]);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto v = g.verdict(i, j);
      std::putchar(v == ncho::Verdict::Certified ? '#' : v == ncho::Verdict::ConditionFailed ? '.' : ' ');
    }
    std::putchar('\n');
  }
  std::printf("# certified  . condition failed  (alpha to the right, beta up)\n");
}
