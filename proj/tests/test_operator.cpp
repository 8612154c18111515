#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ncho/eigensolve.hpp"
#include "ncho/operator.hpp"

using namespace ncho;

namespace {

BasisIndex at(std::size_t level, int spin, Parity parity) { return BasisIndex{level, spin, parity}; }

}  // namespace

TEST(MatrixElement, DiagonalTerms)
{
  const auto p = Params::make(2.0, 3.0);
  EXPECT_DOUBLE_EQ(matrix_element(p, at(0, 1, Parity::Even), at(0, 1, Parity::Even)), 1.0);
  EXPECT_DOUBLE_EQ(matrix_element(p, at(0, 2, Parity::Even), at(0, 2, Parity::Even)), 1.5);
  EXPECT_DOUBLE_EQ(matrix_element(p, at(0, 1, Parity::Even), at(0, 2, Parity::Even)), 0.0);
}

TEST(MatrixElement, LadderCoupling)
{
  const auto p = Params::make(2.0, 3.0);
  EXPECT_NEAR(matrix_element(p, at(0, 1, Parity::Even), at(1, 2, Parity::Even)), -std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(matrix_element(p, at(1, 2, Parity::Even), at(0, 1, Parity::Even)), -std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(matrix_element(p, at(0, 2, Parity::Even), at(1, 1, Parity::Even)), std::sqrt(2.0) / 2.0, 1e-15);
  // same spin never couples off the diagonal
  EXPECT_EQ(matrix_element(p, at(0, 1, Parity::Even), at(1, 1, Parity::Even)), 0.0);
  // n and n+4 do not couple
  EXPECT_EQ(matrix_element(p, at(0, 1, Parity::Even), at(2, 2, Parity::Even)), 0.0);
}

TEST(MatrixElement, SymmetricOverRandomPairs)
{
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ab(0.6, 8.0);
  std::uniform_int_distribution<std::size_t> lvl(0, 30);
  std::uniform_int_distribution<int> spin(1, 2);
  for (int trial = 0; trial < 2000; ++trial) {
    double a = ab(rng), b = ab(rng);
    if (a * b <= 1.0) continue;
    const auto p = Params::make(a, b);
    const Parity parity = trial % 2 ? Parity::Odd : Parity::Even;
    const auto r = at(lvl(rng), spin(rng), parity);
    const auto c = at(lvl(rng), spin(rng), parity);
    EXPECT_EQ(matrix_element(p, r, c), matrix_element(p, c, r));
  }
}

TEST(MatrixElement, ParityMismatchThrows)
{
  const auto p = Params::make(2.0, 3.0);
  EXPECT_THROW(matrix_element(p, at(0, 1, Parity::Even), at(0, 1, Parity::Odd)), DomainError);
}

TEST(AssembleSector, DiagonalEvenL2)
{
  const auto m = assemble_sector(Params::make(2.0, 2.0), Parity::Even, 2);
  ASSERT_EQ(m.dim(), 4u);
  EXPECT_EQ(m.half_bandwidth(), 3u);
  EXPECT_DOUBLE_EQ(m(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(m(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(m(2, 2), 5.0);
  EXPECT_DOUBLE_EQ(m(3, 3), 5.0);
  EXPECT_NEAR(std::abs(m(0, 3)), std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 2)), std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_EQ(m(0, 2), 0.0);
  EXPECT_EQ(m(0, 1), 0.0);
}

TEST(AssembleSector, OddDiagonal)
{
  const auto m = assemble_sector(Params::make(2.0, 3.0), Parity::Odd, 3);
  const double expected[] = {2.0 * 1.5, 3.0 * 1.5, 2.0 * 3.5, 3.0 * 3.5, 2.0 * 5.5, 3.0 * 5.5};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(m(i, i), expected[i]);
}

TEST(AssembleSector, EntriesMatchMatrixElement)
{
  const auto p = Params::make(1.7, 4.2);
  for (auto parity : {Parity::Even, Parity::Odd}) {
    const auto m = assemble_sector(p, parity, 12);
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j)
        EXPECT_EQ(m(i, j), matrix_element(p, BasisIndex::from_flat(i, parity), BasisIndex::from_flat(j, parity)));
  }
}

TEST(AssembleSector, FormsAgreeEntrywise)
{
  for (auto [a, b] : {std::pair{2.0, 3.0}, {0.7, 5.0}, {4.0, 4.0}}) {
    const auto p = Params::make(a, b);
    for (auto parity : {Parity::Even, Parity::Odd}) {
      for (std::size_t L : {2u, 5u, 33u}) {
        const auto ladder = assemble_sector(p, parity, L, OperatorForm::Ladder);
        const auto tensor = assemble_sector(p, parity, L, OperatorForm::Tensor);
        const auto pauli = assemble_sector(p, parity, L, OperatorForm::Pauli);
        EXPECT_EQ(ladder, pauli);
        for (std::size_t i = 0; i < ladder.dim(); ++i)
          for (std::size_t j = 0; j < ladder.dim(); ++j) EXPECT_NEAR(ladder(i, j), tensor(i, j), 1e-12 * (1.0 + i));
      }
    }
  }
}

TEST(AssembleSector, RejectsTooFewLevels)
{
  EXPECT_THROW(assemble_sector(Params::make(2.0, 3.0), Parity::Even, 1), DomainError);
}

TEST(AssembleSector, PositiveAtEveryTruncation)
{
  for (auto [a, b] : {std::pair{2.0, 3.0}, {0.6, 1.8}, {1.05, 1.0}, {10.0, 0.2}}) {
    const auto p = Params::make(a, b);
    for (auto parity : {Parity::Even, Parity::Odd}) {
      for (std::size_t L : {2u, 8u, 64u}) {
        const auto tri = tridiagonalize(assemble_sector(p, parity, L), false);
        EXPECT_EQ(sturm_count(tri.diag, tri.offdiag, 0.0), 0u) << a << "," << b << " L=" << L;
      }
    }
  }
}

TEST(ApplyNumber, Examples)
{
  std::vector<double> v(8, 0.0);
  v[0] = 1.0;
  for (double x : apply_number(Parity::Even, v)) EXPECT_EQ(x, 0.0);

  std::vector<double> w(8, 0.0);
  w[1] = 1.0;
  EXPECT_EQ(apply_number(Parity::Odd, w)[1], 1.0);

  std::vector<double> u(8, 0.0);
  u[6] = 1.0;
  EXPECT_EQ(apply_number(Parity::Even, u)[6], 6.0);

  EXPECT_THROW(apply_number(Parity::Even, std::vector<double>(3, 1.0)), DomainError);
}

TEST(ApplyV, Examples)
{
  std::vector<double> v(8, 0.0);
  v[0] = 1.0;
  for (double x : apply_V(Parity::Even, v)) EXPECT_EQ(x, 0.0);

  std::vector<double> w(8, 0.0);
  w[1] = 1.0;
  EXPECT_EQ(apply_V(Parity::Even, w)[1], 0.5);

  std::vector<double> u(8, 0.0);
  u[5] = 1.0;
  EXPECT_EQ(apply_V(Parity::Odd, u)[5], 5.5);

  EXPECT_THROW(apply_V(Parity::Odd, std::vector<double>(5, 1.0)), DomainError);
}

TEST(BandedMatrix, SetOutsideBandThrows)
{
  BandedSymmetricMatrix m(6, 2);
  EXPECT_THROW(m.set(0, 4, 1.0), DomainError);
  EXPECT_NO_THROW(m.set(0, 4, 0.0));
  EXPECT_THROW(m.set(0, 1, std::nan("")), DomainError);
  m.set(0, 2, 3.0);
  EXPECT_EQ(m(2, 0), 3.0);
  EXPECT_EQ(m(0, 2), 3.0);
}

TEST(BandedMatrix, MultiplyMatchesDense)
{
  const auto m = assemble_sector(Params::make(2.0, 3.0), Parity::Even, 10);
  std::vector<double> v(m.dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(1.0 + i);
  const auto mv = m.multiply(v);
  const auto d = m.to_dense();
  for (std::size_t i = 0; i < v.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) s += d(i, j) * v[j];
    EXPECT_NEAR(mv[i], s, 1e-12);
  }
}

TEST(BandedMatrix, TripletDump)
{
  const auto m = assemble_sector(Params::make(2.0, 2.0), Parity::Even, 2);
  std::ostringstream os;
  m.write_triplets(os);
  EXPECT_NE(os.str().find("0 0 1\n"), std::string::npos);
  std::size_t lines = 0;
  for (char c : os.str()) lines += c == '\n';
  EXPECT_EQ(lines, 8u);  // 4 diagonal + 4 off-diagonal
}
