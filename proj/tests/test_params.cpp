#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "ncho/params.hpp"

using namespace ncho;

TEST(Params, AcceptsValidPoint)
{
  const auto p = Params::make(2.0, 3.0);
  EXPECT_DOUBLE_EQ(p.alpha(), 2.0);
  EXPECT_DOUBLE_EQ(p.beta(), 3.0);
  EXPECT_DOUBLE_EQ(p.epsilon(), 1.0);
  EXPECT_DOUBLE_EQ(p.min(), 2.0);
  EXPECT_DOUBLE_EQ(p.max(), 3.0);
  EXPECT_FALSE(p.diagonal());
}

TEST(Params, RejectsProductAtMostOne)
{
  EXPECT_THROW(Params::make(1.0, 1.0), DomainError);
  EXPECT_THROW(Params::make(0.5, 2.0), DomainError);
  try {
    Params::make(1.0, 1.0);
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("requires alpha*beta>1"), std::string::npos);
  }
}

TEST(Params, RejectsNonPositiveAndNonFinite)
{
  EXPECT_THROW(Params::make(-2.0, -3.0), DomainError);
  EXPECT_THROW(Params::make(0.0, 5.0), DomainError);
  EXPECT_THROW(Params::make(std::numeric_limits<double>::quiet_NaN(), 2.0), DomainError);
  EXPECT_THROW(Params::make(2.0, std::numeric_limits<double>::infinity()), DomainError);
}

TEST(Params, SwapAndCanonical)
{
  const auto p = Params::make(3.0, 1.5);
  EXPECT_EQ(p.swapped(), Params::make(1.5, 3.0));
  EXPECT_EQ(p.canonical(), Params::make(1.5, 3.0));
  EXPECT_EQ(Params::make(1.5, 3.0).canonical(), Params::make(1.5, 3.0));
  EXPECT_TRUE(Params::make(2.0, 2.0).diagonal());
}

TEST(BasisIndex, FlatIndexIsBijective)
{
  for (auto parity : {Parity::Even, Parity::Odd}) {
    for (std::size_t k = 0; k < 40; ++k) {
      const auto idx = BasisIndex::from_flat(k, parity);
      EXPECT_EQ(idx.flat(), k);
      EXPECT_EQ(idx.oscillator_number(), 2 * idx.level + parity_offset(parity));
    }
  }
  EXPECT_EQ((BasisIndex{3, 2, Parity::Odd}).oscillator_number(), 7u);
}
