#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ncho/certificates.hpp"

using namespace ncho;

TEST(IwBounds, Examples)
{
  auto [lo, hi] = iw_bounds(Params::make(2.0, 3.0), 1);
  EXPECT_NEAR(lo, 0.91287092917527686, 1e-15);
  EXPECT_NEAR(hi, 1.3693063937629153, 1e-15);
  std::tie(lo, hi) = iw_bounds(Params::make(2.0, 2.0), 1);
  EXPECT_NEAR(lo, std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(lo, hi);
  std::tie(lo, hi) = iw_bounds(Params::make(2.0, 2.0), 2);
  EXPECT_NEAR(lo, 1.5 * std::sqrt(3.0), 1e-15);
  EXPECT_THROW(iw_bounds(Params::make(2.0, 2.0), 0), DomainError);
}

TEST(IwBounds, Lambda2UpperIsFirstUpper)
{
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.3, 9.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng), b = u(rng);
    if (a * b <= 1.0) continue;
    const auto p = Params::make(a, b);
    EXPECT_EQ(lambda2_upper_iw(p), iw_bounds(p, 1).second);
  }
  EXPECT_NEAR(lambda2_upper_iw(Params::make(2.0, 3.0)), 1.3693063937629153, 1e-15);
  EXPECT_NEAR(lambda2_upper_iw(Params::make(2.0, 2.0)), 0.8660254037844386, 1e-15);
}

TEST(EUpper, DiagonalEqualsLowest)
{
  for (auto v : {RhoVariant::HalfAngle, RhoVariant::Paper})
    EXPECT_NEAR(e_upper(Params::make(2.0, 2.0), v), std::sqrt(3.0) / 2.0, 1e-15);
}

TEST(EUpper, FrozenValues)
{
  EXPECT_NEAR(e_upper(Params::make(2.0, 3.0)), 0.9229620824184807, 1e-14);
  EXPECT_NEAR(e_upper(Params::make(2.0, 3.0), RhoVariant::Paper), 0.8812428294459961, 1e-14);
  EXPECT_NEAR(e_upper(Params::make(3.0, 20.0)), 1.491427122948629, 1e-13);
  // half-angle value exceeds the IW lower bound; the printed variant does not
  EXPECT_GT(e_upper(Params::make(2.0, 3.0)), iw_bounds(Params::make(2.0, 3.0), 1).first);
  EXPECT_LT(e_upper(Params::make(2.0, 3.0), RhoVariant::Paper), iw_bounds(Params::make(2.0, 3.0), 1).first);
}

TEST(EUpper, HalfAngleRhoIsPrincipalRoot)
{
  for (double ab : {1.5, 4.0, 60.0}) {
    const auto p = Params::make(ab, 1.0);
    const auto rho = std::sqrt(std::complex<double>(std::sqrt(ab - 1.0), -1.0));
    EXPECT_NEAR(re_rho(p, RhoVariant::HalfAngle), rho.real(), 1e-14);
    EXPECT_NE(re_rho(p, RhoVariant::Paper), rho.real());
  }
}

TEST(GConstants, AlphaTwo)
{
  const auto g = g_constants(2.0, Lambda2Source::diagonal());
  EXPECT_NEAR(g.g1, 4.0, 1e-15);
  EXPECT_NEAR(g.g2, 16.0, 1e-13);
  EXPECT_NEAR(g.g3, 0.5773502691896258, 1e-15);
  EXPECT_NEAR(g.g4, 0.20148186221691411, 1e-15);
  EXPECT_NEAR(g.g4, std::pow(3.0, 0.75) / (4.0 * std::pow(2.0, 1.5)), 1e-15);
  EXPECT_NEAR(g.E0, std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_EQ(g.source.kind, Lambda2Kind::Diagonal);
}

TEST(GConstants, Sources)
{
  const auto p = Params::make(2.0, 2.01);
  const auto iw = g_constants(2.0, Lambda2Source::certified_iw(p));
  EXPECT_DOUBLE_EQ(iw.lambda2, lambda2_upper_iw(p));
  const auto num = g_constants(2.0, Lambda2Source::numeric(0.9));
  EXPECT_DOUBLE_EQ(num.lambda2, 0.9);
  EXPECT_NEAR(num.g2, std::sqrt(3.0) / (2.0 * (std::sqrt(3.0) - 0.9)) * 16.0, 1e-13);
}

TEST(GConstants, Errors)
{
  EXPECT_THROW(g_constants(1.0, Lambda2Source::diagonal()), DomainError);
  EXPECT_THROW(g_constants(2.0, Lambda2Source::numeric(std::sqrt(3.0))), DomainError);
  EXPECT_THROW(g_constants(2.0, Lambda2Source::numeric(-1.0)), DomainError);
  // admissible interval reaching omega
  EXPECT_THROW(g_constants(1.2, Lambda2Source::certified_iw(Params::make(1.2, 6.0))), DomainError);
}

TEST(KappaEll, EpsZero)
{
  const auto g = g_constants(2.0, Lambda2Source::diagonal());
  const auto ke = kappa_ell(0.0, g);
  EXPECT_NEAR(ke.kappa, 13.856406460551018, 1e-12);
  EXPECT_DOUBLE_EQ(ke.ell, 1.0);
}

TEST(KappaEll, EpsOneHundredth)
{
  const auto g = g_constants(2.0, Lambda2Source::diagonal());
  const auto ke = kappa_ell(0.01, g);
  EXPECT_NEAR(ke.kappa, 14.581389980698819, 1e-12);
  EXPECT_NEAR(ke.ell, 0.97250515110615224, 1e-14);
}

TEST(KappaEll, HypothesisGate)
{
  const auto g = g_constants(2.0, Lambda2Source::diagonal());
  EXPECT_THROW(kappa_ell(0.2, g), DomainError);   // eps^2 g2 = 0.64
  EXPECT_THROW(kappa_ell(0.06, g), DomainError);  // 1 - 2 eps^2 g2^2 < 0
  EXPECT_THROW(kappa_ell(-0.01, g), DomainError);
}

TEST(Th3, DiagonalConditionFailed)
{
  const auto c = th3_gap_certificate(Params::make(2.0, 2.0), Lambda2Source::certified_iw(Params::make(2.0, 2.0)));
  EXPECT_EQ(c.verdict, Verdict::ConditionFailed);
  EXPECT_NEAR(c.margin, c.details.at("g4"), 1e-15);
  EXPECT_EQ(c.details.at("B"), 0.0);
  EXPECT_TRUE(c.hypotheses_hold());
}

TEST(Th3, NearDiagonalCertified)
{
  const auto p = Params::make(2.0, 2.01);
  const auto c = th3_gap_certificate(p, Lambda2Source::numeric(0.87));
  EXPECT_EQ(c.verdict, Verdict::Certified);
  EXPECT_GT(c.details.at("B"), 0.0);
  EXPECT_GT(c.margin, 0.0);
  // margin and bound re-derive from the details
  const double eps = c.details.at("epsilon");
  EXPECT_NEAR(c.margin, c.details.at("g4") - eps * c.details.at("kappa"), 1e-12);
  EXPECT_NEAR(c.details.at("B"), 2.0 * eps / c.details.at("ell") * c.margin, 1e-12);
  EXPECT_NEAR(c.details.at("u1_V_u1"), c.details.at("g3") / 2.0, 1e-15);
}

TEST(Th3, MarginAlwaysMatchesFormula)
{
  const auto p = Params::make(2.0, 2.5);
  const auto c = th3_gap_certificate(p, Lambda2Source::diagonal());
  // hypothesis sqrt(beta^2-1) <= 3 sqrt(alpha^2-1) holds
  EXPECT_TRUE(c.hypotheses[1].holds);
  const auto g = g_constants(2.0, Lambda2Source::diagonal());
  EXPECT_NEAR(c.margin, g.g4 - 0.5 * kappa_of(0.5, g), 1e-12);
  EXPECT_NE(c.verdict, Verdict::Certified);
}

TEST(Th3, SwapInvariant)
{
  for (auto src : {Lambda2Kind::Diagonal, Lambda2Kind::CertifiedIW}) {
    const auto p = Params::make(3.0, 3.004);
    const auto q = p.swapped();
    const auto sp = src == Lambda2Kind::Diagonal ? Lambda2Source::diagonal() : Lambda2Source::certified_iw(p);
    const auto sq = src == Lambda2Kind::Diagonal ? Lambda2Source::diagonal() : Lambda2Source::certified_iw(q);
    const auto a = th3_gap_certificate(p, sp);
    const auto b = th3_gap_certificate(q, sq);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.margin, b.margin);
    EXPECT_EQ(a.details, b.details);
  }
}

TEST(Th3, AlphaNotAboveOne)
{
  const auto c = th3_gap_certificate(Params::make(0.9, 1.5), Lambda2Source::diagonal());
  EXPECT_EQ(c.verdict, Verdict::HypothesisFailed);
}

TEST(Th3, SingularG2IsHypothesisFailure)
{
  const auto p = Params::make(1.2, 6.0);
  const auto c = th3_gap_certificate(p, Lambda2Source::certified_iw(p));
  EXPECT_EQ(c.verdict, Verdict::HypothesisFailed);
  EXPECT_TRUE(c.notes.count("g2_error"));
}

TEST(Co13, FigureOnePoint)
{
  const auto c = th2_certificate(Params::make(3.0, 20.0), ESource::upper());
  EXPECT_EQ(c.kind, CertificateKind::Co13Simple);
  EXPECT_EQ(c.verdict, Verdict::Certified);
  EXPECT_NEAR(c.details.at("rhs"), 0.12672661920419213, 1e-13);
  EXPECT_NEAR(c.margin, 0.5 - 0.12672661920419213, 1e-13);
}

TEST(Th2, NumericSourceKind)
{
  const auto c = th2_certificate(Params::make(20.0, 3.0), ESource::numeric(1.4));
  EXPECT_EQ(c.kind, CertificateKind::Th2Simple);
  EXPECT_EQ(c.verdict, Verdict::Certified);
  EXPECT_DOUBLE_EQ(c.details.at("beta"), 20.0);
}

TEST(Th2, NearDiagonalConditionFailed)
{
  const auto c = th2_certificate(Params::make(3.999, 4.0), ESource::numeric(0.5 * std::sqrt(15.0)));
  EXPECT_EQ(c.verdict, Verdict::ConditionFailed);
  EXPECT_LT(c.margin, 0.0);
}

TEST(Th2, HalfBetaBelowE)
{
  const auto c = th2_certificate(Params::make(2.5, 2.6), ESource::numeric(1.4));
  EXPECT_EQ(c.verdict, Verdict::ConditionFailed);
  EXPECT_NEAR(c.margin, 1.3 - 1.4, 1e-15);
}

TEST(Th2, AlphaAtMostTwo)
{
  EXPECT_EQ(th2_certificate(Params::make(1.5, 10.0), ESource::upper()).verdict, Verdict::HypothesisFailed);
  EXPECT_EQ(th2_certificate(Params::make(3.0, 3.0), ESource::upper()).verdict, Verdict::HypothesisFailed);
}

TEST(Th1, Examples)
{
  const auto a = th1_certificate(Params::make(3.0, 3.0));
  EXPECT_EQ(a.verdict, Verdict::Certified);
  EXPECT_NEAR(a.details.at("dim_bound"), 16.0 / 7.0, 1e-15);
  EXPECT_EQ(th1_certificate(Params::make(2.0, 5.0)).verdict, Verdict::HypothesisFailed);
  EXPECT_EQ(th1_certificate(Params::make(2.5, 2.5)).verdict, Verdict::Certified);
}

TEST(Certificates, CertifiedImpliesHypothesesAndPositiveMargin)
{
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(1.05, 12.0);
  for (int i = 0; i < 300; ++i) {
    const auto p = Params::make(u(rng), u(rng));
    for (const auto& c : {th1_certificate(p), th2_certificate(p, ESource::upper()),
                          th3_gap_certificate(p, Lambda2Source::certified_iw(p))}) {
      if (c.verdict == Verdict::Certified) {
        EXPECT_TRUE(c.hypotheses_hold());
        EXPECT_GT(c.margin, 0.0);
      }
    }
    // swap invariance of closed-form certificates
    const auto a = th2_certificate(p, ESource::upper());
    const auto b = th2_certificate(p.swapped(), ESource::upper());
    EXPECT_EQ(a.verdict, b.verdict);
    if (!std::isnan(a.margin)) {
      EXPECT_EQ(a.margin, b.margin);
    }
  }
}

TEST(ScanRegion, SingleCellMatchesPointwise)
{
  const auto grid = scan_region({3.0}, {20.0}, CertificateKind::Co13Simple);
  ASSERT_EQ(grid.verdicts.size(), 1u);
  const auto c = th2_certificate(Params::make(3.0, 20.0), ESource::upper());
  EXPECT_EQ(grid.verdict(0, 0), c.verdict);
  EXPECT_EQ(grid.margin(0, 0), c.margin);
}

TEST(ScanRegion, ThreadCountDoesNotChangeResult)
{
  std::vector<double> g;
  for (int i = 0; i < 25; ++i) g.push_back(2.05 + 0.25 * i);
  ScanOptions one, four;
  four.threads = 4;
  const auto a = scan_region(g, g, CertificateKind::Th3Gap, one);
  const auto b = scan_region(g, g, CertificateKind::Th3Gap, four);
  EXPECT_EQ(a.verdicts, b.verdicts);
  for (std::size_t i = 0; i < a.margins.size(); ++i)
    EXPECT_TRUE(a.margins[i] == b.margins[i] || (std::isnan(a.margins[i]) && std::isnan(b.margins[i])));
}

TEST(ScanRegion, RejectsBadGrids)
{
  EXPECT_THROW(scan_region({}, {1.0}, CertificateKind::Th1Multiplicity), DomainError);
  EXPECT_THROW(scan_region({2.0, 1.0}, {3.0}, CertificateKind::Th1Multiplicity), DomainError);
  EXPECT_THROW(scan_region({0.5}, {1.0}, CertificateKind::Th1Multiplicity), DomainError);
}
