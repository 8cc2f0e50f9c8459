#include <gtest/gtest.h>

#include "cvdisc/channels.hpp"
#include "cvdisc/errors.hpp"
#include "cvdisc/probes.hpp"
#include "oracle.hpp"

namespace cvdisc {
namespace {

using testing::Gen;

TEST(GpiParams, FactoriesFixNoise) {
  const auto loss = GpiParams::pure_loss(0.9L);
  EXPECT_EQ(loss.tau(), 0.9L);
  EXPECT_NEAR(static_cast<double>(loss.nu()), 0.05, 1e-18);
  const auto add = GpiParams::additive_noise(0.02L);
  EXPECT_EQ(add.tau(), 1);
  EXPECT_EQ(add.nu(), 0.02L);
  const auto amp = GpiParams::thermal(1.5L, 0.7L);
  EXPECT_NEAR(static_cast<double>(amp.nu()), 0.35, 1e-15);
}

TEST(GpiParams, RejectsOutOfRange) {
  EXPECT_THROW(GpiParams::pure_loss(1.2L), InvalidArgumentError);
  EXPECT_THROW(GpiParams::pure_loss(-0.1L), InvalidArgumentError);
  EXPECT_THROW(GpiParams::additive_noise(-1), InvalidArgumentError);
  EXPECT_THROW(GpiParams::thermal(0, 1), InvalidArgumentError);
  EXPECT_THROW(GpiParams::thermal(0.5L, 0.2L), InvalidArgumentError);
}

TEST(ChannelFamily, IdenticalChannelsRejected) {
  EXPECT_THROW(ChannelFamily::pure_loss(0.9L, 0.9L), InvalidArgumentError);
  EXPECT_THROW(ChannelFamily::additive_noise(0.1L, 0.1L), InvalidArgumentError);
  EXPECT_NO_THROW(ChannelFamily::thermal(0.9L, 1, 0.9L, 2));
}

TEST(FamilyKind, StringRoundTrip) {
  for (auto k : {FamilyKind::PureLoss, FamilyKind::AdditiveNoise, FamilyKind::Thermal})
    EXPECT_EQ(family_kind_from_string(to_string(k)), k);
  EXPECT_EQ(family_kind_from_string("loss"), FamilyKind::PureLoss);
  EXPECT_THROW(family_kind_from_string("lossy"), InvalidArgumentError);
}

TEST(Pattern, ParsingAndOrder) {
  const auto p = Pattern::from_string("0110");
  EXPECT_EQ(p.size(), 4);
  EXPECT_FALSE(p[0]);
  EXPECT_TRUE(p[1]);
  EXPECT_EQ(p.weight(), 2);
  EXPECT_EQ(p.to_string(), "0110");
  EXPECT_EQ(Pattern::from_string("BTTB"), p);
  EXPECT_LT(Pattern::from_string("0011"), Pattern::from_string("0100"));
  EXPECT_THROW(Pattern::from_string("01x"), InvalidArgumentError);
  EXPECT_THROW(Pattern::from_string(std::string(25, '0')), CapacityError);
}

TEST(Hamming, Examples) {
  const auto x = Pattern::from_string("1011");
  EXPECT_EQ(hamming(x, x), 0);
  EXPECT_EQ(hamming(Pattern::from_string("01"), Pattern::from_string("10")), 2);
  EXPECT_THROW(hamming(Pattern::from_string("01"), Pattern::from_string("010")), DimensionError);
}

TEST(Hamming, MetricProperties) {
  Gen gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = gen.integer(1, 12);
    const auto a = gen.pattern(m), b = gen.pattern(m), c = gen.pattern(m);
    EXPECT_EQ(hamming(a, b), hamming(b, a));
    EXPECT_LE(hamming(a, c), hamming(a, b) + hamming(b, c));
    EXPECT_EQ(hamming(a, b) % 2, (a.weight() + b.weight()) % 2);
  }
}

TEST(ApplyPattern, VacuumThroughLoss) {
  const auto fam = ChannelFamily::pure_loss(0.9L, 0.5L);
  const auto out = apply_pattern(vacuum_cm(2), fam, Pattern::from_string("01"));
  // Pure loss preserves the vacuum.
  EXPECT_TRUE((out.data() - vacuum_cm(2).data()).isZero(1e-18L));
}

TEST(ApplyPattern, ScalesMean) {
  const auto fam = ChannelFamily::pure_loss(0.64L, 0.25L);
  const auto out = apply_pattern(coherent_cm({1, 1}), fam, Pattern::from_string("01"));
  EXPECT_NEAR(static_cast<double>(out.mean()(0)), 0.8 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(static_cast<double>(out.mean()(2)), 0.5 * std::sqrt(2.0), 1e-15);
}

TEST(ApplyPattern, AdditiveNoiseComposes) {
  const auto v = ghz_cm(3, 4.0L);
  const auto p = Pattern::from_string("101");
  const auto once = apply_pattern(
      apply_pattern(v, ChannelFamily::additive_noise(0.01L, 0.03L), p),
      ChannelFamily::additive_noise(0.02L, 0.05L), p);
  const auto both = apply_pattern(v, ChannelFamily::additive_noise(0.03L, 0.08L), p);
  EXPECT_LT(static_cast<double>((once.data() - both.data()).cwiseAbs().maxCoeff()), 1e-12);
}

TEST(ApplyPattern, PreservesBonaFide) {
  Gen gen(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = gen.integer(1, 4);
    const auto fam = gen.family();
    const auto out = apply_pattern(gen.state(m, gen.coin()), fam, gen.pattern(m));
    EXPECT_TRUE(is_bona_fide(out)) << "trial " << trial;
  }
}

TEST(ApplyPattern, DimensionMismatch) {
  const auto fam = ChannelFamily::pure_loss(0.9L, 0.5L);
  EXPECT_THROW(apply_pattern(vacuum_cm(2), fam, Pattern::from_string("011")), DimensionError);
}

TEST(IdlerLayout, ZeroIdlersMatchesPlainChannel) {
  const auto fam = ChannelFamily::additive_noise(0.02L, 0.01L);
  const auto v = ghz_cm(3, 5.0L);
  const auto p = Pattern::from_string("110");
  const auto a = apply_pattern(v, fam, p);
  const auto b = apply_pattern_with_idlers(v, fam, p, IdlerLayout::trivial(3));
  EXPECT_TRUE((a.data() - b.data()).isZero(0));
}

TEST(IdlerLayout, IdlersPassUntouched) {
  IdlerLayout layout;
  layout.blocks.push_back({1, {0}});
  EXPECT_EQ(layout.total_modes(), 2);
  EXPECT_EQ(layout.channel_of_mode(), (std::vector<int>{-1, 0}));
  const auto fam = ChannelFamily::pure_loss(0.9L, 0.5L);
  const auto v = ghz_cm(2, 3.0L);
  const auto out = apply_pattern_with_idlers(v, fam, Pattern::from_string("1"), layout);
  EXPECT_EQ(out.block(0, 0), v.block(0, 0));
  EXPECT_NEAR(static_cast<double>(out.data()(2, 2)), 0.5 * 3 + 0.25, 1e-15);
}

TEST(IdlerLayout, FullAssistanceFactorizesIntoChoiFidelities) {
  // Two TMSVs, each probe + idler: fidelity between [0,0] and [1,1] outputs
  // equals the squared single-channel fidelity.
  const auto fam = ChannelFamily::additive_noise(0.02L, 0.01L);
  const Real mu = 20.5L;
  const auto probe = assemble_probe({idler_full_partition(2), mu}, 2);
  const auto a = apply_pattern_with_idlers(probe.cm, fam, Pattern::from_string("00"), probe.layout);
  const auto b = apply_pattern_with_idlers(probe.cm, fam, Pattern::from_string("11"), probe.layout);
  const auto single = assemble_probe({idler_full_partition(1), mu}, 1);
  const auto sa = apply_pattern_with_idlers(single.cm, fam, Pattern::from_string("0"), single.layout);
  const auto sb = apply_pattern_with_idlers(single.cm, fam, Pattern::from_string("1"), single.layout);
  const Real f1 = gaussian_fidelity(sa, sb);
  EXPECT_NEAR(static_cast<double>(gaussian_fidelity(a, b) / (f1 * f1)), 1.0, 1e-12);
  // Independent high-precision value of the single-channel fidelity.
  EXPECT_NEAR(static_cast<double>(f1), 0.97836945690388557, 1e-12);
}

}  // namespace
}  // namespace cvdisc
