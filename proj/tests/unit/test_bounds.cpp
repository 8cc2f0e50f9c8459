#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "cvdisc/bounds.hpp"
#include "cvdisc/combinatorics.hpp"
#include "cvdisc/errors.hpp"
#include "oracle.hpp"

namespace cvdisc {
namespace {

using testing::Gen;

double rel(Real a, Real b) { return static_cast<double>(std::fabs(a - b) / std::fabs(b)); }

// Reference values from a 40-digit evaluation of the auxiliary-matrix
// fidelity formula (test support), frozen here.
struct Frozen {
  const char* name;
  ChannelFamily family;
  Real f01, f12, f02, f11, choi;
};

const Frozen kFrozen[] = {
    {"additive 0.02/0.01", ChannelFamily::additive_noise(0.02L, 0.01L),
     0.99395043751719901L, 0.98978962928861986L, 0.96867708392738653L,
     0.99995936378911425L, 0.97836945690388557L},
    {"loss 0.99/0.97", ChannelFamily::pure_loss(0.99L, 0.97L),
     0.95462440880628374L, 0.9638808255685658L, 0.94210075222599702L,
     0.90165517824237957L, 0.94821757894832467L},
};

TEST(Subfidelities, FrozenTmsvValues) {
  for (const auto& f : kFrozen) {
    const auto s = tmsv_subfidelities(f.family, 20.5L);
    EXPECT_LT(rel(std::exp(s.ln_f01), f.f01), 1e-13) << f.name;
    EXPECT_LT(rel(std::exp(s.ln_f12), f.f12), 1e-13) << f.name;
    EXPECT_LT(rel(std::exp(s.ln_f02), f.f02), 1e-13) << f.name;
    EXPECT_LT(rel(std::exp(s.ln_f11), f.f11), 1e-13) << f.name;
    EXPECT_LT(rel(std::exp(choi_log_fidelity(f.family, 20.5L)), f.choi), 1e-13) << f.name;
  }
}

TEST(Subfidelities, FrozenGhzValues) {
  const auto fam = ChannelFamily::pure_loss(0.99L, 0.97L);
  const auto probe = assemble_probe({full_ghz_partition(3), 20.5L}, 3);
  auto f = [&](const char* a, const char* b) {
    return gaussian_fidelity(apply_pattern(probe.cm, fam, Pattern::from_string(a)),
                             apply_pattern(probe.cm, fam, Pattern::from_string(b)));
  };
  EXPECT_LT(rel(f("100", "010"), 0.98322111432718258L), 1e-12);
  EXPECT_LT(rel(f("000", "111"), 0.97052416688082383L), 1e-12);
}

TEST(Oracles, MatchNumericWhereDefined) {
  const auto add = ChannelFamily::additive_noise(0.05L, 0.01L);
  for (Real mu : {0.6L, 2.0L, 50.0L, 5e3L})
    EXPECT_LT(rel(std::exp(tmsv_subfidelities(add, mu).ln_f11),
                  subfidelity_oracle(add, mu, SubClass::F11)), 1e-10);
  const auto loss = ChannelFamily::pure_loss(0.9L, 0.95L);
  for (Real mu : {0.6L, 2.0L, 50.0L, 5e3L})
    EXPECT_LT(rel(std::exp(tmsv_subfidelities(loss, mu).ln_f02),
                  subfidelity_oracle(loss, mu, SubClass::F02)), 1e-10);
}

TEST(Oracles, LimitsAndUnsupported) {
  const auto add = ChannelFamily::additive_noise(0.02L, 0.01L);
  EXPECT_EQ(subfidelity_oracle(add, std::nullopt, SubClass::F11), 1);
  // F01 and F12 limits swap roles under background/target exchange.
  const auto swapped = ChannelFamily::additive_noise(0.01L, 0.02L);
  EXPECT_NEAR(static_cast<double>(subfidelity_oracle(add, std::nullopt, SubClass::F01)),
              static_cast<double>(subfidelity_oracle(swapped, std::nullopt, SubClass::F12)),
              1e-18);
  EXPECT_THROW(subfidelity_oracle(add, 5.0L, SubClass::F01), UnsupportedError);
  const auto loss = ChannelFamily::pure_loss(0.99L, 0.97L);
  EXPECT_NEAR(static_cast<double>(subfidelity_oracle(loss, std::nullopt, SubClass::F02)),
              0.865980315907, 1e-11);
  EXPECT_THROW(subfidelity_oracle(loss, 5.0L, SubClass::F11), UnsupportedError);
  EXPECT_THROW(subfidelity_oracle(ChannelFamily::thermal(0.9L, 1, 0.8L, 1), 5.0L, SubClass::F11),
               UnsupportedError);
  EXPECT_EQ(sub_class(2, 1, 1), SubClass::F12);
  EXPECT_THROW(sub_class(0, 0, 0), InvalidArgumentError);
}

TEST(Oracles, AdditiveF11RisesTowardOne) {
  const auto add = ChannelFamily::additive_noise(0.02L, 0.01L);
  Real prev = 0;
  for (Real mu = 0.6L; mu <= 1e4L; mu *= 1.5L) {
    const Real f = std::exp(tmsv_subfidelities(add, mu).ln_f11);
    EXPECT_GT(f, prev);
    EXPECT_LE(f, 1);
    prev = f;
  }
  EXPECT_GT(prev, 1 - 1e-6L);
}

TEST(Classical, FrozenPerChannelValues) {
  EXPECT_LT(rel(std::exp(classical_channel_log_fidelity(ChannelFamily::pure_loss(0.99L, 0.97L), 20)),
                0.99898008573975668L), 1e-14);
  EXPECT_LT(rel(std::exp(classical_channel_log_fidelity(
                    ChannelFamily::additive_noise(0.02L, 0.01L), 20)),
                0.99915516531852604L), 1e-14);
  EXPECT_THROW(classical_channel_log_fidelity(ChannelFamily::thermal(0.9L, 1, 0.8L, 1), 1),
               UnsupportedError);
}

TEST(Classical, BenchmarkMatchesPairSum) {
  for (const auto& space : {ImageSpace::cpf(5, 2), ImageSpace::full(4), ImageSpace::bcpf(5, {1, 3})}) {
    const auto fam = ChannelFamily::pure_loss(0.9L, 0.8L);
    const auto fast = classical_benchmark(space, fam, 3, 4);
    const Real lf = classical_channel_log_fidelity(fam, 3);
    const auto& pats = space.patterns();
    const auto slow = bounds_from_pairs(pats.size(), space.priors(), 4,
                                        [&](std::size_t i, std::size_t j) {
                                          return lf * hamming(pats[i], pats[j]);
                                        });
    EXPECT_LT(rel(fast.ln_upper, slow.ln_upper), 1e-14);
    EXPECT_LT(rel(fast.ln_lower, slow.ln_lower), 1e-14);
  }
}

TEST(Reports, ClippingSemantics) {
  const auto r = make_report(std::log(0.3L), std::log(4.0L), 1, 1, Method::Generic);
  EXPECT_EQ(r.upper, 1);
  EXPECT_NEAR(static_cast<double>(r.upper_raw), 4, 1e-15);
  EXPECT_NEAR(static_cast<double>(r.lower), 0.3, 1e-15);
  const auto s = make_report(std::log(0.9L), std::log(0.5L), 1, 1, Method::Generic);
  EXPECT_LE(s.lower, s.upper);
}

TEST(Reports, GuaranteedAdvantageNeedsMatchedUse) {
  auto a = make_report(std::log(0.1L), std::log(0.5L), 10, 10, Method::Classical);
  auto b = make_report(std::log(0.01L), std::log(0.05L), 5, 10, Method::Mutual);
  EXPECT_NEAR(static_cast<double>(guaranteed_advantage(a, b)), 0.05, 1e-15);
  b.mbar = 11;
  EXPECT_THROW(guaranteed_advantage(a, b), ComparabilityError);
}

TEST(Census, TwoChannelMultiplicities) {
  const auto census = pair_degeneracy_census(ImageSpace::full(2), full_ghz_partition(2));
  std::map<SubClass, std::uint64_t> by_class;
  std::uint64_t total = 0;
  for (const auto& [key, n] : census) {
    ASSERT_EQ(key.size(), 1u);
    by_class[sub_class(key[0].v, key[0].u, key[0].d)] += n;
    total += n;
  }
  EXPECT_EQ(by_class[SubClass::F01], 4u);
  EXPECT_EQ(by_class[SubClass::F12], 4u);
  EXPECT_EQ(by_class[SubClass::F02], 2u);
  EXPECT_EQ(by_class[SubClass::F11], 2u);
  EXPECT_EQ(total, 12u);
}

TEST(Census, FourChannelPairsMatchBruteClassification) {
  const auto space = ImageSpace::full(4);
  const auto part = Partition::parse("12|34");
  const auto census = pair_degeneracy_census(space, part);
  std::uint64_t total = 0;
  for (const auto& [key, n] : census) total += n;
  EXPECT_EQ(total, 240u);
  // Brute force: classify each ordered pair by hand.
  std::map<std::vector<BlockClass>, std::uint64_t> brute;
  for (const auto& a : space.patterns())
    for (const auto& b : space.patterns()) {
      if (a == b) continue;
      std::vector<BlockClass> key;
      for (int blk = 0; blk < 2; ++blk) {
        int va = a[2 * blk] + a[2 * blk + 1];
        int vb = b[2 * blk] + b[2 * blk + 1];
        int d = (a[2 * blk] != b[2 * blk]) + (a[2 * blk + 1] != b[2 * blk + 1]);
        key.push_back({std::min(va, vb), std::max(va, vb), d});
      }
      ++brute[key];
    }
  EXPECT_EQ(census, brute);
}

TEST(Census, SingleBlockCpfCountsFollowBinomials) {
  // Ordered k-CPF pairs with union size t: C(m,t) C(t,k) C(k,2k-t).
  for (int m = 2; m <= 10; ++m)
    for (int k = 1; k < m; ++k) {
      const auto census = pair_degeneracy_census(ImageSpace::cpf(m, k), full_ghz_partition(m));
      for (const auto& [key, n] : census) {
        const int t = k + key[0].d / 2;
        EXPECT_EQ(n, binomial(m, t) * binomial(t, k) * binomial(k, 2 * k - t))
            << m << " " << k << " d=" << key[0].d;
      }
    }
}

// Bounds straight from the exhaustive fidelity table.
BoundReport brute(const ImageSpace& space, const ProbeSpec& spec, const ChannelFamily& fam,
                  Real copies) {
  const auto table = fidelity_table_brute(space.patterns(), assemble_probe(spec, space.m()), fam);
  return bounds_generic(table, space.priors(), copies);
}

TEST(Counting, AgreesWithBruteForce) {
  const auto loss = ChannelFamily::pure_loss(0.99L, 0.97L);
  const auto add = ChannelFamily::additive_noise(0.02L, 0.01L);
  for (const auto* fam : {&loss, &add})
    for (const auto& space : {ImageSpace::full(4), ImageSpace::cpf(4, 1), ImageSpace::bcpf(4, {1, 2})})
      for (const char* text : {"1234", "12|34", "13|24", "1*|234", "12|3*|4*"}) {
        const ProbeSpec spec{Partition::parse(text, 4), 20.5L};
        for (Real copies : {1.0L, 10.0L}) {
          const auto fast = bounds_via_counting(space, spec.partition, *fam, spec.mu, copies);
          const auto slow = brute(space, spec, *fam, copies);
          EXPECT_LT(rel(fast.upper_raw, slow.upper_raw), 1e-10) << text << " " << space.describe();
          EXPECT_LT(rel(fast.lower_raw, slow.lower_raw), 1e-10) << text << " " << space.describe();
        }
      }
}

TEST(Counting, RejectsOverlapAndCustomSpaces) {
  const auto fam = ChannelFamily::pure_loss(0.99L, 0.97L);
  EXPECT_THROW(bounds_via_counting(ImageSpace::full(3), nn_partition(3), fam, 2, 1),
               InvalidPartitionError);
  const auto custom = ImageSpace::custom({Pattern::from_string("01"), Pattern::from_string("10")});
  EXPECT_THROW(bounds_via_counting(custom, full_ghz_partition(2), fam, 2, 1), UnsupportedError);
}

TEST(ClosedForm, EvenMEqualsCounting) {
  const auto fam = ChannelFamily::additive_noise(0.02L, 0.01L);
  for (int m : {2, 4, 6})
    for (Real copies : {1.0L, 10.0L, 300.0L}) {
      const auto cf = bounds_d2(fam, 20.5L, copies, m);
      const auto ct = bounds_via_counting(ImageSpace::full(m), tmsv_pairs_partition(m), fam, 20.5L, copies);
      EXPECT_LT(rel(cf.ln_upper, ct.ln_upper), 1e-10);
      EXPECT_LT(rel(cf.ln_lower, ct.ln_lower), 1e-10);
      EXPECT_EQ(cf.method, Method::ClosedFormD2);
    }
}

TEST(ClosedForm, OddMEqualsCounting) {
  const auto fam = ChannelFamily::pure_loss(0.99L, 0.97L);
  for (int m : {3, 5, 7})
    for (auto strat : {OddStrategy::HybridCoherent, OddStrategy::SingleIdler}) {
      const auto spec = odd_m_disjoint_spec(m, strat, 20.5L);
      const auto cf = bounds_d2_odd(fam, 20.5L, 10, m, strat);
      const auto ct = bounds_via_counting(ImageSpace::full(m), spec.partition, fam, 20.5L, 10);
      EXPECT_LT(rel(cf.ln_upper, ct.ln_upper), 1e-10) << m;
      EXPECT_LT(rel(cf.ln_lower, ct.ln_lower), 1e-10) << m;
    }
  EXPECT_THROW(bounds_d2_odd(fam, 20.5L, 10, 5, OddStrategy::Triple), UnsupportedError);
  EXPECT_THROW(bounds_d2(fam, 20.5L, 10, 3), InvalidArgumentError);
}

TEST(ClosedForm, TinyFidelitiesKeepPrecision) {
  const auto fam = ChannelFamily::pure_loss(0.99L, 0.97L);
  const auto r = bounds_d2(fam, 20.5L, 1e5L, 4);
  EXPECT_TRUE(std::isfinite(r.ln_upper));
  EXPECT_LT(r.ln_upper, -1000);
  const auto ct = bounds_via_counting(ImageSpace::full(4), tmsv_pairs_partition(4), fam, 20.5L, 1e5L);
  EXPECT_LT(rel(r.ln_upper, ct.ln_upper), 1e-10);
}

TEST(Mutual, NnMatchesExtendedBruteForce) {
  const auto fam = ChannelFamily::pure_loss(0.99L, 0.97L);
  for (int m : {3, 4}) {
    const auto space = ImageSpace::full(m);
    const auto ext = extend_for_mutual_probing(nn_partition(m), space);
    const auto probe = assemble_probe({ext.extended, 20.5L}, ext.extended.m);
    const auto table = fidelity_table_brute(ext.space.extended, probe, fam);
    const auto slow = bounds_generic(table, space.priors(), 3);
    const auto fast = bounds_mutual(space, nn_partition(m), fam, 20.5L, 3);
    EXPECT_LT(rel(fast.upper_raw, slow.upper_raw), 1e-12);
    EXPECT_LT(rel(fast.lower_raw, slow.lower_raw), 1e-12);
    EXPECT_NEAR(static_cast<double>(fast.mbar), 6.0, 1e-15);
  }
}

TEST(Dispatch, PicksTheExpectedPath) {
  const auto fam = ChannelFamily::pure_loss(0.99L, 0.97L);
  const auto space = ImageSpace::cpf(5, 1);
  EXPECT_EQ(compute_bounds(space, ProbeSpec::classical_coherent(5, 20), fam, 2).method,
            Method::Classical);
  EXPECT_EQ(compute_bounds(space, {nn_partition(5), 20.5L}, fam, 2).method, Method::Mutual);
  EXPECT_EQ(compute_bounds(space, {full_ghz_partition(5), 20.5L}, fam, 2).method,
            Method::Counting);
  const auto custom = ImageSpace::custom({Pattern::from_string("00011"), Pattern::from_string("10000")});
  EXPECT_EQ(compute_bounds(custom, {full_ghz_partition(5), 20.5L}, fam, 2).method,
            Method::Generic);
  EXPECT_THROW(compute_bounds(ImageSpace::full(4), {full_ghz_partition(5), 2}, fam, 1),
               DimensionError);
}

TEST(Properties, BoundsNonIncreasingInCopies) {
  Gen gen(41);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = gen.integer(2, 6);
    const auto fam = gen.family();
    const auto space = ImageSpace::cpf(m, gen.integer(1, m - 1));
    const Partition part = gen.disjoint_partition(m);
    const Real mu = gen.uniform(0.6L, 30);
    Real prev_u = 2, prev_l = 2;
    for (Real copies = 1; copies <= 1e4L; copies *= 3) {
      const auto r = bounds_via_counting(space, part, fam, mu, copies);
      EXPECT_LE(r.upper, prev_u + 1e-15L) << part.to_string();
      EXPECT_LE(r.lower, prev_l + 1e-15L) << part.to_string();
      EXPECT_LE(r.lower, r.upper);
      EXPECT_GE(r.lower, 0);
      prev_u = r.upper;
      prev_l = r.lower;
    }
  }
}

TEST(Properties, BlockwiseTableMatchesBrute) {
  Gen gen(43);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = gen.integer(2, 4);
    const auto fam = gen.family();
    const ProbeSpec spec{gen.disjoint_partition(m), gen.uniform(0.6L, 30)};
    const auto pats = ImageSpace::full(m).patterns();
    const auto fast = fidelity_table_blockwise(pats, spec, fam);
    const auto slow = fidelity_table_brute(pats, assemble_probe(spec, m), fam);
    for (std::size_t i = 0; i < pats.size(); ++i)
      for (std::size_t j = 0; j < pats.size(); ++j)
        EXPECT_NEAR(static_cast<double>(fast.log_at(i, j)), static_cast<double>(slow.log_at(i, j)),
                    1e-10)
            << spec.partition.to_string();
  }
}

}  // namespace
}  // namespace cvdisc
