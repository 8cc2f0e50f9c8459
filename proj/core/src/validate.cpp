#include "cvdisc/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "cvdisc/bounds.hpp"
#include "cvdisc/channels.hpp"
#include "cvdisc/errors.hpp"
#include "cvdisc/imagespace.hpp"
#include "cvdisc/probes.hpp"

namespace cvdisc {

namespace {

using Rng = std::mt19937_64;

Real uniform(Rng& rng, Real lo, Real hi) {
  return lo + (hi - lo) * static_cast<Real>(std::uniform_real_distribution<double>(0, 1)(rng));
}

ChannelFamily random_family(Rng& rng) {
  switch (rng() % 3) {
    case 0: {
      const Real b = uniform(rng, 0.5L, 1);
      return ChannelFamily::pure_loss(b, uniform(rng, 0.5L, b * 0.999L));
    }
    case 1: {
      const Real b = uniform(rng, 0, 0.2L);
      return ChannelFamily::additive_noise(b, b + uniform(rng, 0.001L, 0.2L));
    }
    default:
      return ChannelFamily::thermal(uniform(rng, 0.3L, 1.7L), uniform(rng, 0.5L, 2),
                                    uniform(rng, 0.3L, 1.7L), uniform(rng, 0.5L, 2));
  }
}

// Random disjoint probe over m channels: random blocks, occasional idlers and
// classical single-channel blocks.
ProbeSpec random_probe(Rng& rng, int m) {
  ProbeSpec s;
  s.mu = uniform(rng, 0.5L, 30);
  s.partition.m = m;
  std::vector<int> order(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) order[static_cast<std::size_t>(k)] = k;
  std::shuffle(order.begin(), order.end(), rng);
  int pos = 0;
  while (pos < m) {
    const int left = m - pos;
    int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(left, 4)));
    Block b;
    for (int k = 0; k < size; ++k) b.channels.push_back(order[static_cast<std::size_t>(pos + k)]);
    pos += size;
    if (size == 1) {
      switch (rng() % 3) {
        case 0: b.kind = BlockKind::Coherent; break;
        case 1: b.kind = BlockKind::Vacuum; break;
        default: b.idlers = 1; break;
      }
    } else if (rng() % 4 == 0) {
      b.idlers = 1;
    }
    s.partition.blocks.push_back(std::move(b));
  }
  return s;
}

Pattern random_pattern(Rng& rng, int m) {
  return Pattern(m, static_cast<std::uint32_t>(rng() & ((1u << m) - 1)));
}

struct Tracker {
  SuiteResult r;
  Tracker(std::string name, Real tol) {
    r.name = std::move(name);
    r.tolerance = tol;
    r.passed = true;
  }
  void check(Real dev, const std::string& what) {
    ++r.cases;
    if (std::isnan(dev)) dev = std::numeric_limits<Real>::infinity();
    r.max_deviation = std::max(r.max_deviation, dev);
    if (dev > r.tolerance && r.passed) {
      r.passed = false;
      std::ostringstream os;
      os << what << ": deviation " << static_cast<double>(dev);
      r.detail = os.str();
    }
  }
  void fail(const std::string& what) {
    ++r.cases;
    if (r.passed) r.detail = what;
    r.passed = false;
    r.max_deviation = std::numeric_limits<Real>::infinity();
  }
  SuiteResult done() { return r; }
};

Real rel_dev(Real a, Real b) {
  const Real scale = std::max<Real>(std::abs(b), 1e-300L);
  return std::abs(a - b) / scale;
}

// Relative deviation of bounds, with both ln forms compared so tiny values
// are judged on their own scale.
Real report_dev(const BoundReport& a, const BoundReport& b) {
  auto ln_dev = [](Real x, Real y) {
    if (x == y) return Real{0};  // also covers both -inf
    return std::abs(std::expm1(x - y));
  };
  return std::max(ln_dev(a.ln_upper, b.ln_upper), ln_dev(a.ln_lower, b.ln_lower));
}

std::vector<Partition> standard_partitions(int m) {
  std::vector<Partition> out;
  if (m >= 2) out.push_back(full_ghz_partition(m));
  if (m >= 2 && m % 2 == 0) out.push_back(tmsv_pairs_partition(m));
  if (m >= 3 && m % 2 == 1) {
    out.push_back(odd_m_disjoint_spec(m, OddStrategy::SingleIdler, 1).partition);
    out.push_back(odd_m_disjoint_spec(m, OddStrategy::HybridCoherent, 1).partition);
    out.push_back(odd_m_disjoint_spec(m, OddStrategy::Triple, 1).partition);
  }
  if (m == 6) out.push_back(Partition::parse("123|456"));
  return out;
}

std::vector<ImageSpace> standard_spaces(int m) {
  std::vector<ImageSpace> out{ImageSpace::full(m), ImageSpace::cpf(m, 1)};
  if (m >= 3) out.push_back(ImageSpace::cpf(m, 2));
  if (m >= 3) out.push_back(ImageSpace::bcpf(m, {1, 2}));
  return out;
}

std::vector<ChannelFamily> standard_families() {
  return {ChannelFamily::pure_loss(0.99L, 0.97L),
          ChannelFamily::additive_noise(0.02L, 0.01L)};
}

}  // namespace

SuiteResult validate_ghz_spectrum() {
  Tracker t("ghz-spectrum", 1e-10L);
  for (int m = 2; m <= 12; ++m)
    for (Real mu : {0.5L, 0.6L, 1.0L, 5.0L, 20.5L, 100.0L, 1e3L, 1e4L}) {
      const auto num = symplectic_spectrum(ghz_cm(m, mu));
      const auto ref = ghz_spectrum_closed_form(m, mu);
      Real dev = 0;
      for (std::size_t k = 0; k < ref.size(); ++k)
        dev = std::max(dev, std::abs(num[k] - ref[k]) / ref[k]);
      t.check(dev, "m=" + std::to_string(m) + " mu=" + std::to_string(static_cast<double>(mu)));
    }
  return t.done();
}

SuiteResult validate_bona_fide(int max_m) {
  Tracker t("bona-fide", kBonaFideTol);
  Rng rng(0xb0a5f1de);
  for (int m = 1; m <= max_m; ++m)
    for (int trial = 0; trial < 40; ++trial) {
      const ProbeSpec spec = random_probe(rng, m);
      const ProbeState probe = assemble_probe(spec, m);
      const auto in_spec = symplectic_spectrum(probe.cm);
      // Entangled blocks are pure: smallest eigenvalue sits at 1/2.
      t.check(std::abs(in_spec.front() - kVacuumVariance), "probe " + spec.partition.to_string());
      const ChannelFamily fam = random_family(rng);
      const auto out = apply_pattern_with_idlers(probe.cm, fam, random_pattern(rng, m),
                                                 probe.layout);
      const auto spec_out = symplectic_spectrum(out);
      t.check(std::max<Real>(0, kVacuumVariance - spec_out.front()),
              "output of " + spec.partition.to_string());
      if (!is_bona_fide(out)) t.fail("output not bona fide for " + spec.partition.to_string());
    }
  return t.done();
}

SuiteResult validate_fidelity_symmetry_range(int samples) {
  Tracker t("fidelity-symmetry-range", 1e-12L);
  Rng rng(0x5eed5eed);
  for (int s = 0; s < samples; ++s) {
    const int m = 1 + static_cast<int>(rng() % 5);
    const ProbeSpec spec = random_probe(rng, m);
    const ProbeState probe = assemble_probe(spec, m);
    const ChannelFamily fam = random_family(rng);
    const auto a = apply_pattern_with_idlers(probe.cm, fam, random_pattern(rng, m), probe.layout);
    const auto b = apply_pattern_with_idlers(probe.cm, fam, random_pattern(rng, m), probe.layout);
    try {
      const Real fab = gaussian_fidelity(a, b);
      const Real fba = gaussian_fidelity(b, a);
      t.check(std::abs(fab - fba), "symmetry " + spec.partition.to_string());
      if (!(fab >= 0 && fab <= 1)) t.fail("fidelity outside [0,1]");
    } catch (const NumericError& e) {
      t.fail(std::string("numeric error: ") + e.what());
    }
  }
  return t.done();
}

SuiteResult validate_purity() {
  // Only states whose whole symplectic spectrum is 1/2; GHZ blocks with more
  // than two modes are mixed at maximal correlation.
  Tracker t("purity", 1e-12L);
  for (Real mu : {0.5L, 1.0L, 20.5L, 1e3L, 1e4L}) {
    const auto tmsv = ghz_cm(2, mu);
    t.check(std::abs(1 - gaussian_fidelity(tmsv, tmsv)), "tmsv");
    for (int m : {2, 4, 6}) {
      const ProbeState p = assemble_probe({tmsv_pairs_partition(m), mu}, m);
      t.check(std::abs(1 - gaussian_fidelity(p.cm, p.cm)), "tmsv pairs");
    }
    const ProbeState p = assemble_probe({idler_full_partition(3), mu}, 3);
    t.check(std::abs(1 - gaussian_fidelity(p.cm, p.cm)), "idler probe");
    const ProbeState h = assemble_probe(odd_m_disjoint_spec(5, OddStrategy::HybridCoherent, mu), 5);
    t.check(std::abs(1 - gaussian_fidelity(h.cm, h.cm)), "hybrid probe");
  }
  const auto c = coherent_cm({1.5L, -0.3L});
  t.check(std::abs(1 - gaussian_fidelity(c, c)), "coherent");
  const auto v = vacuum_cm(4);
  t.check(std::abs(1 - gaussian_fidelity(v, v)), "vacuum");
  return t.done();
}

namespace {

// Spread of full-state fidelities grouped by a key over all ordered pairs.
template <typename KeyFn>
void check_class_spread(Tracker& t, const std::vector<Pattern>& pats, const ProbeState& probe,
                        const ChannelFamily& fam, KeyFn key, const std::string& label) {
  const FidelityTable table = fidelity_table_brute(pats, probe, fam);
  std::map<decltype(key(pats[0], pats[0])), std::pair<Real, Real>> range;
  for (std::size_t i = 0; i < pats.size(); ++i)
    for (std::size_t j = 0; j < pats.size(); ++j) {
      if (i == j) continue;
      const Real f = table.at(i, j);
      auto [it, fresh] = range.try_emplace(key(pats[i], pats[j]), f, f);
      if (!fresh) {
        it->second.first = std::min(it->second.first, f);
        it->second.second = std::max(it->second.second, f);
      }
    }
  Real spread = 0;
  for (const auto& [k, r] : range) spread = std::max(spread, r.second - r.first);
  t.check(spread, label);
}

}  // namespace

SuiteResult validate_ghz_degeneracy(int max_m) {
  Tracker t("ghz-hamming-degeneracy", 1e-10L);
  for (int m = 2; m <= max_m; ++m)
    for (const auto& fam : standard_families())
      for (Real mu : {1.0L, 20.5L}) {
        const ProbeState probe = assemble_probe({full_ghz_partition(m), mu}, m);
        const auto pats = ImageSpace::full(m).patterns();
        const Block whole = full_ghz_partition(m).blocks.front();
        check_class_spread(
            t, pats, probe, fam,
            [&](const Pattern& a, const Pattern& b) { return block_class(whole, a, b); },
            "m=" + std::to_string(m));
      }
  return t.done();
}

SuiteResult validate_block_degeneracy(int max_m) {
  Tracker t("block-class-degeneracy", 1e-10L);
  for (int m = 3; m <= max_m; ++m)
    for (const auto& part : standard_partitions(m))
      for (const auto& fam : standard_families()) {
        const ProbeState probe = assemble_probe({part, 20.5L}, m);
        const auto pats = ImageSpace::full(m).patterns();
        check_class_spread(
            t, pats, probe, fam,
            [&](const Pattern& a, const Pattern& b) {
              std::vector<BlockClass> key;
              for (const auto& blk : part.blocks) key.push_back(block_class(blk, a, b));
              return key;
            },
            "m=" + std::to_string(m) + " " + part.to_string());
      }
  return t.done();
}

SuiteResult validate_multiplicativity(int max_m) {
  Tracker t("block-multiplicativity", 1e-10L);
  Rng rng(0x3a17);
  for (int m = 2; m <= max_m; ++m)
    for (int trial = 0; trial < 20; ++trial) {
      const ProbeSpec spec = random_probe(rng, m);
      const ProbeState probe = assemble_probe(spec, m);
      const ChannelFamily fam = random_family(rng);
      BlockFidelityCache cache(spec.partition, fam, spec.mu);
      const Pattern a = random_pattern(rng, m);
      const Pattern b = random_pattern(rng, m);
      const Real whole = gaussian_fidelity(
          apply_pattern_with_idlers(probe.cm, fam, a, probe.layout),
          apply_pattern_with_idlers(probe.cm, fam, b, probe.layout));
      const Real product = std::exp(cache.pair_log_fidelity(a, b));
      t.check(std::abs(whole - product), spec.partition.to_string());
    }
  return t.done();
}

SuiteResult validate_monotonicity(int max_m) {
  Tracker t("monotone-in-copies", 0);
  for (int m = 2; m <= max_m; ++m)
    for (const auto& part : standard_partitions(m))
      for (const auto& fam : standard_families())
        for (const auto& space : standard_spaces(m)) {
          Real prev_u = 2;
          Real prev_l = 2;
          for (Real M : {1.0L, 2.0L, 5.0L, 10.0L, 50.0L, 200.0L, 1000.0L}) {
            const auto r = bounds_via_counting(space, part, fam, 20.5L, M);
            t.check(std::max<Real>({0, r.upper - prev_u, r.lower - prev_l}),
                    "m=" + std::to_string(m) + " " + part.to_string() + " " + space.describe());
            prev_u = r.upper;
            prev_l = r.lower;
          }
        }
  return t.done();
}

SuiteResult validate_counting(int max_m) {
  Tracker t("counting-vs-brute", 1e-10L);
  for (int m = 2; m <= max_m; ++m)
    for (const auto& part : standard_partitions(m))
      for (const auto& fam : standard_families()) {
        const ProbeState probe = assemble_probe({part, 20.5L}, m);
        const auto all = ImageSpace::full(m).patterns();
        const FidelityTable table = fidelity_table_brute(all, probe, fam);
        for (const auto& space : standard_spaces(m)) {
          // Sub-table for this space (patterns are sorted subsets of `all`).
          std::vector<std::size_t> idx;
          for (const auto& p : space.patterns()) idx.push_back(p.code());
          for (Real M : {1.0L, 10.0L}) {
            const auto brute = bounds_from_pairs(
                idx.size(), space.priors(), M,
                [&](std::size_t i, std::size_t j) { return table.log_at(idx[i], idx[j]); });
            const auto counted = bounds_via_counting(space, part, fam, 20.5L, M);
            const std::string label = "m=" + std::to_string(m) + " " + part.to_string() +
                                      " " + space.describe() + " " + to_string(fam.kind());
            t.check(report_dev(counted, brute), label);
            if (space.kind() == SpaceKind::Full && m % 2 == 0 &&
                part == tmsv_pairs_partition(m))
              t.check(report_dev(bounds_d2(fam, 20.5L, M, m), brute), label + " d2");
            if (space.kind() == SpaceKind::Full && m % 2 == 1 && m >= 3) {
              for (auto st : {OddStrategy::SingleIdler, OddStrategy::HybridCoherent}) {
                if (part == odd_m_disjoint_spec(m, st, 1).partition) {
                  // Coherent remainder carries mu - 1/2 photons, as in the probe.
                  t.check(report_dev(bounds_d2_odd(fam, 20.5L, M, m, st), brute),
                          label + " d2-odd");
                }
              }
            }
          }
        }
      }
  return t.done();
}

SuiteResult validate_mutual(int max_m) {
  Tracker t("mutual-vs-extended-brute", 1e-12L);
  for (int m = 3; m <= max_m; ++m) {
    std::vector<Partition> structures{nn_partition(m)};
    if (m == 3) structures.push_back(Partition::parse("12|23|13"));
    if (m == 4) structures.push_back(Partition::parse("12|23|34"));
    for (const auto& d : structures)
      for (const auto& fam : standard_families())
        for (const auto& space : standard_spaces(m)) {
          const MutualExtension ext = extend_for_mutual_probing(d, space);
          if (ext.space.extended.size() != space.size()) t.fail("extension changed |U|");
          const ProbeState probe =
              assemble_probe({ext.extended, 20.5L}, ext.extended.m);
          const FidelityTable table = fidelity_table_brute(ext.space.extended, probe, fam);
          for (Real M : {1.0L, 10.0L}) {
            const auto brute = bounds_generic(table, space.priors(), M);
            const auto mutual = bounds_mutual(space, d, fam, 20.5L, M);
            t.check(report_dev(mutual, brute),
                    "m=" + std::to_string(m) + " " + d.to_string() + " " + space.describe());
          }
        }
    if (m % 2 == 0 && decompose_rounds(nn_partition(m)).size() != 2)
      t.fail("NN rounds != 2 for even m");
  }
  return t.done();
}

SuiteResult validate_oracles() {
  Tracker t("closed-form-oracles", 1e-9L);
  for (Real nb : {0.005L, 0.02L, 0.1L})
    for (Real nt : {0.01L, 0.05L}) {
      if (nb == nt) continue;
      const auto fam = ChannelFamily::additive_noise(nb, nt);
      for (Real mu : {0.6L, 5.0L, 20.5L, 1e3L, 1e4L}) {
        const auto s = tmsv_subfidelities(fam, mu);
        t.check(rel_dev(std::exp(s.ln_f11), subfidelity_oracle(fam, mu, SubClass::F11)),
                "additive F11");
      }
    }
  for (Real eb : {0.9L, 0.99L, 0.999L})
    for (Real et : {0.95L, 0.97L}) {
      const auto fam = ChannelFamily::pure_loss(eb, et);
      for (Real mu : {0.6L, 5.0L, 20.5L, 1e3L, 1e4L}) {
        const auto s = tmsv_subfidelities(fam, mu);
        t.check(rel_dev(std::exp(s.ln_f02), subfidelity_oracle(fam, mu, SubClass::F02)),
                "loss F02");
      }
    }
  return t.done();
}

SuiteResult validate_classical() {
  Tracker t("classical-closed-forms", 1e-12L);
  for (Real eb : {0.9L, 0.99L, 0.999L})
    for (Real et : {0.95L, 0.97L})
      for (Real ns : {0.1L, 1.0L, 20.0L}) {
        const auto fam = ChannelFamily::pure_loss(eb, et);
        const auto probe = coherent_cm({std::sqrt(ns)});
        const Real num = gaussian_fidelity(apply_pattern(probe, fam, Pattern(1, 0)),
                                           apply_pattern(probe, fam, Pattern(1, 1)));
        t.check(rel_dev(num, std::exp(classical_channel_log_fidelity(fam, ns))), "loss");
      }
  for (Real nb : {0.005L, 0.02L, 0.1L})
    for (Real nt : {0.01L, 0.05L}) {
      const auto fam = ChannelFamily::additive_noise(nb, nt);
      const auto probe = vacuum_cm(1);
      const Real num = gaussian_fidelity(apply_pattern(probe, fam, Pattern(1, 0)),
                                         apply_pattern(probe, fam, Pattern(1, 1)));
      t.check(rel_dev(num, std::exp(classical_channel_log_fidelity(fam, 0))), "additive");
    }
  return t.done();
}

std::vector<SuiteResult> run_validation(ValidationScale scale) {
  const int max_m = scale == ValidationScale::Quick ? 4 : 6;
  std::vector<SuiteResult> out;
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      SuiteResult r;
      r.name = name;
      r.passed = false;
      r.max_deviation = std::numeric_limits<Real>::infinity();
      r.detail = std::string("exception: ") + e.what();
      out.push_back(r);
    }
  };
  guarded("ghz-spectrum", [] { return validate_ghz_spectrum(); });
  guarded("bona-fide", [&] { return validate_bona_fide(max_m); });
  guarded("fidelity-symmetry-range",
          [&] { return validate_fidelity_symmetry_range(max_m == 4 ? 200 : 1000); });
  guarded("purity", [] { return validate_purity(); });
  guarded("ghz-hamming-degeneracy", [&] { return validate_ghz_degeneracy(max_m); });
  guarded("block-class-degeneracy", [&] { return validate_block_degeneracy(max_m); });
  guarded("block-multiplicativity", [&] { return validate_multiplicativity(max_m); });
  guarded("monotone-in-copies", [&] { return validate_monotonicity(max_m); });
  guarded("counting-vs-brute", [&] { return validate_counting(max_m); });
  guarded("closed-form-oracles", [] { return validate_oracles(); });
  guarded("classical-closed-forms", [] { return validate_classical(); });
  if (scale == ValidationScale::Full)
    guarded("mutual-vs-extended-brute", [&] { return validate_mutual(4); });
  return out;
}

}  // namespace cvdisc
