#include "cvdisc/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "cvdisc/combinatorics.hpp"
#include "cvdisc/errors.hpp"

namespace cvdisc {

const char* to_string(Method m) {
  switch (m) {
    case Method::Brute: return "brute";
    case Method::Generic: return "generic";
    case Method::Counting: return "counting";
    case Method::ClosedFormD2: return "closed-form-D2";
    case Method::Mutual: return "mutual";
    case Method::Classical: return "classical";
  }
  return "unknown";
}

namespace {

// Running ln(sum exp(x)) with one pass and no buffer.
class LogSum {
 public:
  void add(Real x) {
    if (x == kNegInf) return;
    if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - x) + 1;
      max_ = x;
    }
  }
  Real value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

 private:
  Real max_ = kNegInf;
  Real sum_ = 0;
};

void require_copies(Real copies) {
  if (!(copies > 0) || !std::isfinite(copies))
    throw InvalidArgumentError("copy number M must be positive and finite");
}

Real safe_log(Real x) { return x > 0 ? std::log(x) : kNegInf; }

}  // namespace

BoundReport make_report(Real ln_lower, Real ln_upper, Real copies, Real mbar,
                        Method method) {
  BoundReport r;
  r.ln_lower = ln_lower;
  r.ln_upper = ln_upper;
  r.lower_raw = std::exp(ln_lower);
  r.upper_raw = std::exp(ln_upper);
  r.upper = std::min<Real>(1, r.upper_raw);
  r.lower = std::min(r.lower_raw, r.upper);
  r.copies = copies;
  r.mbar = mbar;
  r.method = method;
  return r;
}

BoundReport bounds_from_pairs(std::size_t n, const std::vector<Real>& priors,
                              Real copies,
                              const std::function<Real(std::size_t, std::size_t)>& log_f) {
  require_copies(copies);
  if (priors.size() != n) throw DimensionError("one prior per pattern required");
  std::vector<Real> lp(n);
  for (std::size_t i = 0; i < n; ++i) lp[i] = safe_log(priors[i]);
  LogSum ub;
  LogSum lb;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Real lf = log_f(i, j);
      ub.add(0.5L * (lp[i] + lp[j]) + copies * lf);
      lb.add(lp[i] + lp[j] + 2 * copies * lf);
    }
  // Each unordered pair stands for two ordered ones; the lower bound's 1/2
  // cancels that factor.
  return make_report(lb.value(), std::log(2.0L) + ub.value(), copies, copies,
                     Method::Generic);
}

BoundReport bounds_generic(const FidelityTable& table,
                           const std::vector<Real>& priors, Real copies) {
  return bounds_from_pairs(table.size(), priors, copies,
                           [&](std::size_t i, std::size_t j) { return table.log_at(i, j); });
}

BoundReport bounds_mutual(const ImageSpace& space, const Partition& d,
                          const ChannelFamily& family, Real mu, Real copies) {
  const MutualExtension ext = extend_for_mutual_probing(d, space);
  BlockFidelityCache cache(ext.extended, family, mu);
  const auto& pats = ext.space.extended;
  BoundReport r = bounds_from_pairs(pats.size(), space.priors(), copies,
                                    [&](std::size_t i, std::size_t j) {
                                      return cache.pair_log_fidelity(pats[i], pats[j]);
                                    });
  r.method = Method::Mutual;
  r.mbar = average_channel_use(d, copies);
  r.rounds = static_cast<int>(decompose_rounds(d).size());
  return r;
}

Real classical_channel_log_fidelity(const ChannelFamily& family, Real ns) {
  if (!(ns >= 0)) throw InvalidEnergyError("classical probe energy must be >= 0");
  switch (family.kind()) {
    case FamilyKind::PureLoss: {
      const Real diff =
          std::sqrt(family.background().tau()) - std::sqrt(family.target().tau());
      return -0.5L * ns * diff * diff;
    }
    case FamilyKind::AdditiveNoise: {
      const Real nb = family.background().nu();
      const Real nt = family.target().nu();
      return -std::log(std::sqrt((nt + 1) * (nb + 1)) - std::sqrt(nt * nb));
    }
    case FamilyKind::Thermal:
      break;
  }
  throw UnsupportedError(
      "no classical benchmark is defined for thermal-loss/amplifier patterns");
}

namespace {

// ln of the number of ordered pattern pairs at each Hamming distance, over
// uniform spaces described by target counts.
std::vector<Real> log_pair_distance_counts(int m, const std::vector<int>& ks) {
  std::vector<LogSum> acc(static_cast<std::size_t>(m + 1));
  for (int v : ks)
    for (int u : ks)
      for (int o = std::max(0, v + u - m); o <= std::min(v, u); ++o) {
        const int d = v + u - 2 * o;
        acc[static_cast<std::size_t>(d)].add(log_binomial(m, v) + log_binomial(v, o) +
                                             log_binomial(m - v, u - o));
      }
  std::vector<Real> out;
  for (const auto& a : acc) out.push_back(a.value());
  return out;
}

}  // namespace

BoundReport classical_benchmark(const ImageSpace& space, const ChannelFamily& family,
                                Real ns, Real copies) {
  require_copies(copies);
  const Real lf = classical_channel_log_fidelity(family, ns);
  if (!space.weight_symmetric()) {
    const auto& pats = space.patterns();
    BoundReport r = bounds_from_pairs(pats.size(), space.priors(), copies,
                                      [&](std::size_t i, std::size_t j) {
                                        return lf * hamming(pats[i], pats[j]);
                                      });
    r.method = Method::Classical;
    return r;
  }
  const auto counts = log_pair_distance_counts(space.m(), space.target_counts());
  const Real ln_n = std::log(static_cast<Real>(space.size()));
  LogSum ub;
  LogSum lb;
  for (int d = 1; d <= space.m(); ++d) {
    ub.add(counts[static_cast<std::size_t>(d)] + copies * d * lf);
    lb.add(counts[static_cast<std::size_t>(d)] + 2 * copies * d * lf);
  }
  return make_report(lb.value() - std::log(2.0L) - 2 * ln_n, ub.value() - ln_n, copies,
                     copies, Method::Classical);
}

BoundReport compute_bounds(const ImageSpace& space, const ProbeSpec& spec,
                           const ChannelFamily& family, Real copies) {
  if (spec.partition.m != space.m())
    throw DimensionError("probe and image space disagree on m");
  validate_cover(spec.partition);
  const auto& blocks = spec.partition.blocks;
  const bool all_coherent = std::all_of(blocks.begin(), blocks.end(), [](const Block& b) {
    return b.kind == BlockKind::Coherent;
  });
  const bool all_vacuum = std::all_of(blocks.begin(), blocks.end(), [](const Block& b) {
    return b.kind == BlockKind::Vacuum;
  });
  // The benchmark probes (coherent under loss, vacuum or coherent under
  // additive noise) have closed forms; anything else goes the exact way.
  const bool benchmark =
      spec.partition.is_disjoint() &&
      ((family.kind() == FamilyKind::PureLoss && all_coherent) ||
       (family.kind() == FamilyKind::AdditiveNoise && (all_coherent || all_vacuum)));
  if (benchmark)
    return classical_benchmark(space, family, all_vacuum ? 0 : spec.mu - 0.5L, copies);
  if (!spec.partition.is_disjoint())
    return bounds_mutual(space, spec.partition, family, spec.mu, copies);
  if (space.weight_symmetric())
    return bounds_via_counting(space, spec.partition, family, spec.mu, copies);
  BlockFidelityCache cache(spec.partition, family, spec.mu);
  const auto& pats = space.patterns();
  return bounds_from_pairs(pats.size(), space.priors(), copies,
                           [&](std::size_t i, std::size_t j) {
                             return cache.pair_log_fidelity(pats[i], pats[j]);
                           });
}

Real guaranteed_advantage(const BoundReport& classical, const BoundReport& quantum) {
  const Real scale = std::max<Real>({1, std::abs(classical.mbar), std::abs(quantum.mbar)});
  if (std::abs(classical.mbar - quantum.mbar) > 1e-9L * scale)
    throw ComparabilityError("guaranteed advantage needs matched average channel use");
  return classical.lower - quantum.upper;
}

Census pair_degeneracy_census(const std::vector<Pattern>& patterns,
                              const Partition& partition) {
  validate_disjoint(partition);
  Census census;
  std::vector<BlockClass> key(partition.blocks.size());
  for (std::size_t i = 0; i < patterns.size(); ++i)
    for (std::size_t j = 0; j < patterns.size(); ++j) {
      if (i == j) continue;
      for (std::size_t b = 0; b < partition.blocks.size(); ++b)
        key[b] = block_class(partition.blocks[b], patterns[i], patterns[j]);
      ++census[key];
    }
  return census;
}

Census pair_degeneracy_census(const ImageSpace& space, const Partition& partition) {
  if (partition.m != space.m())
    throw DimensionError("partition and image space disagree on m");
  return pair_degeneracy_census(space.patterns(), partition);
}

}  // namespace cvdisc
