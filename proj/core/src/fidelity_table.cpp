#include <cmath>
#include <tuple>

#include "cvdisc/bounds.hpp"
#include "cvdisc/errors.hpp"

namespace cvdisc {

Real FidelityTable::at(std::size_t i, std::size_t j) const {
  return std::exp(log_at(i, j));
}

namespace {

constexpr std::size_t kMaxTablePatterns = 4096;

}  // namespace

FidelityTable fidelity_table_brute(const std::vector<Pattern>& patterns,
                                   const ProbeState& probe,
                                   const ChannelFamily& family) {
  const std::size_t n = patterns.size();
  if (n > kMaxTablePatterns)
    throw CapacityError("brute-force fidelity table limited to 4096 patterns");
  std::vector<CovMatrix> outs;
  outs.reserve(n);
  for (const auto& p : patterns)
    outs.push_back(apply_pattern_with_idlers(probe.cm, family, p, probe.layout));
  FidelityTable t{patterns, std::vector<Real>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Real lf = gaussian_log_fidelity(outs[i], outs[j]);
      t.log_f[i * n + j] = lf;
      t.log_f[j * n + i] = lf;
    }
  return t;
}

BlockClass block_class(const Block& block, const Pattern& a, const Pattern& b) {
  BlockClass c;
  for (int ch : block.channels) {
    const bool x = a[ch];
    const bool y = b[ch];
    c.v += x;
    c.u += y;
    c.d += x != y;
  }
  if (c.v > c.u) std::swap(c.v, c.u);
  return c;
}

BlockFidelityCache::BlockFidelityCache(Partition partition, ChannelFamily family,
                                       Real mu)
    : partition_(std::move(partition)), family_(family), mu_(mu) {
  validate_disjoint(partition_);
  cache_.resize(partition_.blocks.size());
  // Blocks of the same shape share one cache.
  for (std::size_t j = 0; j < partition_.blocks.size(); ++j) {
    const Block& b = partition_.blocks[j];
    for (std::size_t k = 0; k < j; ++k) {
      const Block& c = partition_.blocks[k];
      if (c.kind == b.kind && c.idlers == b.idlers &&
          c.channels.size() == b.channels.size()) {
        shape_of_.push_back(shape_of_[k]);
        break;
      }
    }
    if (shape_of_.size() == j) shape_of_.push_back(j);
  }
}

Real BlockFidelityCache::log_fidelity(std::size_t block, const BlockClass& cls) {
  auto& slot = cache_[shape_of_[block]];
  if (auto it = slot.find(cls); it != slot.end()) return it->second;

  const Block& b = partition_.blocks[block];
  const int s = static_cast<int>(b.channels.size());
  const int overlap = (cls.v + cls.u - cls.d) / 2;
  if ((cls.v + cls.u - cls.d) % 2 || overlap < 0 || overlap > cls.v ||
      cls.v + cls.u - overlap > s)
    throw InvalidArgumentError("block class not realizable on this block");
  // Representatives: a = first v channels, b = first `overlap` of those plus
  // the next u - overlap.
  std::vector<int> bits_a(static_cast<std::size_t>(s), 0);
  std::vector<int> bits_b(static_cast<std::size_t>(s), 0);
  for (int k = 0; k < cls.v; ++k) bits_a[static_cast<std::size_t>(k)] = 1;
  for (int k = 0; k < overlap; ++k) bits_b[static_cast<std::size_t>(k)] = 1;
  for (int k = 0; k < cls.u - overlap; ++k)
    bits_b[static_cast<std::size_t>(cls.v + k)] = 1;

  Block local = b;
  for (int k = 0; k < s; ++k) local.channels[static_cast<std::size_t>(k)] = k;
  IdlerLayout layout;
  layout.blocks.push_back({local.idlers, local.channels});
  const CovMatrix in = block_state(local, mu_);
  const CovMatrix oa =
      apply_pattern_with_idlers(in, family_, Pattern::from_bits(bits_a), layout);
  const CovMatrix ob =
      apply_pattern_with_idlers(in, family_, Pattern::from_bits(bits_b), layout);
  const Real lf = cls.d == 0 ? Real{0} : gaussian_log_fidelity(oa, ob);
  ++evaluations_;
  slot.emplace(cls, lf);
  return lf;
}

Real BlockFidelityCache::pair_log_fidelity(const Pattern& a, const Pattern& b) {
  Real total = 0;
  for (std::size_t j = 0; j < partition_.blocks.size(); ++j) {
    const BlockClass c = block_class(partition_.blocks[j], a, b);
    if (c.d) total += log_fidelity(j, c);
  }
  return total;
}

FidelityTable fidelity_table_blockwise(const std::vector<Pattern>& patterns,
                                       const ProbeSpec& spec,
                                       const ChannelFamily& family) {
  const std::size_t n = patterns.size();
  if (n > kMaxTablePatterns)
    throw CapacityError("fidelity table limited to 4096 patterns");
  BlockFidelityCache cache(spec.partition, family, spec.mu);
  FidelityTable t{patterns, std::vector<Real>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Real lf = cache.pair_log_fidelity(patterns[i], patterns[j]);
      t.log_f[i * n + j] = lf;
      t.log_f[j * n + i] = lf;
    }
  return t;
}

}  // namespace cvdisc
