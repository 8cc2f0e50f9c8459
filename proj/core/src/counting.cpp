#include <algorithm>
#include <cmath>

#include "cvdisc/bounds.hpp"
#include "cvdisc/combinatorics.hpp"
#include "cvdisc/errors.hpp"

namespace cvdisc {

namespace {

// table[flag][v][u] in log space: flag 1 collects pattern pairs in which some
// block already differs, flag 0 the pairs identical so far.
struct Occupancy {
  int size = 0;
  std::vector<Real> data[2];

  explicit Occupancy(int n) : size(n) {
    for (auto& d : data) d.assign(static_cast<std::size_t>((n + 1) * (n + 1)), kNegInf);
  }
  Real& at(int flag, int v, int u) {
    return data[flag][static_cast<std::size_t>(v * (size + 1) + u)];
  }
};

void accumulate(Real& slot, Real x) { slot = log_add(slot, x); }

// ln of sum over ordered pattern pairs (both with target counts in ks, not
// equal) of the product of block fidelities raised to `power`.
Real counted_log_sum(const Partition& partition, BlockFidelityCache& cache,
                     const std::vector<int>& ks, Real power) {
  const int m = partition.m;
  Occupancy acc(m);
  acc.at(0, 0, 0) = 0;
  int used = 0;
  for (std::size_t j = 0; j < partition.blocks.size(); ++j) {
    const int s = static_cast<int>(partition.blocks[j].channels.size());
    Occupancy next(m);
    for (int flag = 0; flag < 2; ++flag)
      for (int v = 0; v <= used; ++v)
        for (int u = 0; u <= used; ++u) {
          const Real base = acc.at(flag, v, u);
          if (base == kNegInf) continue;
          for (int lv = 0; lv <= s; ++lv)
            for (int lu = 0; lu <= s; ++lu)
              for (int o = std::max(0, lv + lu - s); o <= std::min(lv, lu); ++o) {
                const int d = lv + lu - 2 * o;
                // Ordered local pairs with these counts and overlap.
                Real term = base + log_binomial(s, lv) + log_binomial(lv, o) +
                            log_binomial(s - lv, lu - o);
                if (d) {
                  const BlockClass cls{std::min(lv, lu), std::max(lv, lu), d};
                  term += power * cache.log_fidelity(j, cls);
                }
                accumulate(next.at(flag || d, v + lv, u + lu), term);
              }
        }
    acc = std::move(next);
    used += s;
  }
  Real total = kNegInf;
  for (int v : ks)
    for (int u : ks) total = log_add(total, acc.at(1, v, u));
  return total;
}

}  // namespace

BoundReport bounds_via_counting(const ImageSpace& space, const Partition& partition,
                                const ChannelFamily& family, Real mu, Real copies) {
  if (!(copies > 0) || !std::isfinite(copies))
    throw InvalidArgumentError("copy number M must be positive and finite");
  if (!space.weight_symmetric())
    throw UnsupportedError(
        "degeneracy counting needs a uniform full / CPF / bounded-CPF space");
  if (partition.m != space.m())
    throw DimensionError("partition and image space disagree on m");
  BlockFidelityCache cache(partition, family, mu);
  const Real ln_n = std::log(static_cast<Real>(space.size()));
  const Real ub = counted_log_sum(partition, cache, space.target_counts(), copies);
  const Real lb = counted_log_sum(partition, cache, space.target_counts(), 2 * copies);
  return make_report(lb - std::log(2.0L) - 2 * ln_n, ub - ln_n, copies, copies,
                     Method::Counting);
}

}  // namespace cvdisc
