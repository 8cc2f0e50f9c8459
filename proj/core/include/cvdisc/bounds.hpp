#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvdisc/channels.hpp"
#include "cvdisc/gaussian.hpp"
#include "cvdisc/imagespace.hpp"
#include "cvdisc/probes.hpp"

namespace cvdisc {

// ---------------------------------------------------------------------------
// Fidelity tables

// Single-copy log fidelities between every pair of output states, row-major.
// The diagonal holds 0 and is never used by the bounds.
struct FidelityTable {
  std::vector<Pattern> patterns;
  std::vector<Real> log_f;

  std::size_t size() const { return patterns.size(); }
  Real log_at(std::size_t i, std::size_t j) const { return log_f[i * size() + j]; }
  Real at(std::size_t i, std::size_t j) const;
};

// Exhaustive: full-state output CM for every pattern, gaussian fidelity for
// every pair. The independent oracle for everything faster.
FidelityTable fidelity_table_brute(const std::vector<Pattern>& patterns,
                                   const ProbeState& probe,
                                   const ChannelFamily& family);

// Local class of a block's sub-pattern pair: target counts on each side and
// their Hamming distance. Canonical form has v <= u.
struct BlockClass {
  int v = 0;
  int u = 0;
  int d = 0;
  auto operator<=>(const BlockClass&) const = default;
};

BlockClass block_class(const Block& block, const Pattern& a, const Pattern& b);

// Memoized single-copy log fidelities of one disjoint probe per block and
// block-local class. Thread-compatible (not thread-safe).
class BlockFidelityCache {
 public:
  BlockFidelityCache(Partition partition, ChannelFamily family, Real mu);

  const Partition& partition() const { return partition_; }
  Real log_fidelity(std::size_t block, const BlockClass& cls);
  // Sum over blocks: the log fidelity of the whole (block-diagonal) output.
  Real pair_log_fidelity(const Pattern& a, const Pattern& b);
  std::size_t evaluations() const { return evaluations_; }

 private:
  Partition partition_;
  ChannelFamily family_;
  Real mu_;
  std::vector<std::size_t> shape_of_;  // block -> first block of equal shape
  std::vector<std::map<BlockClass, Real>> cache_;
  std::size_t evaluations_ = 0;
};

FidelityTable fidelity_table_blockwise(const std::vector<Pattern>& patterns,
                                       const ProbeSpec& spec,
                                       const ChannelFamily& family);

// ---------------------------------------------------------------------------
// Reports

enum class Method { Brute, Generic, Counting, ClosedFormD2, Mutual, Classical };
const char* to_string(Method m);

struct BoundReport {
  Real lower = 0;  // clipped
  Real upper = 0;  // clipped
  Real lower_raw = 0;
  Real upper_raw = 0;
  Real ln_lower = 0;  // ln of the raw values
  Real ln_upper = 0;
  Real copies = 1;
  Real mbar = 1;
  int rounds = 1;
  Method method = Method::Generic;
  std::optional<Real> delta_perr;
};

// Fills raw/clipped fields from ln of the raw bounds.
BoundReport make_report(Real ln_lower, Real ln_upper, Real copies, Real mbar,
                        Method method);

// Upper: sum_{i != j} sqrt(p_i p_j) F_ij^M. Lower: 1/2 sum_{i != j} p_i p_j F_ij^2M.
BoundReport bounds_generic(const FidelityTable& table,
                           const std::vector<Real>& priors, Real copies);

// Same sums over an arbitrary symmetric pair evaluator, without materializing
// a table. Pairs are visited with i < j.
BoundReport bounds_from_pairs(std::size_t n, const std::vector<Real>& priors,
                              Real copies,
                              const std::function<Real(std::size_t, std::size_t)>& log_f);

// Degeneracy counting over full / CPF / bounded-CPF spaces with uniform
// priors: one fidelity per block-local class, then a dynamic program over
// blocks and remaining target counts. Partition must be disjoint (idlers and
// classical single-channel blocks allowed).
BoundReport bounds_via_counting(const ImageSpace& space, const Partition& partition,
                                const ChannelFamily& family, Real mu, Real copies);

// The four two-mode sub-fidelity classes of a TMSV probe:
// [00]|[01], [01]|[11], [00]|[11], [10]|[01]. Stored as logs.
struct TmsvSubfidelities {
  Real ln_f01 = 0;
  Real ln_f12 = 0;
  Real ln_f02 = 0;
  Real ln_f11 = 0;
};
TmsvSubfidelities tmsv_subfidelities(const ChannelFamily& family, Real mu);

// Single channel probed by one arm of a TMSV, other arm kept as idler.
Real choi_log_fidelity(const ChannelFamily& family, Real mu);

// Closed form for TMSV pairs over the full uniform space, m even.
BoundReport bounds_d2(const ChannelFamily& family, Real mu, Real copies, int m);

// Odd m: pairs plus a coherent (hybrid) or idler-assisted last channel.
BoundReport bounds_d2_odd(const ChannelFamily& family, Real mu, Real copies, int m,
                          OddStrategy strategy);

// Overlapping partition via the copy-channel extension. mbar = (m+l)/m M.
BoundReport bounds_mutual(const ImageSpace& space, const Partition& d,
                          const ChannelFamily& family, Real mu, Real copies);

// Per channel, per copy log fidelity of the optimal classical probe: coherent
// state with ns photons under pure loss, vacuum under additive noise.
Real classical_channel_log_fidelity(const ChannelFamily& family, Real ns);

BoundReport classical_benchmark(const ImageSpace& space, const ChannelFamily& family,
                                Real ns, Real copies);

// Dispatches a probe spec to the cheapest exact path: classical, counting,
// mutual extension or blockwise generic.
BoundReport compute_bounds(const ImageSpace& space, const ProbeSpec& spec,
                           const ChannelFamily& family, Real copies);

// Classical lower minus quantum upper (clipped). Requires matched mbar.
Real guaranteed_advantage(const BoundReport& classical, const BoundReport& quantum);

// ---------------------------------------------------------------------------
// Closed-form two-mode sub-fidelities, used as oracles.

enum class SubClass { F01, F12, F02, F11 };
const char* to_string(SubClass c);
// (v, u, d) of a two-channel block -> class; throws for anything else.
SubClass sub_class(int v, int u, int d);

// mu = nullopt means the mu -> infinity limit. Throws UnsupportedError for
// class / family combinations without a displayed closed form.
Real subfidelity_oracle(const ChannelFamily& family, std::optional<Real> mu,
                        SubClass cls);

// ---------------------------------------------------------------------------
// Degeneracy census

// Ordered off-diagonal pattern pairs grouped by the tuple of per-block
// classes; a disjoint partition over the patterns' channels.
using Census = std::map<std::vector<BlockClass>, std::uint64_t>;
Census pair_degeneracy_census(const std::vector<Pattern>& patterns,
                              const Partition& partition);
Census pair_degeneracy_census(const ImageSpace& space, const Partition& partition);

}  // namespace cvdisc
