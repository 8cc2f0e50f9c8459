#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cvdisc/channels.hpp"
#include "cvdisc/gaussian.hpp"
#include "cvdisc/imagespace.hpp"

namespace cvdisc {

enum class BlockKind { Ghz, Coherent, Vacuum };

// One probe block: a GHZ state spread over `channels` plus `idlers` retained
// modes, or a single-channel classical (coherent / vacuum) probe.
struct Block {
  std::vector<int> channels;  // 0-based, order defines mode order
  int idlers = 0;
  BlockKind kind = BlockKind::Ghz;

  int modes() const { return idlers + static_cast<int>(channels.size()); }
  bool operator==(const Block&) const = default;
};

// A collection of blocks over m channels. The same type carries disjoint,
// idler-assisted and overlapping (mutual probing) structures; the validators
// below say which one a value is.
//
// Text grammar: blocks separated by '|'. Inside a block, channels are 1-based
// single digits ("12|34") or, for channels above 9, comma separated
// ("1,2|10,11"). Each '*' adds one idler ("1*|23"). A leading 'c' marks a
// coherent block and 'v' a vacuum block ("12|c3").
struct Partition {
  int m = 0;
  std::vector<Block> blocks;

  static Partition parse(const std::string& text, int m = 0);
  std::string to_string() const;

  // Sum of block channel counts minus m.
  int overlap() const;
  bool is_disjoint() const;
  bool has_idlers() const;
  bool has_classical_blocks() const;
  bool operator==(const Partition&) const = default;
};

// Throws InvalidPartitionError with a diagnostic when the invariants fail.
void validate_disjoint(const Partition& p);
void validate_cover(const Partition& p);

struct ProbeSpec {
  Partition partition;
  Real mu = 0.5L;  // per-block energy; coherent blocks carry mu - 1/2 photons

  static ProbeSpec classical_coherent(int m, Real ns);
  static ProbeSpec classical_vacuum(int m);
  bool is_classical() const;
};

struct ProbeState {
  CovMatrix cm;
  IdlerLayout layout;
};

// Block-diagonal probe state; modes ordered block by block, idlers first.
ProbeState assemble_probe(const ProbeSpec& spec, int m);

// CM of a single block on its own (modes as in the layout).
CovMatrix block_state(const Block& block, Real mu);

// Overlapping partition rewritten as a disjoint one over m + l copy channels
// (blocks kept in order, copies numbered by first appearance), together with
// the image space mapped onto the copies.
struct MutualExtension {
  Partition extended;
  ExtendedImageSpace space;
  std::vector<int> source;  // extended channel -> original channel
};

MutualExtension extend_for_mutual_probing(const Partition& d,
                                          const ImageSpace& space);

// Splits overlapping blocks into rounds of pairwise disjoint blocks. Rounds
// keep m; they need not cover every channel.
std::vector<Partition> decompose_rounds(const Partition& d);

// (m + l) / m * copies.
Real average_channel_use(const Partition& p, Real copies);

Partition nn_partition(int m);
Partition full_ghz_partition(int m);
Partition tmsv_pairs_partition(int m);  // m even
Partition idler_full_partition(int m);

enum class OddStrategy { HybridCoherent, SingleIdler, Triple };
const char* to_string(OddStrategy s);
OddStrategy odd_strategy_from_string(const std::string& s);

// (m-1)/2 TMSV pairs plus a coherent or idler-assisted last channel, or the
// unassisted variant with one three-channel block at the end.
ProbeSpec odd_m_disjoint_spec(int m, OddStrategy strategy, Real mu);

// Bounded enumeration of disjoint partitions (canonical block order, blocks of
// at least `min_block` channels). m <= 10.
void for_each_disjoint_partition(int m, int min_block,
                                 const std::function<void(const Partition&)>& f);

// Bounded enumeration of overlapping two-channel covers of m <= 6 channels.
void for_each_pair_cover(int m, const std::function<void(const Partition&)>& f);

inline constexpr int kMaxEnumerationChannels = 10;
inline constexpr int kMaxExhaustiveColoringBlocks = 12;

}  // namespace cvdisc
