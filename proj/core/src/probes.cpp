#include "cvdisc/probes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cvdisc/errors.hpp"

namespace cvdisc {

ProbeSpec ProbeSpec::classical_coherent(int m, Real ns) {
  if (!(ns >= 0)) throw InvalidEnergyError("coherent probe energy must be >= 0");
  ProbeSpec s;
  s.partition.m = m;
  for (int k = 0; k < m; ++k) s.partition.blocks.push_back({{k}, 0, BlockKind::Coherent});
  s.mu = ns + 0.5L;
  return s;
}

ProbeSpec ProbeSpec::classical_vacuum(int m) {
  ProbeSpec s;
  s.partition.m = m;
  for (int k = 0; k < m; ++k) s.partition.blocks.push_back({{k}, 0, BlockKind::Vacuum});
  s.mu = 0.5L;
  return s;
}

bool ProbeSpec::is_classical() const {
  return std::all_of(partition.blocks.begin(), partition.blocks.end(),
                     [](const Block& b) { return b.kind != BlockKind::Ghz; });
}

CovMatrix block_state(const Block& block, Real mu) {
  switch (block.kind) {
    case BlockKind::Ghz: return ghz_cm(block.modes(), mu);
    case BlockKind::Vacuum: return vacuum_cm(1);
    case BlockKind::Coherent: {
      if (!(mu >= 0.5L)) throw InvalidEnergyError("coherent energy must be >= 1/2");
      return coherent_cm({std::sqrt(mu - 0.5L)});
    }
  }
  throw InvalidPartitionError("unknown block kind");
}

ProbeState assemble_probe(const ProbeSpec& spec, int m) {
  if (spec.partition.m != m)
    throw DimensionError("probe spec is for m = " + std::to_string(spec.partition.m) +
                         ", not " + std::to_string(m));
  validate_disjoint(spec.partition);
  if (!(spec.mu >= 0.5L)) throw InvalidEnergyError("probe energy mu must be >= 1/2");
  std::vector<CovMatrix> parts;
  ProbeState out;
  for (const auto& b : spec.partition.blocks) {
    parts.push_back(block_state(b, spec.mu));
    out.layout.blocks.push_back({b.idlers, b.channels});
  }
  out.cm = direct_sum(parts);
  return out;
}

MutualExtension extend_for_mutual_probing(const Partition& d,
                                          const ImageSpace& space) {
  validate_cover(d);
  if (d.m != space.m())
    throw DimensionError("partition and image space disagree on m");
  MutualExtension ext;
  ext.extended.m = d.m + d.overlap();
  for (const auto& b : d.blocks) {
    Block nb = b;
    for (int& c : nb.channels) {
      ext.source.push_back(c);
      c = static_cast<int>(ext.source.size()) - 1;
    }
    ext.extended.blocks.push_back(std::move(nb));
  }
  ext.space = extend_image_space(space, ext.source);
  return ext;
}

namespace {

using Graph = std::vector<std::vector<bool>>;

Graph conflict_graph(const Partition& d) {
  const std::size_t n = d.blocks.size();
  Graph g(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      bool clash = false;
      for (int x : d.blocks[a].channels)
        for (int y : d.blocks[b].channels) clash = clash || x == y;
      g[a][b] = g[b][a] = clash;
    }
  return g;
}

std::vector<int> greedy_coloring(const Graph& g) {
  std::vector<int> color(g.size(), -1);
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::vector<bool> used(g.size() + 1, false);
    for (std::size_t u = 0; u < v; ++u)
      if (g[v][u]) used[static_cast<std::size_t>(color[u])] = true;
    int c = 0;
    while (used[static_cast<std::size_t>(c)]) ++c;
    color[v] = c;
  }
  return color;
}

bool color_with(const Graph& g, int k, std::size_t v, std::vector<int>& color) {
  if (v == g.size()) return true;
  // Symmetry breaking: block v may open at most one new color.
  int max_used = -1;
  for (std::size_t u = 0; u < v; ++u) max_used = std::max(max_used, color[u]);
  for (int c = 0; c < k && c <= max_used + 1; ++c) {
    bool ok = true;
    for (std::size_t u = 0; u < v && ok; ++u) ok = !(g[v][u] && color[u] == c);
    if (!ok) continue;
    color[v] = c;
    if (color_with(g, k, v + 1, color)) return true;
  }
  color[v] = -1;
  return false;
}

}  // namespace

std::vector<Partition> decompose_rounds(const Partition& d) {
  validate_cover(d);
  const Graph g = conflict_graph(d);
  std::vector<int> color = greedy_coloring(g);
  int rounds = *std::max_element(color.begin(), color.end()) + 1;
  if (g.size() <= static_cast<std::size_t>(kMaxExhaustiveColoringBlocks)) {
    for (int k = 1; k < rounds; ++k) {
      std::vector<int> trial(g.size(), -1);
      if (color_with(g, k, 0, trial)) {
        color = trial;
        rounds = k;
        break;
      }
    }
  }
  std::vector<Partition> out(static_cast<std::size_t>(rounds));
  for (auto& r : out) r.m = d.m;
  for (std::size_t b = 0; b < d.blocks.size(); ++b)
    out[static_cast<std::size_t>(color[b])].blocks.push_back(d.blocks[b]);
  return out;
}

Real average_channel_use(const Partition& p, Real copies) {
  if (p.m < 1) throw InvalidPartitionError("average_channel_use: m must be >= 1");
  return static_cast<Real>(p.m + p.overlap()) / static_cast<Real>(p.m) * copies;
}

Partition nn_partition(int m) {
  if (m < 3) throw InvalidPartitionError("nearest-neighbour ring needs m >= 3");
  Partition p;
  p.m = m;
  for (int k = 0; k < m; ++k) p.blocks.push_back({{k, (k + 1) % m}, 0, BlockKind::Ghz});
  return p;
}

Partition full_ghz_partition(int m) {
  if (m < 2) throw InvalidPartitionError("a GHZ probe needs m >= 2");
  Partition p;
  p.m = m;
  Block b;
  for (int k = 0; k < m; ++k) b.channels.push_back(k);
  p.blocks.push_back(std::move(b));
  return p;
}

Partition tmsv_pairs_partition(int m) {
  if (m < 2 || m % 2) throw InvalidPartitionError("TMSV pairs need an even m");
  Partition p;
  p.m = m;
  for (int k = 0; k < m; k += 2) p.blocks.push_back({{k, k + 1}, 0, BlockKind::Ghz});
  return p;
}

Partition idler_full_partition(int m) {
  if (m < 1) throw InvalidPartitionError("m must be >= 1");
  Partition p;
  p.m = m;
  for (int k = 0; k < m; ++k) p.blocks.push_back({{k}, 1, BlockKind::Ghz});
  return p;
}

const char* to_string(OddStrategy s) {
  switch (s) {
    case OddStrategy::HybridCoherent: return "hybrid";
    case OddStrategy::SingleIdler: return "single-idler";
    case OddStrategy::Triple: return "triple";
  }
  return "unknown";
}

OddStrategy odd_strategy_from_string(const std::string& s) {
  if (s == "hybrid" || s == "hybrid-coherent") return OddStrategy::HybridCoherent;
  if (s == "single-idler" || s == "idler") return OddStrategy::SingleIdler;
  if (s == "triple") return OddStrategy::Triple;
  throw InvalidArgumentError("unknown odd-m strategy '" + s +
                             "' (hybrid, single-idler, triple)");
}

ProbeSpec odd_m_disjoint_spec(int m, OddStrategy strategy, Real mu) {
  if (m < 3 || m % 2 == 0)
    throw InvalidPartitionError("odd-m disjoint spec needs an odd m >= 3");
  ProbeSpec s;
  s.mu = mu;
  s.partition.m = m;
  const int pairs_end = strategy == OddStrategy::Triple ? m - 3 : m - 1;
  for (int k = 0; k < pairs_end; k += 2)
    s.partition.blocks.push_back({{k, k + 1}, 0, BlockKind::Ghz});
  switch (strategy) {
    case OddStrategy::HybridCoherent:
      s.partition.blocks.push_back({{m - 1}, 0, BlockKind::Coherent});
      break;
    case OddStrategy::SingleIdler:
      s.partition.blocks.push_back({{m - 1}, 1, BlockKind::Ghz});
      break;
    case OddStrategy::Triple:
      s.partition.blocks.push_back({{m - 3, m - 2, m - 1}, 0, BlockKind::Ghz});
      break;
  }
  validate_disjoint(s.partition);
  return s;
}

void for_each_disjoint_partition(int m, int min_block,
                                 const std::function<void(const Partition&)>& f) {
  if (m < 1 || m > kMaxEnumerationChannels)
    throw CapacityError("partition enumeration is limited to m <= 10");
  // Restricted growth strings give each set partition exactly once.
  std::vector<int> label(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int pos, int nblocks) {
    if (pos == m) {
      Partition p;
      p.m = m;
      p.blocks.resize(static_cast<std::size_t>(nblocks));
      for (int k = 0; k < m; ++k)
        p.blocks[static_cast<std::size_t>(label[static_cast<std::size_t>(k)])]
            .channels.push_back(k);
      for (const auto& b : p.blocks)
        if (static_cast<int>(b.channels.size()) < min_block) return;
      f(p);
      return;
    }
    for (int l = 0; l <= nblocks; ++l) {
      label[static_cast<std::size_t>(pos)] = l;
      rec(pos + 1, std::max(nblocks, l + 1));
    }
  };
  rec(0, 0);
}

void for_each_pair_cover(int m, const std::function<void(const Partition&)>& f) {
  if (m < 2 || m > 6) throw CapacityError("pair-cover enumeration is limited to m <= 6");
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) edges.emplace_back(a, b);
  const std::uint32_t n = static_cast<std::uint32_t>(edges.size());
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint32_t covered = 0;
    for (std::uint32_t e = 0; e < n; ++e)
      if (mask >> e & 1u)
        covered |= (1u << edges[e].first) | (1u << edges[e].second);
    if (covered != (1u << m) - 1) continue;
    Partition p;
    p.m = m;
    for (std::uint32_t e = 0; e < n; ++e)
      if (mask >> e & 1u)
        p.blocks.push_back({{edges[e].first, edges[e].second}, 0, BlockKind::Ghz});
    f(p);
  }
}

}  // namespace cvdisc
