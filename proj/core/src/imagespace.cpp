#include "cvdisc/imagespace.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "cvdisc/combinatorics.hpp"
#include "cvdisc/errors.hpp"

namespace cvdisc {

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Full: return "full";
    case SpaceKind::Cpf: return "cpf";
    case SpaceKind::Bcpf: return "bcpf";
    case SpaceKind::Custom: return "custom";
  }
  return "unknown";
}

namespace {

std::vector<Pattern> patterns_with_counts(int m, const std::vector<int>& ks) {
  if (m < 1 || m > kMaxPatternLength)
    throw CapacityError("pattern length must be in [1, 24]");
  std::uint64_t total = 0;
  for (int k : ks) total += binomial(m, k);
  if (total > kMaxEnumeratedPatterns)
    throw CapacityError("image space too large to enumerate");
  std::vector<bool> allowed(static_cast<std::size_t>(m + 1), false);
  for (int k : ks) allowed[static_cast<std::size_t>(k)] = true;
  std::vector<Pattern> out;
  out.reserve(total);
  const std::uint32_t end = std::uint32_t{1} << m;
  for (std::uint32_t c = 0; c < end; ++c) {
    Pattern p(m, c);
    if (allowed[static_cast<std::size_t>(p.weight())]) out.push_back(p);
  }
  return out;
}

}  // namespace

ImageSpace ImageSpace::full(int m) {
  std::vector<int> ks;
  for (int k = 0; k <= m; ++k) ks.push_back(k);
  ImageSpace s = bcpf(m, ks);
  s.kind_ = SpaceKind::Full;
  return s;
}

ImageSpace ImageSpace::cpf(int m, int k) {
  ImageSpace s = bcpf(m, {k});
  s.kind_ = SpaceKind::Cpf;
  return s;
}

ImageSpace ImageSpace::bcpf(int m, std::vector<int> ks) {
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.empty()) throw InvalidArgumentError("bounded CPF needs target counts");
  for (int k : ks)
    if (k < 0 || k > m)
      throw InvalidArgumentError("target count " + std::to_string(k) +
                                 " outside [0, m]");
  ImageSpace s;
  s.m_ = m;
  s.kind_ = SpaceKind::Bcpf;
  s.ks_ = std::move(ks);
  s.patterns_ = patterns_with_counts(m, s.ks_);
  if (s.patterns_.size() < 2)
    throw InvalidArgumentError("image space needs at least two patterns");
  s.priors_.assign(s.patterns_.size(), 1.0L / static_cast<Real>(s.patterns_.size()));
  return s;
}

ImageSpace ImageSpace::custom(std::vector<Pattern> patterns,
                              std::vector<Real> weights) {
  if (patterns.size() < 2)
    throw InvalidArgumentError("image space needs at least two patterns");
  if (!weights.empty() && weights.size() != patterns.size())
    throw DimensionError("one weight per pattern required");
  const int m = patterns.front().size();
  std::set<Pattern> seen;
  for (const auto& p : patterns) {
    if (p.size() != m) throw DimensionError("patterns differ in length");
    if (!seen.insert(p).second)
      throw InvalidArgumentError("duplicate pattern " + p.to_string());
  }
  ImageSpace s;
  s.m_ = m;
  s.kind_ = SpaceKind::Custom;
  if (weights.empty()) weights.assign(patterns.size(), 1);
  Real total = 0;
  for (Real w : weights) {
    if (!(w > 0) || !std::isfinite(w))
      throw InvalidArgumentError("pattern weights must be positive");
    total += w;
  }
  // Keep patterns sorted; carry weights along.
  std::vector<std::size_t> idx(patterns.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return patterns[a] < patterns[b]; });
  for (std::size_t i : idx) {
    s.patterns_.push_back(patterns[i]);
    s.priors_.push_back(weights[i] / total);
  }
  s.uniform_ = std::all_of(weights.begin(), weights.end(),
                           [&](Real w) { return w == weights.front(); });
  return s;
}

ImageSpace ImageSpace::parse(const std::string& descr, int m) {
  if (descr == "full") return full(m);
  auto parse_ints = [&](const std::string& list) {
    std::vector<int> ks;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        ks.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw InvalidArgumentError("bad target count '" + item + "' in '" +
                                   descr + "'");
      }
    }
    return ks;
  };
  if (descr.rfind("cpf:", 0) == 0) {
    auto ks = parse_ints(descr.substr(4));
    if (ks.size() != 1) throw InvalidArgumentError("cpf takes one count");
    return cpf(m, ks[0]);
  }
  if (descr.size() > 4 && descr.substr(descr.size() - 4) == "-cpf") {
    auto ks = parse_ints(descr.substr(0, descr.size() - 4));
    if (ks.size() != 1) throw InvalidArgumentError("k-cpf takes one count");
    return cpf(m, ks[0]);
  }
  if (descr.rfind("bcpf:", 0) == 0) return bcpf(m, parse_ints(descr.substr(5)));
  throw InvalidArgumentError("unknown image space '" + descr +
                             "' (full, cpf:K, K-cpf, bcpf:K1,K2,...)");
}

std::string ImageSpace::describe() const {
  switch (kind_) {
    case SpaceKind::Full: return "full";
    case SpaceKind::Custom: return "custom";
    case SpaceKind::Cpf: return "cpf:" + std::to_string(ks_.front());
    case SpaceKind::Bcpf: {
      std::string s = "bcpf:";
      for (std::size_t i = 0; i < ks_.size(); ++i)
        s += (i ? "," : "") + std::to_string(ks_[i]);
      return s;
    }
  }
  return "unknown";
}

const std::vector<Pattern>& enumerate(const ImageSpace& space) {
  return space.patterns();
}

ImageSpace read_image_space(std::istream& in) {
  std::vector<Pattern> pats;
  std::vector<Real> weights;
  bool any_weight = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::stringstream ss(line);
    std::string bits;
    if (!(ss >> bits)) continue;
    pats.push_back(Pattern::from_string(bits));
    std::string w;
    if (ss >> w) {
      try {
        weights.push_back(std::stold(w));
      } catch (const std::exception&) {
        throw InvalidArgumentError("line " + std::to_string(lineno) +
                                   ": bad weight '" + w + "'");
      }
      any_weight = true;
    } else {
      weights.push_back(1);
    }
    std::string extra;
    if (ss >> extra)
      throw InvalidArgumentError("line " + std::to_string(lineno) +
                                 ": trailing text '" + extra + "'");
  }
  return ImageSpace::custom(std::move(pats),
                            any_weight ? std::move(weights) : std::vector<Real>{});
}

void write_image_space(std::ostream& out, const ImageSpace& space) {
  std::ostringstream tmp;
  tmp.precision(21);
  for (std::size_t i = 0; i < space.size(); ++i) {
    tmp << space.patterns()[i].to_string();
    if (!space.uniform()) tmp << ' ' << space.priors()[i];
    tmp << '\n';
  }
  out << tmp.str();
}

Pattern ExtendedImageSpace::map(const Pattern& p) const {
  std::uint32_t code = 0;
  for (int s : source) code = (code << 1) | (p[s] ? 1u : 0u);
  return Pattern(extended_m(), code);
}

ExtendedImageSpace extend_image_space(const ImageSpace& base,
                                      std::vector<int> source) {
  for (int s : source)
    if (s < 0 || s >= base.m())
      throw DimensionError("copy map references a channel outside the space");
  ExtendedImageSpace e{base, std::move(source), {}};
  e.extended.reserve(base.size());
  std::set<Pattern> seen;
  for (const auto& p : base.patterns()) {
    e.extended.push_back(e.map(p));
    seen.insert(e.extended.back());
  }
  if (seen.size() != base.size())
    throw InvalidPartitionError(
        "copy map is not injective on the image space (some channel unused)");
  return e;
}

}  // namespace cvdisc
