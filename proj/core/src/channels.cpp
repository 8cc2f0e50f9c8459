#include "cvdisc/channels.hpp"

#include <bit>
#include <cmath>

#include "cvdisc/errors.hpp"

namespace cvdisc {

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::PureLoss: return "pure-loss";
    case FamilyKind::AdditiveNoise: return "additive-noise";
    case FamilyKind::Thermal: return "thermal";
  }
  return "unknown";
}

FamilyKind family_kind_from_string(const std::string& s) {
  if (s == "pure-loss" || s == "loss") return FamilyKind::PureLoss;
  if (s == "additive-noise" || s == "additive") return FamilyKind::AdditiveNoise;
  if (s == "thermal") return FamilyKind::Thermal;
  throw InvalidArgumentError("unknown channel family '" + s + "'");
}

GpiParams GpiParams::pure_loss(Real eta) {
  if (!(eta >= 0 && eta <= 1))
    throw InvalidArgumentError("pure-loss transmissivity must lie in [0, 1]");
  return GpiParams(eta, (1 - eta) / 2, 0.5L);
}

GpiParams GpiParams::additive_noise(Real nu) {
  if (!(nu >= 0) || !std::isfinite(nu))
    throw InvalidArgumentError("additive noise must be finite and >= 0");
  return GpiParams(1, nu, 0);
}

GpiParams GpiParams::thermal(Real tau, Real eps) {
  if (!(tau > 0) || !std::isfinite(tau))
    throw InvalidArgumentError("thermal channel needs tau > 0");
  if (!(eps >= 0.5L) || !std::isfinite(eps))
    throw InvalidArgumentError("thermal channel needs eps >= 1/2");
  return GpiParams(tau, eps * std::abs(1 - tau), eps);
}

ChannelFamily::ChannelFamily(FamilyKind kind, GpiParams background,
                             GpiParams target)
    : kind_(kind), background_(background), target_(target) {
  if (background_ == target_)
    throw InvalidArgumentError(
        "background and target channels are identical; nothing to discriminate");
}

ChannelFamily ChannelFamily::pure_loss(Real eta_b, Real eta_t) {
  return {FamilyKind::PureLoss, GpiParams::pure_loss(eta_b),
          GpiParams::pure_loss(eta_t)};
}

ChannelFamily ChannelFamily::additive_noise(Real nu_b, Real nu_t) {
  return {FamilyKind::AdditiveNoise, GpiParams::additive_noise(nu_b),
          GpiParams::additive_noise(nu_t)};
}

ChannelFamily ChannelFamily::thermal(Real tau_b, Real eps_b, Real tau_t,
                                     Real eps_t) {
  return {FamilyKind::Thermal, GpiParams::thermal(tau_b, eps_b),
          GpiParams::thermal(tau_t, eps_t)};
}

Pattern::Pattern(int m, std::uint32_t code) : m_(m), code_(code) {
  if (m < 1 || m > kMaxPatternLength)
    throw CapacityError("pattern length must be in [1, 24]");
  if (code >> m)
    throw InvalidArgumentError("pattern code has bits beyond its length");
}

Pattern Pattern::from_bits(const std::vector<int>& bits) {
  std::uint32_t code = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw InvalidArgumentError("pattern bits must be 0/1");
    code = (code << 1) | static_cast<std::uint32_t>(b);
  }
  return Pattern(static_cast<int>(bits.size()), code);
}

Pattern Pattern::from_string(const std::string& s) {
  std::vector<int> bits;
  for (char c : s) {
    if (c == '0' || c == 'B') bits.push_back(0);
    else if (c == '1' || c == 'T') bits.push_back(1);
    else throw InvalidArgumentError("bad pattern character in '" + s + "'");
  }
  return from_bits(bits);
}

int Pattern::weight() const { return std::popcount(code_); }

std::string Pattern::to_string() const {
  std::string s(static_cast<std::size_t>(m_), '0');
  for (int k = 0; k < m_; ++k)
    if ((*this)[k]) s[static_cast<std::size_t>(k)] = '1';
  return s;
}

int hamming(const Pattern& a, const Pattern& b) {
  if (a.size() != b.size())
    throw DimensionError("hamming: patterns have different lengths");
  return std::popcount(a.code() ^ b.code());
}

Matrix pattern_scaling(Real x_b, Real x_t, const Pattern& pattern) {
  const int m = pattern.size();
  Matrix d = Matrix::Zero(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    const Real x = pattern[k] ? x_t : x_b;
    d(2 * k, 2 * k) = x;
    d(2 * k + 1, 2 * k + 1) = x;
  }
  return d;
}

namespace {

// Applies per-mode (tau, nu) in place; tau < 0 marks an untouched mode.
CovMatrix apply_per_mode(const CovMatrix& v, const std::vector<Real>& root_tau,
                         const std::vector<Real>& nu) {
  Matrix out = v.data();
  const int n = v.modes();
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) out(i, j) *= root_tau[i / 2] * root_tau[j / 2];
  for (int k = 0; k < n; ++k) {
    out(2 * k, 2 * k) += nu[k];
    out(2 * k + 1, 2 * k + 1) += nu[k];
  }
  if (!v.has_mean()) return CovMatrix(std::move(out));
  Vector mean = v.mean();
  for (int i = 0; i < 2 * n; ++i) mean(i) *= root_tau[i / 2];
  return CovMatrix(std::move(out), std::move(mean));
}

}  // namespace

CovMatrix apply_pattern(const CovMatrix& v, const ChannelFamily& family,
                        const Pattern& pattern) {
  return apply_pattern_with_idlers(v, family, pattern,
                                   IdlerLayout::trivial(pattern.size()));
}

int IdlerLayout::total_modes() const {
  int n = 0;
  for (const auto& b : blocks) n += b.idlers + static_cast<int>(b.channels.size());
  return n;
}

int IdlerLayout::total_idlers() const {
  int n = 0;
  for (const auto& b : blocks) n += b.idlers;
  return n;
}

std::vector<int> IdlerLayout::channel_of_mode() const {
  std::vector<int> out;
  for (const auto& b : blocks) {
    out.insert(out.end(), static_cast<std::size_t>(b.idlers), -1);
    out.insert(out.end(), b.channels.begin(), b.channels.end());
  }
  return out;
}

IdlerLayout IdlerLayout::trivial(int m) {
  IdlerLayout l;
  Block b;
  for (int k = 0; k < m; ++k) b.channels.push_back(k);
  l.blocks.push_back(std::move(b));
  return l;
}

CovMatrix apply_pattern_with_idlers(const CovMatrix& v,
                                    const ChannelFamily& family,
                                    const Pattern& pattern,
                                    const IdlerLayout& layout) {
  const auto chan = layout.channel_of_mode();
  if (static_cast<int>(chan.size()) != v.modes())
    throw DimensionError("layout declares " + std::to_string(chan.size()) +
                         " modes but the CM has " + std::to_string(v.modes()));
  std::vector<Real> root_tau(chan.size(), 1);
  std::vector<Real> nu(chan.size(), 0);
  for (std::size_t i = 0; i < chan.size(); ++i) {
    const int c = chan[i];
    if (c < 0) continue;
    if (c >= pattern.size())
      throw DimensionError("layout references channel " + std::to_string(c + 1) +
                           " beyond the pattern length " +
                           std::to_string(pattern.size()));
    const GpiParams& p = family.params(pattern[c]);
    root_tau[i] = std::sqrt(p.tau());
    nu[i] = p.nu();
  }
  return apply_per_mode(v, root_tau, nu);
}

}  // namespace cvdisc
