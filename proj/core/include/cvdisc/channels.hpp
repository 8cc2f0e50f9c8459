#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cvdisc/gaussian.hpp"

namespace cvdisc {

enum class FamilyKind { PureLoss, AdditiveNoise, Thermal };

const char* to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& s);

// Gaussian phase-insensitive channel: V -> tau V + nu I on one mode.
// Only constructible through the family factories, which enforce the
// relation between tau and nu.
class GpiParams {
 public:
  static GpiParams pure_loss(Real eta);
  static GpiParams additive_noise(Real nu);
  // Thermal loss (tau < 1) or amplifier (tau > 1): nu = eps |1 - tau|.
  static GpiParams thermal(Real tau, Real eps);

  Real tau() const { return tau_; }
  Real nu() const { return nu_; }
  // Thermal noise parameter (1/2 for pure loss; 0 when not meaningful).
  Real eps() const { return eps_; }

  bool operator==(const GpiParams& o) const {
    return tau_ == o.tau_ && nu_ == o.nu_;
  }

 private:
  GpiParams(Real tau, Real nu, Real eps) : tau_(tau), nu_(nu), eps_(eps) {}
  Real tau_;
  Real nu_;
  Real eps_;
};

// Background / target pair. Identical pairs are rejected: every fidelity would
// be 1 and there is nothing to discriminate.
class ChannelFamily {
 public:
  ChannelFamily(FamilyKind kind, GpiParams background, GpiParams target);

  static ChannelFamily pure_loss(Real eta_b, Real eta_t);
  static ChannelFamily additive_noise(Real nu_b, Real nu_t);
  static ChannelFamily thermal(Real tau_b, Real eps_b, Real tau_t, Real eps_t);

  FamilyKind kind() const { return kind_; }
  const GpiParams& background() const { return background_; }
  const GpiParams& target() const { return target_; }
  const GpiParams& params(bool is_target) const {
    return is_target ? target_ : background_;
  }

 private:
  FamilyKind kind_;
  GpiParams background_;
  GpiParams target_;
};

inline constexpr int kMaxPatternLength = 24;

// Binary channel pattern; bit k = 1 means channel k is the target channel.
// Stored with channel 0 as the most significant bit so numeric order equals
// lexicographic order of the bitstring.
class Pattern {
 public:
  Pattern() = default;
  Pattern(int m, std::uint32_t code);
  static Pattern from_bits(const std::vector<int>& bits);
  static Pattern from_string(const std::string& s);

  int size() const { return m_; }
  std::uint32_t code() const { return code_; }
  bool operator[](int k) const { return (code_ >> (m_ - 1 - k)) & 1u; }
  int weight() const;
  std::string to_string() const;

  auto operator<=>(const Pattern&) const = default;

 private:
  int m_ = 0;
  std::uint32_t code_ = 0;
};

int hamming(const Pattern& a, const Pattern& b);

// Diagonal 2m x 2m matrix with x_B or x_T repeated on each mode's quadratures.
Matrix pattern_scaling(Real x_b, Real x_t, const Pattern& pattern);

// Channel pattern acting on an m-mode CM: (I[sqrt tau]) V (I[sqrt tau]) + I[nu],
// mean scaled by I[sqrt tau].
CovMatrix apply_pattern(const CovMatrix& v, const ChannelFamily& family,
                        const Pattern& pattern);

// Mode layout of a probe state: blocks in order, each holding its idler modes
// first and then one probe mode per listed channel (0-based).
struct IdlerLayout {
  struct Block {
    int idlers = 0;
    std::vector<int> channels;
  };
  std::vector<Block> blocks;

  int total_modes() const;
  int total_idlers() const;
  // Channel index for each mode, -1 for idlers.
  std::vector<int> channel_of_mode() const;
  // m probe modes mapped to channels 0..m-1 in order, no idlers.
  static IdlerLayout trivial(int m);
};

// As apply_pattern, but idler modes pass untouched and probe modes see the
// pattern bit of their channel.
CovMatrix apply_pattern_with_idlers(const CovMatrix& v,
                                    const ChannelFamily& family,
                                    const Pattern& pattern,
                                    const IdlerLayout& layout);

}  // namespace cvdisc
