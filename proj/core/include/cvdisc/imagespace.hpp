#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cvdisc/channels.hpp"

namespace cvdisc {

enum class SpaceKind { Full, Cpf, Bcpf, Custom };

const char* to_string(SpaceKind kind);

// Prior-weighted set of candidate patterns. Full, k-CPF and bounded CPF
// spaces are described by the allowed target counts; patterns are kept in
// ascending (lexicographic) order.
class ImageSpace {
 public:
  static ImageSpace full(int m);
  static ImageSpace cpf(int m, int k);
  static ImageSpace bcpf(int m, std::vector<int> ks);
  // Weights are normalized; empty weights mean uniform.
  static ImageSpace custom(std::vector<Pattern> patterns,
                           std::vector<Real> weights = {});
  // "full", "cpf:K" / "K-cpf", "bcpf:1,2".
  static ImageSpace parse(const std::string& descr, int m);

  int m() const { return m_; }
  SpaceKind kind() const { return kind_; }
  // Allowed target counts (empty for custom spaces).
  const std::vector<int>& target_counts() const { return ks_; }
  const std::vector<Pattern>& patterns() const { return patterns_; }
  const std::vector<Real>& priors() const { return priors_; }
  std::size_t size() const { return patterns_.size(); }
  bool uniform() const { return uniform_; }
  // Standard spaces whose counts are determined by target counts alone.
  bool weight_symmetric() const { return kind_ != SpaceKind::Custom && uniform_; }
  std::string describe() const;

 private:
  int m_ = 0;
  SpaceKind kind_ = SpaceKind::Full;
  std::vector<int> ks_;
  std::vector<Pattern> patterns_;
  std::vector<Real> priors_;
  bool uniform_ = true;
};

// Largest pattern count enumerate() will materialize.
inline constexpr std::size_t kMaxEnumeratedPatterns = std::size_t{1} << 24;

const std::vector<Pattern>& enumerate(const ImageSpace& space);

// Line-oriented text form: one bitstring per line, optional weight after
// whitespace, '#' starts a comment.
ImageSpace read_image_space(std::istream& in);
void write_image_space(std::ostream& out, const ImageSpace& space);

// Image space seen through a channel-copying map: extended channel e reads
// the bit of original channel source[e].
struct ExtendedImageSpace {
  ImageSpace base;
  std::vector<int> source;
  std::vector<Pattern> extended;  // parallel to base.patterns()

  int extended_m() const { return static_cast<int>(source.size()); }
  Pattern map(const Pattern& p) const;
};

ExtendedImageSpace extend_image_space(const ImageSpace& base,
                                      std::vector<int> source);

}  // namespace cvdisc
