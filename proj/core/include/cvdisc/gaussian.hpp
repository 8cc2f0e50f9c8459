#pragma once

#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace cvdisc {

// Extended precision throughout: the rounded CM of a strongly squeezed GHZ
// state is only pure to ~1e-8 in double, which is too coarse for 1e-9 checks.
using Real = long double;
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

inline constexpr Real kVacuumVariance = 0.5L;
inline constexpr Real kBonaFideTol = 1e-9L;

// Covariance matrix of an n-mode Gaussian state in interleaved quadrature
// order (x1, p1, ..., xn, pn), vacuum variance 1/2. The matrix is symmetrized
// on construction; the mean is optional and reads as zero when absent.
class CovMatrix {
 public:
  CovMatrix() = default;
  explicit CovMatrix(Matrix data, std::optional<Vector> mean = std::nullopt);

  int modes() const { return static_cast<int>(data_.rows() / 2); }
  const Matrix& data() const { return data_; }
  bool has_mean() const { return mean_.has_value(); }
  Vector mean() const;

  // 2x2 block (i, j) between modes i and j.
  Matrix block(int i, int j) const { return data_.block(2 * i, 2 * j, 2, 2); }

 private:
  Matrix data_;
  std::optional<Vector> mean_;
};

// Symplectic form matching the interleaved ordering.
Matrix omega(int n);

CovMatrix vacuum_cm(int n);

// Coherent states: vacuum CM with mean (sqrt(2) Re a, sqrt(2) Im a) per mode,
// so that |a|^2 is the mean photon number. Real amplitudes only.
CovMatrix coherent_cm(const std::vector<Real>& amplitudes);

// Maximal pairwise correlation of an m-mode CV-GHZ state at energy mu.
Real ghz_correlation(int m, Real mu);

// m-mode CV-GHZ CM: mu*I diagonal blocks, diag(c, -c) off-diagonal blocks
// with the maximal c. m = 2 is the two-mode squeezed vacuum.
CovMatrix ghz_cm(int m, Real mu);

// Closed-form symplectic spectrum of ghz_cm(m, mu) (ascending, m values).
std::vector<Real> ghz_spectrum_closed_form(int m, Real mu);

CovMatrix direct_sum(const std::vector<CovMatrix>& parts);

// Symplectic eigenvalues, ascending.
std::vector<Real> symplectic_spectrum(const CovMatrix& v);

bool is_bona_fide(const CovMatrix& v, Real tol = kBonaFideTol);

// Uhlmann fidelity Tr sqrt(sqrt(a) b sqrt(a)) between Gaussian states.
// The log variant keeps precision when F is tiny.
Real gaussian_log_fidelity(const CovMatrix& a, const CovMatrix& b);
Real gaussian_fidelity(const CovMatrix& a, const CovMatrix& b);

}  // namespace cvdisc
