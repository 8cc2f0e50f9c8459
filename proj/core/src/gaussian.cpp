#include "cvdisc/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cvdisc/errors.hpp"

namespace cvdisc {

namespace {

// Below the floor, 4v^2 - 1 is indistinguishable from rounding noise of an
// exactly pure mode. The fidelity is sqrt-singular there, so the noise would
// otherwise surface as its square root. The noise in v grows like
// eps * |V_A| * |V_B| (products of the two CMs enter the auxiliary matrix).
constexpr Real kPurityFloorMin = 1e-14L;
constexpr Real kPurityFloorScale = 64;

Real norm_inf(const Matrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite())
    throw NumericError(std::string(what) + ": non-finite covariance entries");
}

// Pairs up the moduli of a spectrum of +-i v eigenvalues.
std::vector<Real> pair_moduli(std::vector<Real> mods) {
  std::sort(mods.begin(), mods.end());
  std::vector<Real> out;
  out.reserve(mods.size() / 2);
  for (std::size_t i = 0; i + 1 < mods.size(); i += 2)
    out.push_back(0.5L * (mods[i] + mods[i + 1]));
  return out;
}

}  // namespace

CovMatrix::CovMatrix(Matrix data, std::optional<Vector> mean)
    : mean_(std::move(mean)) {
  if (data.rows() != data.cols() || data.rows() % 2 != 0 || data.rows() == 0)
    throw DimensionError("covariance matrix must be 2n x 2n with n >= 1");
  if (mean_ && mean_->size() != data.rows())
    throw DimensionError("mean vector length must match the covariance matrix");
  data_ = 0.5L * (data + data.transpose());
}

Vector CovMatrix::mean() const {
  if (mean_) return *mean_;
  return Vector::Zero(data_.rows());
}

Matrix omega(int n) {
  Matrix w = Matrix::Zero(2 * n, 2 * n);
#ifdef CVDISC_FAULT_BLOCK_OMEGA
  // (x1..xn, p1..pn) layout: wrong for the interleaved CMs used everywhere.
  for (int k = 0; k < n; ++k) {
    w(k, n + k) = 1;
    w(n + k, k) = -1;
  }
#else
  for (int k = 0; k < n; ++k) {
    w(2 * k, 2 * k + 1) = 1;
    w(2 * k + 1, 2 * k) = -1;
  }
#endif
  return w;
}

CovMatrix vacuum_cm(int n) {
  if (n < 1) throw DimensionError("vacuum_cm: need at least one mode");
  return CovMatrix(kVacuumVariance * Matrix::Identity(2 * n, 2 * n));
}

CovMatrix coherent_cm(const std::vector<Real>& amplitudes) {
  const int n = static_cast<int>(amplitudes.size());
  if (n < 1) throw DimensionError("coherent_cm: need at least one mode");
  Vector mean = Vector::Zero(2 * n);
  for (int k = 0; k < n; ++k) mean(2 * k) = std::sqrt(2.0L) * amplitudes[k];
  return CovMatrix(kVacuumVariance * Matrix::Identity(2 * n, 2 * n), mean);
}

Real ghz_correlation(int m, Real mu) {
  if (m < 2) throw InvalidPartitionError("GHZ state needs at least two modes");
  if (!(mu >= kVacuumVariance))
    throw InvalidEnergyError("GHZ energy mu must be >= 1/2");
  return std::sqrt((mu - 0.5L) * (mu + 0.5L)) / static_cast<Real>(m - 1);
}

CovMatrix ghz_cm(int m, Real mu) {
  const Real c = ghz_correlation(m, mu);
  Matrix v = Matrix::Zero(2 * m, 2 * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a == b) {
        v(2 * a, 2 * a) = mu;
        v(2 * a + 1, 2 * a + 1) = mu;
      } else {
        v(2 * a, 2 * b) = c;
        v(2 * a + 1, 2 * b + 1) = -c;
      }
    }
  }
  return CovMatrix(std::move(v));
}

std::vector<Real> ghz_spectrum_closed_form(int m, Real mu) {
  const Real c = ghz_correlation(m, mu);
  // Collective mode: (mu + (m-1)c)(mu - (m-1)c) with (m-1)c = sqrt(mu^2 - 1/4).
  const Real big = static_cast<Real>(m - 1) * c;
  const Real collective = std::sqrt((mu - big) * (mu + big));
  const Real rest = std::sqrt((mu - c) * (mu + c));
  std::vector<Real> out(static_cast<std::size_t>(m - 1), rest);
  out.push_back(collective);
  std::sort(out.begin(), out.end());
  return out;
}

CovMatrix direct_sum(const std::vector<CovMatrix>& parts) {
  if (parts.empty()) throw DimensionError("direct_sum of nothing");
  Eigen::Index dim = 0;
  bool any_mean = false;
  for (const auto& p : parts) {
    dim += p.data().rows();
    any_mean = any_mean || p.has_mean();
  }
  Matrix v = Matrix::Zero(dim, dim);
  Vector mean = Vector::Zero(dim);
  Eigen::Index off = 0;
  for (const auto& p : parts) {
    const Eigen::Index d = p.data().rows();
    v.block(off, off, d, d) = p.data();
    if (p.has_mean()) mean.segment(off, d) = p.mean();
    off += d;
  }
  if (any_mean) return CovMatrix(std::move(v), std::move(mean));
  return CovMatrix(std::move(v));
}

std::vector<Real> symplectic_spectrum(const CovMatrix& v) {
  require_finite(v.data(), "symplectic_spectrum");
  const int n = v.modes();
  const Matrix w = omega(n);
  Eigen::LLT<Matrix> llt(v.data());
  std::vector<Real> mods;
  mods.reserve(2 * n);
  if (llt.info() == Eigen::Success) {
    // L^T Omega L is antisymmetric with singular values {v_k, v_k}.
    const Matrix l = llt.matrixL();
    const Matrix k = l.transpose() * w * l;
    Eigen::JacobiSVD<Matrix> svd(k);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      mods.push_back(svd.singularValues()(i));
  } else {
    // Not positive definite: unphysical, but report what i*Omega*V says.
    Eigen::EigenSolver<Matrix> es(w * v.data(), false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      mods.push_back(std::abs(es.eigenvalues()(i)));
  }
  return pair_moduli(std::move(mods));
}

bool is_bona_fide(const CovMatrix& v, Real tol) {
  if (!v.data().allFinite()) return false;
  // Positive definiteness is implied by the uncertainty principle; check it
  // first so the spectrum is well defined.
  Eigen::SelfAdjointEigenSolver<Matrix> es(v.data(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0) return false;
  const auto spec = symplectic_spectrum(v);
  return spec.front() >= kVacuumVariance - tol;
}

Real gaussian_log_fidelity(const CovMatrix& a, const CovMatrix& b) {
  if (a.modes() != b.modes())
    throw DimensionError("gaussian_fidelity: mode counts differ (" +
                         std::to_string(a.modes()) + " vs " +
                         std::to_string(b.modes()) + ")");
  require_finite(a.data(), "gaussian_fidelity");
  require_finite(b.data(), "gaussian_fidelity");
  const int n = a.modes();
  const Matrix w = omega(n);
  const Matrix s = a.data() + b.data();
  Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success)
    throw NumericError("gaussian_fidelity: V_A + V_B is not positive definite");

  // Eigenvalues of (V_A+V_B)^{-1} (Omega/4 + V_B Omega V_A) come as +-i v_k.
  const Matrix t = llt.solve(w / 4 + b.data() * w * a.data());
  std::vector<Real> mods;
  mods.reserve(2 * n);
  Eigen::EigenSolver<Matrix> es(t, false);
  if (es.info() == Eigen::Success) {
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      mods.push_back(std::abs(es.eigenvalues()(i).imag()));
  } else {
    // The real QR iteration occasionally stalls on near-degenerate pairs; the
    // complex Schur form does not.
    using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
    Eigen::ComplexEigenSolver<ComplexMatrix> ces(t.cast<std::complex<Real>>(), false);
    if (ces.info() != Eigen::Success)
      throw NumericError("gaussian_fidelity: eigen-decomposition failed");
    for (Eigen::Index i = 0; i < ces.eigenvalues().size(); ++i)
      mods.push_back(std::abs(ces.eigenvalues()(i).imag()));
  }
  const auto vs = pair_moduli(std::move(mods));

  const Real floor = std::max(kPurityFloorMin,
                              kPurityFloorScale * std::numeric_limits<Real>::epsilon() *
                                  norm_inf(a.data()) * norm_inf(b.data()));
  Real log_f = 0;
  for (Real v : vs) {
    Real q = 4 * v * v - 1;
    if (q < floor) {
      if (q < -1e-6L)
        throw NumericError("gaussian_fidelity: auxiliary spectrum below 1/2");
      q = 0;
    }
    log_f += 0.5L * std::log(2 * v + std::sqrt(q));
  }
  const Matrix l = llt.matrixL();
  Real log_det = 0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) log_det += 2 * std::log(l(i, i));
  log_f -= 0.25L * log_det;

  if (a.has_mean() || b.has_mean()) {
    const Vector d = a.mean() - b.mean();
    log_f -= 0.25L * d.dot(llt.solve(d));
  }
  if (!std::isfinite(log_f)) throw NumericError("gaussian_fidelity: non-finite");
  if (log_f > 1e-9L)
    throw NumericError("gaussian_fidelity: value exceeds 1 beyond tolerance");
  return std::min<Real>(log_f, 0);
}

Real gaussian_fidelity(const CovMatrix& a, const CovMatrix& b) {
  return std::exp(gaussian_log_fidelity(a, b));
}

}  // namespace cvdisc
