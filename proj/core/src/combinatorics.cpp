#include "cvdisc/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvdisc/errors.hpp"

namespace cvdisc {

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is exact at every step.
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (r > std::numeric_limits<std::uint64_t>::max() / num)
      throw CapacityError("binomial coefficient overflows 64 bits");
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

Real log_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return kNegInf;
  return std::lgamma(static_cast<Real>(n) + 1) -
         std::lgamma(static_cast<Real>(k) + 1) -
         std::lgamma(static_cast<Real>(n - k) + 1);
}

Real log_add(Real a, Real b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

Real log_sum_exp(const std::vector<Real>& xs) {
  if (xs.empty()) return kNegInf;
  const Real mx = *std::max_element(xs.begin(), xs.end());
  if (mx == kNegInf) return kNegInf;
  Real s = 0;
  for (Real x : xs) s += std::exp(x - mx);
  return mx + std::log(s);
}

}  // namespace cvdisc
