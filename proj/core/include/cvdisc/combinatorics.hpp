#pragma once

#include <cstdint>
#include <vector>

#include "cvdisc/gaussian.hpp"

namespace cvdisc {

// Exact binomial coefficient; 0 outside the triangle. Throws on overflow.
std::uint64_t binomial(int n, int k);

// ln C(n, k), -inf outside the triangle.
Real log_binomial(int n, int k);

// Numerically stable ln(exp(a) + exp(b)); -inf acts as the additive identity.
Real log_add(Real a, Real b);

// ln(sum_i exp(xs[i])).
Real log_sum_exp(const std::vector<Real>& xs);

inline constexpr Real kNegInf = -std::numeric_limits<Real>::infinity();

}  // namespace cvdisc
