#include <cmath>
#include <vector>

#include "cvdisc/bounds.hpp"
#include "cvdisc/combinatorics.hpp"
#include "cvdisc/errors.hpp"

namespace cvdisc {

const char* to_string(SubClass c) {
  switch (c) {
    case SubClass::F01: return "F01";
    case SubClass::F12: return "F12";
    case SubClass::F02: return "F02";
    case SubClass::F11: return "F11";
  }
  return "unknown";
}

SubClass sub_class(int v, int u, int d) {
  if (v > u) std::swap(v, u);
  if (v == 0 && u == 1 && d == 1) return SubClass::F01;
  if (v == 1 && u == 2 && d == 1) return SubClass::F12;
  if (v == 0 && u == 2 && d == 2) return SubClass::F02;
  if (v == 1 && u == 1 && d == 2) return SubClass::F11;
  throw InvalidArgumentError("not a two-mode sub-fidelity class");
}

namespace {

[[noreturn]] void no_closed_form(const ChannelFamily& family, SubClass cls,
                                 bool finite) {
  throw UnsupportedError(std::string("no closed form for ") + to_string(cls) +
                         (finite ? " at finite energy" : " in the limit") +
                         " under " + to_string(family.kind()) +
                         "; use the numeric fidelity");
}

Real additive_oracle(Real nb, Real nt, std::optional<Real> mu, SubClass cls,
                     const ChannelFamily& family) {
  switch (cls) {
    case SubClass::F01:
    case SubClass::F12: {
      if (mu) no_closed_form(family, cls, true);
      if (cls == SubClass::F12) std::swap(nb, nt);
      return 2 * std::sqrt(2 * nb * (nb + nt)) / (3 * nb + nt);
    }
    case SubClass::F02:
      if (mu) no_closed_form(family, cls, true);
      return 2 * std::sqrt(nt * nb) / (nb + nt);
    case SubClass::F11: {
      if (!mu) return 1;
      const Real theta = 2 * nb * nt + 1 + 2 * *mu * (nb + nt);
      const Real xi_m = theta - 1 - (nb - nt);
      const Real xi_p = theta - 1 + (nb - nt);
      // theta - sqrt(xi_m xi_p) without the cancellation at large mu.
      const Real num = 2 * theta - 1 + (nb - nt) * (nb - nt);
      const Real den = theta + std::sqrt(xi_m * xi_p);
      return den / num;
    }
  }
  no_closed_form(family, cls, mu.has_value());
}

Real loss_oracle(Real eb, Real et, std::optional<Real> mu, SubClass cls,
                 const ChannelFamily& family) {
  if (cls != SubClass::F02) {
    if (mu) no_closed_form(family, cls, true);
    return 0;  // perfectly distinguishable at infinite squeezing
  }
  const Real a = eb + et;
  const Real k1 = eb * et * (et - 1) * (eb - 1);
  if (!mu) return 4 * std::sqrt(k1 / ((a - 2) * (a - 2) * a * a));
  const Real n = *mu - 0.5L;
  const Real base = 1 - n * (a - 2) * a;
  const Real k2 = base + 4 * n * n * k1;
  return (2 * n * std::sqrt(k1) + std::sqrt(k2)) / base;
}

}  // namespace

Real subfidelity_oracle(const ChannelFamily& family, std::optional<Real> mu,
                        SubClass cls) {
  if (mu && !(*mu >= 0.5L)) throw InvalidEnergyError("mu must be >= 1/2");
  switch (family.kind()) {
    case FamilyKind::AdditiveNoise:
      return additive_oracle(family.background().nu(), family.target().nu(), mu, cls,
                             family);
    case FamilyKind::PureLoss:
      return loss_oracle(family.background().tau(), family.target().tau(), mu, cls,
                         family);
    case FamilyKind::Thermal:
      break;
  }
  no_closed_form(family, cls, mu.has_value());
}

TmsvSubfidelities tmsv_subfidelities(const ChannelFamily& family, Real mu) {
  Partition p;
  p.m = 2;
  p.blocks.push_back({{0, 1}, 0, BlockKind::Ghz});
  BlockFidelityCache cache(p, family, mu);
  TmsvSubfidelities s;
  s.ln_f01 = cache.log_fidelity(0, {0, 1, 1});
  s.ln_f12 = cache.log_fidelity(0, {1, 2, 1});
  s.ln_f02 = cache.log_fidelity(0, {0, 2, 2});
  s.ln_f11 = cache.log_fidelity(0, {1, 1, 2});
  return s;
}

Real choi_log_fidelity(const ChannelFamily& family, Real mu) {
  Partition p;
  p.m = 1;
  p.blocks.push_back({{0}, 1, BlockKind::Ghz});
  BlockFidelityCache cache(p, family, mu);
  return cache.log_fidelity(0, {0, 1, 1});
}

namespace {

// ln(prod_k (1 + X_k)^{p_k} - 1) from (p_k, ln X_k), keeping precision when
// every X_k is tiny.
Real ln_product_minus_one(const std::vector<std::pair<Real, Real>>& terms) {
  bool tiny = true;
  for (const auto& [p, lx] : terms) tiny = tiny && (p == 0 || lx < -40);
  if (tiny) {
    // (1+X)^p - 1 = pX (1 + O(X)); relative error below e^-40.
    Real acc = kNegInf;
    for (const auto& [p, lx] : terms)
      if (p > 0) acc = log_add(acc, std::log(p) + lx);
    return acc;
  }
  Real y = 0;
  for (const auto& [p, lx] : terms) y += p * std::log1p(std::exp(lx));
  return std::log(std::expm1(y));
}

// ln(F01^M + F12^M + (F11^M + F02^M)/2).
Real ln_d2_excess(const TmsvSubfidelities& s, Real power) {
  const Real half = std::log(0.5L);
  return log_sum_exp({power * s.ln_f01, power * s.ln_f12, half + power * s.ln_f11,
                      half + power * s.ln_f02});
}

void require_copies(Real copies) {
  if (!(copies > 0) || !std::isfinite(copies))
    throw InvalidArgumentError("copy number M must be positive and finite");
}

}  // namespace

BoundReport bounds_d2(const ChannelFamily& family, Real mu, Real copies, int m) {
  require_copies(copies);
  if (m < 2 || m % 2) throw InvalidArgumentError("bounds_d2 needs an even m >= 2");
  const auto s = tmsv_subfidelities(family, mu);
  const Real half_m = static_cast<Real>(m / 2);
  const Real ub = ln_product_minus_one({{half_m, ln_d2_excess(s, copies)}});
  const Real lb = ln_product_minus_one({{half_m, ln_d2_excess(s, 2 * copies)}}) -
                  static_cast<Real>(m + 1) * std::log(2.0L);
  return make_report(lb, ub, copies, copies, Method::ClosedFormD2);
}

BoundReport bounds_d2_odd(const ChannelFamily& family, Real mu, Real copies, int m,
                          OddStrategy strategy) {
  require_copies(copies);
  if (m < 1 || m % 2 == 0) throw InvalidArgumentError("bounds_d2_odd needs an odd m");
  Real ln_fr = 0;
  switch (strategy) {
    case OddStrategy::HybridCoherent:
      if (family.kind() == FamilyKind::Thermal) {
        Partition p;
        p.m = 1;
        p.blocks.push_back({{0}, 0, BlockKind::Coherent});
        BlockFidelityCache cache(p, family, mu);
        ln_fr = cache.log_fidelity(0, {0, 1, 1});
      } else {
        ln_fr = classical_channel_log_fidelity(family, mu - 0.5L);
      }
      break;
    case OddStrategy::SingleIdler:
      ln_fr = choi_log_fidelity(family, mu);
      break;
    case OddStrategy::Triple:
      throw UnsupportedError(
          "no closed form for the three-channel block; use counting");
  }
  const Real pairs = static_cast<Real>((m - 1) / 2);
  TmsvSubfidelities s{};
  if (m > 1) s = tmsv_subfidelities(family, mu);
  auto terms = [&](Real power) {
    std::vector<std::pair<Real, Real>> t{{1, power * ln_fr}};
    if (m > 1) t.emplace_back(pairs, ln_d2_excess(s, power));
    return t;
  };
  const Real ub = ln_product_minus_one(terms(copies));
  const Real lb = ln_product_minus_one(terms(2 * copies)) -
                  static_cast<Real>(m + 1) * std::log(2.0L);
  return make_report(lb, ub, copies, copies, Method::ClosedFormD2);
}

}  // namespace cvdisc
