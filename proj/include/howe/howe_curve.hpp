#pragma once

// Howe curves from two Legendre curves
//   E1: y^2 = x(x-1)(x-λ1),   E2: y^2 = x(x-μ)(x-μλ2),
// i.e. the normalized fiber product of their double covers of P^1 branched
// over S1 = {0, 1, λ1, ∞} and S2 = {0, μ, μλ2, ∞}. Genus is 5 - |S1 ∩ S2|.
// The third quotient is Legendre with
//   λ3 = (μλ2 - 1)(μ - λ1) / ((μλ2 - λ1)(μ - 1)),
// and the curve is hyperelliptic iff μ^2 λ2 = λ1 iff D = 0 where
//   D = (λ1λ2 - λ2λ3 - λ3λ1 + 1)^2 - 4 λ1 λ2 (1 - λ3)^2.

#include <array>
#include <optional>
#include <tuple>
#include <vector>

#include "howe/errors.hpp"
#include "howe/field_tower.hpp"
#include "howe/supersingular.hpp"

namespace howe {

struct HoweInput {
  FieldElem lambda1;
  FieldElem lambda2;
  FieldElem mu;
};

struct GenusClass {
  int overlap = 0;
  int genus = 0;
  bool irreducible = false;
};

struct Lambda3 {
  FieldElem value;
  bool genus_degenerate = false;  // value is 0: the configuration is not genus 3
};

struct MuQuadratic {
  std::array<FieldElem, 3> coeffs;  // c2 μ^2 + c1 μ + c0
  FieldElem discriminant;
  std::vector<FieldElem> roots;            // in the field of the λ's
  std::vector<FieldElem> extension_roots;  // in the next tower level when D is a non-square
  bool rational() const { return extension_roots.empty(); }
};

namespace detail {

inline HoweInput unify(const HoweInput& in) {
  const FieldCtx* f = &in.lambda1.ctx();
  for (const FieldElem* e : {&in.lambda2, &in.mu})
    if (e->degree() > f->degree()) f = &e->ctx();
  HoweInput out{embed(in.lambda1, *f), embed(in.lambda2, *f), embed(in.mu, *f)};
  for (const FieldElem* e : {&out.lambda1, &out.lambda2, &out.mu})
    if (e->is_zero() || e->is_one()) throw DomainError("λ1, λ2 and μ must not be 0 or 1");
  return out;
}

inline std::array<FieldElem, 3> unify_lambdas(const FieldElem& l1, const FieldElem& l2, const FieldElem& l3) {
  HoweInput u = unify({l1, l2, l3});
  return {u.lambda1, u.lambda2, u.mu};
}

}  // namespace detail

inline GenusClass classify_genus(const HoweInput& raw) {
  const HoweInput in = detail::unify(raw);
  const FieldElem mu_l2 = in.mu * in.lambda2;
  // 0 and ∞ are always shared; μ != 1 and μλ2 != μ by the input invariants.
  int overlap = 2;
  if (in.mu == in.lambda1) ++overlap;
  if (mu_l2.is_one()) ++overlap;
  if (mu_l2 == in.lambda1) ++overlap;
  return {overlap, 5 - overlap, overlap <= 3};
}

inline Lambda3 lambda3(const HoweInput& raw) {
  const HoweInput in = detail::unify(raw);
  const FieldElem one = in.mu.ctx().one();
  const FieldElem mu_l2 = in.mu * in.lambda2;
  const FieldElem den = (mu_l2 - in.lambda1) * (in.mu - one);
  if (den.is_zero()) throw DomainError("λ3 undefined: μλ2 = λ1");
  const FieldElem value = (mu_l2 - one) * (in.mu - in.lambda1) / den;
  return {value, value.is_zero() || value.is_one()};
}

inline FieldElem discriminant_d(const FieldElem& l1_, const FieldElem& l2_, const FieldElem& l3_) {
  const auto [l1, l2, l3] = detail::unify_lambdas(l1_, l2_, l3_);
  const FieldElem one = l1.ctx().one();
  const FieldElem s = l1 * l2 - l2 * l3 - l3 * l1 + one;
  return s * s - (l1 * l2 * (one - l3).square()).scaled(4);
}

inline MuQuadratic mu_quadratic(const FieldElem& l1_, const FieldElem& l2_, const FieldElem& l3_) {
  const auto [l1, l2, l3] = detail::unify_lambdas(l1_, l2_, l3_);
  const FieldCtx& f = l1.ctx();
  const FieldElem one = f.one();
  const FieldElem s = l1 * l2 - l2 * l3 - l3 * l1 + one;
  MuQuadratic q{{l1 * (one - l3), -s, l2 * (one - l3)}, discriminant_d(l1, l2, l3), {}, {}};
  const FieldElem two_a = q.coeffs[2].scaled(2);
  if (auto r = sqrt(q.discriminant)) {
    q.roots.push_back((s + *r) / two_a);
    if (!r->is_zero()) q.roots.push_back((s - *r) / two_a);
    std::sort(q.roots.begin(), q.roots.end());
  } else {
    const FieldCtx& up = next_level(f);
    const FieldElem root = sqrt_lifting(q.discriminant);
    const FieldElem s_up = embed(s, up), two_a_up = embed(two_a, up);
    q.extension_roots = {(s_up + root) / two_a_up, (s_up - root) / two_a_up};
    std::sort(q.extension_roots.begin(), q.extension_roots.end());
  }
  return q;
}

inline bool is_hyperelliptic_mu(const HoweInput& raw) {
  const HoweInput in = detail::unify(raw);
  if (classify_genus(in).genus != 3) throw DomainError("hyperellipticity criteria need a genus-3 configuration");
  return in.mu.square() * in.lambda2 == in.lambda1;
}

inline bool is_hyperelliptic_d(const FieldElem& l1, const FieldElem& l2, const FieldElem& l3) {
  return discriminant_d(l1, l2, l3).is_zero();
}

// Roots λ3 of D = 0 viewed as a quadratic in λ3. Distinct λ's need √λ1, √λ2;
// when those leave the field the values are returned one level up.
inline std::vector<FieldElem> lambda3_hyperelliptic(const FieldElem& l1_, const FieldElem& l2_) {
  const HoweInput u = detail::unify({l1_, l2_, l1_});
  const FieldElem& l1 = u.lambda1;
  const FieldElem& l2 = u.lambda2;
  const FieldCtx& f = l1.ctx();
  if (l1 == l2) return {(l1 + f.one()).square() / l1.scaled(4)};
  FieldElem s1 = sqrt_lifting(l1), s2 = sqrt_lifting(l2);
  std::tie(s1, s2) = common_field(s1, s2);
  const FieldCtx& g = s1.ctx();
  const FieldElem a = embed(l1, g), b = embed(l2, g), one = g.one();
  const FieldElem den = (a - b).square();
  std::vector<FieldElem> out{(s1 * (b - one) + s2 * (a - one)).square() / den,
                             (s1 * (b - one) - s2 * (a - one)).square() / den};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// λ1 = λ2 = λ, μ = -1: hyperelliptic, superspecial iff H_p(λ) = H_p(λ^2) = 0.
inline bool example25_check(const FieldElem& lambda) {
  const FieldElem sq = lambda.square();
  if (sq.is_one()) throw DomainError("λ^2 = 1 excluded");
  if (lambda.is_zero()) throw DomainError("λ = 0 excluded");
  const HassePoly h = hasse_poly(lambda.ctx().p());
  return h.eval(lambda).is_zero() && h.eval(sq).is_zero();
}

// Standard form of that family: √λ1 = s, √λ2 = -s gives a = -b = 4s/(λ+1).
inline std::pair<FieldElem, FieldElem> example25_standard_form(const FieldElem& lambda) {
  if (lambda.square().is_one() || lambda.is_zero()) throw DomainError("λ must avoid 0 and ±1");
  const FieldElem s = sqrt_lifting(lambda);
  const FieldElem a = s.scaled(4) / (embed(lambda, s.ctx()) + s.ctx().one());
  return {a, -a};
}

}  // namespace howe
