#pragma once

// The standard model of a hyperelliptic genus-3 Howe curve
//
//   C: y^2 = (x^4 - a x^2 + 1)(x^4 - b x^2 + 1) = x^8 + M x^6 + N x^4 + M x^2 + 1
//
// with M = -(a+b), N = ab + 2. C is nonsingular iff a, b != ±2 and a != b.
// The involutions x -> 1/x, x -> -1/x, x -> -x give three elliptic quotients
//
//   E1: v^2 = (u^2 - a - 2)(u^2 - b - 2)    u = x + 1/x
//   E2: v^2 = (u^2 - a + 2)(u^2 - b + 2)    u = x - 1/x
//   E3: v^2 = (u^2 - a u + 1)(u^2 - b u + 1) u = x^2
//
// whose Legendre parameters are squares of
//
//   √λ1 = (α+ + β+)/(α+ - β+),  √λ2 = (α- - β-)/(α- + β-)
//
// for fixed roots α±^2 = a ± 2, β±^2 = b ± 2. The inverse map recovers (a, b)
// from (√λ1, √λ2).

#include <array>
#include <utility>

#include "howe/errors.hpp"
#include "howe/field_tower.hpp"
#include "howe/poly.hpp"
#include "howe/supersingular.hpp"

namespace howe {

struct CurveAB {
  FieldElem a;
  FieldElem b;

  CurveAB() = default;
  CurveAB(FieldElem a_, FieldElem b_) {
    std::tie(a, b) = common_field(a_, b_);
  }
  std::uint32_t p() const { return a.ctx().p(); }
  const FieldCtx& field() const { return a.ctx(); }
  Poly octic() const { return standard_octic(a, b); }
  bool nonsingular() const { return standard_nonsingular(a, b); }
  // (a, b) and (b, a) give the same polynomial; this is the ordering with a <= b.
  CurveAB normalized() const { return b < a ? CurveAB(b, a) : *this; }

  friend bool operator==(const CurveAB& x, const CurveAB& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator<(const CurveAB& x, const CurveAB& y) {
    if (!(x.a == y.a)) return x.a < y.a;
    return x.b < y.b;
  }
};

struct MNForm {
  FieldElem m;
  FieldElem n;
};

struct SqrtChoices {
  FieldElem alpha_plus;   // (a + 2)^{1/2}
  FieldElem alpha_minus;  // (a - 2)^{1/2}
  FieldElem beta_plus;    // (b + 2)^{1/2}
  FieldElem beta_minus;   // (b - 2)^{1/2}
  int field_degree = 0;   // tower degree holding all four
};

struct LegendreTriple {
  FieldElem lambda1;
  FieldElem lambda2;
  FieldElem lambda3;
  FieldElem sqrt_lambda1;
  FieldElem sqrt_lambda2;
};

struct Lemma42Values {
  FieldElem a_minus_2;
  FieldElem a_plus_2;
  FieldElem b_minus_2;
  FieldElem b_plus_2;
};

inline bool nonsingular_ab(const FieldElem& a, const FieldElem& b) {
  const auto [x, y] = common_field(a, b);
  return standard_nonsingular(x, y);
}

// 2M + N + 2 = (a+2)(b+2), -2M + N + 2 = (a-2)(b-2), M^2 - 4N + 8 = (a-b)^2.
inline bool nonsingular_mn(const FieldElem& m_, const FieldElem& n_) {
  const auto [m, n] = common_field(m_, n_);
  const FieldElem two = m.ctx().from_int(2);
  return !(m.scaled(2) + n + two).is_zero() && !(n + two - m.scaled(2)).is_zero() &&
         !(m.square() - n.scaled(4) + m.ctx().from_int(8)).is_zero();
}

inline MNForm ab_to_mn(const FieldElem& a_, const FieldElem& b_) {
  const auto [a, b] = common_field(a_, b_);
  return {-(a + b), a * b + a.ctx().from_int(2)};
}

// Roots of z^2 + M z + (N - 2), lifted when the discriminant is a non-square.
inline std::pair<FieldElem, FieldElem> mn_to_ab(const FieldElem& m_, const FieldElem& n_) {
  const auto [m, n] = common_field(m_, n_);
  const FieldElem disc = m.square() - n.scaled(4) + m.ctx().from_int(8);
  const FieldElem r = sqrt_lifting(disc);
  const FieldCtx& f = r.ctx();
  const FieldElem half = f.from_int(f.inv_mod_p(2));
  const FieldElem mm = embed(m, f);
  FieldElem a = (-mm + r) * half, b = (-mm - r) * half;
  if (b < a) std::swap(a, b);
  return {a, b};
}

inline std::array<Poly, 3> quotient_quartics(const CurveAB& c) {
  if (!c.nonsingular()) throw DomainError("singular standard form");
  const FieldCtx& f = c.field();
  const FieldElem z = f.zero(), one = f.one(), two = f.from_int(2);
  const auto even_quartic = [&](const FieldElem& r, const FieldElem& s) {
    // (u^2 - r)(u^2 - s)
    return Poly(f, {r * s, z, -(r + s), z, one});
  };
  const Poly g1 = even_quartic(c.a + two, c.b + two);
  const Poly g2 = even_quartic(c.a - two, c.b - two);
  const Poly g3 = Poly(f, {one, -c.a, one}) * Poly(f, {one, -c.b, one});
  return {g1, g2, g3};
}

inline SqrtChoices sqrt_choices(const CurveAB& c) {
  if (!c.nonsingular()) throw DomainError("singular standard form");
  const FieldElem two = c.field().from_int(2);
  const std::array<FieldElem, 4> radicands{c.a + two, c.a - two, c.b + two, c.b - two};
  const FieldCtx* f = &c.field();
  for (const auto& r : radicands)
    if (!is_square(r)) f = &next_level(c.field());
  std::array<FieldElem, 4> roots;
  for (std::size_t i = 0; i < 4; ++i) {
    auto root = sqrt(embed(radicands[i], *f));
    if (!root) throw InvariantViolation("square root missing in the quadratic extension");
    roots[i] = *root;
  }
  return {roots[0], roots[1], roots[2], roots[3], f->degree()};
}

inline LegendreTriple legendre_triple(const SqrtChoices& ch) {
  const FieldElem &ap = ch.alpha_plus, &am = ch.alpha_minus, &bp = ch.beta_plus, &bm = ch.beta_minus;
  const FieldElem d1 = ap - bp, d2 = am + bm, d3 = ap * bm + am * bp;
  if (d1.is_zero() || d2.is_zero() || d3.is_zero()) throw DomainError("Legendre triple undefined: a = b");
  const FieldElem s1 = (ap + bp) / d1;
  const FieldElem s2 = (am - bm) / d2;
  const FieldElem r3 = (ap * bm - am * bp) / d3;
  return {s1.square(), s2.square(), r3.square(), s1, s2};
}

inline LegendreTriple legendre_triple(const CurveAB& c) { return legendre_triple(sqrt_choices(c)); }

// Roots of E3's quartic (u^2 - a u + 1)(u^2 - b u + 1):
// γ1,2 = (a ± α+α-)/2, γ3,4 = (b ± β+β-)/2.
inline std::array<FieldElem, 4> e3_roots(const SqrtChoices& ch) {
  const FieldCtx& f = ch.alpha_plus.ctx();
  const FieldElem two = f.from_int(2);
  const FieldElem a = (ch.alpha_plus.square() + ch.alpha_minus.square()) / two;
  const FieldElem b = (ch.beta_plus.square() + ch.beta_minus.square()) / two;
  const FieldElem aa = ch.alpha_plus * ch.alpha_minus, bb = ch.beta_plus * ch.beta_minus;
  return {(a + aa) / two, (a - aa) / two, (b + bb) / two, (b - bb) / two};
}

namespace detail {

inline void check_sqrt_lambdas(const FieldElem& s1, const FieldElem& s2) {
  const FieldElem l1 = s1.square(), l2 = s2.square();
  if (l1.is_zero() || l1.is_one() || l2.is_zero() || l2.is_one())
    throw DomainError("√λ must square to a value other than 0 and 1");
  if (s1 == s2 || (s1 * s2).is_one()) throw DomainError("inverse map undefined: √λ1 = √λ2 or √λ1·√λ2 = 1");
}

}  // namespace detail

// (√λ1 - √λ2)(√λ1√λ2 - 1), the common denominator of the inverse map.
inline FieldElem inverse_denominator(const FieldElem& s1, const FieldElem& s2) {
  return (s1 - s2) * (s1 * s2 - s1.ctx().one());
}

inline std::pair<FieldElem, FieldElem> ab_from_sqrt_lambdas(const FieldElem& s1_, const FieldElem& s2_) {
  const auto [s1, s2] = common_field(s1_, s2_);
  detail::check_sqrt_lambdas(s1, s2);
  const FieldElem l1 = s1.square(), l2 = s2.square(), p12 = s1 * s2;
  const FieldElem common = l1 * s2 + s1 * l2 + s1 + s2;
  const FieldElem den = inverse_denominator(s1, s2);
  return {(common + p12.scaled(4)).scaled(2) / den, (common - p12.scaled(4)).scaled(2) / den};
}

inline Lemma42Values lemma42_decomposition(const FieldElem& s1_, const FieldElem& s2_) {
  const auto [s1, s2] = common_field(s1_, s2_);
  detail::check_sqrt_lambdas(s1, s2);
  const FieldElem one = s1.ctx().one();
  const FieldElem den = inverse_denominator(s1, s2);
  return {(s1 * (s2 + one).square()).scaled(4) / den, (s2 * (s1 + one).square()).scaled(4) / den,
          (s1 * (s2 - one).square()).scaled(4) / den, (s2 * (s1 - one).square()).scaled(4) / den};
}

// Canonical √λ3 := (√λ1√λ2 - 1)/(√λ1 - √λ2).
inline FieldElem sqrt_lambda3(const FieldElem& s1_, const FieldElem& s2_) {
  const auto [s1, s2] = common_field(s1_, s2_);
  detail::check_sqrt_lambdas(s1, s2);
  return (s1 * s2 - s1.ctx().one()) / (s1 - s2);
}

}  // namespace howe
