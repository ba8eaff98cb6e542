#pragma once

// Geometric isomorphism of standard-form curves. Two hyperelliptic curves are
// isomorphic over the algebraic closure iff a fractional-linear map carries
// one branch locus onto the other. All eight roots of a standard octic over
// F_{p^2} live in F_{p^8}, and a map is pinned down by the images of three
// points, so trying the 8·7·6 = 336 ordered target triples is exhaustive.
//
// The same search restricted to self-maps counts the reduced automorphism
// group, which names the full automorphism group:
//   4 -> C2xC2xC2, 8 -> C2xD8, 16 -> V8, 24 -> C2xS4.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "howe/errors.hpp"
#include "howe/field_tower.hpp"
#include "howe/standard_form.hpp"

namespace howe {

struct BranchLocus {
  std::array<FieldElem, 8> roots;  // sorted, in F_{p^8}
  CurveAB source;
};

enum class AutGroup { C2xC2xC2 = 0, C2xD8 = 1, V8 = 2, C2xS4 = 3 };

inline constexpr std::array<AutGroup, 4> kAutGroups{AutGroup::C2xC2xC2, AutGroup::C2xD8, AutGroup::V8,
                                                    AutGroup::C2xS4};

inline const char* to_string(AutGroup g) {
  switch (g) {
    case AutGroup::C2xC2xC2: return "C2xC2xC2";
    case AutGroup::C2xD8: return "C2xD8";
    case AutGroup::V8: return "V8";
    case AutGroup::C2xS4: return "C2xS4";
  }
  return "?";
}

inline int reduced_order_of(AutGroup g) {
  static constexpr std::array<int, 4> orders{4, 8, 16, 24};
  return orders[static_cast<std::size_t>(g)];
}

inline std::optional<AutGroup> group_for_order(int order) {
  for (AutGroup g : kAutGroups)
    if (reduced_order_of(g) == order) return g;
  return std::nullopt;
}

struct AutLabel {
  AutGroup label = AutGroup::C2xC2xC2;
  int reduced_order = 4;
};

inline BranchLocus branch_locus(const CurveAB& c) {
  if (!c.nonsingular()) throw DomainError("singular standard form");
  const FieldCtx& big = make_ctx(c.p(), 8);
  const FieldElem half = big.from_int(big.inv_mod_p(2));
  const auto root_of = [&](const FieldElem& x) {
    auto r = sqrt(x);
    if (!r) throw DomainError("branch points do not lie in F_{p^8}");
    return *r;
  };
  std::vector<FieldElem> roots;
  for (const FieldElem& coef : {c.a, c.b}) {
    // x^4 - coef x^2 + 1: x^2 = (coef ± sqrt(coef^2 - 4)) / 2.
    const FieldElem a = embed(coef, big);
    const FieldElem d = root_of(a.square() - big.from_int(4));
    for (const FieldElem& z : {(a + d) * half, (a - d) * half}) {
      const FieldElem x = root_of(z);
      roots.push_back(x);
      roots.push_back(-x);
    }
  }
  std::sort(roots.begin(), roots.end());
  detail::ensure(std::adjacent_find(roots.begin(), roots.end()) == roots.end(),
                 "nonsingular standard form with a repeated branch point");
  BranchLocus out{{}, c};
  std::copy(roots.begin(), roots.end(), out.roots.begin());
  return out;
}

namespace detail {

struct Mobius {
  FieldElem a, b, c, d;  // x -> (a x + b) / (c x + d)
};

// Matrix of x -> ((x - r1)(r3 - r2)) / ((x - r2)(r3 - r1)), sending r1, r2, r3
// to 0, ∞, 1.
inline Mobius to_standard(const FieldElem& r1, const FieldElem& r2, const FieldElem& r3) {
  const FieldElem u = r3 - r2, v = r3 - r1;
  return {u, -(r1 * u), v, -(r2 * v)};
}

// (adj B) · A, i.e. B^{-1} A up to scalar.
inline Mobius compose_inverse(const Mobius& b, const Mobius& a) {
  return {b.d * a.a - b.b * a.c, b.d * a.b - b.b * a.d, a.c * b.a - b.c * a.a, b.a * a.d - b.c * a.b};
}

// True when m maps every root of `from` into the root set of `to`; images are
// compared as num == s·den, which avoids inversions.
inline bool maps_onto(const Mobius& m, const std::array<FieldElem, 8>& from, const std::array<FieldElem, 8>& to) {
  for (const FieldElem& r : from) {
    const FieldElem den = m.c * r + m.d;
    if (den.is_zero()) return false;
    const FieldElem num = m.a * r + m.b;
    bool hit = false;
    for (const FieldElem& s : to)
      if (num == s * den) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

// Number of ordered target triples (hence of fractional-linear maps) taking
// `from` onto `to`; stops after the first when first_only is set.
inline int count_maps(const BranchLocus& from, const BranchLocus& to, bool first_only) {
  if (from.source.p() != to.source.p()) throw DomainError("branch loci in different characteristics");
  const auto& r = from.roots;
  const auto& s = to.roots;
  const Mobius a = to_standard(r[0], r[1], r[2]);
  int found = 0;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < 8; ++k) {
        if (k == i || k == j) continue;
        const Mobius m = compose_inverse(to_standard(s[i], s[j], s[k]), a);
        if (maps_onto(m, r, s)) {
          ++found;
          if (first_only) return found;
        }
      }
    }
  return found;
}

}  // namespace detail

inline bool are_isomorphic(const BranchLocus& l1, const BranchLocus& l2) {
  if (l1.roots == l2.roots) return true;
  return detail::count_maps(l1, l2, true) > 0;
}

inline int reduced_aut_order(const BranchLocus& l) { return detail::count_maps(l, l, false); }

// Throws InvariantViolation on an order outside {4, 8, 16, 24}.
inline AutLabel aut_label(const BranchLocus& l) {
  if (l.source.p() <= 7) throw DomainError("automorphism labels need p > 7");
  const int order = reduced_aut_order(l);
  const auto g = group_for_order(order);
  detail::ensure(g.has_value(), "reduced automorphism group of order " + std::to_string(order) +
                                    " for (" + l.source.a.str() + ", " + l.source.b.str() + ")");
  return {*g, order};
}

// Models that pin down the larger groups: x^8 + 1 = (x^4 - √2 x^2 + 1)(x^4 + √2 x^2 + 1),
// isomorphic to x^8 - 1, and x^8 - 14 x^4 + 1 = (x^4 - 4 x^2 + 1)(x^4 + 4 x^2 + 1).
inline CurveAB octic_x8_plus_1(std::uint32_t p) {
  const FieldElem s = sqrt_lifting(make_ctx(p, 1).from_int(2));
  return CurveAB(s, -s);
}

inline CurveAB octic_x8_minus_14x4_plus_1(std::uint32_t p) {
  const FieldCtx& f = make_ctx(p, 1);
  return CurveAB(f.from_int(4), f.from_int(-4));
}

struct Calibration {
  std::uint32_t p = 0;
  int order_x8_plus_1 = 0;
  int order_x8_14 = 0;
  int order_dihedral = 0;  // x^8 + (2 - c^2) x^4 + 1 for the first c that is not special
  int order_generic = 0;   // first nonsingular (a, b) with a + b != 0 found
  bool ok() const { return order_generic == 4 && order_dihedral == 8 && order_x8_plus_1 == 16 && order_x8_14 == 24; }
};

// Measures the reduced orders of the representative models at p and checks
// them against the order -> label table.
inline Calibration calibrate(std::uint32_t p) {
  if (p <= 7) throw DomainError("automorphism labels need p > 7");
  Calibration cal;
  cal.p = p;
  cal.order_x8_plus_1 = reduced_aut_order(branch_locus(octic_x8_plus_1(p)));
  cal.order_x8_14 = reduced_aut_order(branch_locus(octic_x8_minus_14x4_plus_1(p)));
  const FieldCtx& f = make_ctx(p, 1);
  for (std::int64_t c = 1; c < p && cal.order_dihedral == 0; ++c) {
    const CurveAB cur(f.from_int(c), f.from_int(-c));
    if (!cur.nonsingular()) continue;
    const int o = reduced_aut_order(branch_locus(cur));
    if (o == 8) cal.order_dihedral = o;
  }
  for (std::int64_t a = 0; a < p && cal.order_generic == 0; ++a)
    for (std::int64_t b = a + 1; b < p; ++b) {
      const CurveAB cur(f.from_int(a), f.from_int(b));
      if (!cur.nonsingular() || (cur.a + cur.b).is_zero()) continue;
      const int o = reduced_aut_order(branch_locus(cur));
      if (o == 4) {
        cal.order_generic = o;
        break;
      }
    }
  return cal;
}

// 256 (λ^2 - λ + 1)^3 / (λ^2 (λ - 1)^2).
inline FieldElem j_invariant(const FieldElem& lambda) {
  const FieldCtx& f = lambda.ctx();
  if (lambda.is_zero() || lambda.is_one()) throw DomainError("Legendre parameter must not be 0 or 1");
  const FieldElem one = f.one();
  const FieldElem u = lambda.square() - lambda + one;
  return (u.square() * u).scaled(256) / (lambda.square() * (lambda - one).square());
}

// Sorted j-invariants of the three elliptic quotients, in the field of (a, b).
// Only an isomorphism invariant when the reduced automorphism group is the
// Klein group generated by the three quotient involutions; larger groups
// contain other involutions that an isomorphism may send them to.
inline std::array<FieldElem, 3> quotient_j_invariants(const CurveAB& c) {
  const LegendreTriple t = legendre_triple(c);
  std::array<FieldElem, 3> js;
  const std::array<FieldElem, 3> lambdas{t.lambda1, t.lambda2, t.lambda3};
  for (std::size_t i = 0; i < 3; ++i) {
    auto j = restrict_to(j_invariant(lambdas[i]), c.field());
    detail::ensure(j.has_value(), "quotient j-invariant outside the field of definition");
    js[i] = *j;
  }
  std::sort(js.begin(), js.end());
  return js;
}

}  // namespace howe
