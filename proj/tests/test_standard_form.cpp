#include <gtest/gtest.h>

#include "howe/enumerate.hpp"
#include "howe/standard_form.hpp"
#include "howe/supersingular.hpp"
#include "support.hpp"

using namespace howe;
using howe::testing::random_elem;

namespace {

struct Sample {
  FieldElem a, b;
};

std::vector<Sample> nonsingular_samples(std::uint32_t p, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const FieldCtx& f = make_ctx(p, 2);
  std::vector<Sample> out;
  while (static_cast<int>(out.size()) < n) {
    const FieldElem a = random_elem(f, rng), b = random_elem(f, rng);
    if (standard_nonsingular(a, b)) out.push_back({a, b});
  }
  return out;
}

}  // namespace

TEST(Nonsingular, Conditions) {
  const FieldCtx& f = make_ctx(13, 2);
  EXPECT_FALSE(nonsingular_ab(f.from_int(2), f.from_int(5)));
  EXPECT_FALSE(nonsingular_ab(f.from_int(5), f.from_int(-2)));
  EXPECT_FALSE(nonsingular_ab(f.from_int(5), f.from_int(5)));
  EXPECT_TRUE(nonsingular_ab(f.from_int(5), f.from_int(6)));
}

// The octic has a repeated root exactly when the conditions fail.
TEST(Nonsingular, MatchesSquarefreenessExhaustively) {
  const FieldCtx& f = make_ctx(5, 2);
  for (u128 i = 0; i < f.size(); ++i)
    for (u128 j = 0; j < f.size(); ++j) {
      const FieldElem a = f.element_at(i), b = f.element_at(j);
      ASSERT_EQ(nonsingular_ab(a, b), standard_octic(a, b).is_squarefree()) << a.str() << ", " << b.str();
    }
}

TEST(MNForm, AgreesWithAB) {
  for (std::uint32_t p : {11u, 13u, 97u}) {
    for (const auto& [a, b] : nonsingular_samples(p, 200, p)) {
      const MNForm mn = ab_to_mn(a, b);
      ASSERT_EQ(nonsingular_mn(mn.m, mn.n), nonsingular_ab(a, b));
      const auto [x, y] = mn_to_ab(mn.m, mn.n);
      const FieldElem lo = a < b ? a : b, hi = a < b ? b : a;
      ASSERT_EQ(x, lo);
      ASSERT_EQ(y, hi);
      const FieldCtx& f = a.ctx();
      const Poly direct = Poly(f, {f.one(), f.zero(), -a, f.zero(), f.one()}) *
                          Poly(f, {f.one(), f.zero(), -b, f.zero(), f.one()});
      ASSERT_EQ(direct, standard_octic(a, b));
    }
  }
}

TEST(MNForm, LiftsWhenTheDiscriminantIsANonSquare) {
  const FieldCtx& f = make_ctx(7, 1);
  // M = 0, N = 3: the discriminant 8 - 4N = 3 is a non-square mod 7.
  const auto [a, b] = mn_to_ab(f.zero(), f.from_int(3));
  EXPECT_EQ(a.degree(), 2);
  EXPECT_EQ(a + b, a.ctx().zero());
  EXPECT_EQ(a * b, a.ctx().from_int(1));
}

TEST(Quotients, SubstitutionIdentities) {
  std::mt19937_64 rng(41);
  for (const auto& [a, b] : nonsingular_samples(13, 30, 41)) {
    const CurveAB c(a, b);
    const auto g = quotient_quartics(c);
    const Poly f = c.octic();
    for (const Poly& q : g) ASSERT_TRUE(q.is_squarefree());
    EXPECT_TRUE(g[2][0].is_one());
    for (std::size_t i = 0; i <= 4; ++i) EXPECT_EQ(g[2][i], g[2][4 - i]);
    for (int k = 0; k < 10; ++k) {
      const FieldElem x = random_elem(a.ctx(), rng);
      if (x.is_zero()) continue;
      const FieldElem x4 = x.square().square();
      ASSERT_EQ(g[0].eval(x + x.inv()) * x4, f.eval(x));
      ASSERT_EQ(g[1].eval(x - x.inv()) * x4, f.eval(x));
      ASSERT_EQ(g[2].eval(x.square()), f.eval(x));
    }
  }
  EXPECT_THROW(quotient_quartics(CurveAB(make_ctx(13, 2).from_int(2), make_ctx(13, 2).from_int(5))), DomainError);
}

TEST(SqrtChoices, DefiningRelations) {
  for (const auto& [a, b] : nonsingular_samples(17, 50, 42)) {
    const SqrtChoices ch = sqrt_choices(CurveAB(a, b));
    const FieldCtx& g = ch.alpha_plus.ctx();
    EXPECT_EQ(ch.field_degree, g.degree());
    const FieldElem ag = embed(a, g), bg = embed(b, g), two = g.from_int(2);
    EXPECT_EQ(ch.alpha_plus.square(), ag + two);
    EXPECT_EQ(ch.alpha_minus.square(), ag - two);
    EXPECT_EQ(ch.beta_plus.square(), bg + two);
    EXPECT_EQ(ch.beta_minus.square(), bg - two);
    EXPECT_EQ(ch.alpha_plus.square() - ch.alpha_minus.square(), g.from_int(4));
  }
}

TEST(LegendreTriple, RoundTripAndIdentities) {
  for (std::uint32_t p : {11u, 13u, 17u, 97u}) {
    for (const auto& [a, b] : nonsingular_samples(p, 100, 43 + p)) {
      const CurveAB c(a, b);
      const SqrtChoices ch = sqrt_choices(c);
      const LegendreTriple t = legendre_triple(ch);
      const FieldElem &s1 = t.sqrt_lambda1, &s2 = t.sqrt_lambda2;
      const FieldCtx& g = s1.ctx();
      const FieldElem one = g.one(), ag = embed(a, g), bg = embed(b, g);
      ASSERT_EQ(s1.square(), t.lambda1);
      ASSERT_EQ(s2.square(), t.lambda2);
      ASSERT_FALSE(s1 == s2);
      ASSERT_FALSE((s1 * s2).is_one());
      const auto [ra, rb] = ab_from_sqrt_lambdas(s1, s2);
      ASSERT_EQ(ra, ag);
      ASSERT_EQ(rb, bg);
      const FieldElem den = inverse_denominator(s1, s2);
      ASSERT_EQ(ag + bg, (s1 + s2) * (s1 * s2 + one) * g.from_int(4) / den);
      ASSERT_EQ(ag - bg, (s1 * s2).scaled(16) / den);
      // √λ1 - √λ2 = 2(α-β+ + α+β-)/((α+ - β+)(α- + β-))
      ASSERT_EQ(s1 - s2, (ch.alpha_minus * ch.beta_plus + ch.alpha_plus * ch.beta_minus).scaled(2) /
                             ((ch.alpha_plus - ch.beta_plus) * (ch.alpha_minus + ch.beta_minus)));
      ASSERT_EQ(t.lambda3, sqrt_lambda3(s1, s2).square());
      const Lemma42Values v = lemma42_decomposition(s1, s2);
      ASSERT_EQ(v.a_minus_2, ag - g.from_int(2));
      ASSERT_EQ(v.a_plus_2, ag + g.from_int(2));
      ASSERT_EQ(v.b_minus_2, bg - g.from_int(2));
      ASSERT_EQ(v.b_plus_2, bg + g.from_int(2));
      ASSERT_EQ(v.a_minus_2 * v.a_plus_2, ag.square() - g.from_int(4));
    }
  }
}

TEST(LegendreTriple, GammaIdentities) {
  for (const auto& [a, b] : nonsingular_samples(13, 50, 44)) {
    const SqrtChoices ch = sqrt_choices(CurveAB(a, b));
    const auto gm = e3_roots(ch);
    const FieldCtx& g = gm[0].ctx();
    const FieldElem ag = embed(a, g), bg = embed(b, g);
    EXPECT_TRUE((gm[0] * gm[1]).is_one());
    EXPECT_TRUE((gm[2] * gm[3]).is_one());
    EXPECT_EQ(gm[0] * gm[2] + gm[1] * gm[3],
              (ag * bg + ch.alpha_plus * ch.alpha_minus * ch.beta_plus * ch.beta_minus) / g.from_int(2));
    const Poly g3 = quotient_quartics(CurveAB(a, b))[2].embedded(g);
    for (const auto& r : gm) EXPECT_TRUE(g3.eval(r).is_zero());
  }
}

// The third parameter formula and the quotient Hasse invariants, exhaustively at p = 11.
TEST(LegendreTriple, ExhaustiveAtP11) {
  const FieldCtx& f = make_ctx(11, 2);
  const HassePoly h = hasse_poly(11);
  for (u128 i = 0; i < f.size(); ++i)
    for (u128 j = 0; j < f.size(); ++j) {
      const FieldElem a = f.element_at(i), b = f.element_at(j);
      if (!standard_nonsingular(a, b)) continue;
      const CurveAB c(a, b);
      const LegendreTriple t = legendre_triple(c);
      const FieldElem one = t.sqrt_lambda1.ctx().one();
      ASSERT_EQ(t.lambda3, ((t.sqrt_lambda1 * t.sqrt_lambda2 - one) / (t.sqrt_lambda1 - t.sqrt_lambda2)).square());
      const auto g = quotient_quartics(c);
      const std::array<FieldElem, 3> ls{t.lambda1, t.lambda2, t.lambda3};
      for (std::size_t k = 0; k < 3; ++k)
        ASSERT_EQ(hasse_invariant_quartic(g[k]).is_zero(), h.eval(ls[k]).is_zero());
    }
  EXPECT_THROW(legendre_triple(CurveAB(f.from_int(3), f.from_int(3))), DomainError);
}

// Negating both roots swaps a and b; exchanging the roots negates both.
TEST(InverseMap, SignAndOrderSymmetries) {
  for (const auto& [a, b] : nonsingular_samples(23, 100, 45)) {
    const LegendreTriple t = legendre_triple(CurveAB(a, b));
    const FieldElem &s1 = t.sqrt_lambda1, &s2 = t.sqrt_lambda2;
    const auto [na, nb] = ab_from_sqrt_lambdas(-s1, -s2);
    const auto [wa, wb] = ab_from_sqrt_lambdas(s2, s1);
    const FieldCtx& g = s1.ctx();
    EXPECT_EQ(na, embed(b, g));
    EXPECT_EQ(nb, embed(a, g));
    EXPECT_EQ(wa, -embed(a, g));
    EXPECT_EQ(wb, -embed(b, g));
  }
}

TEST(InverseMap, RejectsDegenerateRoots) {
  const FieldCtx& f = make_ctx(13, 2);
  const FieldElem s = f.from_int(5);
  EXPECT_THROW(ab_from_sqrt_lambdas(s, s), DomainError);
  EXPECT_THROW(ab_from_sqrt_lambdas(s, s.inv()), DomainError);
  EXPECT_THROW(ab_from_sqrt_lambdas(f.one(), s), DomainError);
  EXPECT_THROW(ab_from_sqrt_lambdas(f.zero(), s), DomainError);
  EXPECT_THROW(lemma42_decomposition(s, s), DomainError);
}

// For superspecial curves all four radicands are squares in F_{p^2}.
TEST(Radicands, SquaresAtSuperspecialCurves) {
  for (std::uint32_t p : {17u, 23u, 47u}) {
    for (const auto& rec : enumerate_structured(p)) {
      const CurveAB& c = rec.representative;
      const SqrtChoices ch = sqrt_choices(c);
      EXPECT_EQ(ch.field_degree, 2);
      const LegendreTriple t = legendre_triple(ch);
      const Lemma42Values v = lemma42_decomposition(t.sqrt_lambda1, t.sqrt_lambda2);
      for (const FieldElem& x : {v.a_minus_2, v.a_plus_2, v.b_minus_2, v.b_plus_2}) EXPECT_TRUE(is_square(x));
    }
  }
}
