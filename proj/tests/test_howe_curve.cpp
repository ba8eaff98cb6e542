#include <gtest/gtest.h>

#include <set>

#include "howe/howe_curve.hpp"
#include "howe/standard_form.hpp"
#include "howe/supersingular.hpp"
#include "support.hpp"

using namespace howe;
using howe::testing::random_elem;

namespace {

FieldElem random_generic(const FieldCtx& f, std::mt19937_64& rng) {
  FieldElem x = random_elem(f, rng);
  while (x.is_zero() || x.is_one()) x = random_elem(f, rng);
  return x;
}

}  // namespace

TEST(Genus, Classification) {
  const FieldCtx& f = make_ctx(13, 2);
  const FieldElem l1 = f.from_int(3), two = f.from_int(2);
  // μ = λ1 and μλ2 = 1: overlap 4, reducible.
  const GenusClass red = classify_genus({l1, l1.inv(), l1});
  EXPECT_EQ(red.overlap, 4);
  EXPECT_EQ(red.genus, 1);
  EXPECT_FALSE(red.irreducible);
  // μλ2 = λ1 only: genus 2.
  const GenusClass g2 = classify_genus({l1, l1 / two, two});
  EXPECT_EQ(g2.overlap, 3);
  EXPECT_EQ(g2.genus, 2);
  EXPECT_TRUE(g2.irreducible);
  const GenusClass g3 = classify_genus({l1, f.from_int(5), f.from_int(7)});
  EXPECT_EQ(g3.genus, 3);
  EXPECT_THROW(classify_genus({f.one(), l1, two}), DomainError);
  EXPECT_THROW(classify_genus({l1, l1, f.zero()}), DomainError);
}

TEST(Lambda3, DegenerateValues) {
  const FieldCtx& f = make_ctx(13, 2);
  const FieldElem l1 = f.from_int(3), l2 = f.from_int(5);
  EXPECT_TRUE(lambda3({l1, l2, l1}).value.is_zero());
  EXPECT_TRUE(lambda3({l1, l2, l1}).genus_degenerate);
  EXPECT_TRUE(lambda3({l1, l2, l2.inv()}).value.is_zero());
  EXPECT_THROW(lambda3({l1, l2, l1 / l2}), DomainError);
}

// Genus-3 inputs never produce λ3 in {0, 1}.
TEST(Lambda3, GenusThreeIsNeverDegenerate) {
  std::mt19937_64 rng(31);
  const FieldCtx& f = make_ctx(11, 2);
  for (int i = 0; i < 500; ++i) {
    const HoweInput in{random_generic(f, rng), random_generic(f, rng), random_generic(f, rng)};
    if (classify_genus(in).genus != 3) continue;
    ASSERT_FALSE(lambda3(in).genus_degenerate);
  }
}

TEST(MuQuadratic, RootsReproduceLambda3) {
  std::mt19937_64 rng(32);
  int rational = 0, lifted = 0;
  for (std::uint32_t p : {11u, 13u, 17u}) {
    const FieldCtx& f = make_ctx(p, 2);
    for (int i = 0; i < 100; ++i) {
      const FieldElem l1 = random_generic(f, rng), l2 = random_generic(f, rng), l3 = random_generic(f, rng);
      const MuQuadratic q = mu_quadratic(l1, l2, l3);
      EXPECT_EQ(q.discriminant, discriminant_d(l1, l2, l3));
      const auto& roots = q.rational() ? q.roots : q.extension_roots;
      (q.rational() ? rational : lifted)++;
      for (const FieldElem& mu : roots) {
        const FieldCtx& g = mu.ctx();
        const FieldElem c0 = embed(q.coeffs[0], g), c1 = embed(q.coeffs[1], g), c2 = embed(q.coeffs[2], g);
        ASSERT_TRUE((c2 * mu.square() + c1 * mu + c0).is_zero());
        if (mu.is_zero() || mu.is_one()) continue;
        const FieldElem l1g = embed(l1, g), l2g = embed(l2, g);
        if ((mu * l2g - l1g).is_zero()) continue;
        ASSERT_EQ(lambda3({l1g, l2g, mu}).value, embed(l3, g));
      }
    }
  }
  EXPECT_GT(rational, 0);
  EXPECT_GT(lifted, 0);
}

TEST(Hyperelliptic, ExampleFamilyIsHyperelliptic) {
  const FieldCtx& f = make_ctx(13, 2);
  for (int v = 2; v < 12; ++v) {
    const FieldElem l = f.from_int(v);
    const HoweInput in{l, l, f.from_int(-1)};
    if (classify_genus(in).genus != 3) continue;
    EXPECT_TRUE(is_hyperelliptic_mu(in));
    EXPECT_TRUE(is_hyperelliptic_d(l, l, lambda3(in).value));
  }
  EXPECT_FALSE(is_hyperelliptic_mu({f.from_int(3), f.from_int(5), f.from_int(7)}));
  EXPECT_THROW(is_hyperelliptic_mu({f.from_int(3), f.from_int(3).inv(), f.from_int(3)}), DomainError);
}

TEST(Hyperelliptic, CriteriaAgreeOnRandomInputs) {
  std::mt19937_64 rng(33);
  for (std::uint32_t p : {11u, 13u, 17u}) {
    const FieldCtx& f = make_ctx(p, 2);
    int hyper = 0, taken = 0;
    while (taken < 200) {
      const FieldElem l1 = random_generic(f, rng), l2 = random_generic(f, rng);
      FieldElem mu = random_generic(f, rng);
      if (taken % 2 == 0)
        if (auto r = sqrt(l1 / l2)) mu = *r;
      if (mu.is_zero() || mu.is_one()) continue;
      const HoweInput in{l1, l2, mu};
      if (classify_genus(in).genus != 3) continue;
      ++taken;
      const bool h = is_hyperelliptic_mu(in);
      hyper += h;
      ASSERT_EQ(h, is_hyperelliptic_d(l1, l2, lambda3(in).value));
    }
    EXPECT_GT(hyper, 0);
    EXPECT_LT(hyper, taken);
  }
}

TEST(Lambda3Hyperelliptic, EqualCase) {
  const FieldCtx& f = make_ctx(11, 2);
  const FieldElem l = f.from_int(3);
  const auto vs = lambda3_hyperelliptic(l, l);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0], (l + f.one()).square() / l.scaled(4));
  EXPECT_TRUE(discriminant_d(l, l, vs[0]).is_zero());
}

// The closed-form values are the two roots of D = 0 as a quadratic in λ3:
//   (λ1-λ2)^2 λ3^2 - 2((λ1λ2+1)(λ1+λ2) - 4λ1λ2) λ3 + (λ1λ2-1)^2.
TEST(Lambda3Hyperelliptic, ValuesAreTheRootsOfD) {
  std::mt19937_64 rng(34);
  for (std::uint32_t p : {11u, 13u, 17u, 97u}) {
    const FieldCtx& f = make_ctx(p, 2);
    for (int i = 0; i < 50; ++i) {
      const FieldElem l1 = random_generic(f, rng), l2 = random_generic(f, rng);
      if (l1 == l2) continue;
      const auto vs = lambda3_hyperelliptic(l1, l2);
      const FieldCtx& g = vs.front().ctx();
      const FieldElem a = embed(l1, g), b = embed(l2, g), one = g.one();
      const FieldElem lead = (a - b).square();
      const FieldElem sum = ((a * b + one) * (a + b) - (a * b).scaled(4)).scaled(2) / lead;
      const FieldElem prod = (a * b - one).square() / lead;
      if (vs.size() == 2) {
        ASSERT_EQ(vs[0] + vs[1], sum);
        ASSERT_EQ(vs[0] * vs[1], prod);
      } else {
        ASSERT_EQ(vs[0] + vs[0], sum);
        ASSERT_EQ(vs[0].square(), prod);
      }
      for (const auto& v : vs) {
        if (v.is_zero() || v.is_one()) continue;
        ASSERT_TRUE(discriminant_d(a, b, v).is_zero());
      }
    }
  }
}

// The λ3 of a standard form's third quotient is one of the closed-form values.
TEST(Lambda3Hyperelliptic, ContainsTheStandardFormThirdParameter) {
  std::mt19937_64 rng(35);
  for (std::uint32_t p : {11u, 13u, 17u}) {
    const FieldCtx& f = make_ctx(p, 2);
    for (int i = 0; i < 50; ++i) {
      const FieldElem a = random_elem(f, rng), b = random_elem(f, rng);
      if (!standard_nonsingular(a, b)) continue;
      const LegendreTriple t = legendre_triple(CurveAB(a, b));
      auto vs = lambda3_hyperelliptic(t.lambda1, t.lambda2);
      bool found = false;
      for (const auto& v : vs) {
        const auto [x, y] = common_field(v, t.lambda3);
        found = found || x == y;
      }
      ASSERT_TRUE(found) << a.str() << ", " << b.str();
    }
  }
}

TEST(EqualLambdaFamily, Preconditions) {
  const FieldCtx& f = make_ctx(7, 2);
  EXPECT_THROW(example25_check(f.from_int(-1)), DomainError);
  EXPECT_THROW(example25_check(f.one()), DomainError);
  EXPECT_THROW(example25_check(f.zero()), DomainError);
}

TEST(EqualLambdaFamily, AcceptedSetAtP31) {
  const FieldCtx& f = make_ctx(31, 2);
  std::set<u128> accepted;
  for (u128 i = 0; i < f.size(); ++i) {
    const FieldElem l = f.element_at(i);
    if (l.is_zero() || l.square().is_one()) continue;
    if (example25_check(l)) accepted.insert(i);
  }
  ASSERT_FALSE(accepted.empty());
  for (u128 i : accepted) {
    const FieldElem l = f.element_at(i);
    EXPECT_EQ(accepted.count(f.index_of(-l)), 1u);
    const auto [a, b] = example25_standard_form(l);
    ASSERT_TRUE(standard_nonsingular(a, b));
    EXPECT_TRUE(is_superspecial(a, b)) << l.str();
  }
}

// λ1 = λ2 = λ with √λ1 = s, √λ2 = -s is the family a = -b = 4s/(λ+1).
TEST(EqualLambdaFamily, StandardFormMatchesInverseMap) {
  const FieldCtx& f = make_ctx(13, 2);
  for (int v = 2; v < 12; ++v) {
    const FieldElem l = f.from_int(v);
    const auto [a, b] = example25_standard_form(l);
    const FieldElem s = sqrt_lifting(l);
    const auto [ra, rb] = ab_from_sqrt_lambdas(s, -s);
    EXPECT_EQ(a, ra);
    EXPECT_EQ(b, rb);
  }
}
