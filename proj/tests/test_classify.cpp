#include <gtest/gtest.h>

#include <map>
#include <set>

#include "howe/classify.hpp"
#include "howe/enumerate.hpp"
#include "support.hpp"

using namespace howe;
using howe::testing::random_elem;

namespace {

std::vector<CurveAB> random_curves(std::uint32_t p, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const FieldCtx& f = make_ctx(p, 2);
  std::vector<CurveAB> out;
  while (static_cast<int>(out.size()) < n) {
    const FieldElem a = random_elem(f, rng), b = random_elem(f, rng);
    if (!standard_nonsingular(a, b)) continue;
    const CurveAB c(a, b);
    // Only curves whose branch points all live in F_{p^8} can be classified.
    try {
      branch_locus(c);
    } catch (const DomainError&) {
      continue;
    }
    out.push_back(c);
  }
  return out;
}

// Every superspecial standard form over F_{p^2} with a < b.
std::vector<CurveAB> all_superspecial(std::uint32_t p) {
  const FieldCtx& f = make_ctx(p, 2);
  std::vector<CurveAB> out;
  for (u128 i = 0; i < f.size(); ++i)
    for (u128 j = i + 1; j < f.size(); ++j) {
      const FieldElem a = f.element_at(i), b = f.element_at(j);
      if (standard_nonsingular(a, b) && is_superspecial(a, b)) out.emplace_back(a, b);
    }
  return out;
}

std::string key(const std::array<FieldElem, 3>& js) { return js[0].str() + ";" + js[1].str() + ";" + js[2].str(); }

}  // namespace

TEST(BranchLocus, ClosedUnderNegationAndInversion) {
  for (const CurveAB& c : random_curves(13, 30, 61)) {
    const BranchLocus l = branch_locus(c);
    ASSERT_TRUE(std::is_sorted(l.roots.begin(), l.roots.end()));
    FieldElem prod = l.roots[0].ctx().one();
    for (const FieldElem& r : l.roots) {
      prod = prod * r;
      EXPECT_TRUE(c.octic().embedded(r.ctx()).eval(r).is_zero());
      EXPECT_TRUE(std::binary_search(l.roots.begin(), l.roots.end(), -r));
      EXPECT_TRUE(std::binary_search(l.roots.begin(), l.roots.end(), r.inv()));
    }
    EXPECT_TRUE(prod.is_one());
  }
  const FieldCtx& f = make_ctx(13, 2);
  EXPECT_THROW(branch_locus(CurveAB(f.from_int(2), f.from_int(5))), DomainError);
}

// (a, b) and (b, a) give the same octic; x -> i x sends (a, b) to (-a, -b).
TEST(Isomorphism, ObviousSymmetries) {
  for (const CurveAB& c : random_curves(17, 15, 62)) {
    const BranchLocus l = branch_locus(c);
    EXPECT_TRUE(are_isomorphic(l, l));
    EXPECT_TRUE(are_isomorphic(l, branch_locus(CurveAB(c.b, c.a))));
    EXPECT_TRUE(are_isomorphic(l, branch_locus(CurveAB(-c.a, -c.b))));
  }
}

TEST(Isomorphism, EquivalenceRelationOnABatch) {
  const auto curves = random_curves(11, 12, 63);
  std::vector<BranchLocus> loci;
  for (const auto& c : curves) loci.push_back(branch_locus(c));
  std::vector<std::vector<bool>> iso(loci.size(), std::vector<bool>(loci.size()));
  for (std::size_t i = 0; i < loci.size(); ++i)
    for (std::size_t j = 0; j < loci.size(); ++j) iso[i][j] = are_isomorphic(loci[i], loci[j]);
  for (std::size_t i = 0; i < loci.size(); ++i) {
    EXPECT_TRUE(iso[i][i]);
    for (std::size_t j = 0; j < loci.size(); ++j) {
      EXPECT_EQ(iso[i][j], iso[j][i]);
      for (std::size_t k = 0; k < loci.size(); ++k) {
        if (iso[i][j] && iso[j][k]) {
          EXPECT_TRUE(iso[i][k]);
        }
      }
      if (iso[i][j]) {
        EXPECT_EQ(reduced_aut_order(loci[i]), reduced_aut_order(loci[j]));
      }
    }
  }
}

// The three quotient involutions always give a Klein four-group.
TEST(AutOrder, AtLeastFourAndDivisibleByFour) {
  for (const CurveAB& c : random_curves(13, 30, 64)) {
    const int o = reduced_aut_order(branch_locus(c));
    EXPECT_GE(o, 4);
    EXPECT_EQ(o % 4, 0);
  }
}

TEST(AutOrder, LabelTable) {
  EXPECT_EQ(reduced_order_of(AutGroup::C2xC2xC2), 4);
  EXPECT_EQ(reduced_order_of(AutGroup::C2xD8), 8);
  EXPECT_EQ(reduced_order_of(AutGroup::V8), 16);
  EXPECT_EQ(reduced_order_of(AutGroup::C2xS4), 24);
  for (AutGroup g : kAutGroups) EXPECT_EQ(group_for_order(reduced_order_of(g)), g);
  EXPECT_FALSE(group_for_order(12).has_value());
  EXPECT_STREQ(to_string(AutGroup::C2xD8), "C2xD8");
}

TEST(AutLabel, SpecialModels) {
  EXPECT_EQ(aut_label(branch_locus(octic_x8_plus_1(23))).label, AutGroup::V8);
  EXPECT_EQ(aut_label(branch_locus(octic_x8_minus_14x4_plus_1(47))).label, AutGroup::C2xS4);
  const auto recs = enumerate_structured(17);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(aut_label(branch_locus(recs[0].representative)).label, AutGroup::C2xD8);
  EXPECT_EQ(aut_label(branch_locus(recs[0].representative)).reduced_order, 8);
}

TEST(AutLabel, SmallPrimesAreRejected) {
  const FieldCtx& f = make_ctx(7, 2);
  EXPECT_THROW(aut_label(branch_locus(CurveAB(f.from_int(3), f.from_int(4)))), DomainError);
  EXPECT_THROW(calibrate(7), DomainError);
}

TEST(Calibration, ExpectedOrdersAtSeveralPrimes) {
  for (std::uint32_t p : {11u, 13u, 17u, 23u, 31u}) {
    const Calibration cal = calibrate(p);
    EXPECT_TRUE(cal.ok()) << p << ": " << cal.order_x8_plus_1 << " " << cal.order_x8_14 << " "
                          << cal.order_dihedral << " " << cal.order_generic;
  }
}

TEST(JInvariant, KnownValues) {
  const FieldCtx& f = make_ctx(13, 2);
  // λ = -1 has j = 1728.
  EXPECT_EQ(j_invariant(f.from_int(-1)), f.from_int(1728));
  std::mt19937_64 rng(65);
  for (int i = 0; i < 50; ++i) {
    const FieldElem l = random_elem(f, rng);
    if (l.is_zero() || l.is_one()) continue;
    const FieldElem j = j_invariant(l);
    for (const FieldElem& m : {l.inv(), f.one() - l, l / (l - f.one())}) EXPECT_EQ(j_invariant(m), j);
  }
  EXPECT_THROW(j_invariant(f.one()), DomainError);
}

// Within each class of reduced order 4 the quotient j-invariants agree, so a
// mismatch rules out isomorphism (distinct classes may still share them). A
// class of order 8 can contain members whose multisets differ, which is why
// the prefilter is limited to order 4.
TEST(JInvariant, PrefilterIsSoundOnlyForOrderFour) {
  const std::uint32_t p = 31;
  const auto reps = enumerate_structured(p);
  std::vector<BranchLocus> rep_loci;
  for (const auto& r : reps) rep_loci.push_back(branch_locus(r.representative));
  std::map<std::size_t, std::set<std::string>> seen;
  for (const CurveAB& c : all_superspecial(p)) {
    const BranchLocus l = branch_locus(c);
    std::size_t k = reps.size();
    for (std::size_t r = 0; r < reps.size() && k == reps.size(); ++r)
      if (are_isomorphic(l, rep_loci[r])) k = r;
    ASSERT_LT(k, reps.size());
    seen[k].insert(key(quotient_j_invariants(c)));
  }
  int order_four = 0;
  bool order_eight_splits = false;
  for (const auto& [k, keys] : seen) {
    if (reps[k].aut->reduced_order == 4) {
      EXPECT_EQ(keys.size(), 1u);
      ++order_four;
    }
    if (reps[k].aut->reduced_order == 8) order_eight_splits = keys.size() > 1;
  }
  EXPECT_EQ(order_four, 3);
  EXPECT_TRUE(order_eight_splits);
}
