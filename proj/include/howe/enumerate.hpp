#pragma once

// Superspecial nonsingular standard forms over F_{p^2}, up to geometric
// isomorphism.
//
// The structured search runs the inverse map over all supersingular λ1, λ2
// and all four sign choices of their square roots; the brute search scans
// every (a, b) in F_{p^2}^2 and is kept as an independent check. Both feed
// the same deterministic dedup: candidates are sorted, and each one either
// joins the first existing class it is isomorphic to or opens a new class
// with itself as representative, so representatives are the least members.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "howe/classify.hpp"
#include "howe/errors.hpp"
#include "howe/field_tower.hpp"
#include "howe/point_count.hpp"
#include "howe/standard_form.hpp"
#include "howe/supersingular.hpp"

namespace howe {

inline constexpr std::uint32_t kMaxBrutePrime = 31;
inline constexpr std::uint32_t kMaxTablePrime = 1000;

struct SqrtPair {
  FieldElem sqrt_lambda1;
  FieldElem sqrt_lambda2;
};

struct IsoClassRecord {
  std::uint32_t p = 0;
  CurveAB representative;
  std::optional<AutLabel> aut;  // absent for p <= 7
  std::uint64_t n = 0;
  Verdict verdict = Verdict::Neither;
  std::size_t class_size = 0;         // distinct normalized (a, b) seen in the class
  std::vector<SqrtPair> provenance;   // (√λ1, √λ2) inputs that produced members
};

struct CountsRow {
  std::uint32_t p = 0;
  std::array<int, 4> counts{};  // indexed by AutGroup
  int total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

namespace detail {

struct Candidate {
  CurveAB ab;  // normalized, in F_{p^2}
  std::vector<SqrtPair> sources;
};

struct ClassBuilder {
  CurveAB rep;
  BranchLocus locus;
  int order = 0;
  std::optional<std::array<FieldElem, 3>> js;  // only kept when order == 4
  std::size_t size = 0;
  std::vector<SqrtPair> provenance;
};

// Brings a pair into F_{p^2} and normalizes it.
inline CurveAB to_fp2(const CurveAB& c) {
  const FieldCtx& fp2 = make_ctx(c.p(), 2);
  if (c.field().degree() <= 2) return CurveAB(embed(c.a, fp2), embed(c.b, fp2)).normalized();
  auto a = restrict_to(c.a, fp2), b = restrict_to(c.b, fp2);
  ensure(a && b, "superspecial standard form with a, b outside F_{p^2}");
  return CurveAB(*a, *b).normalized();
}

inline std::vector<IsoClassRecord> build_classes(std::uint32_t p, std::vector<Candidate> cands) {
  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) { return x.ab < y.ab; });
  const bool labelled = p > 7;
  if (labelled) ensure(calibrate(p).ok(), "automorphism order calibration failed at p = " + std::to_string(p));

  std::vector<ClassBuilder> classes;
  for (auto& cand : cands) {
    ensure(cand.ab.nonsingular() && is_superspecial(cand.ab.a, cand.ab.b), "candidate is not superspecial");
    BranchLocus locus = branch_locus(cand.ab);
    // The reduced order is a class invariant, and with the Klein group the
    // quotient j-invariants are too; both prune the Möbius search.
    const int order = reduced_aut_order(locus);
    std::optional<std::array<FieldElem, 3>> js;
    if (order == 4) js = quotient_j_invariants(cand.ab);
    ClassBuilder* home = nullptr;
    for (auto& cl : classes) {
      if (cl.order != order) continue;
      if (js && cl.js && *js != *cl.js) continue;
      if (are_isomorphic(cl.locus, locus)) {
        home = &cl;
        break;
      }
    }
    if (home == nullptr) {
      classes.push_back({cand.ab, std::move(locus), order, js, 0, {}});
      home = &classes.back();
    }
    ++home->size;
    home->provenance.insert(home->provenance.end(), cand.sources.begin(), cand.sources.end());
  }

  std::vector<IsoClassRecord> out;
  const FieldCtx& fp2 = make_ctx(p, 2);
  for (auto& cl : classes) {
    IsoClassRecord rec;
    rec.p = p;
    rec.representative = cl.rep;
    if (labelled) {
      const auto g = group_for_order(cl.order);
      ensure(g.has_value(), "reduced automorphism group of order " + std::to_string(cl.order));
      rec.aut = AutLabel{*g, cl.order};
    }
    const CountResult cnt = count_hyperelliptic(cl.rep.octic(), fp2.one(), fp2);
    rec.n = cnt.n;
    rec.verdict = cnt.verdict;
    rec.class_size = cl.size;
    rec.provenance = std::move(cl.provenance);
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace detail

inline std::vector<IsoClassRecord> enumerate_structured(std::uint32_t p) {
  const std::vector<FieldElem> lambdas = supersingular_lambdas(p);
  std::vector<FieldElem> roots;
  for (const auto& l : lambdas) {
    auto r = sqrt(l);
    detail::ensure(r.has_value(), "supersingular λ without a square root in F_{p^2}");
    roots.push_back(*r);
  }
  std::map<CurveAB, std::vector<SqrtPair>> found;
  for (const auto& r1 : roots)
    for (const auto& r2 : roots)
      for (int sign = 0; sign < 4; ++sign) {
        const FieldElem s1 = (sign & 1) ? -r1 : r1;
        const FieldElem s2 = (sign & 2) ? -r2 : r2;
        if (s1 == s2 || (s1 * s2).is_one()) continue;
        const auto [a, b] = ab_from_sqrt_lambdas(s1, s2);
        if (!standard_nonsingular(a, b) || !is_superspecial(a, b)) continue;
        found[CurveAB(a, b).normalized()].push_back({s1, s2});
      }
  std::vector<detail::Candidate> cands;
  for (auto& [ab, src] : found) cands.push_back({ab, std::move(src)});
  return detail::build_classes(p, std::move(cands));
}

inline std::vector<IsoClassRecord> enumerate_brute(std::uint32_t p) {
  if (p > kMaxBrutePrime) throw DomainError("brute enumeration is limited to p <= " + std::to_string(kMaxBrutePrime));
  const FieldCtx& f = make_ctx(p, 2);
  std::vector<detail::Candidate> cands;
  for (u128 i = 0; i < f.size(); ++i) {
    const FieldElem a = f.element_at(i);
    for (u128 j = i + 1; j < f.size(); ++j) {
      const FieldElem b = f.element_at(j);
      if (!standard_nonsingular(a, b) || !is_superspecial(a, b)) continue;
      cands.push_back({CurveAB(a, b).normalized(), {}});
    }
  }
  return detail::build_classes(p, std::move(cands));
}

inline CountsRow counts_row(std::uint32_t p, const std::vector<IsoClassRecord>& classes) {
  CountsRow row;
  row.p = p;
  for (const auto& rec : classes) {
    if (!rec.aut) throw DomainError("counts by automorphism group need p > 7");
    ++row.counts[static_cast<std::size_t>(rec.aut->label)];
  }
  return row;
}

// One row per prime in [p_min, p_max], zero rows included.
inline std::vector<CountsRow> table(std::uint32_t p_min, std::uint32_t p_max) {
  if (p_min <= 7 || p_min > p_max || p_max >= kMaxTablePrime)
    throw DomainError("table range must satisfy 7 < pmin <= pmax < " + std::to_string(kMaxTablePrime));
  std::vector<CountsRow> rows;
  for (std::uint32_t p = p_min; p <= p_max; ++p)
    if (detail::is_prime(p)) rows.push_back(counts_row(p, enumerate_structured(p)));
  return rows;
}

}  // namespace howe
