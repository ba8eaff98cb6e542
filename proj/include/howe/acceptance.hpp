#pragma once

// The end-to-end checks the library is held to. Each returns one pass/fail
// result with a short detail string; `selftest` and the acceptance test
// binary both print them one per line. The slow tier widens a few of them.

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "howe/classify.hpp"
#include "howe/enumerate.hpp"
#include "howe/errors.hpp"
#include "howe/field_tower.hpp"
#include "howe/howe_curve.hpp"
#include "howe/point_count.hpp"
#include "howe/standard_form.hpp"
#include "howe/supersingular.hpp"

namespace howe::acceptance {

enum class Tier { Fast, Slow };

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

inline std::string line(const Result& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail;
  os.precision(2);
  os << std::fixed << " (" << r.seconds << " s)";
  return os.str();
}

namespace detail {

inline std::vector<std::uint32_t> odd_primes(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = std::max(lo, 3u); p <= hi; ++p)
    if (howe::detail::is_prime(p)) out.push_back(p);
  return out;
}

inline std::uint32_t next_prime(std::uint32_t p) {
  do ++p;
  while (!howe::detail::is_prime(p));
  return p;
}

inline FieldElem random_elem(const FieldCtx& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, static_cast<std::uint64_t>(f.size() - 1));
  return f.element_at(d(rng));
}

inline Result timed(int id, std::string name, const std::function<bool(std::string&)>& body) {
  Result r{id, std::move(name), false, {}, 0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.pass = body(r.detail);
  } catch (const InvariantViolation& e) {
    r.pass = false;
    r.detail = std::string("invariant violation: ") + e.what();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

// Counts per automorphism group for 7 < p < 100, printed primes only.
struct ExpectedColumn {
  std::uint32_t p;
  std::array<int, 4> counts;
};

inline const std::vector<ExpectedColumn>& expected_table() {
  static const std::vector<ExpectedColumn> t{
      {17, {0, 1, 0, 0}}, {23, {2, 0, 1, 0}}, {31, {3, 1, 1, 0}}, {41, {0, 1, 0, 0}}, {47, {4, 2, 1, 1}},
      {71, {10, 0, 1, 0}}, {73, {2, 3, 0, 0}}, {79, {9, 1, 1, 0}}, {89, {0, 1, 0, 0}}, {97, {4, 1, 0, 0}}};
  return t;
}

inline Result table_reproduction() {
  return detail::timed(1, "table 8..99 reproduces the reference counts", [](std::string& d) {
    std::vector<ExpectedColumn> got;
    for (const auto& row : table(8, 99))
      if (row.total() > 0) got.push_back({row.p, row.counts});
    const auto& want = expected_table();
    bool ok = got.size() == want.size();
    for (std::size_t i = 0; ok && i < got.size(); ++i) ok = got[i].p == want[i].p && got[i].counts == want[i].counts;
    std::ostringstream os;
    os << got.size() << " nonzero primes";
    for (const auto& c : got) {
      if (!ok) os << " " << c.p << ":(" << c.counts[0] << "," << c.counts[1] << "," << c.counts[2] << "," << c.counts[3] << ")";
    }
    d = os.str();
    return ok;
  });
}

inline Result maximality_of_enumerated() {
  return detail::timed(2, "every superspecial class for 7 < p < 100 is maximal/minimal as predicted", [](std::string& d) {
    std::size_t checked = 0;
    for (std::uint32_t p : detail::odd_primes(8, 99)) {
      const FieldCtx& fp2 = make_ctx(p, 2);
      const std::int64_t q = std::int64_t{p} * p;
      const std::int64_t want = p % 4 == 3 ? q + 1 + 6 * std::int64_t{p} : q + 1 - 6 * std::int64_t{p};
      for (const auto& rec : enumerate_structured(p)) {
        const CountResult c = count_hyperelliptic(rec.representative.octic(), fp2.one(), fp2);
        ++checked;
        if (static_cast<std::int64_t>(c.n) != want) {
          d = "p = " + std::to_string(p) + ": N = " + std::to_string(c.n) + ", expected " + std::to_string(want);
          return false;
        }
      }
    }
    d = std::to_string(checked) + " classes counted";
    return checked > 0;
  });
}

inline bool same_classes(const std::vector<IsoClassRecord>& x, const std::vector<IsoClassRecord>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i].representative == y[i].representative)) {
      // Representatives are least members; they can only differ if the searches found different sets.
      if (!are_isomorphic(branch_locus(x[i].representative), branch_locus(y[i].representative))) return false;
    }
    if (x[i].aut.has_value() != y[i].aut.has_value()) return false;
    if (x[i].aut && x[i].aut->label != y[i].aut->label) return false;
  }
  return true;
}

inline Result oracle_equivalence(Tier tier) {
  return detail::timed(3, "structured enumeration matches the brute-force scan", [tier](std::string& d) {
    std::vector<std::uint32_t> ps{11, 13, 17, 19, 23};
    if (tier == Tier::Slow) ps.push_back(31);
    std::ostringstream os;
    bool ok = true;
    for (std::uint32_t p : ps) {
      const auto s = enumerate_structured(p);
      const auto b = enumerate_brute(p);
      const bool same = same_classes(s, b);
      ok = ok && same;
      os << "p=" << p << ":" << s.size() << (same ? "" : "!=" + std::to_string(b.size())) << " ";
    }
    d = os.str();
    return ok;
  });
}

inline Result supersingular_legendre_maximality() {
  return detail::timed(4, "supersingular λ are fourth powers with maximal/minimal Legendre curves", [](std::string& d) {
    std::size_t checked = 0;
    for (std::uint32_t p : detail::odd_primes(3, 99)) {
      const FieldCtx& fp2 = make_ctx(p, 2);
      const Verdict want = predicted_verdict(p);
      for (const auto& l : supersingular_lambdas(p)) {
        if (!is_fourth_power(l)) {
          d = "p = " + std::to_string(p) + ": λ = " + l.str() + " is not a fourth power";
          return false;
        }
        if (count_legendre(l, fp2).verdict != want) {
          d = "p = " + std::to_string(p) + ": λ = " + l.str() + " has the wrong verdict";
          return false;
        }
        ++checked;
      }
    }
    d = std::to_string(checked) + " roots checked";
    return checked > 0;
  });
}

inline Result x8_minus_1_criterion() {
  return detail::timed(5, "x^8 - 1 is superspecial exactly when p = 7 mod 8", [](std::string& d) {
    std::ostringstream os;
    for (std::uint32_t p : detail::odd_primes(8, 99)) {
      const FieldCtx& f = make_ctx(p, 1);
      const Poly x8m1 = Poly::from_ints(f, {-1, 0, 0, 0, 0, 0, 0, 0, 1});
      const bool zero = hasse_witt(x8m1).is_zero();
      if (zero != (p % 8 == 7)) {
        d = "mismatch at p = " + std::to_string(p);
        return false;
      }
      if (zero) os << p << " ";
    }
    d = "zero at p = " + os.str();
    return true;
  });
}

inline Result round_trip_identities() {
  return detail::timed(6, "Legendre triple round trip and inverse-map identities", [](std::string& d) {
    std::mt19937_64 rng(20240611);
    std::size_t samples = 0;
    for (std::uint32_t p : {11u, 13u, 17u, 97u}) {
      const FieldCtx& fp2 = make_ctx(p, 2);
      int taken = 0;
      while (taken < 100) {
        const FieldElem a = detail::random_elem(fp2, rng), b = detail::random_elem(fp2, rng);
        if (!standard_nonsingular(a, b)) continue;
        ++taken;
        const CurveAB c(a, b);
        const LegendreTriple t = legendre_triple(c);
        const FieldElem &s1 = t.sqrt_lambda1, &s2 = t.sqrt_lambda2;
        const FieldCtx& g = s1.ctx();
        const FieldElem ag = embed(a, g), bg = embed(b, g), one = g.one(), two = g.from_int(2);
        const auto [ra, rb] = ab_from_sqrt_lambdas(s1, s2);
        const FieldElem den = inverse_denominator(s1, s2);
        const Lemma42Values l42 = lemma42_decomposition(s1, s2);
        const FieldElem r36 = ((s1 * s2 - one) / (s1 - s2)).square();
        const bool ok = ra == ag && rb == bg &&
                        ag + bg == (s1 + s2) * (s1 * s2 + one) * g.from_int(4) / den &&
                        ag - bg == (s1 * s2).scaled(16) / den && l42.a_minus_2 == ag - two &&
                        l42.a_plus_2 == ag + two && l42.b_minus_2 == bg - two && l42.b_plus_2 == bg + two &&
                        t.lambda3 == r36;
        if (!ok) {
          d = "p = " + std::to_string(p) + ", (a, b) = (" + a.str() + ", " + b.str() + ")";
          return false;
        }
        ++samples;
      }
    }
    d = std::to_string(samples) + " samples";
    return true;
  });
}

inline Result hyperellipticity_equivalence() {
  return detail::timed(7, "the μ and discriminant hyperellipticity criteria agree", [](std::string& d) {
    std::mt19937_64 rng(7001);
    std::size_t hyper = 0, total = 0, roots = 0;
    for (std::uint32_t p : {11u, 13u, 17u}) {
      const FieldCtx& fp2 = make_ctx(p, 2);
      int taken = 0;
      while (taken < 500) {
        const FieldElem l1 = detail::random_elem(fp2, rng), l2 = detail::random_elem(fp2, rng);
        FieldElem mu = detail::random_elem(fp2, rng);
        // Every other sample is steered onto μ^2 λ2 = λ1 so both outcomes occur.
        if (taken % 2 == 0 && !l2.is_zero()) {
          if (auto r = sqrt(l1 / l2)) mu = *r;
        }
        bool bad = false;
        for (const FieldElem* e : {&l1, &l2, static_cast<const FieldElem*>(&mu)}) bad = bad || e->is_zero() || e->is_one();
        if (bad) continue;
        const HoweInput in{l1, l2, mu};
        if (classify_genus(in).genus != 3) continue;
        ++taken;
        ++total;
        const bool by_mu = is_hyperelliptic_mu(in);
        const bool by_d = is_hyperelliptic_d(l1, l2, lambda3(in).value);
        hyper += by_mu;
        if (by_mu != by_d) {
          d = "disagreement at p = " + std::to_string(p);
          return false;
        }
        for (const FieldElem& v : lambda3_hyperelliptic(l1, l2)) {
          if (v.is_zero() || v.is_one()) continue;
          ++roots;
          if (!discriminant_d(l1, l2, v).is_zero()) {
            d = "λ3 from the closed form does not annihilate D at p = " + std::to_string(p);
            return false;
          }
        }
      }
    }
    d = std::to_string(total) + " inputs, " + std::to_string(hyper) + " hyperelliptic, " + std::to_string(roots) +
        " closed-form λ3 checked";
    return hyper > 0 && hyper < total;
  });
}

inline Result superspeciality_equivalence() {
  return detail::timed(8, "Hasse–Witt, quartic Hasse invariants and H_p agree on exhaustive scans", [](std::string& d) {
    std::size_t total = 0, superspecial = 0;
    for (std::uint32_t p : {7u, 11u, 13u}) {
      const FieldCtx& f = make_ctx(p, 2);
      const HassePoly h = hasse_poly(p);
      for (u128 i = 0; i < f.size(); ++i)
        for (u128 j = i + 1; j < f.size(); ++j) {
          const FieldElem a = f.element_at(i), b = f.element_at(j);
          if (!standard_nonsingular(a, b)) continue;
          const CurveAB c(a, b);
          const bool hw = hasse_witt(c.octic()).is_zero();
          bool quartics = true;
          for (const Poly& g : quotient_quartics(c)) quartics = quartics && hasse_invariant_quartic(g).is_zero();
          const LegendreTriple t = legendre_triple(c);
          const bool legendre =
              h.eval(t.lambda1).is_zero() && h.eval(t.lambda2).is_zero() && h.eval(t.lambda3).is_zero();
          ++total;
          superspecial += hw;
          if (hw != quartics || hw != legendre) {
            d = "disagreement at p = " + std::to_string(p) + ", (a, b) = (" + a.str() + ", " + b.str() + ")";
            return false;
          }
        }
    }
    d = std::to_string(total) + " curves, " + std::to_string(superspecial) + " superspecial";
    return true;
  });
}

// A superspecial curve at p, if any, as the least enumerated representative.
inline std::optional<CurveAB> superspecial_sample(std::uint32_t p) {
  const auto recs = enumerate_structured(p);
  if (recs.empty()) return std::nullopt;
  return recs.front().representative;
}

inline Result twist_verdicts(Tier tier) {
  return detail::timed(9, "twisted curves are maximal/minimal as the square class of ε predicts", [tier](std::string& d) {
    std::vector<std::pair<std::uint32_t, int>> cases{{7, 1}, {11, 1}, {13, 1}, {7, 2}, {11, 2}};
    if (tier == Tier::Slow) cases.push_back({13, 2});
    std::ostringstream os;
    for (auto [p0, e] : cases) {
      std::uint32_t p = p0;
      std::optional<CurveAB> c = superspecial_sample(p);
      if (!c) {
        p = 11;
        while (!(c = superspecial_sample(p))) p = detail::next_prime(p);
      }
      const FieldCtx& f = make_ctx(p, 2 * e);
      for (const FieldElem& eps : {f.one(), f.non_residue()}) {
        const TwistReport rep = twist_verdict(*c, {eps, e});
        if (!rep.agrees) {
          d = "p = " + std::to_string(p) + ", e = " + std::to_string(e) + ", ε = " + eps.str();
          return false;
        }
      }
      os << "(" << p0 << "->" << p << ",e=" << e << ") ";
    }
    d = os.str();
    return true;
  });
}

// Counts a batch of random curves; any count outside the Hasse–Weil interval
// throws InvariantViolation and fails the check. A deliberately impossible
// count must be rejected the same way.
inline Result hasse_weil_floor() {
  return detail::timed(10, "no count violates the Hasse–Weil bound", [](std::string& d) {
    bool rejected = false;
    try {
      hasse_weil_verdict(49, 7, 3, 49 + 1 + 43);
    } catch (const InvariantViolation&) {
      rejected = true;
    }
    if (!rejected) {
      d = "an out-of-range count was accepted";
      return false;
    }
    std::mt19937_64 rng(424242);
    std::size_t counted = 0;
    for (std::uint32_t p : {7u, 11u, 13u}) {
      const FieldCtx& f = make_ctx(p, 2);
      for (int taken = 0; taken < 100;) {
        const FieldElem a = detail::random_elem(f, rng), b = detail::random_elem(f, rng);
        if (!standard_nonsingular(a, b)) continue;
        for (const FieldElem& eps : {f.one(), f.non_residue()}) count_hyperelliptic(standard_octic(a, b), eps, f);
        ++taken;
        ++counted;
      }
    }
    d = std::to_string(counted) + " random curves and their twists counted";
    return true;
  });
}

inline std::vector<Result> run_all(Tier tier, const std::function<void(const Result&)>& on_result = {}) {
  std::vector<std::function<Result()>> checks{
      table_reproduction,
      maximality_of_enumerated,
      [tier] { return oracle_equivalence(tier); },
      supersingular_legendre_maximality,
      x8_minus_1_criterion,
      round_trip_identities,
      hyperellipticity_equivalence,
      superspeciality_equivalence,
      [tier] { return twist_verdicts(tier); },
      hasse_weil_floor,
  };
  std::vector<Result> out;
  for (const auto& check : checks) {
    out.push_back(check());
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace howe::acceptance
