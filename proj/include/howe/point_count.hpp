#pragma once

// Brute-force point counts of y^2 = f(x) (and its twists ε y^2 = f(x)) over
// F_q with q = p^k, k even, together with Hasse–Weil verdicts.
//
// For a smooth model of even degree 2g + 2 the points at infinity number
// 2 when ε·lc(f) is a square and 0 otherwise; a cubic has one.

#include <cstdint>
#include <string>
#include <vector>

#include "howe/errors.hpp"
#include "howe/field_tower.hpp"
#include "howe/poly.hpp"
#include "howe/standard_form.hpp"
#include "howe/supersingular.hpp"

namespace howe {

inline constexpr std::uint64_t kMaxCountField = 1'000'000;

enum class Verdict { Maximal, Minimal, Neither };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Maximal: return "Maximal";
    case Verdict::Minimal: return "Minimal";
    case Verdict::Neither: return "Neither";
  }
  return "?";
}

struct CountResult {
  std::uint64_t q = 0;
  int genus = 0;
  std::uint64_t n = 0;
  Verdict verdict = Verdict::Neither;
};

namespace detail {

inline std::uint64_t sqrt_q(const FieldCtx& f) {
  if (f.degree() % 2 != 0) throw DomainError("verdicts need q to be an even power of p");
  return static_cast<std::uint64_t>(detail::ipow(f.p(), f.degree() / 2));
}

inline void check_countable(const FieldCtx& f) {
  if (f.size() > kMaxCountField)
    throw DomainError("field of size > " + std::to_string(kMaxCountField) + " is too large for brute counting");
}

}  // namespace detail

// Hard floor: any count outside the Hasse–Weil interval is a bug.
inline Verdict hasse_weil_verdict(std::uint64_t q, std::uint64_t root_q, int genus, std::uint64_t n) {
  const std::int64_t dev = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(q + 1);
  const std::int64_t bound = 2 * genus * static_cast<std::int64_t>(root_q);
  detail::ensure(dev <= bound && dev >= -bound, "Hasse–Weil bound violated: N = " + std::to_string(n) +
                                                     ", q = " + std::to_string(q) + ", g = " + std::to_string(genus));
  if (dev == bound) return Verdict::Maximal;
  if (dev == -bound) return Verdict::Minimal;
  return Verdict::Neither;
}

// Quadratic character of F_q from a table of squares.
class QuadraticCharacter {
 public:
  explicit QuadraticCharacter(const FieldCtx& f) : f_(&f), square_(static_cast<std::size_t>(f.size()), 0) {
    detail::check_countable(f);
    for (u128 i = 0; i < f.size(); ++i) {
      const FieldElem x = f.element_at(i);
      square_[static_cast<std::size_t>(f.index_of(x.square()))] = 1;
    }
  }
  int operator()(const FieldElem& x) const {
    if (x.is_zero()) return 0;
    return square_[static_cast<std::size_t>(f_->index_of(x))] ? 1 : -1;
  }
  const FieldCtx& field() const { return *f_; }

 private:
  const FieldCtx* f_;
  std::vector<std::uint8_t> square_;
};

namespace detail {

inline std::uint64_t affine_count(const Poly& f, const FieldElem& eps, const QuadraticCharacter& chi) {
  const FieldCtx& k = chi.field();
  std::int64_t n = 0;
  for (u128 i = 0; i < k.size(); ++i) n += 1 + chi(eps * f.eval(k.element_at(i)));
  return static_cast<std::uint64_t>(n);
}

}  // namespace detail

// Counts ε y^2 = f(x) over `ctx`; f may have coefficients in a subfield.
inline CountResult count_hyperelliptic(const Poly& f_, const FieldElem& eps_, const FieldCtx& ctx) {
  detail::check_countable(ctx);
  const Poly f = f_.embedded(ctx);
  const FieldElem eps = embed(eps_, ctx);
  if (eps.is_zero()) throw DomainError("twist parameter must be nonzero");
  if (f.degree() < 5 || f.degree() % 2 != 0) throw DomainError("expected an even-degree model of genus >= 2");
  if (!f.is_squarefree()) throw DomainError("model is not squarefree");
  const int genus = (f.degree() - 2) / 2;
  const QuadraticCharacter chi(ctx);
  std::uint64_t n = detail::affine_count(f, eps, chi);
  if (chi(eps * f.leading()) == 1) n += 2;
  const auto q = static_cast<std::uint64_t>(ctx.size());
  return {q, genus, n, hasse_weil_verdict(q, detail::sqrt_q(ctx), genus, n)};
}

// Genus-1 model v^2 = g(u) with deg g in {3, 4}.
inline CountResult count_elliptic_quartic(const Poly& g_, const FieldCtx& ctx) {
  detail::check_countable(ctx);
  const Poly g = g_.embedded(ctx);
  if (g.degree() != 3 && g.degree() != 4) throw DomainError("expected a cubic or quartic");
  if (!g.is_squarefree()) throw DomainError("model is not squarefree");
  const QuadraticCharacter chi(ctx);
  std::uint64_t n = detail::affine_count(g, ctx.one(), chi);
  if (g.degree() == 3) n += 1;
  else if (chi(g.leading()) == 1) n += 2;
  const auto q = static_cast<std::uint64_t>(ctx.size());
  return {q, 1, n, hasse_weil_verdict(q, detail::sqrt_q(ctx), 1, n)};
}

// y^2 = x(x-1)(x-λ).
inline CountResult count_legendre(const FieldElem& lambda, const FieldCtx& ctx) {
  const FieldElem l = embed(lambda, ctx);
  const Poly cubic = Poly(ctx, {ctx.zero(), ctx.one()}) * Poly(ctx, {-ctx.one(), ctx.one()}) *
                     Poly(ctx, {-l, ctx.one()});
  return count_elliptic_quartic(cubic, ctx);
}

inline Verdict predicted_verdict(std::uint32_t p) { return p % 4 == 3 ? Verdict::Maximal : Verdict::Minimal; }

struct TheoremReport {
  bool applicable = false;
  bool ab_in_fp2 = false;
  CountResult count;
  Verdict predicted = Verdict::Neither;
  bool agrees = false;
  std::string note;
};

// For a nonsingular superspecial standard form: a, b lie in F_{p^2} and the
// curve is maximal over F_{p^2} when p = 3 mod 4, minimal when p = 1 mod 4.
inline TheoremReport verify_theorem_1_1(const CurveAB& c) {
  if (!c.nonsingular()) throw DomainError("singular standard form");
  TheoremReport rep;
  if (!is_superspecial(c.a, c.b)) {
    rep.note = "theorem not applicable: curve is not superspecial";
    return rep;
  }
  rep.applicable = true;
  const FieldCtx& fp2 = make_ctx(c.p(), 2);
  const bool down = c.field().degree() >= 2;
  auto a = down ? restrict_to(c.a, fp2) : std::optional<FieldElem>(embed(c.a, fp2));
  auto b = down ? restrict_to(c.b, fp2) : std::optional<FieldElem>(embed(c.b, fp2));
  rep.ab_in_fp2 = a.has_value() && b.has_value();
  detail::ensure(rep.ab_in_fp2, "superspecial standard form with a, b outside F_{p^2}");
  rep.count = count_hyperelliptic(standard_octic(*a, *b), fp2.one(), fp2);
  rep.predicted = predicted_verdict(c.p());
  rep.agrees = rep.count.verdict == rep.predicted;
  return rep;
}

struct TwistSpec {
  FieldElem eps;
  int e = 1;
};

struct TwistReport {
  CountResult count;
  bool eps_square = false;
  Verdict predicted = Verdict::Neither;
  bool agrees = false;
};

// Predicted verdict of ε y^2 = f over F_{p^{2e}} for superspecial f.
inline Verdict predicted_twist_verdict(std::uint32_t p, int e, bool eps_square) {
  bool maximal;
  if (e % 2 == 1) maximal = (p % 4 == 3) == eps_square;
  else maximal = !eps_square;
  return maximal ? Verdict::Maximal : Verdict::Minimal;
}

inline TwistReport twist_verdict(const CurveAB& c, const TwistSpec& t) {
  if (t.e != 1 && t.e != 2 && t.e != 4) throw DomainError("twist degree e must be 1, 2 or 4 (tower F_{p^2e})");
  if (detail::ipow(c.p(), 2 * t.e) > kMaxCountField) throw DomainError("field too large for brute counting");
  if (!c.nonsingular()) throw DomainError("singular standard form");
  if (!is_superspecial(c.a, c.b)) throw DomainError("twist analysis needs a superspecial curve");
  const FieldCtx& ctx = make_ctx(c.p(), 2 * t.e);
  if (t.eps.degree() > ctx.degree()) throw DomainError("ε must lie in F_{p^2e}");
  const FieldElem eps = embed(t.eps, ctx);
  if (eps.is_zero()) throw DomainError("ε must be nonzero");
  if (c.field().degree() > ctx.degree()) throw DomainError("a, b must lie in F_{p^2e}");
  TwistReport rep;
  rep.count = count_hyperelliptic(c.octic(), eps, ctx);
  rep.eps_square = is_square(eps);
  rep.predicted = predicted_twist_verdict(c.p(), t.e, rep.eps_square);
  rep.agrees = rep.count.verdict == rep.predicted;
  return rep;
}

}  // namespace howe
