#pragma once

// Supersingularity and superspeciality tests.
//
//   H_p(t) = sum_{i=0}^{m} binom(m, i)^2 t^i,  m = (p-1)/2
//
// y^2 = x(x-1)(x-λ) is supersingular iff H_p(λ) = 0. For a genus-g model
// y^2 = f(x) the Cartier–Manin matrix has entries coeff_{ip-j}(f^m); the
// curve is superspecial iff the matrix is zero. For genus 1 this is the single
// coefficient of x^{p-1}.

#include <array>
#include <cstdint>
#include <vector>

#include "howe/errors.hpp"
#include "howe/field_tower.hpp"
#include "howe/poly.hpp"

namespace howe {

struct HassePoly {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> coeffs;  // (p-1)/2 + 1 entries

  FieldElem eval(const FieldElem& t) const {
    if (t.ctx().p() != p) throw DomainError("H_p evaluated in the wrong characteristic");
    FieldElem acc = t.ctx().zero();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + t.ctx().from_int(*it);
    return acc;
  }
};

inline HassePoly hasse_poly(std::uint32_t p) {
  make_ctx(p, 1);  // validates p
  const std::uint64_t m = (p - 1) / 2;
  HassePoly h{p, {}};
  std::uint64_t binom = 1;
  for (std::uint64_t i = 0; i <= m; ++i) {
    h.coeffs.push_back(static_cast<std::uint32_t>(binom * binom % p));
    binom = binom * ((m - i) % p) % p * detail::powmod(i + 1, p - 2, p) % p;
  }
  return h;
}

inline bool is_supersingular_legendre(const FieldElem& lambda) {
  if (lambda.is_zero() || lambda.is_one()) throw DomainError("Legendre parameter must not be 0 or 1");
  return hasse_poly(lambda.ctx().p()).eval(lambda).is_zero();
}

// All roots of H_p in F_{p^2}, in canonical order. Every supersingular λ is a
// fourth power in F_{p^2}^×; a root that is not would be a bug.
inline std::vector<FieldElem> supersingular_lambdas(std::uint32_t p) {
  const FieldCtx& f = make_ctx(p, 2);
  const HassePoly h = hasse_poly(p);
  std::vector<FieldElem> roots;
  for (u128 i = 2; i < f.size(); ++i) {
    const FieldElem x = f.element_at(i);
    if (h.eval(x).is_zero()) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  for (const auto& r : roots)
    detail::ensure(is_fourth_power(r), "supersingular λ = " + r.str() + " is not a fourth power");
  return roots;
}

// Coefficient of u^{p-1} in g^{(p-1)/2} for a squarefree quartic g.
inline FieldElem hasse_invariant_quartic(const Poly& g) {
  if (g.degree() != 4) throw DomainError("expected a degree-4 polynomial");
  if (!g.is_squarefree()) throw DomainError("quartic has a repeated root");
  const std::uint32_t p = g.ctx().p();
  return g.pow_truncated((p - 1) / 2, p - 1)[p - 1];
}

struct HasseWittMatrix {
  std::array<std::array<FieldElem, 3>, 3> entries;
  Poly source;

  bool is_zero() const {
    for (const auto& row : entries)
      for (const auto& e : row)
        if (!e.is_zero()) return false;
    return true;
  }
  friend bool operator==(const HasseWittMatrix& a, const HasseWittMatrix& b) { return a.entries == b.entries; }
};

// Cartier–Manin matrix of y^2 = f(x), deg f = 8: entry (i, j) is the
// coefficient of x^{ip-j} in f^{(p-1)/2}, i, j in 1..3.
inline HasseWittMatrix hasse_witt(const Poly& f) {
  if (f.degree() != 8) throw DomainError("expected a degree-8 polynomial");
  if (!f.is_squarefree()) throw DomainError("octic has a repeated root");
  const std::uint32_t p = f.ctx().p();
  const Poly power = f.pow_truncated((p - 1) / 2, 3 * std::size_t{p} - 1);
  HasseWittMatrix hw{{}, f};
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j) hw.entries[i - 1][j - 1] = power[i * p - j];
  return hw;
}

// The standard-form octic (x^4 - a x^2 + 1)(x^4 - b x^2 + 1)
//   = x^8 + M x^6 + N x^4 + M x^2 + 1,  M = -(a+b), N = ab + 2.
inline Poly standard_octic(const FieldElem& a, const FieldElem& b) {
  const FieldCtx& f = a.ctx();
  const FieldElem m = -(a + b);
  const FieldElem n = a * b + f.from_int(2);
  const FieldElem z = f.zero(), o = f.one();
  return Poly(f, {o, z, m, z, n, z, m, z, o});
}

inline bool standard_nonsingular(const FieldElem& a, const FieldElem& b) {
  const FieldElem two = a.ctx().from_int(2);
  return !(a == two || a == -two || b == two || b == -two || a == b);
}

// Cartier–Manin matrix of the standard form without expanding f^m.
//
// f(x) = F(x^2) with F(z) = z^4 + M z^3 + N z^2 + M z + 1, so f^m = H(x^2)
// with H = F^m palindromic of degree 4m. The odd-exponent entries vanish and
// the rest are H_{m-1}, H_m, H_{2m}, H_{3m} = H_m, H_{3m+1} = H_{m-1}. Those
// coefficients have index < p, so H follows from F H' = m F' H:
//   n H_n = sum_{i=1}^{4} (i(m+1) - n) F_i H_{n-i}.
inline HasseWittMatrix standard_hasse_witt(const FieldElem& a, const FieldElem& b) {
  if (!standard_nonsingular(a, b)) throw DomainError("singular standard form: a, b = ±2 or a = b");
  const FieldCtx& f = a.ctx();
  const std::uint32_t p = f.p();
  const std::uint64_t m = (p - 1) / 2;
  const FieldElem big_m = -(a + b);
  const std::array<FieldElem, 5> coef{f.one(), big_m, a * b + f.from_int(2), big_m, f.one()};
  std::vector<FieldElem> h(2 * m + 1, f.zero());
  h[0] = f.one();
  for (std::uint64_t n = 1; n <= 2 * m; ++n) {
    FieldElem acc = f.zero();
    for (std::uint64_t i = 1; i <= 4 && i <= n; ++i) {
      const std::int64_t w = static_cast<std::int64_t>(i * (m + 1)) - static_cast<std::int64_t>(n);
      acc += (coef[i] * h[n - i]).scaled(f.mod_p(w));
    }
    h[n] = acc.scaled(f.inv_mod_p(static_cast<std::uint32_t>(n)));
  }
  HasseWittMatrix hw{{}, standard_octic(a, b)};
  for (auto& row : hw.entries) row.fill(f.zero());
  hw.entries[0][0] = h[m];      // x^{p-1}
  hw.entries[0][2] = h[m - 1];  // x^{p-3}
  hw.entries[1][1] = h[2 * m];  // x^{2p-2}
  hw.entries[2][0] = h[m - 1];  // x^{3p-1}
  hw.entries[2][2] = h[m];      // x^{3p-3}
  return hw;
}

inline bool is_superspecial(const FieldElem& a, const FieldElem& b) {
  const auto [x, y] = common_field(a, b);
  return standard_hasse_witt(x, y).is_zero();
}

}  // namespace howe
