#pragma once

// Exact arithmetic in the tower F_p ⊂ F_{p^2} ⊂ F_{p^4} ⊂ F_{p^8}.
//
// Every field is a quotient F_p[t]/(m(t)) with its own monic modulus m of
// degree k; the inclusion of the degree-k/2 field is an explicit embedding
// that sends the smaller generator to a root of the smaller modulus. Contexts
// are built once per (p, k), never mutated, and live for the whole program,
// so elements carry a plain pointer to theirs.
//
// Moduli are chosen deterministically:
//   k = 1   t            (the prime field; its generator reduces to 0)
//   k = 2   t^2 - r      r the least quadratic non-residue mod p
//   k = 4,8 the first irreducible t^k + c_{k-1} t^{k-1} + ... + c_0 when the
//           tails (c_0, ..., c_{k-1}) are scanned in increasing order of
//           c_0 + c_1 p + ... + c_{k-1} p^{k-1}
//
// The canonical element order is the same index order: compare coefficients
// from the top degree down. Square roots and embeddings pick the smaller
// candidate in that order.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "howe/errors.hpp"

namespace howe {

__extension__ typedef unsigned __int128 u128;

inline constexpr int kMaxDegree = 8;
inline constexpr std::uint32_t kMaxPrime = 1u << 20;

class FieldCtx;

class FieldElem {
 public:
  FieldElem() = default;

  const FieldCtx& ctx() const;
  const FieldCtx* ctx_ptr() const { return ctx_; }
  int degree() const;
  std::uint32_t coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::span<const std::uint32_t> coeffs() const;

  bool is_zero() const;
  bool is_one() const;
  bool in_prime_field() const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }

  // Multiplication by a prime-field residue.
  FieldElem scaled(std::uint64_t s) const;
  FieldElem square() const { return *this * *this; }
  FieldElem pow(u128 e) const;
  FieldElem inv() const;

  std::string str() const;

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.ctx_ == b.ctx_ && a.c_ == b.c_;
  }
  friend bool operator<(const FieldElem& a, const FieldElem& b);

 private:
  friend class FieldCtx;
  const FieldCtx* ctx_ = nullptr;
  std::array<std::uint32_t, kMaxDegree> c_{};
};

class FieldCtx {
 public:
  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  std::uint32_t p() const { return p_; }
  int degree() const { return k_; }
  u128 size() const { return q_; }
  // Monic modulus, little-endian, k + 1 entries.
  std::span<const std::uint32_t> modulus() const { return modulus_; }
  const FieldCtx* base() const { return base_; }
  // Image of the base field's generator; a root of the base modulus.
  const FieldElem& base_generator_image() const { return base_gen_; }
  const FieldElem& non_residue() const { return non_residue_; }

  FieldElem zero() const { return make({}); }
  FieldElem one() const { return from_int(1); }
  FieldElem gen() const;
  FieldElem from_int(std::int64_t v) const;
  FieldElem from_coeffs(std::span<const std::int64_t> cs) const;
  FieldElem element_at(u128 index) const;
  u128 index_of(const FieldElem& x) const;

  FieldElem frobenius(const FieldElem& x) const;
  FieldElem embed_from_base(const FieldElem& x) const;

  std::uint32_t inv_mod_p(std::uint32_t a) const;
  std::uint32_t mod_p(std::int64_t v) const {
    const auto m = static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(((v % m) + m) % m);
  }

 private:
  friend class FieldElem;
  friend const FieldCtx& make_ctx(std::uint32_t p, int k);

  FieldCtx(std::uint32_t p, int k, const FieldCtx* base);
  void build_derived();

  FieldElem make(std::span<const std::uint32_t> cs) const;
  void check(const FieldElem& x) const;
  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem inverse(const FieldElem& a) const;

  std::uint32_t p_;
  int k_;
  u128 q_;
  const FieldCtx* base_;
  std::vector<std::uint32_t> modulus_;
  std::array<std::uint64_t, kMaxDegree> reduce_{};  // t^k = sum reduce_[j] t^j
  std::uint64_t sq_class_ = 0;                      // k = 2: t^2 = sq_class_
  FieldElem base_gen_;
  std::vector<FieldElem> base_powers_;  // powers of base_gen_
  std::vector<FieldElem> frob_;         // (t^i)^p
  FieldElem non_residue_;
};

const FieldCtx& make_ctx(std::uint32_t p, int k);

// ---------------------------------------------------------------------------
// Prime-field helpers

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

inline std::uint32_t least_non_residue(std::uint32_t p) {
  for (std::uint32_t r = 2; r < p; ++r)
    if (powmod(r, (p - 1) / 2, p) == p - 1) return r;
  throw InvariantViolation("no quadratic non-residue mod " + std::to_string(p));
}

inline u128 ipow(std::uint64_t b, int e) {
  u128 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Dense polynomials over F_p, little-endian, used for the modulus search.
using FpPoly = std::vector<std::uint32_t>;

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_mod(FpPoly a, const FpPoly& g, std::uint32_t p) {
  fp_trim(a);
  const std::size_t dg = g.size() - 1;
  const std::uint64_t lead_inv = powmod(g.back(), p - 2, p);
  while (a.size() > dg) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dg;
    for (std::size_t j = 0; j <= dg; ++j)
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + (p - c) * g[j]) % p);
    fp_trim(a);
  }
  return a;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& g, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  FpPoly r(acc.begin(), acc.end());
  return fp_mod(std::move(r), g, p);
}

inline FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& g, std::uint32_t p) {
  FpPoly r{1};
  base = fp_mod(std::move(base), g, p);
  while (e) {
    if (e & 1) r = fp_mulmod(r, base, g, p);
    base = fp_mulmod(base, base, g, p);
    e >>= 1;
  }
  return r;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's test: x^{p^k} = x mod g and gcd(x^{p^d} - x, g) = 1 for proper d | k.
inline bool fp_irreducible(const FpPoly& g, std::uint32_t p) {
  const int k = static_cast<int>(g.size()) - 1;
  if (k <= 1) return k == 1;
  if (g[0] == 0) return false;
  FpPoly frob{0, 1};
  for (int d = 1; d <= k; ++d) {
    frob = fp_powmod(frob, p, g, p);
    FpPoly diff = frob;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    fp_trim(diff);
    if (d == k) return diff.empty();
    if (k % d == 0 && fp_gcd(g, diff, p).size() != 1) return false;
  }
  return false;
}

inline std::vector<std::uint32_t> find_modulus(std::uint32_t p, int k) {
  if (k == 1) return {0, 1};
  if (k == 2) return {p - least_non_residue(p), 0, 1};
  FpPoly g(static_cast<std::size_t>(k) + 1, 0);
  g[static_cast<std::size_t>(k)] = 1;
  const u128 count = ipow(p, k);
  for (u128 idx = 0; idx < count; ++idx) {
    u128 v = idx;
    for (int i = 0; i < k; ++i) {
      g[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (fp_irreducible(g, p)) return g;
  }
  throw InvariantViolation("no irreducible polynomial found");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FieldElem

inline const FieldCtx& FieldElem::ctx() const {
  if (!ctx_) throw DomainError("field element has no context");
  return *ctx_;
}

inline int FieldElem::degree() const { return ctx().degree(); }

inline std::span<const std::uint32_t> FieldElem::coeffs() const {
  return {c_.data(), static_cast<std::size_t>(ctx().degree())};
}

inline bool FieldElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint32_t v) { return v == 0; });
}

inline bool FieldElem::is_one() const {
  return c_[0] == 1 && std::all_of(c_.begin() + 1, c_.end(), [](std::uint32_t v) { return v == 0; });
}

inline bool FieldElem::in_prime_field() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](std::uint32_t v) { return v == 0; });
}

inline FieldElem FieldElem::operator+(const FieldElem& o) const { return ctx().add(*this, o); }
inline FieldElem FieldElem::operator-(const FieldElem& o) const { return ctx().sub(*this, o); }
inline FieldElem FieldElem::operator*(const FieldElem& o) const { return ctx().mul(*this, o); }
inline FieldElem FieldElem::operator/(const FieldElem& o) const { return ctx().mul(*this, ctx().inverse(o)); }
inline FieldElem FieldElem::operator-() const { return ctx().neg(*this); }
inline FieldElem FieldElem::inv() const { return ctx().inverse(*this); }

inline FieldElem FieldElem::scaled(std::uint64_t s) const {
  const FieldCtx& f = ctx();
  FieldElem r = *this;
  s %= f.p();
  for (int i = 0; i < f.degree(); ++i)
    r.c_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(s * c_[static_cast<std::size_t>(i)] % f.p());
  return r;
}

inline FieldElem FieldElem::pow(u128 e) const {
  FieldElem r = ctx().one();
  FieldElem b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

inline std::string FieldElem::str() const {
  const FieldCtx& f = ctx();
  std::string out;
  for (int i = 0; i < f.degree(); ++i) {
    const std::uint32_t c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    out += std::to_string(c);
    if (i == 1) out += "*t";
    if (i > 1) out += "*t^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

inline bool operator<(const FieldElem& a, const FieldElem& b) {
  if (a.ctx_ != b.ctx_) {
    const auto key = [](const FieldElem& x) {
      return x.ctx_ ? std::pair<std::uint32_t, int>{x.ctx_->p(), x.ctx_->degree()} : std::pair<std::uint32_t, int>{0, 0};
    };
    return key(a) < key(b);
  }
  for (int i = kMaxDegree - 1; i >= 0; --i) {
    const auto idx = static_cast<std::size_t>(i);
    if (a.c_[idx] != b.c_[idx]) return a.c_[idx] < b.c_[idx];
  }
  return false;
}

// ---------------------------------------------------------------------------
// FieldCtx arithmetic

inline FieldCtx::FieldCtx(std::uint32_t p, int k, const FieldCtx* base)
    : p_(p), k_(k), q_(detail::ipow(p, k)), base_(base), modulus_(detail::find_modulus(p, k)) {
  for (int j = 0; j < k_; ++j)
    reduce_[static_cast<std::size_t>(j)] = (p_ - modulus_[static_cast<std::size_t>(j)]) % p_;
  if (k_ == 2) sq_class_ = reduce_[0];
}

inline void FieldCtx::check(const FieldElem& x) const {
  if (x.ctx_ != this) throw DomainError("field context mismatch");
}

inline FieldElem FieldCtx::make(std::span<const std::uint32_t> cs) const {
  FieldElem r;
  r.ctx_ = this;
  std::copy_n(cs.begin(), std::min<std::size_t>(cs.size(), static_cast<std::size_t>(k_)), r.c_.begin());
  return r;
}

inline FieldElem FieldCtx::gen() const {
  if (k_ == 1) return zero();
  FieldElem r = zero();
  r.c_[1] = 1;
  return r;
}

inline FieldElem FieldCtx::from_int(std::int64_t v) const {
  FieldElem r = zero();
  r.c_[0] = mod_p(v);
  return r;
}

inline FieldElem FieldCtx::from_coeffs(std::span<const std::int64_t> cs) const {
  if (cs.size() > static_cast<std::size_t>(k_)) throw DomainError("too many coefficients for field degree");
  FieldElem r = zero();
  for (std::size_t i = 0; i < cs.size(); ++i) r.c_[i] = mod_p(cs[i]);
  return r;
}

inline FieldElem FieldCtx::element_at(u128 index) const {
  if (index >= q_) throw DomainError("element index out of range");
  FieldElem r = zero();
  for (int i = 0; i < k_; ++i) {
    r.c_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return r;
}

inline u128 FieldCtx::index_of(const FieldElem& x) const {
  check(x);
  u128 v = 0;
  for (int i = k_ - 1; i >= 0; --i) v = v * p_ + x.c_[static_cast<std::size_t>(i)];
  return v;
}

inline FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  FieldElem r = a;
  for (int i = 0; i < k_; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const std::uint32_t s = a.c_[idx] + b.c_[idx];
    r.c_[idx] = s >= p_ ? s - p_ : s;
  }
  return r;
}

inline FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  FieldElem r = a;
  for (int i = 0; i < k_; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    r.c_[idx] = a.c_[idx] >= b.c_[idx] ? a.c_[idx] - b.c_[idx] : a.c_[idx] + p_ - b.c_[idx];
  }
  return r;
}

inline FieldElem FieldCtx::neg(const FieldElem& a) const {
  check(a);
  FieldElem r = a;
  for (int i = 0; i < k_; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    r.c_[idx] = a.c_[idx] == 0 ? 0 : p_ - a.c_[idx];
  }
  return r;
}

inline FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  FieldElem r;
  r.ctx_ = this;
  const std::uint64_t p = p_;
  if (k_ == 1) {
    r.c_[0] = static_cast<std::uint32_t>(std::uint64_t{a.c_[0]} * b.c_[0] % p);
    return r;
  }
  if (k_ == 2) {
    const std::uint64_t a0 = a.c_[0], a1 = a.c_[1], b0 = b.c_[0], b1 = b.c_[1];
    const std::uint64_t hi = a1 * b1 % p;
    r.c_[0] = static_cast<std::uint32_t>((a0 * b0 + sq_class_ * hi) % p);
    r.c_[1] = static_cast<std::uint32_t>((a0 * b1 + a1 * b0) % p);
    return r;
  }
  const auto k = static_cast<std::size_t>(k_);
  std::array<std::uint64_t, 2 * kMaxDegree - 1> acc{};
  for (std::size_t i = 0; i < k; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) acc[i + j] += std::uint64_t{a.c_[i]} * b.c_[j];
  }
  for (std::size_t d = 2 * k - 2; d >= k; --d) {
    const std::uint64_t c = acc[d] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j < k; ++j) acc[d - k + j] += c * reduce_[j];
  }
  for (std::size_t i = 0; i < k; ++i) r.c_[i] = static_cast<std::uint32_t>(acc[i] % p);
  return r;
}

inline std::uint32_t FieldCtx::inv_mod_p(std::uint32_t a) const {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a % p_;
  if (new_r == 0) throw DomainError("inversion of zero");
  while (new_r != 0) {
    const std::int64_t qt = r / new_r;
    t = std::exchange(new_t, t - qt * new_t);
    r = std::exchange(new_r, r - qt * new_r);
  }
  return mod_p(t);
}

inline FieldElem FieldCtx::inverse(const FieldElem& a) const {
  check(a);
  if (a.is_zero()) throw DomainError("inversion of zero");
  if (k_ == 1) return from_int(inv_mod_p(a.c_[0]));
  if (k_ == 2) {
    const std::uint64_t p = p_, a0 = a.c_[0], a1 = a.c_[1];
    const std::uint64_t norm = (a0 * a0 + (p - sq_class_) * (a1 * a1 % p)) % p;
    const std::uint64_t ni = inv_mod_p(static_cast<std::uint32_t>(norm));
    FieldElem r = zero();
    r.c_[0] = static_cast<std::uint32_t>(a0 * ni % p);
    r.c_[1] = static_cast<std::uint32_t>((p - a1) % p * ni % p);
    return r;
  }
  return a.pow(q_ - 2);
}

inline FieldElem FieldCtx::frobenius(const FieldElem& x) const {
  check(x);
  FieldElem r = zero();
  for (int i = 0; i < k_; ++i) {
    const std::uint32_t c = x.c_[static_cast<std::size_t>(i)];
    if (c != 0) r += frob_[static_cast<std::size_t>(i)].scaled(c);
  }
  return r;
}

inline FieldElem FieldCtx::embed_from_base(const FieldElem& x) const {
  if (x.ctx_ != base_ || base_ == nullptr) throw DomainError("element does not belong to the base field");
  FieldElem r = zero();
  for (int i = 0; i < base_->degree(); ++i) {
    const std::uint32_t c = x.c_[static_cast<std::size_t>(i)];
    if (c != 0) r += base_powers_[static_cast<std::size_t>(i)].scaled(c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Squares and roots

inline bool is_square(const FieldElem& x) {
  if (x.is_zero()) return true;
  const FieldCtx& f = x.ctx();
  const std::uint64_t p = f.p();
  if (f.degree() == 1) return detail::powmod(x.coeff(0), (p - 1) / 2, p) == 1;
  if (f.degree() == 2) {
    // x is a square in F_{p^2} iff its norm is a square in F_p.
    const std::uint64_t a0 = x.coeff(0), a1 = x.coeff(1);
    const std::uint64_t r = (p - f.modulus()[0]) % p;
    const std::uint64_t norm = (a0 * a0 + (p - r) * (a1 * a1 % p)) % p;
    return detail::powmod(norm, (p - 1) / 2, p) == 1;
  }
  return x.pow((f.size() - 1) / 2).is_one();
}

inline bool is_fourth_power(const FieldElem& x) {
  if (x.is_zero()) return true;
  const u128 q = x.ctx().size();
  if ((q - 1) % 4 != 0) throw DomainError("fourth-power test needs 4 | q - 1");
  return x.pow((q - 1) / 4).is_one();
}

// Tonelli–Shanks; returns the smaller of the two roots in canonical order.
inline std::optional<FieldElem> sqrt(const FieldElem& x) {
  const FieldCtx& f = x.ctx();
  if (x.is_zero()) return x;
  if (!is_square(x)) return std::nullopt;
  u128 odd = f.size() - 1;
  int s = 0;
  while ((odd & 1) == 0) {
    odd >>= 1;
    ++s;
  }
  FieldElem c = f.non_residue().pow(odd);
  FieldElem r = x.pow((odd + 1) / 2);
  FieldElem t = x.pow(odd);
  int m = s;
  while (!t.is_one()) {
    int i = 0;
    FieldElem t2 = t;
    while (!t2.is_one()) {
      t2 = t2.square();
      ++i;
    }
    if (i >= m) throw InvariantViolation("Tonelli–Shanks failed to converge");
    FieldElem b = c;
    for (int j = 0; j < m - i - 1; ++j) b = b.square();
    r *= b;
    c = b.square();
    t *= c;
    m = i;
  }
  const FieldElem other = -r;
  return other < r ? other : r;
}

inline FieldElem frobenius(const FieldElem& x) { return x.ctx().frobenius(x); }

// True when x lies in the subfield F_{p^d}.
inline bool in_subfield(const FieldElem& x, int d) {
  FieldElem y = x;
  for (int i = 0; i < d; ++i) y = frobenius(y);
  return y == x;
}

inline FieldElem embed(const FieldElem& x, const FieldCtx& target) {
  const FieldCtx& src = x.ctx();
  if (&src == &target) return x;
  if (src.p() != target.p() || target.degree() % src.degree() != 0 || target.degree() < src.degree())
    throw DomainError("no tower path from F_" + std::to_string(src.p()) + "^" + std::to_string(src.degree()) +
                      " to F_" + std::to_string(target.p()) + "^" + std::to_string(target.degree()));
  if (target.base() == &src) return target.embed_from_base(x);
  return target.embed_from_base(embed(x, *target.base()));
}

// Preimage of x under the embedding sub -> x.ctx(), if x lies in that subfield.
// Solves the F_p-linear system sum_i y_i embed(t^i) = x.
inline std::optional<FieldElem> restrict_to(const FieldElem& x, const FieldCtx& sub) {
  const FieldCtx& src = x.ctx();
  if (&src == &sub) return x;
  if (sub.p() != src.p() || src.degree() % sub.degree() != 0) throw DomainError("not a subfield");
  const std::uint32_t p = src.p();
  const int rows = src.degree(), cols = sub.degree();
  std::vector<std::vector<std::uint64_t>> a(static_cast<std::size_t>(rows),
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(cols) + 1, 0));
  for (int j = 0; j < cols; ++j) {
    std::vector<std::int64_t> unit(static_cast<std::size_t>(j) + 1, 0);
    unit[static_cast<std::size_t>(j)] = 1;
    const FieldElem img = embed(sub.from_coeffs(unit), src);
    for (int i = 0; i < rows; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = img.coeff(i);
  }
  for (int i = 0; i < rows; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)] = x.coeff(i);
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) piv = i;
    if (piv < 0) continue;
    std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(r)]);
    auto& row = a[static_cast<std::size_t>(r)];
    const std::uint64_t inv = src.inv_mod_p(static_cast<std::uint32_t>(row[static_cast<std::size_t>(c)]));
    for (auto& v : row) v = v * inv % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      auto& other = a[static_cast<std::size_t>(i)];
      const std::uint64_t f = other[static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (std::size_t j = 0; j < other.size(); ++j) other[j] = (other[j] + (p - f) * row[j]) % p;
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)] != 0) return std::nullopt;
  std::vector<std::int64_t> y(static_cast<std::size_t>(cols), 0);
  for (int i = 0; i < r; ++i)
    y[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] =
        static_cast<std::int64_t>(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)]);
  return sub.from_coeffs(y);
}

// x expressed in the smallest tower field that contains it.
inline FieldElem descend(const FieldElem& x) {
  const FieldCtx* f = &x.ctx();
  FieldElem cur = x;
  while (f->base() != nullptr) {
    auto down = restrict_to(cur, *f->base());
    if (!down) break;
    cur = *down;
    f = f->base();
  }
  return cur;
}

// Brings two elements of the same tower into the larger of their two fields.
inline std::pair<FieldElem, FieldElem> common_field(const FieldElem& a, const FieldElem& b) {
  if (a.degree() >= b.degree()) return {a, embed(b, a.ctx())};
  return {embed(a, b.ctx()), b};
}

// The next field up the tower.
inline const FieldCtx& next_level(const FieldCtx& f) {
  if (f.degree() >= kMaxDegree) throw DomainError("no tower level above degree 8");
  return make_ctx(f.p(), f.degree() * 2);
}

// Square root, moving one tower level up when x is a non-square.
inline FieldElem sqrt_lifting(const FieldElem& x) {
  if (auto r = sqrt(x)) return *r;
  auto r = sqrt(embed(x, next_level(x.ctx())));
  if (!r) throw InvariantViolation("square root missing after lifting");
  return *r;
}

// Parses "c0+c1*t+c2*t^2+..."; integers may be negative and are reduced mod p.
inline FieldElem parse_elem(const FieldCtx& f, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  if (s.empty()) throw DomainError("empty field element");
  FieldElem acc = f.zero();
  std::size_t pos = 0;
  const auto fail = [&]() { throw DomainError("malformed field element: '" + std::string(text) + "'"); };
  const auto read_int = [&](std::int64_t& out) {
    const std::size_t start = pos;
    out = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      out = out * 10 + (s[pos] - '0');
      if (out > (std::int64_t{1} << 50)) fail();
      ++pos;
    }
    return pos > start;
  };
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail();
    }
    first = false;
    std::int64_t coeff = 0;
    const bool has_coeff = read_int(coeff);
    if (!has_coeff) coeff = 1;
    int power = 0;
    if (pos < s.size() && s[pos] == '*') {
      if (!has_coeff) fail();
      ++pos;
      if (pos >= s.size() || s[pos] != 't') fail();
    }
    if (pos < s.size() && s[pos] == 't') {
      ++pos;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::int64_t e = 0;
        if (!read_int(e)) fail();
        power = static_cast<int>(e);
      }
    } else if (!has_coeff) {
      fail();
    }
    if (power >= f.degree() && !(f.degree() == 1 && power == 0)) fail();
    FieldElem term = f.zero();
    if (power == 0) {
      term = f.from_int(sign * coeff);
    } else {
      std::vector<std::int64_t> cs(static_cast<std::size_t>(power) + 1, 0);
      cs[static_cast<std::size_t>(power)] = sign * coeff;
      term = f.from_coeffs(cs);
    }
    acc += term;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Polynomial helpers over a context, used to locate the base generator.

namespace detail {

using ElemPoly = std::vector<FieldElem>;

inline void trim(ElemPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline ElemPoly poly_mod(ElemPoly a, const ElemPoly& g) {
  trim(a);
  const std::size_t dg = g.size() - 1;
  const FieldElem lead_inv = g.back().inv();
  while (a.size() > dg) {
    const FieldElem c = a.back() * lead_inv;
    const std::size_t shift = a.size() - 1 - dg;
    for (std::size_t j = 0; j <= dg; ++j) a[shift + j] -= c * g[j];
    trim(a);
  }
  return a;
}

inline ElemPoly poly_mul(const ElemPoly& a, const ElemPoly& b, const FieldCtx& f) {
  if (a.empty() || b.empty()) return {};
  ElemPoly r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline ElemPoly poly_divexact(ElemPoly a, const ElemPoly& g, const FieldCtx& f) {
  trim(a);
  const std::size_t dg = g.size() - 1;
  ElemPoly quot(a.size() >= g.size() ? a.size() - dg : 0, f.zero());
  const FieldElem lead_inv = g.back().inv();
  while (a.size() > dg) {
    const FieldElem c = a.back() * lead_inv;
    const std::size_t shift = a.size() - 1 - dg;
    quot[shift] = c;
    for (std::size_t j = 0; j <= dg; ++j) a[shift + j] -= c * g[j];
    trim(a);
  }
  return quot;
}

inline ElemPoly poly_gcd(ElemPoly a, ElemPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ElemPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const FieldElem li = a.back().inv();
    for (auto& c : a) c *= li;
  }
  return a;
}

inline ElemPoly poly_powmod(ElemPoly base, u128 e, const ElemPoly& g, const FieldCtx& f) {
  ElemPoly r{f.one()};
  base = poly_mod(std::move(base), g);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, base, f), g);
    e >>= 1;
    if (e) base = poly_mod(poly_mul(base, base, f), g);
  }
  return r;
}

// Roots of a squarefree polynomial that splits completely over f
// (Cantor–Zassenhaus with shifts x + d taken in index order).
inline void split_roots(const ElemPoly& g, const FieldCtx& f, std::vector<FieldElem>& out) {
  const std::size_t deg = g.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    out.push_back(-(g[0] / g[1]));
    return;
  }
  const u128 half = (f.size() - 1) / 2;
  for (u128 d = 0; d < f.size(); ++d) {
    ElemPoly shifted{f.element_at(d), f.one()};
    ElemPoly h = poly_powmod(shifted, half, g, f);
    if (h.empty()) h.push_back(f.zero());
    h[0] -= f.one();
    ElemPoly c = poly_gcd(g, h);
    if (c.size() > 1 && c.size() < g.size()) {
      split_roots(c, f, out);
      split_roots(poly_divexact(g, c, f), f, out);
      return;
    }
  }
  throw InvariantViolation("polynomial does not split over the field");
}

}  // namespace detail

inline void FieldCtx::build_derived() {
  const FieldElem t = gen();
  const FieldElem tp = t.pow(p_);
  frob_.clear();
  FieldElem acc = one();
  for (int i = 0; i < k_; ++i) {
    frob_.push_back(acc);
    acc *= tp;
  }
  for (u128 idx = 1; idx < q_; ++idx) {
    const FieldElem cand = element_at(idx);
    if (!is_square(cand)) {
      non_residue_ = cand;
      break;
    }
  }
  if (base_ == nullptr) {
    base_gen_ = zero();
    base_powers_ = {one()};
    return;
  }
  detail::ElemPoly g;
  for (std::uint32_t c : base_->modulus()) g.push_back(from_int(c));
  std::vector<FieldElem> roots;
  detail::split_roots(g, *this, roots);
  const FieldElem theta = *std::min_element(roots.begin(), roots.end());
  base_gen_ = theta;
  base_powers_.clear();
  FieldElem pw = one();
  for (int i = 0; i < base_->degree(); ++i) {
    base_powers_.push_back(pw);
    pw *= theta;
  }
}

inline const FieldCtx& make_ctx(std::uint32_t p, int k) {
  if (p < 3 || p % 2 == 0) throw DomainError("p must be an odd prime, got " + std::to_string(p));
  if (p >= kMaxPrime) throw DomainError("p too large (limit " + std::to_string(kMaxPrime) + ")");
  if (!detail::is_prime(p)) throw DomainError("p is not prime: " + std::to_string(p));
  if (k != 1 && k != 2 && k != 4 && k != 8) throw DomainError("unsupported extension degree " + std::to_string(k));
  if (k == 8 && p >= (1u << 15)) throw DomainError("F_{p^8} needs p < 32768");
  const FieldCtx* base = k > 1 ? &make_ctx(p, k / 2) : nullptr;

  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, std::unique_ptr<FieldCtx>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[{p, k}];
  if (!slot) {
    std::unique_ptr<FieldCtx> ctx(new FieldCtx(p, k, base));
    ctx->build_derived();
    slot = std::move(ctx);
  }
  return *slot;
}

}  // namespace howe
