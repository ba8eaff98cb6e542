#pragma once

// Dense univariate polynomials over one tower field. Coefficients are stored
// little-endian and trailing zeros are always trimmed, so the zero polynomial
// has no coefficients and degree() == -1.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "howe/field_tower.hpp"

namespace howe {

class Poly {
 public:
  explicit Poly(const FieldCtx& f) : ctx_(&f) {}
  Poly(const FieldCtx& f, std::vector<FieldElem> coeffs) : ctx_(&f), c_(std::move(coeffs)) {
    for (const auto& c : c_)
      if (c.ctx_ptr() != ctx_) throw DomainError("polynomial coefficient from a different field");
    trim();
  }
  static Poly from_ints(const FieldCtx& f, std::initializer_list<std::int64_t> cs) {
    std::vector<FieldElem> v;
    for (auto c : cs) v.push_back(f.from_int(c));
    return Poly(f, std::move(v));
  }
  static Poly monomial(const FieldElem& c, std::size_t n) {
    std::vector<FieldElem> v(n + 1, c.ctx().zero());
    v[n] = c;
    return Poly(c.ctx(), std::move(v));
  }

  const FieldCtx& ctx() const { return *ctx_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElem>& coeffs() const { return c_; }
  FieldElem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : ctx_->zero(); }
  FieldElem leading() const { return c_.empty() ? ctx_->zero() : c_.back(); }

  FieldElem eval(const FieldElem& x) const {
    FieldElem acc = ctx_->zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly operator+(const Poly& o) const {
    same_field(o);
    std::vector<FieldElem> r(std::max(c_.size(), o.c_.size()), ctx_->zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
    return Poly(*ctx_, std::move(r));
  }
  Poly operator-(const Poly& o) const {
    same_field(o);
    std::vector<FieldElem> r(std::max(c_.size(), o.c_.size()), ctx_->zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] - o[i];
    return Poly(*ctx_, std::move(r));
  }
  Poly operator*(const Poly& o) const { return mul_truncated(o, static_cast<std::size_t>(-1)); }
  Poly operator*(const FieldElem& s) const {
    std::vector<FieldElem> r = c_;
    for (auto& c : r) c *= s;
    return Poly(*ctx_, std::move(r));
  }

  // Product with every coefficient of degree > max_degree dropped.
  Poly mul_truncated(const Poly& o, std::size_t max_degree) const {
    same_field(o);
    if (is_zero() || o.is_zero()) return Poly(*ctx_);
    const std::size_t full = c_.size() + o.c_.size() - 1;
    const std::size_t n = max_degree < full ? max_degree + 1 : full;
    std::vector<FieldElem> r(n, ctx_->zero());
    for (std::size_t i = 0; i < c_.size() && i < n; ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size() && i + j < n; ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return Poly(*ctx_, std::move(r));
  }

  // Binary powering; coefficients above max_degree are never formed.
  Poly pow_truncated(std::uint64_t e, std::size_t max_degree) const {
    Poly result = Poly(*ctx_, {ctx_->one()});
    Poly base = *this;
    while (e) {
      if (e & 1) result = result.mul_truncated(base, max_degree);
      e >>= 1;
      if (e) base = base.mul_truncated(base, max_degree);
    }
    return result;
  }
  Poly pow(std::uint64_t e) const { return pow_truncated(e, static_cast<std::size_t>(-1)); }

  Poly derivative() const {
    std::vector<FieldElem> r;
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i].scaled(i));
    return Poly(*ctx_, std::move(r));
  }

  // Euclidean division: *this = q * d + r.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    same_field(d);
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<FieldElem> rem = c_;
    std::vector<FieldElem> quot(c_.size() >= d.c_.size() ? c_.size() - d.c_.size() + 1 : 0, ctx_->zero());
    const FieldElem li = d.leading().inv();
    const std::size_t dd = d.c_.size() - 1;
    for (std::size_t i = rem.size(); i-- > dd;) {
      if (rem[i].is_zero()) continue;
      const FieldElem c = rem[i] * li;
      quot[i - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= c * d.c_[j];
    }
    rem.resize(std::min(rem.size(), dd));
    return {Poly(*ctx_, std::move(quot)), Poly(*ctx_, std::move(rem))};
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * leading().inv();
  }

  friend Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  bool is_squarefree() const { return !is_zero() && gcd(*this, derivative()).degree() == 0; }

  Poly embedded(const FieldCtx& target) const {
    std::vector<FieldElem> r;
    for (const auto& c : c_) r.push_back(embed(c, target));
    return Poly(target, std::move(r));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.ctx_ == b.ctx_ && a.c_ == b.c_; }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[i].str() + ")";
      if (i > 0) out += "*x^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  void same_field(const Poly& o) const {
    if (o.ctx_ != ctx_) throw DomainError("polynomials over different fields");
  }

  const FieldCtx* ctx_;
  std::vector<FieldElem> c_;
};

}  // namespace howe
