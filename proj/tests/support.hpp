#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "howe/field_tower.hpp"
#include "howe/poly.hpp"

namespace howe::testing {

inline FieldElem random_elem(const FieldCtx& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, static_cast<std::uint64_t>(f.size() - 1));
  return f.element_at(d(rng));
}

inline FieldElem random_nonzero(const FieldCtx& f, std::mt19937_64& rng) {
  FieldElem x = random_elem(f, rng);
  while (x.is_zero()) x = random_elem(f, rng);
  return x;
}

inline std::vector<FieldElem> all_elements(const FieldCtx& f) {
  std::vector<FieldElem> out;
  for (u128 i = 0; i < f.size(); ++i) out.push_back(f.element_at(i));
  return out;
}

// Points on ε y^2 = f(x) by enumerating every (x, y) pair, plus the points at
// infinity of the smooth even-degree model, found by solving ε y^2 = lc(f).
inline std::uint64_t naive_count(const Poly& f, const FieldElem& eps) {
  const FieldCtx& k = f.ctx();
  const auto elems = all_elements(k);
  std::uint64_t n = 0;
  for (const auto& x : elems) {
    const FieldElem v = f.eval(x);
    for (const auto& y : elems)
      if (eps * y.square() == v) ++n;
  }
  if (f.degree() % 2 == 1) return n + 1;
  for (const auto& y : elems)
    if (eps * y.square() == f.leading()) ++n;
  return n;
}

}  // namespace howe::testing
