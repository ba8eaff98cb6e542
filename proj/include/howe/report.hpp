#pragma once

// JSON, CSV and markdown renderings of library results. Every JSON report
// names the field it was computed in (p, k and modulus coefficients) so that
// element strings can be read back unambiguously.

#include <sstream>
#include <string>
#include <vector>

#include "howe/classify.hpp"
#include "howe/enumerate.hpp"
#include "howe/field_tower.hpp"
#include "howe/howe_curve.hpp"
#include "howe/point_count.hpp"
#include "howe/standard_form.hpp"
#include "howe/supersingular.hpp"
#include "json.hpp"

namespace howe {

using Json = nlohmann::ordered_json;

inline Json field_json(const FieldCtx& f) {
  Json m = Json::array();
  for (auto c : f.modulus()) m.push_back(c);
  return {{"p", f.p()}, {"k", f.degree()}, {"modulus", m}};
}

inline Json count_json(const CountResult& c) {
  return {{"q", c.q}, {"genus", c.genus}, {"N", c.n}, {"verdict", to_string(c.verdict)}};
}

inline Json hasse_witt_json(const HasseWittMatrix& hw) {
  Json rows = Json::array();
  for (const auto& row : hw.entries) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(e.str());
    rows.push_back(r);
  }
  return rows;
}

inline Json check_json(const CurveAB& c) {
  Json out;
  out["field"] = field_json(c.field());
  out["a"] = c.a.str();
  out["b"] = c.b.str();
  out["nonsingular"] = c.nonsingular();
  if (!c.nonsingular()) return out;
  const HasseWittMatrix hw = standard_hasse_witt(c.a, c.b);
  out["superspecial"] = hw.is_zero();
  out["hasse_witt"] = hasse_witt_json(hw);
  const SqrtChoices ch = sqrt_choices(c);
  const LegendreTriple t = legendre_triple(ch);
  out["legendre_triple"] = {{"field", field_json(t.lambda1.ctx())},
                            {"lambda1", t.lambda1.str()},
                            {"lambda2", t.lambda2.str()},
                            {"lambda3", t.lambda3.str()},
                            {"sqrt_lambda1", t.sqrt_lambda1.str()},
                            {"sqrt_lambda2", t.sqrt_lambda2.str()}};
  const FieldCtx& fp2 = make_ctx(c.p(), 2);
  const CurveAB in_fp2(embed(c.a, fp2), embed(c.b, fp2));
  const CountResult cnt = count_hyperelliptic(in_fp2.octic(), fp2.one(), fp2);
  out["count"] = count_json(cnt);
  out["q"] = cnt.q;
  out["N"] = cnt.n;
  out["verdict"] = to_string(cnt.verdict);
  out["predicted"] = hw.is_zero() ? Json(to_string(predicted_verdict(c.p()))) : Json(nullptr);
  if (hw.is_zero()) {
    const TheoremReport rep = verify_theorem_1_1(in_fp2);
    out["theorem_applicable"] = true;
    out["agrees"] = rep.agrees;
  } else {
    out["theorem_applicable"] = false;
    out["agrees"] = nullptr;
    out["note"] = "theorem not applicable: curve is not superspecial";
  }
  return out;
}

inline Json howe_json(const HoweInput& in) {
  const HoweInput u = detail::unify(in);
  Json out;
  out["field"] = field_json(u.lambda1.ctx());
  out["lambda1"] = u.lambda1.str();
  out["lambda2"] = u.lambda2.str();
  out["mu"] = u.mu.str();
  const GenusClass g = classify_genus(u);
  out["overlap"] = g.overlap;
  out["genus"] = g.genus;
  out["irreducible"] = g.irreducible;
  if (g.genus != 3) {
    out["lambda3"] = nullptr;
    out["hyperelliptic_mu"] = nullptr;
    out["hyperelliptic_d"] = nullptr;
    return out;
  }
  const Lambda3 l3 = lambda3(u);
  out["lambda3"] = l3.value.str();
  out["lambda3_degenerate"] = l3.genus_degenerate;
  out["hyperelliptic_mu"] = is_hyperelliptic_mu(u);
  if (l3.genus_degenerate) {
    out["hyperelliptic_d"] = nullptr;
    return out;
  }
  const FieldElem d = discriminant_d(u.lambda1, u.lambda2, l3.value);
  out["discriminant"] = d.str();
  out["hyperelliptic_d"] = d.is_zero();
  return out;
}

inline Json twist_json(const CurveAB& c, const TwistSpec& t, const TwistReport& rep) {
  return {{"field", field_json(make_ctx(c.p(), 2 * t.e))},
          {"a", c.a.str()},
          {"b", c.b.str()},
          {"eps", t.eps.str()},
          {"e", t.e},
          {"eps_square", rep.eps_square},
          {"q", rep.count.q},
          {"N", rep.count.n},
          {"verdict", to_string(rep.count.verdict)},
          {"predicted", to_string(rep.predicted)},
          {"agrees", rep.agrees}};
}

inline Json record_json(const IsoClassRecord& r) {
  Json prov = Json::array();
  for (const auto& sp : r.provenance) prov.push_back({sp.sqrt_lambda1.str(), sp.sqrt_lambda2.str()});
  Json out = {{"a", r.representative.a.str()}, {"b", r.representative.b.str()}};
  out["aut"] = r.aut ? Json(to_string(r.aut->label)) : Json(nullptr);
  out["reduced_order"] = r.aut ? Json(r.aut->reduced_order) : Json(nullptr);
  out["N"] = r.n;
  out["verdict"] = to_string(r.verdict);
  out["class_size"] = r.class_size;
  out["provenance"] = prov;
  return out;
}

inline Json enumerate_json(std::uint32_t p, const std::vector<IsoClassRecord>& recs, bool oracle) {
  Json classes = Json::array();
  for (const auto& r : recs) classes.push_back(record_json(r));
  return {{"field", field_json(make_ctx(p, 2))},
          {"method", oracle ? "brute" : "structured"},
          {"predicted", to_string(predicted_verdict(p))},
          {"classes", classes}};
}

inline Json table_json(const std::vector<CountsRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json counts;
    for (AutGroup g : kAutGroups) counts[to_string(g)] = r.counts[static_cast<std::size_t>(g)];
    out.push_back({{"p", r.p}, {"counts", counts}, {"total", r.total()}, {"positive", r.total() > 0}});
  }
  return out;
}

inline std::string table_csv(const std::vector<CountsRow>& rows) {
  std::ostringstream os;
  os << "p";
  for (AutGroup g : kAutGroups) os << ',' << to_string(g);
  os << '\n';
  for (const auto& r : rows) {
    os << r.p;
    for (int c : r.counts) os << ',' << c;
    os << '\n';
  }
  return os.str();
}

// Labels as rows, primes as columns; primes and labels with no curves are left out.
inline std::string table_markdown(const std::vector<CountsRow>& rows) {
  std::vector<const CountsRow*> cols;
  for (const auto& r : rows)
    if (r.total() > 0) cols.push_back(&r);
  std::ostringstream os;
  os << "| G \\ p |";
  for (const auto* c : cols) os << ' ' << c->p << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < cols.size(); ++i) os << "---|";
  os << '\n';
  for (AutGroup g : kAutGroups) {
    const auto gi = static_cast<std::size_t>(g);
    bool any = false;
    for (const auto* c : cols) any = any || c->counts[gi] > 0;
    if (!any) continue;
    os << "| " << to_string(g) << " |";
    for (const auto* c : cols) os << ' ' << c->counts[gi] << " |";
    os << '\n';
  }
  return os.str();
}

}  // namespace howe
