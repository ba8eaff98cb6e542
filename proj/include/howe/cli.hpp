#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and writes the report to `out`; diagnostics go to `err`.
//
// Exit status: 0 success, 1 bad input (DomainError or a parse error),
// 2 a broken mathematical invariant (InvariantViolation or a failed selftest).

#include <algorithm>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "howe/acceptance.hpp"
#include "howe/enumerate.hpp"
#include "howe/errors.hpp"
#include "howe/field_tower.hpp"
#include "howe/howe_curve.hpp"
#include "howe/point_count.hpp"
#include "howe/report.hpp"
#include "howe/standard_form.hpp"

namespace howe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitInvariant = 2;

// Maps the library's exception types onto exit codes.
inline int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

namespace detail {

inline const FieldCtx& fp2(std::uint32_t p) {
  if (p == 2 || !howe::detail::is_prime(p)) throw DomainError("p must be an odd prime, got " + std::to_string(p));
  return make_ctx(p, 2);
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

}  // namespace detail

inline constexpr const char* kElementHelp =
    "Elements of F_{p^2} are written c0+c1*t with t^2 = r, r the least quadratic non-residue mod p; "
    "F_{p^4} elements in twist use c0+c1*t+c2*t^2+c3*t^3 over the documented modulus (see the 'field' "
    "object in every report). Integers may be negative.";

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Superspecial hyperelliptic Howe curves of genus 3: checks, counts, enumeration.", "howe"};
  app.footer(kElementHelp);
  app.require_subcommand(1);

  std::uint32_t p = 0, pmin = 0, pmax = 0;
  std::string a, b, l1, l2, mu, eps, format = "md", tier = "fast";
  int e = 1;
  bool oracle = false;

  auto* check = app.add_subcommand("check", "Nonsingularity, superspeciality, Legendre triple and point count of "
                                            "y^2 = (x^4 - a x^2 + 1)(x^4 - b x^2 + 1) over F_{p^2}. Needs p < 1000.");
  check->add_option("p,--p", p, "odd prime")->required();
  check->add_option("a,--a", a, "a in F_{p^2}")->required();
  check->add_option("b,--b", b, "b in F_{p^2}")->required();

  auto* enumerate = app.add_subcommand(
      "enumerate", "Superspecial standard forms over F_{p^2} up to isomorphism. Needs p < 1000 (p <= 31 with --oracle).");
  enumerate->add_option("p,--p", p, "odd prime")->required();
  enumerate->add_flag("--oracle", oracle, "scan all (a, b) in F_{p^2}^2 instead of the structured search");

  auto* tab = app.add_subcommand("table", "Class counts per automorphism group for primes in [pmin, pmax], 7 < pmin <= pmax < 1000.");
  tab->add_option("pmin,--pmin", pmin, "smallest prime considered")->required();
  tab->add_option("pmax,--pmax", pmax, "largest prime considered")->required();
  tab->add_option("format,--format", format, "md, csv or json")->check(CLI::IsMember({"md", "csv", "json"}));

  auto* howe_cmd = app.add_subcommand("howe", "Genus, λ3 and both hyperellipticity criteria for the fiber product of "
                                              "y^2 = x(x-1)(x-λ1) and y^2 = x(x-μ)(x-μλ2).");
  howe_cmd->add_option("p,--p", p, "odd prime")->required();
  howe_cmd->add_option("l1,--l1", l1, "λ1 in F_{p^2}")->required();
  howe_cmd->add_option("l2,--l2", l2, "λ2 in F_{p^2}")->required();
  howe_cmd->add_option("mu,--mu", mu, "μ in F_{p^2}")->required();

  auto* twist = app.add_subcommand("twist", "Counts ε y^2 = f(x) over F_{p^2e} for a superspecial standard form and "
                                            "compares with the square-class prediction. e in {1, 2, 4}, p^{2e} <= 10^6.");
  twist->add_option("p,--p", p, "odd prime")->required();
  twist->add_option("a,--a", a, "a in F_{p^2}")->required();
  twist->add_option("b,--b", b, "b in F_{p^2}")->required();
  twist->add_option("eps,--eps", eps, "ε in F_{p^2e}")->required();
  twist->add_option("e,--e", e, "extension exponent")->required();

  auto* selftest = app.add_subcommand("selftest", "Runs the acceptance checks, one PASS/FAIL line each.");
  selftest->add_option("tier,--tier", tier, "fast or slow")->check(CLI::IsMember({"fast", "slow"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  return guarded(
      [&]() -> int {
        if (*check) {
          const FieldCtx& f = detail::fp2(p);
          const CurveAB c(parse_elem(f, a), parse_elem(f, b));
          const Json rep = check_json(c);
          detail::emit(out, rep);
          if (!c.nonsingular()) {
            err << "error: singular standard form (a, b = ±2 or a = b)\n";
            return kExitDomain;
          }
          return kExitOk;
        }
        if (*enumerate) {
          detail::fp2(p);
          if (!oracle && p >= kMaxTablePrime) throw DomainError("enumerate needs p < " + std::to_string(kMaxTablePrime));
          detail::emit(out, enumerate_json(p, oracle ? enumerate_brute(p) : enumerate_structured(p), oracle));
          return kExitOk;
        }
        if (*tab) {
          const auto rows = table(pmin, pmax);
          if (format == "json") detail::emit(out, table_json(rows));
          else if (format == "csv") out << table_csv(rows);
          else out << table_markdown(rows);
          return kExitOk;
        }
        if (*howe_cmd) {
          const FieldCtx& f = detail::fp2(p);
          detail::emit(out, howe_json({parse_elem(f, l1), parse_elem(f, l2), parse_elem(f, mu)}));
          return kExitOk;
        }
        if (*twist) {
          const FieldCtx& f = detail::fp2(p);
          if (e != 1 && e != 2 && e != 4) throw DomainError("e must be 1, 2 or 4");
          if (howe::detail::ipow(p, 2 * e) > kMaxCountField) throw DomainError("field too large for brute counting");
          const CurveAB c(parse_elem(f, a), parse_elem(f, b));
          const TwistSpec t{parse_elem(make_ctx(p, 2 * e), eps), e};
          detail::emit(out, twist_json(c, t, twist_verdict(c, t)));
          return kExitOk;
        }
        const auto results = acceptance::run_all(tier == "slow" ? acceptance::Tier::Slow : acceptance::Tier::Fast,
                                                 [&](const acceptance::Result& r) { out << acceptance::line(r) << '\n'; });
        const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
        out << (ok ? "all checks passed" : "some checks FAILED") << '\n';
        return ok ? kExitOk : kExitInvariant;
      },
      err);
}

}  // namespace howe::cli
