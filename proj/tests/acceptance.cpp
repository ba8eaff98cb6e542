// One PASS/FAIL line per acceptance check; exit status 0 only if all pass.
// `--slow` widens the oracle comparison to p = 31 and the twists to p = 13, e = 2.

#include <cstring>
#include <iostream>

#include "howe/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace howe::acceptance;
  const Tier tier = (argc > 1 && std::strcmp(argv[1], "--slow") == 0) ? Tier::Slow : Tier::Fast;
  bool ok = true;
  run_all(tier, [&](const Result& r) {
    std::cout << line(r) << std::endl;
    ok = ok && r.pass;
  });
  std::cout << (ok ? "all acceptance checks passed" : "acceptance checks FAILED") << std::endl;
  return ok ? 0 : 1;
}
