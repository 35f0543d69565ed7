// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <cstring>

#include "suites.hpp"

int main(int argc, char** argv) {
  toda::suites::RunConfig cfg;
  const bool verbose = argc > 1 && std::strcmp(argv[1], "-v") == 0;
  int failed = 0;
  for (const auto& key : toda::suites::suite_keys()) {
    const auto s = toda::suites::run_suite(key, cfg);
    std::printf("%s criterion %2d %-28s (%.1fs)\n", s.pass() ? "PASS" : "FAIL", s.id, s.title.c_str(), s.seconds);
    for (const auto& c : s.checks) {
      if (!verbose && c.pass) continue;
      std::printf("    %-4s %-34s max=%.3e tol=%.1e n=%d %s\n", c.pass ? "ok" : "FAIL", c.name.c_str(), c.max_residual,
                  c.tolerance, c.points, c.note.c_str());
    }
    std::fflush(stdout);
    if (!s.pass()) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(toda::suites::suite_keys().size()) - failed,
              toda::suites::suite_keys().size());
  return failed ? 1 : 0;
}
