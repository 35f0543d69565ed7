#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace toda::suites {

struct Check {
  std::string name;
  int points = 0;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

struct Suite {
  int id = 0;
  std::string key;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0;
  bool pass() const;
};

struct RunConfig {
  std::uint64_t seed = 42;
  int N = 24;
  int n_max = 16;
  int K = 32;
  std::map<std::string, double> tolerances;  // keyed by suite ("gram") or check ("gram.matrix")
  std::vector<std::string> suites;           // empty: all
  std::string out_dir = ".";
};

// Suite keys in acceptance order: gram, frobenius, potential, tables, intersection,
// semisimplicity, charts, hierarchy, riemann, kernel.
const std::vector<std::string>& suite_keys();
bool is_suite(const std::string& key);
Suite run_suite(const std::string& key, const RunConfig& cfg);

}  // namespace toda::suites
