// Command-line front end: verify | gram | potential | flow | canonical.
// Exit codes: 0 pass, 1 suite failure, 2 usage or configuration error.
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "suites.hpp"
#include "toda/canonical.hpp"
#include "toda/io.hpp"
#include "toda/potential.hpp"

namespace fs = std::filesystem;
using namespace toda;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse a JSON config file, reporting line and column on syntax errors.
json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw ConfigError(path + ": top level must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

void reject_unknown(const json& cfg, const std::set<std::string>& allowed, const std::string& cmd) {
  for (const auto& [k, v] : cfg.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' for " + cmd);
}

template <class T>
T get(const json& cfg, const std::string& key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

// Seed from flag, else config, else the built-in default when no config file was given.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, const json& cfg, bool have_file) {
  if (flag) return *flag;
  if (cfg.contains("seed")) return get<std::uint64_t>(cfg, "seed", 0);
  if (have_file) throw ConfigError("config must set 'seed' (or pass --seed)");
  return 42;
}

std::string cplx_csv(cplx c) { return fmt(c.real()) + "," + fmt(c.imag()); }

// Point selection shared by gram / potential / canonical: an explicit point, a locus point, or a seeded draw.
Point select_point(const json& cfg, std::optional<double> u, std::optional<double> v, std::uint64_t seed, int N) {
  if (u || v) return locus_point(u.value_or(0.0), v.value_or(0.0));
  if (cfg.contains("point")) {
    const json& p = cfg.at("point");
    if (p.contains("locus")) {
      return locus_point(complex_from_json(p.at("locus").at("u")), complex_from_json(p.at("locus").at("v")));
    }
    return point_from_json(p);
  }
  Rng rng(seed);
  PointFamily fam;
  fam.N = N;
  return random_point(rng, fam);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
}

// ------------------------------------------------------------------ verify
struct VerifyArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> N, n_max, K;
  std::vector<std::string> suites, tol;
  std::optional<std::string> out;
  bool quiet = false;
};

int run_verify(const VerifyArgs& a) {
  const json cfg = a.config.empty() ? json::object() : load_config(a.config);
  reject_unknown(cfg, {"seed", "N", "n_max", "K", "tolerances", "suites", "out_dir"}, "verify");

  suites::RunConfig rc;
  rc.seed = resolve_seed(a.seed, cfg, !a.config.empty());
  rc.N = a.N.value_or(get<int>(cfg, "N", rc.N));
  rc.n_max = a.n_max.value_or(get<int>(cfg, "n_max", rc.n_max));
  rc.K = a.K.value_or(get<int>(cfg, "K", rc.K));
  rc.out_dir = a.out.value_or(get<std::string>(cfg, "out_dir", "."));
  rc.suites = a.suites.empty() ? get<std::vector<std::string>>(cfg, "suites", {}) : a.suites;
  if (cfg.contains("tolerances")) {
    if (!cfg["tolerances"].is_object()) throw ConfigError("'tolerances' must be an object");
    for (const auto& [k, v] : cfg["tolerances"].items()) {
      if (!v.is_number()) throw ConfigError("tolerance '" + k + "' must be a number");
      rc.tolerances[k] = v.get<double>();
    }
  }
  for (const auto& t : a.tol) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("--tol expects name=value, got '" + t + "'");
    try {
      rc.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("--tol value is not a number: '" + t + "'");
    }
  }

  if (rc.N < 4 || rc.K < 4 || (rc.K & (rc.K - 1)) != 0)
    throw ConfigError("N must be >= 4 and K a power of two >= 4");
  for (const auto& s : rc.suites)
    if (!suites::is_suite(s)) throw ConfigError("unknown suite '" + s + "'");
  for (const auto& [k, v] : rc.tolerances) {
    if (!suites::is_suite(k.substr(0, k.find('.')))) throw ConfigError("tolerance for unknown suite '" + k + "'");
    if (!(v >= 0)) throw ConfigError("tolerance '" + k + "' must be non-negative");
  }

  const auto& keys = rc.suites.empty() ? suites::suite_keys() : rc.suites;
  json report = json::array();
  bool all = true;
  for (const auto& key : keys) {
    const suites::Suite s = suites::run_suite(key, rc);
    for (const auto& c : s.checks) {
      json e{{"name", c.name}, {"points_tested", c.points}, {"tolerance", c.tolerance}, {"pass", c.pass}};
      e["max_residual"] = std::isfinite(c.max_residual) ? json(c.max_residual) : json(nullptr);
      if (!c.note.empty()) e["note"] = c.note;
      report.push_back(e);
    }
    all = all && s.pass();
    if (!a.quiet)
      std::fprintf(stderr, "%s %-15s (%.1fs)\n", s.pass() ? "PASS" : "FAIL", key.c_str(), s.seconds);
  }
  ensure_dir(rc.out_dir);
  const json doc{{"seed", rc.seed}, {"suites", report}, {"pass", all}};
  write_file_atomic((fs::path(rc.out_dir) / "report.json").string(), dump(doc));
  std::cout << dump(doc);
  return all ? 0 : 1;
}

// ------------------------------------------------------------------ gram
struct PointArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> u, v;
  std::optional<int> N;
  std::optional<std::string> out;
};

std::vector<std::pair<std::string, FlatIndex>> frame_list(int kmax) {
  std::vector<std::pair<std::string, FlatIndex>> r;
  for (int k = -kmax; k <= kmax; ++k) r.push_back({"t" + std::to_string(k), FlatIndex::t(k)});
  r.push_back({"u", FlatIndex::u()});
  r.push_back({"v", FlatIndex::v()});
  return r;
}

double gram_expected(FlatIndex a, FlatIndex b) {
  if (a.kind == Coord::T && b.kind == Coord::T) return a.n + b.n == -1 ? 1.0 : 0.0;
  if (a.kind != Coord::T && b.kind != Coord::T && a.kind != b.kind) return 1.0;
  return 0.0;
}

int run_gram(const PointArgs& a, std::optional<int> kmax_flag) {
  const json cfg = a.config.empty() ? json::object() : load_config(a.config);
  reject_unknown(cfg, {"seed", "N", "kmax", "point", "out_dir"}, "gram");
  const int kmax = kmax_flag.value_or(get<int>(cfg, "kmax", 4));
  if (kmax < 0) throw ConfigError("kmax must be non-negative");
  const std::uint64_t seed = resolve_seed(a.seed, cfg, !a.config.empty());
  const Point pt = select_point(cfg, a.u, a.v, seed, a.N.value_or(get<int>(cfg, "N", 24)));
  const std::string dir = a.out.value_or(get<std::string>(cfg, "out_dir", "."));

  const auto idx = frame_list(kmax);
  std::vector<Tangent> fr;
  for (const auto& [name, i] : idx) fr.push_back(flat_frame(pt, i));
  std::ostringstream csv;
  csv << "row,col,re,im\n";
  double worst = 0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const cplx g = metric_tangent(pt, fr[i], fr[j]);
      worst = std::max(worst, std::abs(g - gram_expected(idx[i].second, idx[j].second)));
      csv << idx[i].first << "," << idx[j].first << "," << cplx_csv(g) << "\n";
    }
  ensure_dir(dir);
  write_file_atomic((fs::path(dir) / "gram.csv").string(), csv.str());
  std::cout << idx.size() << "x" << idx.size() << " Gram matrix, max deviation " << fmt(worst) << "\n";
  return 0;
}

// ------------------------------------------------------------------ potential
int run_potential(const PointArgs& a) {
  const json cfg = a.config.empty() ? json::object() : load_config(a.config);
  reject_unknown(cfg, {"seed", "N", "kmax", "point", "out_dir"}, "potential");
  const int kmax = get<int>(cfg, "kmax", 2);
  const std::uint64_t seed = resolve_seed(a.seed, cfg, !a.config.empty());
  const Point pt = select_point(cfg, a.u, a.v, seed, a.N.value_or(get<int>(cfg, "N", 24)));
  const std::string dir = a.out.value_or(get<std::string>(cfg, "out_dir", "."));

  const auto idx = frame_list(kmax);
  std::vector<Tangent> fr;
  for (const auto& [name, i] : idx) fr.push_back(flat_frame(pt, i));
  double gram_error = 0, trip_error = 0;
  json table = json::array();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i; j < idx.size(); ++j) {
      gram_error =
          std::max(gram_error, std::abs(metric_tangent(pt, fr[i], fr[j]) - gram_expected(idx[i].second, idx[j].second)));
      for (std::size_t k = j; k < idx.size(); ++k) {
        const cplx c = triple_derivative_flat(pt, TripleIndex(idx[i].second, idx[j].second, idx[k].second));
        trip_error = std::max(trip_error, std::abs(trilinear_form(pt, fr[i], fr[j], fr[k]) - c));
        table.push_back({{"index", {idx[i].first, idx[j].first, idx[k].first}}, {"value", to_json(c)}});
      }
    }
  }
  const json doc{{"point", to_json(pt)},
                 {"F", to_json(potential_F(pt))},
                 {"residuals",
                  {{"quasihomogeneity", std::abs(quasihomogeneity_residual(pt))}, {"trilinear_vs_triple", trip_error}}},
                 {"gram_error", gram_error},
                 {"triple_table", table}};
  ensure_dir(dir);
  write_file_atomic((fs::path(dir) / "potential.json").string(), dump(doc));
  std::cout << "F = " << fmt(potential_F(pt).real()) << " + " << fmt(potential_F(pt).imag()) << "i\n";
  return 0;
}

// ------------------------------------------------------------------ flow
struct FlowArgs {
  std::string config;
  std::optional<std::string> flow, init, out;
  std::optional<double> T, h, amp;
  std::optional<int> K, N, every;
  std::optional<std::uint64_t> seed;
};

int run_flow(const FlowArgs& a) {
  const json cfg = a.config.empty() ? json::object() : load_config(a.config);
  reject_unknown(cfg, {"seed", "flow", "T", "h", "K", "N", "every", "amp", "init", "out_dir"}, "flow");
  FlowTag flow;
  try {
    flow = parse_flow(a.flow.value_or(get<std::string>(cfg, "flow", "s1")));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  const double T = a.T.value_or(get<double>(cfg, "T", 0.1));
  const double h = a.h.value_or(get<double>(cfg, "h", 1e-3));
  const int K = a.K.value_or(get<int>(cfg, "K", 32));
  const int N = a.N.value_or(get<int>(cfg, "N", 16));
  const int every = a.every.value_or(get<int>(cfg, "every", 10));
  const std::string dir = a.out.value_or(get<std::string>(cfg, "out_dir", "flow_out"));
  std::optional<std::string> init = a.init;
  if (!init && cfg.contains("init")) init = get<std::string>(cfg, "init", "");
  if (!(T > 0) || !(h > 0) || every < 1) throw ConfigError("T and h must be positive and every >= 1");
  if (K < 4 || (K & (K - 1)) != 0) throw ConfigError("K must be a power of two >= 4");
  if (N < 2) throw ConfigError("N must be >= 2");

  LoopPoint L;
  if (init) {
    std::ifstream in(*init);
    if (!in) throw ConfigError("cannot open initial loop '" + *init + "'");
    try {
      L = loop_point_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw ConfigError(*init + ": " + e.what());
    }
  } else {
    Rng rng(resolve_seed(a.seed, cfg, !a.config.empty()));
    LoopFamily fam;
    fam.K = K;
    fam.N = std::min(fam.N, N);
    fam.amp = a.amp.value_or(get<double>(cfg, "amp", fam.amp));
    L = random_loop(rng, fam);
  }

  IntegratorOptions opt;
  opt.N = N;
  const auto snaps = integrate(L, flow, T, h, every, opt);

  ensure_dir(dir);
  const cplx H1 = hamiltonian(L, 1, false);
  std::ostringstream csv;
  csv << "step,time,H1,Hbar1,H2,tail_norm,u1_drift,H1_im,Hbar1_im,H2_im\n";
  double drift = 0;
  for (const auto& s : snaps) {
    const cplx h1 = hamiltonian(s.state, 1, false), hb1 = hamiltonian(s.state, 1, true),
               h2 = hamiltonian(s.state, 2, false);
    double u1 = 0;
    for (int k = 0; k < s.state.K(); ++k) u1 = std::max(u1, std::abs(s.state.lambda.at(1, k) - 1.0));
    drift = std::max(drift, std::abs(h1 - H1));
    csv << s.step << "," << fmt(s.time) << "," << fmt(h1.real()) << "," << fmt(hb1.real()) << "," << fmt(h2.real())
        << "," << fmt(s.tail) << "," << fmt(u1) << "," << fmt(h1.imag()) << "," << fmt(hb1.imag()) << ","
        << fmt(h2.imag()) << "\n";
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%06d.json", s.step);
    const json snap{{"step", s.step}, {"time", s.time}, {"flow", flow_name(flow)}, {"state", to_json(s.state)}};
    write_file_atomic((fs::path(dir) / name).string(), dump(snap));
  }
  write_file_atomic((fs::path(dir) / "ledger.csv").string(), csv.str());
  std::cout << snaps.size() << " snapshots, max |H1 drift| " << fmt(drift) << "\n";
  return 0;
}

// ------------------------------------------------------------------ canonical
int run_canonical(const PointArgs& a, std::optional<int> M_flag, const std::vector<std::string>& flow_flags) {
  const json cfg = a.config.empty() ? json::object() : load_config(a.config);
  reject_unknown(cfg, {"seed", "N", "M", "point", "flows", "out_dir"}, "canonical");
  const int M = M_flag.value_or(get<int>(cfg, "M", 256));
  if (M < 8 || (M & (M - 1)) != 0) throw ConfigError("M must be a power of two >= 8");
  std::vector<std::string> names =
      flow_flags.empty() ? get<std::vector<std::string>>(cfg, "flows", {"t:0", "u", "v", "s1", "sbar1"}) : flow_flags;
  std::vector<FlowTag> flows;
  for (const auto& n : names) {
    try {
      flows.push_back(parse_flow(n));
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  const std::uint64_t seed = resolve_seed(a.seed, cfg, !a.config.empty());
  const Point pt = select_point(cfg, a.u, a.v, seed, a.N.value_or(get<int>(cfg, "N", 24)));
  const std::string dir = a.out.value_or(get<std::string>(cfg, "out_dir", "."));

  const CanonicalData cd = canonical_data(pt, static_cast<std::size_t>(M));
  std::vector<std::vector<cplx>> vel;
  for (const auto& f : flows) vel.push_back(char_velocities(pt, f, cd.p));

  std::ostringstream csv;
  csv << "j,theta_j,sigma_re,sigma_im,u_sigma_re,u_sigma_im,f_re,f_im";
  for (const auto& f : flows) csv << ",A_" << flow_name(f) << "_re,A_" << flow_name(f) << "_im";
  csv << "\n";
  for (std::size_t j = 0; j < cd.p.size(); ++j) {
    csv << j << "," << fmt(2 * M_PI * static_cast<double>(j) / static_cast<double>(M)) << "," << cplx_csv(cd.sigma[j])
        << "," << cplx_csv(cd.u_sigma[j]) << "," << cplx_csv(cd.f[j]);
    for (const auto& v : vel) csv << "," << cplx_csv(v[j]);
    csv << "\n";
  }
  ensure_dir(dir);
  write_file_atomic((fs::path(dir) / "canonical.csv").string(), csv.str());
  std::cout << "sigma curve simplicity " << fmt(cd.simplicity)
            << (cd.self_intersecting ? " (self-intersecting: point is not in the semisimple part)" : "") << "\n";
  return 0;
}

void add_point_flags(CLI::App* c, PointArgs& a) {
  c->add_option("--config", a.config, "JSON config file");
  c->add_option("--seed", a.seed, "seed for the random point");
  c->add_option("--u", a.u, "use the locus point with this u");
  c->add_option("--v", a.v, "use the locus point with this v");
  c->add_option("--N", a.N, "tail length of the random point");
  c->add_option("--out", a.out, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius manifold of the dispersionless 2D Toda hierarchy: checks and data"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run identity suites and write report.json");
  verify->add_option("--config", va.config, "JSON config file");
  verify->add_option("--seed", va.seed);
  verify->add_option("--N", va.N, "tail length of random points");
  verify->add_option("--n-max", va.n_max);
  verify->add_option("--K", va.K, "x-grid size for loops");
  verify->add_option("--suite", va.suites, "suite to run (repeatable)");
  verify->add_option("--tol", va.tol, "tolerance override name=value (suite or check name)");
  verify->add_option("--out", va.out, "output directory");
  verify->add_flag("--quiet", va.quiet, "no per-suite progress on stderr");

  PointArgs ga;
  std::optional<int> kmax;
  auto* gram = app.add_subcommand("gram", "Gram matrix of the flat frames as CSV");
  add_point_flags(gram, ga);
  gram->add_option("--kmax", kmax, "frames t_k with |k| <= kmax, plus u and v");

  PointArgs pa;
  auto* pot = app.add_subcommand("potential", "potential, residuals and triple-derivative table as JSON");
  add_point_flags(pot, pa);

  FlowArgs fa;
  auto* flow = app.add_subcommand("flow", "integrate a flow on a loop; snapshots JSON and ledger CSV");
  flow->set_help_flag("--help", "Print this help message and exit");  // frees -h for the time step
  flow->add_option("--config", fa.config, "JSON config file");
  flow->add_option("--flow", fa.flow, "s<n>, sbar<n>, t:<alpha>, u or v");
  flow->add_option("--T", fa.T, "final time");
  flow->add_option("--h", fa.h, "time step");
  flow->add_option("--K", fa.K, "x-grid size");
  flow->add_option("--N", fa.N, "stored z-band");
  flow->add_option("--seed", fa.seed);
  flow->add_option("--every", fa.every, "snapshot stride in steps");
  flow->add_option("--amp", fa.amp, "x-variation amplitude of the random loop");
  flow->add_option("--init", fa.init, "initial loop as JSON instead of a random one");
  flow->add_option("--out", fa.out, "output directory");

  PointArgs ca;
  std::optional<int> M;
  std::vector<std::string> cflows;
  auto* canon = app.add_subcommand("canonical", "sigma curve, canonical coordinates and velocities as CSV");
  add_point_flags(canon, ca);
  canon->add_option("--M", M, "grid size on the p circle");
  canon->add_option("--flow", cflows, "flows whose characteristic velocities are listed (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) return run_verify(va);
    if (*gram) return run_gram(ga, kmax);
    if (*pot) return run_potential(pa);
    if (*flow) return run_flow(fa);
    if (*canon) return run_canonical(ca, M, cflows);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
