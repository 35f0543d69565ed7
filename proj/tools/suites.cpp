#include "suites.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "toda/canonical.hpp"
#include "toda/flatcoords.hpp"
#include "toda/hierarchy.hpp"
#include "toda/potential.hpp"
#include "toda/sampling.hpp"

namespace toda::suites {

bool Suite::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& suite_keys() {
  static const std::vector<std::string> keys{"gram",           "frobenius", "potential", "tables",    "intersection",
                                             "semisimplicity", "charts",    "hierarchy", "riemann",   "kernel"};
  return keys;
}

bool is_suite(const std::string& key) {
  const auto& k = suite_keys();
  return std::find(k.begin(), k.end(), key) != k.end();
}

namespace {

struct Acc {
  int n = 0;
  double max = 0;
  bool finite = true;
  std::string note;
  void add(double r) {
    ++n;
    if (!std::isfinite(r)) {
      finite = false;
      max = INFINITY;
    } else {
      max = std::max(max, r);
    }
  }
  void add(cplx r) { add(std::abs(r)); }
};

class Runner {
 public:
  Runner(Suite& s, const RunConfig& cfg) : s_(s), cfg_(cfg) {}

  void check(const std::string& name, double tol, const std::function<void(Acc&)>& body) {
    Check c;
    c.name = name;
    // A check-level override wins over a suite-level one.
    auto it = cfg_.tolerances.find(name);
    if (it == cfg_.tolerances.end()) it = cfg_.tolerances.find(name.substr(0, name.find('.')));
    c.tolerance = it != cfg_.tolerances.end() ? it->second : tol;
    Acc acc;
    try {
      body(acc);
    } catch (const std::exception& e) {
      acc.finite = false;
      acc.max = INFINITY;
      acc.note = e.what();
    }
    c.points = acc.n;
    c.max_residual = acc.max;
    c.note = acc.note;
    c.pass = acc.finite && acc.n > 0 && acc.max < c.tolerance;
    s_.checks.push_back(std::move(c));
  }

 private:
  Suite& s_;
  const RunConfig& cfg_;
};

double kron(int a, int b) { return a == b ? 1.0 : 0.0; }
int theta(int n) { return n >= 0 ? 1 : -1; }

std::vector<FlatIndex> frame_indices(int kmax) {
  std::vector<FlatIndex> idx;
  for (int k = -kmax; k <= kmax; ++k) idx.push_back(FlatIndex::t(k));
  idx.push_back(FlatIndex::u());
  idx.push_back(FlatIndex::v());
  return idx;
}

// Flat metric Gram entry.
double gram_expected(FlatIndex a, FlatIndex b) {
  if (a.kind == Coord::T && b.kind == Coord::T) return kron(a.n + b.n, -1);
  if ((a.kind == Coord::U && b.kind == Coord::V) || (a.kind == Coord::V && b.kind == Coord::U)) return 1.0;
  return 0.0;
}

PointFamily family(const RunConfig& cfg) {
  PointFamily f;
  f.N = cfg.N;
  return f;
}

// Points with Re u in [-1.2, -0.4]: zeros of lambda' inside and of z^2 lambda-bar' outside the disk.
PointFamily inner_family(const RunConfig& cfg) {
  PointFamily f = family(cfg);
  f.u_center = -0.8;
  f.u_radius = 0.4;
  return f;
}

// 1/lambda-bar' and the intersection determinant decay slowly on this family.
Numerics wide() {
  Numerics n;
  n.band = 600;
  return n;
}

Point inter4_point(Rng& rng, const PointFamily& fam, int& rejected) {
  for (int tries = 0; tries < 100; ++tries) {
    Point pt = random_point(rng, fam);
    if (check_membership(pt).intersection_ok) return pt;
    ++rejected;
  }
  throw Error(ErrorKind::InvalidPoint, "no intersection-valid point found");
}

// ---------------------------------------------------------------- 1
void gram(Runner& r, const RunConfig& cfg) {
  r.check("gram.matrix", 1e-9, [&](Acc& acc) {
    Rng rng(cfg.seed + 101);
    const auto idx = frame_indices(6);
    for (int p = 0; p < 20; ++p) {
      const Point pt = random_point(rng, family(cfg));
      std::vector<Tangent> fr;
      for (const auto& i : idx) fr.push_back(flat_frame(pt, i));
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a; b < idx.size(); ++b)
          acc.add(metric_tangent(pt, fr[a], fr[b]) - gram_expected(idx[a], idx[b]));
    }
  });
  r.check("gram.differentials", 1e-9, [&](Acc& acc) {
    Rng rng(cfg.seed + 102);
    const auto idx = frame_indices(6);
    for (int p = 0; p < 5; ++p) {
      const Point pt = random_point(rng, family(cfg));
      for (const auto& a : idx)
        for (const auto& b : idx)
          acc.add(pair(flat_differential(pt, a), flat_frame(pt, b)) - (a == b ? 1.0 : 0.0));
    }
  });
}

// ---------------------------------------------------------------- 2
void frobenius(Runner& r, const RunConfig& cfg) {
  struct Sample {
    Point pt;
    Cotangent o1, o2, o3;
    Tangent x;
  };
  std::vector<Sample> samples;
  Rng rng(cfg.seed + 201);
  for (int s = 0; s < 50; ++s) {
    Point pt = random_point(rng, family(cfg));
    Cotangent o1 = random_cotangent(rng), o2 = random_cotangent(rng), o3 = random_cotangent(rng);
    samples.push_back({pt, o1, o2, o3, random_tangent(rng)});
  }
  r.check("frobenius.associativity", 1e-10, [&](Acc& acc) {
    for (const auto& s : samples)
      acc.add(max_diff(cot_mul(s.pt, cot_mul(s.pt, s.o1, s.o2), s.o3), cot_mul(s.pt, s.o1, cot_mul(s.pt, s.o2, s.o3))));
  });
  r.check("frobenius.commutativity", 1e-10, [&](Acc& acc) {
    for (const auto& s : samples) acc.add(max_diff(cot_mul(s.pt, s.o1, s.o2), cot_mul(s.pt, s.o2, s.o1)));
  });
  r.check("frobenius.invariance", 1e-10, [&](Acc& acc) {
    for (const auto& s : samples) {
      auto tri = [&](const Cotangent& a, const Cotangent& b, const Cotangent& c) {
        return pair(cot_mul(s.pt, a, b), eta_apply(s.pt, c));
      };
      const cplx base = tri(s.o1, s.o2, s.o3);
      acc.add(base - tri(s.o2, s.o3, s.o1));
      acc.add(base - tri(s.o1, s.o3, s.o2));
      acc.add(pair(s.o1, eta_apply(s.pt, s.o2)) - pair(s.o2, eta_apply(s.pt, s.o1)));
    }
  });
  r.check("frobenius.unit", 1e-10, [&](Acc& acc) {
    for (const auto& s : samples) {
      const Cotangent es = unit_cotangent(s.pt);
      acc.add(max_diff(cot_mul(s.pt, es, s.o1), s.o1));
      acc.add(max_diff(eta_apply(s.pt, es), unit_vector()));
      acc.add(max_diff(eta_inverse(s.pt, unit_vector()), es));
      acc.add(max_diff(tan_mul(s.pt, unit_vector(), s.x), s.x));
    }
  });
}

// ---------------------------------------------------------------- 3
cplx fd_third(const FlatChart& c, const std::array<FlatIndex, 3>& idx, double h, int N,
              const InverseChartOptions& inv, const Numerics& num) {
  cplx sum = 0.0;
  for (int mask = 0; mask < 8; ++mask) {
    FlatChart s = c;
    double sign = 1.0;
    for (int b = 0; b < 3; ++b) {
      const double d = (mask >> b & 1) ? h : -h;
      sign *= (mask >> b & 1) ? 1.0 : -1.0;
      s = shifted(s, idx[static_cast<std::size_t>(b)], d);
    }
    sum += sign * potential_F(point_from_flat(s, N, inv), num);
  }
  return sum / (8.0 * h * h * h);
}

FlatChart disk_chart(Rng& rng, int nmax) {
  FlatChart c = FlatChart::zeros(nmax, {0.2, 0.1}, {-0.1, 0.2});
  for (int n = -nmax; n <= nmax; ++n) c.set_tn(n, rng.disk(0.05 * std::pow(0.7, std::abs(n))));
  return c;
}

void potential(Runner& r, const RunConfig& cfg) {
  r.check("potential.trilinear_vs_trip", 1e-8, [&](Acc& acc) {
    Rng rng(cfg.seed + 301);
    std::vector<FlatIndex> idx;
    for (int k = -2; k <= 2; ++k) idx.push_back(FlatIndex::t(k));
    idx.push_back(FlatIndex::u());
    idx.push_back(FlatIndex::v());
    for (int p = 0; p < 3; ++p) {
      const Point pt = random_point(rng, family(cfg));
      std::vector<Tangent> fr;
      for (const auto& i : idx) fr.push_back(flat_frame(pt, i));
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a; b < idx.size(); ++b)
          for (std::size_t c = b; c < idx.size(); ++c)
            acc.add(trilinear_form(pt, fr[a], fr[b], fr[c]) -
                    triple_derivative_flat(pt, TripleIndex(idx[a], idx[b], idx[c])));
    }
  });
  r.check("potential.trilinear_vs_metric", 1e-9, [&](Acc& acc) {
    Rng rng(cfg.seed + 302);
    for (int p = 0; p < 10; ++p) {
      const Point pt = random_point(rng, family(cfg));
      const Tangent x = random_tangent(rng), y = random_tangent(rng), z = random_tangent(rng);
      const cplx t = trilinear_form(pt, x, y, z);
      acc.add(t - metric_tangent(pt, tan_mul(pt, x, y), z));
      acc.add(t - trilinear_form(pt, z, x, y));
    }
  });
  r.check("potential.finite_difference", 1e-5, [&](Acc& acc) {
    Rng rng(cfg.seed + 303);
    const int N = 256;
    InverseChartOptions inv;
    inv.grid = 2048;
    Numerics num;
    num.band = 400;
    num.grid = 4096;
    const std::vector<std::array<FlatIndex, 3>> triples{
        {FlatIndex::t(0), FlatIndex::t(0), FlatIndex::t(0)},  {FlatIndex::t(-1), FlatIndex::t(0), FlatIndex::t(1)},
        {FlatIndex::t(-2), FlatIndex::t(1), FlatIndex::u()},  {FlatIndex::u(), FlatIndex::u(), FlatIndex::t(0)},
        {FlatIndex::u(), FlatIndex::u(), FlatIndex::u()},     {FlatIndex::t(0), FlatIndex::t(-1), FlatIndex::v()}};
    for (int p = 0; p < 2; ++p) {
      const FlatChart c = disk_chart(rng, 16);
      const Point pt = point_from_flat(c, N, inv);
      for (const auto& t : triples) {
        const cplx exact = triple_derivative_flat(pt, TripleIndex(t[0], t[1], t[2]));
        const cplx d1 = fd_third(c, t, 1e-2, N, inv, num), d2 = fd_third(c, t, 5e-3, N, inv, num);
        const cplx rich = (4.0 * d2 - d1) / 3.0;
        acc.add(std::abs(rich - exact) / std::max(1.0, std::abs(exact)));
      }
    }
    acc.note = "Richardson over h = 1e-2, 5e-3; error relative to max(|exact|, 1)";
  });
  r.check("potential.quasihomogeneity", 1e-6, [&](Acc& acc) {
    Rng rng(cfg.seed + 304);
    for (int p = 0; p < 10; ++p) acc.add(quasihomogeneity_residual(random_point(rng, family(cfg))));
  });
  r.check("potential.locus", 1e-8, [&](Acc& acc) {
    for (const auto& [u, v] : std::vector<std::pair<cplx, cplx>>{{0.0, 0.0}, {0.3, 0.2}, {{-0.4, 0.2}, {0.1, -0.3}}}) {
      const Point pt = locus_point(u, v);
      acc.add(potential_F(pt) - u * v * v / 2.0);
      acc.add(quasihomogeneity_residual(pt));
    }
  });
}

// ---------------------------------------------------------------- 4
void tables(Runner& r, const RunConfig& cfg) {
  (void)cfg;
  r.check("tables.locus", 1e-12, [&](Acc& acc) {
    for (const auto& [u, v] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {0.3, -0.2}}) {
      const Point pt = locus_point(u, v);
      const cplx eu = std::exp(u);
      auto X = [&](int n) { return cplx(-1.0) * flat_frame(pt, FlatIndex::t(n)); };
      const Tangent U = flat_frame(pt, FlatIndex::u()), V = flat_frame(pt, FlatIndex::v());
      for (int i = -5; i <= 5; ++i) {
        for (int j = -5; j <= 5; ++j) {
          Tangent rhs = (0.5 * (theta(i) + theta(j) + theta(-i - j - 2) + 1)) * X(i + j + 1) + eu * X(i + j - 1);
          if (i + j == -1) rhs = rhs + U;
          if (i + j == 0) rhs = rhs + eu * V;
          acc.add(max_diff(tan_mul(pt, X(i), X(j)), rhs));
        }
        Tangent rhs = eu * X(i - 1);
        if (i == 0) rhs = rhs + eu * V;
        acc.add(max_diff(tan_mul(pt, U, X(i)), rhs));
      }
      acc.add(max_diff(tan_mul(pt, U, U), eu * X(-1)));
    }
  });
  r.check("tables.reduced", 1e-12, [&](Acc& acc) {
    // w = z with e^u -> 0: the t-sector of the reduced algebra.
    const Point red{LaurentSeries::monomial(1), LaurentSeries()};
    TripleOptions opt;
    opt.double_grid = 128;
    for (int i = -5; i <= 5; ++i)
      for (int j = -5; j <= 5; ++j)
        for (int k = -i - j - 3; k <= -i - j - 1; ++k) {
          const cplx c = -triple_derivative_flat(red, TripleIndex(FlatIndex::t(i), FlatIndex::t(j), FlatIndex::t(k)), opt);
          const double ex = (i + j + 1 + k == -1) ? 0.5 * (theta(i) + theta(j) + theta(-i - j - 2) + 1) : 0.0;
          acc.add(c - ex);
        }
  });
  r.check("tables.qh_p1", 1e-12, [&](Acc& acc) {
    // (u, v) sector at points with w-tails zero and u-bar_1 = 1.
    for (const auto& [u, v] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {0.3, -0.2}, {-0.7, 0.5}}) {
      const cplx eu = std::exp(u);
      const Point pt = make_point(LaurentSeries(-1, {-eu, -v, 1.0}), LaurentSeries(-1, {eu, v, 1.0}));
      auto c = [&](FlatIndex a, FlatIndex b, FlatIndex d) { return triple_derivative_flat(pt, TripleIndex(a, b, d)); };
      const FlatIndex U = FlatIndex::u(), V = FlatIndex::v();
      // raise the last index with eta^{uv} = 1: d_a . d_b = c_{abu} d_v + c_{abv} d_u
      acc.add(c(U, U, U) - eu);  // du.du = e^u dv
      acc.add(c(U, U, V));
      acc.add(c(U, V, U));       // du.dv = du
      acc.add(c(U, V, V) - 1.0);
      acc.add(c(V, V, U) - 1.0);  // dv.dv = dv
      acc.add(c(V, V, V));
      acc.add(metric_tangent(pt, flat_frame(pt, U), flat_frame(pt, V)) - 1.0);
    }
  });
}

// ---------------------------------------------------------------- 5
void intersection(Runner& r, const RunConfig& cfg) {
  struct Sample {
    Point pt;
    Cotangent o1, o2;
    Tangent x, y;
  };
  std::vector<Sample> samples;
  int rejected = 0;
  Rng rng(cfg.seed + 501);
  for (int s = 0; s < 30; ++s) {
    Point pt = inter4_point(rng, inner_family(cfg), rejected);
    Cotangent o1 = random_cotangent(rng), o2 = random_cotangent(rng);
    Tangent x = random_tangent(rng), y = random_tangent(rng);
    samples.push_back({pt, o1, o2, x, y});
  }
  r.check("intersection.defining", 1e-9, [&](Acc& acc) {
    for (const auto& s : samples)
      acc.add(pair(cot_mul(s.pt, s.o1, s.o2), euler_field(s.pt)) - pair(s.o1, gamma_apply(s.pt, s.o2)));
    acc.note = std::to_string(rejected) + " draws rejected by the intersection-form conditions";
  });
  r.check("intersection.inverse", 1e-9, [&](Acc& acc) {
    for (const auto& s : samples) {
      acc.add(max_diff(gamma_apply(s.pt, gamma_inverse(s.pt, s.x, wide())), s.x));
      acc.add(max_diff(gamma_inverse(s.pt, gamma_apply(s.pt, s.o1), wide()), s.o1));
    }
  });
  r.check("intersection.metric", 1e-9, [&](Acc& acc) {
    for (const auto& s : samples) acc.add(intersection_metric(s.pt, s.x, s.y) - pair(gamma_inverse(s.pt, s.x, wide()), s.y));
  });
}

// ---------------------------------------------------------------- 6
void semisimplicity(Runner& r, const RunConfig& cfg) {
  std::vector<Point> pts;
  Rng rng(cfg.seed + 601);
  for (int p = 0; p < 15; ++p) pts.push_back(random_point(rng, family(cfg)));
  for (int p = 0; p < 10; ++p) pts.push_back(random_point(rng, inner_family(cfg)));
  r.check("semisimplicity.factorization", 1e-8, [&](Acc& acc) {
    Rng trng(cfg.seed + 602);
    for (const auto& pt : pts) {
      const Tangent x = random_tangent(trng), y = random_tangent(trng);
      acc.add(semisimplicity_residual(pt, x, y));
      acc.add(semisimplicity_residual(pt, flat_frame(pt, FlatIndex::t(0)), flat_frame(pt, FlatIndex::u())));
    }
  });
  r.check("semisimplicity.euler", 1e-10, [&](Acc& acc) {
    for (const auto& pt : pts) {
      const CanonicalData cd = canonical_data(pt, 256);
      const auto dE = du_pair(pt, cd.p, euler_field(pt));
      const auto de = du_pair(pt, cd.p, unit_vector());
      for (std::size_t j = 0; j < cd.p.size(); ++j) {
        acc.add(dE[j] - cd.u_sigma[j]);
        acc.add(de[j] - 1.0);
      }
      acc.add(sigma_condition_residual(pt, cd));
    }
  });
  r.check("semisimplicity.diagonality", 1e-8, [&](Acc& acc) {
    Rng trng(cfg.seed + 603);
    for (std::size_t p = 15; p < pts.size(); ++p)
      acc.add(diagonality_residual(pts[p], random_tangent(trng), random_tangent(trng)));
    acc.note = "Re u < 0 points";
  });
  r.check("semisimplicity.reconstruction", 1e-9, [&](Acc& acc) {
    Rng trng(cfg.seed + 604);
    for (std::size_t p = 15; p < pts.size(); ++p) {
      const Tangent x = random_tangent(trng);
      acc.add(max_diff(reconstruct_from_du(pts[p], x, wide()), x));
    }
    acc.note = "Re u < 0 points";
  });
}

// ---------------------------------------------------------------- 7
void charts(Runner& r, const RunConfig& cfg) {
  r.check("charts.point_chart_point", 1e-9, [&](Acc& acc) {
    Rng rng(cfg.seed + 701);
    PointFamily fam = family(cfg);
    fam.rho = 0.35;
    for (int p = 0; p < 5; ++p) {
      const Point pt = random_point(rng, fam);
      const FlatChart c = flat_coords(pt, 32);
      const Point back = point_from_flat(c, cfg.N);
      acc.add(std::max(max_diff(back.lambda, pt.lambda), max_diff(back.lambda_bar, pt.lambda_bar)));
    }
    acc.note = "tails 0.05*0.35^|d|, n_max = 32";
  });
  r.check("charts.chart_point_chart", 1e-9, [&](Acc& acc) {
    Rng rng(cfg.seed + 702);
    for (int p = 0; p < 3; ++p) {
      const FlatChart c = disk_chart(rng, 16);
      InverseChartOptions inv;
      inv.grid = 2048;
      const Point pt = point_from_flat(c, 200, inv);
      Numerics num;
      num.band = 400;
      num.grid = 4096;
      const FlatChart back = flat_coords(pt, 24, num);
      double e = std::max(std::abs(back.u - c.u), std::abs(back.v - c.v));
      for (int n = -24; n <= 24; ++n) e = std::max(e, std::abs(back.tn(n) - c.tn(n)));
      acc.add(e);
    }
    acc.note = "|t_n| <= 0.05*0.7^|n|, |n| <= 16, N = 200";
  });
  r.check("charts.identities", 1e-9, [&](Acc& acc) {
    Rng rng(cfg.seed + 703);
    PointFamily fam = family(cfg);
    fam.rho = 0.35;
    for (int p = 0; p < 5; ++p) {
      const Point pt = random_point(rng, fam);
      const FlatChart c = flat_coords(pt, 48);
      acc.add(pt.u0() + c.tn(-1) + c.v);
      const LaurentSeries g = pt.w().shift(-1);
      const std::size_t M = 1024;
      const cplx I = circle_integral(grid_eval(g, M) * grid_eval(log_on_circle(g, {-192, 192}, 1e-12, M), M));
      cplx q = 0.0;
      for (int i = -c.n_max; i <= c.n_max; ++i) q += 0.5 * c.tn(i) * c.tn(-1 - i);
      acc.add(I - (q - c.tn(-1)));
    }
    const FlatChart z = flat_coords(locus_point({0.2, 0.1}, {-0.3, 0.4}), 16);
    double m = 0;
    for (const auto& t : z.t) m = std::max(m, std::abs(t));
    acc.add(m);
  });
}

// ---------------------------------------------------------------- 8
double tangent_norm(const LoopTangent& x) { return x.max_abs(); }

cplx symbol_error(const LoopTangent& got, const Tangent& sym, int kappa) {
  const int K = got.a.K();
  double e = 0;
  auto cmp = [&](const LoopField& f, const LaurentSeries& s) {
    const int lo = std::min(f.empty() ? 0 : f.lo(), s.empty() ? 0 : s.lo());
    const int hi = std::max(f.empty() ? 0 : f.hi(), s.empty() ? 0 : s.hi());
    for (int d = lo; d <= hi; ++d)
      for (int k = 0; k < K; ++k) {
        const double x = 2.0 * M_PI * k / K;
        const cplx want = cplx(0.0, kappa) * s.coef(d) * std::exp(cplx(0.0, kappa * x));
        e = std::max(e, std::abs(f.at(d, k) - want));
      }
  };
  cmp(got.a, sym.a);
  cmp(got.ab, sym.ab);
  return e;
}

LoopCotangent modulated(const Cotangent& o, int K, int kappa) {
  std::vector<cplx> ph(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) ph[static_cast<std::size_t>(k)] = std::exp(cplx(0.0, kappa * 2.0 * M_PI * k / K));
  const LoopField e = LoopField::scalar(ph);
  return {LoopField::constant_in_x(o.w, K) * e, LoopField::constant_in_x(o.wb, K) * e};
}

LoopFamily loop_family(const RunConfig& cfg) {
  LoopFamily f;
  f.K = cfg.K;
  return f;
}

void hierarchy(Runner& r, const RunConfig& cfg) {
  r.check("hierarchy.skew", 1e-9, [&](Acc& acc) {
    Rng rng(cfg.seed + 801);
    for (int s = 0; s < 5; ++s) {
      const LoopPoint L = random_loop(rng, loop_family(cfg));
      const LoopCotangent o1 = random_loop_cotangent(rng, cfg.K), o2 = random_loop_cotangent(rng, cfg.K);
      acc.add(loop_pair(o1, poisson1_apply(L, o2)) + loop_pair(o2, poisson1_apply(L, o1)));
      acc.add(loop_pair(o1, poisson2_apply(L, o2)) + loop_pair(o2, poisson2_apply(L, o1)));
    }
  });
  r.check("hierarchy.symbols", 1e-9, [&](Acc& acc) {
    Rng rng(cfg.seed + 802);
    for (int s = 0; s < 5; ++s) {
      PointFamily fam;
      fam.N = 6;
      fam.u_center = -0.5;
      const Point pt = random_point(rng, fam);
      const LoopPoint L = constant_loop(pt, cfg.K);
      const Cotangent om = random_cotangent(rng, 4);
      for (int kappa : {1, 3}) {
        const LoopCotangent o = modulated(om, cfg.K, kappa);
        acc.add(symbol_error(poisson1_apply(L, o), eta_apply(pt, om), kappa));
        acc.add(symbol_error(poisson2_apply(L, o), gamma_apply(pt, om), kappa));
      }
    }
  });
  r.check("hierarchy.recursion", 1e-8, [&](Acc& acc) {
    Rng rng(cfg.seed + 803);
    for (int s = 0; s < 3; ++s) {
      const LoopPoint L = random_loop(rng, loop_family(cfg));
      for (int n : {1, 2})
        for (bool bar : {false, true}) {
          const RecursionReport rep = recursion_residual(L, n, bar);
          acc.add(rep.recursion);
          acc.add(rep.lax_vs_p1);
        }
    }
  });
  r.check("hierarchy.conservation", 1e-8, [&](Acc& acc) {
    Rng rng(cfg.seed + 804);
    const LoopPoint L = random_loop(rng, loop_family(cfg));
    const std::array<cplx, 3> h0{hamiltonian(L, 1, false), hamiltonian(L, 1, true), hamiltonian(L, 2, false)};
    std::ostringstream note;
    for (FlowTag f : {FlowTag::s(1), FlowTag::sbar(1), FlowTag::t(0)}) {
      const auto snaps = integrate(L, f, 0.1, 1e-3, 100);
      const LoopPoint& end = snaps.back().state;
      const std::array<cplx, 3> h1{hamiltonian(end, 1, false), hamiltonian(end, 1, true), hamiltonian(end, 2, false)};
      double m = 0;
      for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(h1[static_cast<std::size_t>(i)] - h0[static_cast<std::size_t>(i)]));
      acc.add(m);
      note << flow_name(f) << ":" << m << " ";
    }
    acc.note = note.str();
  });
  r.check("hierarchy.commutators", 1.0, [&](Acc& acc) {
    Rng rng(cfg.seed + 805);
    const LoopPoint L = random_loop(rng, loop_family(cfg));
    const std::vector<std::pair<FlowTag, FlowTag>> pairs{{FlowTag::s(1), FlowTag::sbar(1)},
                                                          {FlowTag::s(1), FlowTag::t(0)},
                                                          {FlowTag::t(-1), FlowTag::t(1)},
                                                          {FlowTag::t(0), FlowTag::u()},
                                                          {FlowTag::sbar(1), FlowTag::v()}};
    IntegratorOptions opt;
    opt.dealias = false;
    opt.N = 80;  // t^{+-1,0} feed products of tails and the slowly decaying log(w/z) into high degrees
    auto comm = [&](FlowTag a, FlowTag b, double h) {
      const LoopPoint ab = rk4_step(rk4_step(L, b, h, opt), a, h, opt);
      const LoopPoint ba = rk4_step(rk4_step(L, a, h, opt), b, h, opt);
      return std::max(max_diff(ab.lambda, ba.lambda), max_diff(ab.lambda_bar, ba.lambda_bar)) / (h * h);
    };
    std::ostringstream note;
    for (const auto& [a, b] : pairs) {
      const double c1 = comm(a, b, 0.04), c2 = comm(a, b, 0.02);
      // O(h) or better means c(h/2) <= c(h)/2; report c(h/2)/(c(h)/2), which must stay below 1.
      const double q = c2 < 1e-11 ? 0.0 : c2 / (0.5 * c1);
      acc.add(q);
      note << flow_name(a) << "," << flow_name(b) << ": " << c1 << " -> " << c2 << "; ";
    }
    acc.note = note.str();
  });
}

// ---------------------------------------------------------------- 9
void riemann(Runner& r, const RunConfig& cfg) {
  Rng rng(cfg.seed + 901);
  const LoopPoint L = random_loop(rng, loop_family(cfg));
  const LoopTangent Lx = loop_x_derivative(L);
  const auto p = circle_nodes(256);
  auto transport = [&](FlowTag f, const std::function<std::vector<cplx>(const Point&)>& vel) {
    const LoopTangent rhs = flow_rhs(L, f);
    double e = 0;
    for (int k = 0; k < L.K(); k += 4) {
      const Point pt = L.node(k);
      const auto dt = du_pair(pt, p, node(rhs, k));
      const auto dx = du_pair(pt, p, node(Lx, k));
      const auto A = vel(pt);
      for (std::size_t j = 0; j < p.size(); ++j) e = std::max(e, std::abs(dt[j] - A[j] * dx[j]));
    }
    return e;
  };
  r.check("riemann.primary", 1e-6, [&](Acc& acc) {
    for (FlowTag f : {FlowTag::t(0), FlowTag::u(), FlowTag::t(1), FlowTag::t(-1), FlowTag::v()})
      acc.add(transport(f, [&](const Point& pt) { return char_velocities(pt, f, p); }));
  });
  r.check("riemann.lax", 1e-6, [&](Acc& acc) {
    std::ostringstream note;
    note << "printed velocity residual:";
    for (int n : {1, 2, 3})
      for (bool bar : {false, true}) {
        const FlowTag f = bar ? FlowTag::sbar(n) : FlowTag::s(n);
        acc.add(transport(f, [&](const Point& pt) { return char_velocities(pt, f, p); }));
        note << " " << flow_name(f) << "=" << transport(f, [&](const Point& pt) { return printed_lax_velocities(pt, f, p); });
      }
    acc.note = note.str();
  });
}

// ---------------------------------------------------------------- 10
void kernel(Runner& r, const RunConfig& cfg) {
  r.check("kernel.rk4_order", 2.0, [&](Acc& acc) {
    Rng rng(cfg.seed + 1001);
    LoopFamily fam = loop_family(cfg);
    fam.amp = 0.1;
    const LoopPoint L = random_loop(rng, fam);
    const double T = 0.2;
    IntegratorOptions opt;
    opt.N = 40;  // s_1 raises the top degree of lambda-bar by one per stage
    auto run = [&](double h) { return integrate(L, FlowTag::s(1), T, h, 0, opt).back().state; };
    const LoopPoint a = run(0.02), b = run(0.01), c = run(0.005);
    const double e1 = std::max(max_diff(a.lambda, b.lambda), max_diff(a.lambda_bar, b.lambda_bar));
    const double e2 = std::max(max_diff(b.lambda, c.lambda), max_diff(b.lambda_bar, c.lambda_bar));
    const double ratio = e1 / e2;
    acc.add(std::abs(ratio - 16.0));
    acc.note = "error ratio " + std::to_string(ratio);
  });
  r.check("kernel.adjoint", 1e-12, [&](Acc& acc) {
    Rng rng(cfg.seed + 1002);
    for (int s = 0; s < 50; ++s) {
      const LaurentSeries f = random_series(rng, -8, 8, 1.0, 0.9), g = random_series(rng, -8, 8, 1.0, 0.9);
      for (int k = -5; k <= 5; ++k) acc.add(residue_integral(f * geq(g, k)) - residue_integral(leq(f, -k - 1) * g));
    }
  });
  r.check("kernel.certification", 1e-11, [&](Acc& acc) {
    Rng rng(cfg.seed + 1003);
    const Band band{-96, 96};
    const std::size_t M = 512;
    for (int s = 0; s < 20; ++s) {
      const LaurentSeries f = LaurentSeries::constant(1.0) + random_series(rng, -10, 10, 0.1, 0.7);
      const CircleGrid F = grid_eval(f, M);
      const CircleGrid R = grid_eval(reciprocal_on_circle(f, band), M);
      const CircleGrid Lg = grid_eval(log_on_circle(f, band), M);
      for (std::size_t j = 0; j < M; ++j) {
        acc.add(F[j] * R[j] - 1.0);
        acc.add(std::exp(Lg[j]) - F[j]);
      }
    }
  });
}

}  // namespace

Suite run_suite(const std::string& key, const RunConfig& cfg) {
  static const std::map<std::string, std::pair<int, std::string>> titles{
      {"gram", {1, "Gram constancy"}},
      {"frobenius", {2, "Frobenius axioms"}},
      {"potential", {3, "Potential consistency"}},
      {"tables", {4, "Multiplication tables"}},
      {"intersection", {5, "Intersection form"}},
      {"semisimplicity", {6, "Semisimplicity"}},
      {"charts", {7, "Chart round-trips"}},
      {"hierarchy", {8, "Hierarchy"}},
      {"riemann", {9, "Riemann-invariant transport"}},
      {"kernel", {10, "Numerical kernel"}}};
  const auto it = titles.find(key);
  if (it == titles.end()) throw Error(ErrorKind::InvalidArgument, "unknown suite '" + key + "'");
  Suite s;
  s.id = it->second.first;
  s.key = key;
  s.title = it->second.second;
  Runner r(s, cfg);
  const auto t0 = std::chrono::steady_clock::now();
  if (key == "gram") gram(r, cfg);
  else if (key == "frobenius") frobenius(r, cfg);
  else if (key == "potential") potential(r, cfg);
  else if (key == "tables") tables(r, cfg);
  else if (key == "intersection") intersection(r, cfg);
  else if (key == "semisimplicity") semisimplicity(r, cfg);
  else if (key == "charts") charts(r, cfg);
  else if (key == "hierarchy") hierarchy(r, cfg);
  else if (key == "riemann") riemann(r, cfg);
  else kernel(r, cfg);
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

}  // namespace toda::suites
