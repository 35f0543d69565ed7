#include "toda/potential.hpp"

#include <algorithm>
#include <cmath>

namespace toda {

TripleIndex::TripleIndex(FlatIndex a, FlatIndex b, FlatIndex c) : s_{a, b, c} {
  std::sort(s_.begin(), s_.end());
}

int TripleIndex::count(Coord k) const {
  return static_cast<int>(std::count_if(s_.begin(), s_.end(), [k](const FlatIndex& f) { return f.kind == k; }));
}

cplx potential_F(const Point& pt, const Numerics& num) {
  const LaurentSeries w = pt.w();
  cplx first = 0.0;
  for (int k = 1; k <= std::max(w.hi(), -w.lo()); ++k)
    first -= 0.5 * w.coef(k) * w.coef(-k) / static_cast<double>(k);

  const LaurentSeries g = w.shift(-1);
  const std::size_t M = quadrature_grid(num, w.hi() - w.lo());
  const LaurentSeries lg = log_on_circle(g, {-num.band, num.band}, num.tail_tol, M);
  const cplx I = circle_integral(grid_eval(g, M) * grid_eval(lg, M));

  const cplx u0 = pt.u0(), ub0 = pt.ub0(), ubm1 = pt.ubm1();
  return first + 0.5 * (ub0 - u0) * (I - u0 - ub0) + 0.5 * ub0 * ub0 * std::log(ubm1) + ubm1 + pt.um1() +
         ubm1 * pt.ub1();
}

namespace {

double kron(int a, int b) { return a == b ? 1.0 : 0.0; }

std::vector<cplx> powers(const std::vector<cplx>& W, int n) {
  std::vector<cplx> r(W.size());
  for (std::size_t j = 0; j < W.size(); ++j) r[j] = std::pow(W[j], n);
  return r;
}

cplx ttt(const Point& pt, int i, int j, int k, const TripleOptions& opt) {
  const LaurentSeries w = pt.w();
  const LaurentSeries wp = derivative(w);
  const std::size_t M = opt.double_grid;
  const auto z = circle_nodes(M);
  const auto W = grid_eval(w, M).values;
  const auto Wp = grid_eval(wp, M).values;
  const auto Wi = powers(W, i), Wj = powers(W, j), Wk = powers(W, k);

  // (1/(2 pi i)^2) oint oint z1/(z2 - z1) (w1^i - w2^i)(w1^j - w2^j)(w1^k - w2^k) dw1 dw2, with
  // dw = w' z d(theta)/i. The integrand extends continuously by 0 to the diagonal.
  cplx dbl = 0.0;
  for (std::size_t a = 0; a < M; ++a) {
    const cplx wa = Wp[a] * z[a];
    cplx row = 0.0;
    for (std::size_t b = 0; b < M; ++b) {
      if (a == b) continue;
      const cplx kern = z[a] / (z[b] - z[a]);
      row += kern * (Wi[a] - Wi[b]) * (Wj[a] - Wj[b]) * (Wk[a] - Wk[b]) * Wp[b] * z[b];
    }
    dbl += row * wa;
  }
  dbl /= static_cast<double>(M) * static_cast<double>(M);

  const std::size_t M1 = quadrature_grid(opt.num, w.hi() - w.lo());
  const auto zs = circle_nodes(M1);
  const auto W1 = grid_eval(w, M1).values;
  const auto Wp1 = grid_eval(wp, M1).values;
  const cplx eu = pt.ubm1();
  CircleGrid single;
  single.values.resize(M1);
  for (std::size_t a = 0; a < M1; ++a)
    single.values[a] = (zs[a] + eu / zs[a]) * std::pow(W1[a], i + j + k) * Wp1[a];

  const double delta = 0.5 * (kron(i, -1) * kron(j + k, -1) + kron(j, -1) * kron(k + i, -1) +
                              kron(k, -1) * kron(i + j, -1));
  return 0.5 * dbl - circle_integral(single) + delta;
}

// (1/2 pi i) oint w^n w' dz / z
cplx mean_wn_wp(const Point& pt, int n, const Numerics& num) {
  const LaurentSeries w = pt.w();
  const std::size_t M = quadrature_grid(num, (std::abs(n) + 1) * (w.hi() - w.lo()));
  CircleGrid g = grid_eval(w, M);
  const CircleGrid wp = grid_eval(derivative(w), M);
  for (std::size_t a = 0; a < M; ++a) g.values[a] = std::pow(g.values[a], n) * wp.values[a];
  return circle_mean(g);
}

}  // namespace

cplx triple_derivative_flat(const Point& pt, const TripleIndex& idx, const TripleOptions& opt) {
  const int nt = idx.count(Coord::T), nu = idx.count(Coord::U), nv = idx.count(Coord::V);
  const auto& s = idx.slots();  // sorted: T entries first, then U, then V
  const cplx eu = pt.ubm1();
  if (nv > 0) {
    if (nv == 1 && nt == 2) return kron(s[0].n + s[1].n, -1);
    if (nv == 2 && nu == 1) return 1.0;
    return 0.0;
  }
  if (nt == 3) return ttt(pt, s[0].n, s[1].n, s[2].n, opt);
  if (nt == 2) return eu * mean_wn_wp(pt, s[0].n + s[1].n, opt.num);
  if (nt == 1) return -eu * mean_wn_wp(pt, s[0].n, opt.num);
  return eu * (mean_wn_wp(pt, 0, opt.num) - 1.0);
}

cplx trilinear_form(const Point& pt, const Tangent& x, const Tangent& y, const Tangent& zt,
                    const Numerics& num) {
  const std::array<const Tangent*, 3> v{&x, &y, &zt};
  const LaurentSeries w = pt.w();
  const LaurentSeries s = pt.lambda_bar - pt.lambda;
  int width = 2 * (w.hi() - w.lo());
  for (const Tangent* t : v) width += std::max(t->a.size(), t->ab.size()) + 2;
  const std::size_t M = quadrature_grid(num, width);

  std::array<CircleGrid, 3> dw, ds;
  for (int i = 0; i < 3; ++i) {
    dw[i] = grid_eval(v[i]->a + v[i]->ab, M);
    ds[i] = grid_eval(v[i]->ab - v[i]->a, M);
  }
  const CircleGrid wp = grid_eval(derivative(w), M);
  const CircleGrid sp = grid_eval(derivative(s), M);
  if (!(min_abs(wp) > 0)) throw Error(ErrorKind::ZeroOnCircle, "w' vanishes on the circle");
  const auto z = circle_nodes(M);

  CircleGrid f;
  f.values.resize(M);
  for (std::size_t j = 0; j < M; ++j) {
    const cplx a = dw[0][j], b = dw[1][j], c = dw[2][j];
    const cplx mixed = a * b * ds[2][j] + a * ds[1][j] * c + ds[0][j] * b * c;
    const cplx z2 = z[j] * z[j];
    f.values[j] = mixed / (z2 * wp[j]) - sp[j] * a * b * c / (z2 * wp[j] * wp[j]);
  }
  const cplx circle = 0.5 * circle_integral(f);

  std::array<LaurentSeries, 3> dl, dm;
  for (int i = 0; i < 3; ++i) {
    dl[i] = ell_variation(*v[i]);
    dm[i] = geq(v[i]->ab, 1);
  }
  const LaurentSeries top = dm[0] * dl[1] * dl[2] + dl[0] * dm[1] * dl[2] + dl[0] * dl[1] * dm[2] +
                            dl[0] * dl[1] * dl[2];
  const int order = std::max(0, -1 - top.lo());
  const LaurentSeries rec = taylor_reciprocal_at_zero(derivative(pt.lambda_bar).shift(2), order);
  return circle - residue_integral(top * rec);
}

cplx quasihomogeneity_residual(const Point& pt, double step, const Numerics& num) {
  const Tangent E = euler_field(pt);
  const Point plus = make_point(pt.lambda + E.a * step, pt.lambda_bar + E.ab * step);
  const Point minus = make_point(pt.lambda - E.a * step, pt.lambda_bar - E.ab * step);
  const cplx EF = (potential_F(plus, num) - potential_F(minus, num)) / (2.0 * step);
  const cplx ub0 = pt.ub0(), u0 = pt.u0();
  return EF - 2.0 * potential_F(pt, num) - 0.5 * (ub0 - u0) * pt.w().coef(0) - ub0 * ub0;
}

}  // namespace toda
