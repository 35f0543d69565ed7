#include "toda/flatcoords.hpp"

#include <algorithm>
#include <cmath>

namespace toda {

FlatChart FlatChart::zeros(int n_max, cplx u, cplx v) {
  FlatChart c;
  c.n_max = n_max;
  c.t.assign(static_cast<std::size_t>(2 * n_max + 1), 0.0);
  c.u = u;
  c.v = v;
  return c;
}

cplx FlatChart::tn(int n) const {
  if (n < -n_max || n > n_max) return 0.0;
  return t[static_cast<std::size_t>(n + n_max)];
}

void FlatChart::set_tn(int n, cplx value) {
  if (n < -n_max || n > n_max) {
    const int grow = std::abs(n);
    std::vector<cplx> nt(static_cast<std::size_t>(2 * grow + 1), 0.0);
    for (int k = -n_max; k <= n_max; ++k) nt[static_cast<std::size_t>(k + grow)] = tn(k);
    t = std::move(nt);
    n_max = grow;
  }
  t[static_cast<std::size_t>(n + n_max)] = value;
}

FlatChart flat_coords(const Point& pt, int n_max, const Numerics& num) {
  const LaurentSeries w = pt.w();
  const int width = (n_max + 2) * std::max(1, w.hi() - w.lo());
  const std::size_t M = num.grid ? num.grid : std::min<std::size_t>(default_grid_size(width + num.band), 1u << 15);
  // log(w/z) winds zero times exactly when Gamma winds once around the origin.
  const LaurentSeries lg = log_on_circle(w.shift(-1), {-num.band, num.band}, num.tail_tol, M);
  const CircleGrid L = grid_eval(lg, M);
  const CircleGrid W = grid_eval(w, M);
  const CircleGrid Wp = grid_eval(derivative(w), M);

  FlatChart c = FlatChart::zeros(n_max, pt.u(), pt.v());
  // base = w^{-n-1} starting from n = -n_max, i.e. w^{n_max - 1}.
  CircleGrid base = W;
  for (auto& b : base.values) b = std::pow(b, n_max - 1);
  CircleGrid winv = W;
  for (auto& b : winv.values) b = 1.0 / b;
  for (int n = -n_max; n <= n_max; ++n) {
    c.set_tn(n, -circle_integral(L * base * Wp));
    base = base * winv;
  }
  return c;
}

Point point_from_flat(const FlatChart& chart, int N, const InverseChartOptions& opt) {
  const std::size_t M = opt.grid ? opt.grid : default_grid_size(2 * N);
  const auto z = circle_nodes(M);
  std::vector<int> active;
  for (int n = -chart.n_max; n <= chart.n_max; ++n)
    if (chart.tn(n) != cplx(0.0)) active.push_back(n);

  auto residual = [&](cplx wj, cplx zj, cplx* jac) {
    cplx S = 0.0, Sp = 0.0;
    for (int n : active) {
      const cplx tn = chart.tn(n);
      S += tn * std::pow(wj, n);
      Sp += static_cast<double>(n) * tn * std::pow(wj, n - 1);
    }
    const cplx e = std::exp(S);
    if (jac) *jac = e * (1.0 + wj * Sp);
    return wj * e - zj;
  };

  CircleGrid W;
  W.values = z;
  for (std::size_t j = 0; j < M; ++j) {
    cplx wj = z[j];
    cplx jac;
    cplx F = residual(wj, z[j], &jac);
    bool done = false;
    for (int it = 0; it < opt.max_iter && !done; ++it) {
      cplx step = F / jac;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
        throw Error(ErrorKind::NewtonDiverged, "non-finite Newton step");
      // Halve the step while the residual grows.
      cplx trial = wj - step;
      cplx jt;
      cplx Ft = residual(trial, z[j], &jt);
      for (int h = 0; h < 40 && !(std::abs(Ft) <= std::abs(F)); ++h) {
        step *= 0.5;
        trial = wj - step;
        Ft = residual(trial, z[j], &jt);
      }
      wj = trial;
      F = Ft;
      jac = jt;
      done = std::abs(step) < opt.step_tol * std::max(1.0, std::abs(wj)) || std::abs(F) < 1e-15;
    }
    if (!done || !(std::abs(F) < opt.residual_tol))
      throw Error(ErrorKind::NewtonDiverged, "Newton did not converge at a grid node");
    W.values[j] = wj;
  }
  int wind = 0;
  try {
    wind = winding_number(W);
  } catch (const Error&) {
    wind = 0;
  }
  if (wind != 1) throw Error(ErrorKind::NewtonDiverged, "recovered curve does not wind once around 0");

  LaurentSeries w = certified_series(W, {-N, N}, opt.tail_tol);
  const cplx eu = std::exp(chart.u);
  LaurentSeries lam = leq(w, 0) + LaurentSeries(-1, {-eu, -chart.v, 1.0});
  LaurentSeries lb = geq(w, 1) + LaurentSeries(-1, {eu, chart.v, -1.0});
  return make_point(std::move(lam), std::move(lb));
}

LaurentSeries w_power(const LaurentSeries& w, int n, const Numerics& num) {
  if (n >= 0) return power(w, n);
  const std::size_t M = num.grid ? num.grid : default_grid_size(2 * num.band + (w.hi() - w.lo()));
  CircleGrid g = grid_eval(w, M);
  for (auto& v : g.values) {
    if (v == cplx(0.0)) throw Error(ErrorKind::ZeroOnCircle, "w vanishes on the circle");
    v = std::pow(v, n);
  }
  return certified_series(g, {-num.band, num.band}, num.tail_tol);
}

Tangent flat_frame(const Point& pt, FlatIndex idx, const Numerics& num) {
  switch (idx.kind) {
    case Coord::V:
      return unit_vector();
    case Coord::U: {
      const cplx eu = pt.ubm1();
      return {LaurentSeries::monomial(-1, -eu), LaurentSeries::monomial(-1, eu)};
    }
    case Coord::T: break;
  }
  const LaurentSeries w = pt.w();
  const LaurentSeries q = w_power(w, idx.n, num) * derivative(w);
  return {-leq(q, -1).shift(1), -geq(q, 0).shift(1)};
}

Cotangent flat_differential(const Point& pt, FlatIndex idx, const Numerics& num) {
  switch (idx.kind) {
    case Coord::U: return {{}, LaurentSeries::constant(1.0 / pt.ubm1())};
    case Coord::V: return {{}, LaurentSeries::monomial(-1, 1.0)};
    case Coord::T: break;
  }
  const LaurentSeries p = w_power(pt.w(), -idx.n - 1, num);
  return {-geq(p, 0).shift(-1), -leq(p, 1).shift(-1)};
}

cplx jacobian_t_w(const Point& pt, int n, int m, const Numerics& num) {
  return -w_power(pt.w(), -n - 1, num).coef(-m);
}

FlatChart shifted(const FlatChart& c, FlatIndex idx, cplx step) {
  FlatChart r = c;
  switch (idx.kind) {
    case Coord::U: r.u += step; break;
    case Coord::V: r.v += step; break;
    case Coord::T: r.set_tn(idx.n, r.tn(idx.n) + step); break;
  }
  return r;
}

}  // namespace toda
