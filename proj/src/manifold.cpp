#include "toda/manifold.hpp"

#include <algorithm>
#include <cmath>

namespace toda {

namespace {

LaurentSeries z_times(const LaurentSeries& f, int k) { return f.shift(k); }

CircleGrid z_power_grid(std::size_t M, int k) {
  CircleGrid g;
  g.values = circle_nodes(M);
  for (auto& v : g.values) v = std::pow(v, k);
  return g;
}

int width_of(const LaurentSeries& f) { return f.empty() ? 0 : f.hi() - f.lo(); }

}  // namespace

std::size_t quadrature_grid(const Numerics& num, int width) {
  return num.grid ? num.grid : default_grid_size(width + num.band);
}

Point make_point(LaurentSeries lambda, LaurentSeries lambda_bar) {
  if (lambda.empty() || lambda.hi() != 1 || lambda.coef(1) != cplx(1.0))
    throw Error(ErrorKind::InvalidPoint, "lambda must be z + lower-order terms");
  if (lambda_bar.empty() || lambda_bar.lo() < -1)
    throw Error(ErrorKind::InvalidPoint, "lambda_bar must start at degree >= -1");
  if (!(std::abs(lambda_bar.coef(-1)) > 1e-10))
    throw Error(ErrorKind::InvalidPoint, "u-bar_{-1} vanishes");
  return Point{std::move(lambda), std::move(lambda_bar)};
}

Point locus_point(cplx u, cplx v) {
  const cplx eu = std::exp(u);
  return make_point(LaurentSeries(-1, {-eu, -v, 1.0}), LaurentSeries(-1, {eu, v}));
}

Tangent operator+(const Tangent& x, const Tangent& y) { return {x.a + y.a, x.ab + y.ab}; }
Tangent operator-(const Tangent& x, const Tangent& y) { return {x.a - y.a, x.ab - y.ab}; }
Tangent operator*(cplx s, const Tangent& x) { return {x.a * s, x.ab * s}; }
Cotangent operator+(const Cotangent& x, const Cotangent& y) { return {x.w + y.w, x.wb + y.wb}; }
Cotangent operator-(const Cotangent& x, const Cotangent& y) { return {x.w - y.w, x.wb - y.wb}; }
Cotangent operator*(cplx s, const Cotangent& x) { return {x.w * s, x.wb * s}; }
double max_diff(const Tangent& x, const Tangent& y) {
  return std::max(max_diff(x.a, y.a), max_diff(x.ab, y.ab));
}
double max_diff(const Cotangent& x, const Cotangent& y) {
  return std::max(max_diff(x.w, y.w), max_diff(x.wb, y.wb));
}

cplx pair(const Cotangent& omega, const Tangent& alpha) {
  return residue_integral(omega.w * alpha.a + omega.wb * alpha.ab);
}

Cotangent cot_mul(const Point& pt, const Cotangent& o1, const Cotangent& o2) {
  const LaurentSeries lp = derivative(pt.lambda);
  const LaurentSeries lbp = derivative(pt.lambda_bar);
  const LaurentSeries A1 = lp * o1.w + lbp * o1.wb;
  const LaurentSeries A2 = lp * o2.w + lbp * o2.wb;
  const LaurentSeries mixed = o1.w * o2.wb + o1.wb * o2.w;
  LaurentSeries first = o1.w * geq(A2, -1) + o2.w * geq(A1, -1) - geq(lp * o1.w * o2.w + lbp * mixed, -3);
  LaurentSeries second =
      leq(lbp * o1.wb * o2.wb + lp * mixed, -2) - o1.wb * leq(A2, -2) - o2.wb * leq(A1, -2);
  return {z_times(first, 2), z_times(second, 2)};
}

Tangent eta_apply(const Point& pt, const Cotangent& o) {
  const LaurentSeries lp = derivative(pt.lambda);
  const LaurentSeries lbp = derivative(pt.lambda_bar);
  const LaurentSeries A = lp * o.w + lbp * o.wb;
  const LaurentSeries d = o.w - o.wb;
  return {z_times(leq(A, -2) - lp * leq(d, -2), 2), z_times(geq(A, -1) + lbp * geq(d, -1), 2)};
}

Cotangent eta_inverse(const Point& pt, const Tangent& x, const Numerics& num) {
  const LaurentSeries q =
      quotient_on_circle(x.a + x.ab, derivative(pt.w()), {-num.band, num.band}, num.tail_tol, num.grid);
  const cplx ubm1 = pt.ubm1();
  const LaurentSeries ell = LaurentSeries(-1, {x.ab.coef(-1) / ubm1, x.ab.coef(0) / ubm1});
  return {geq(q, 1).shift(-2), leq(q, 2).shift(-2) + ell};
}

LaurentSeries ell_variation(const Tangent& x) { return LaurentSeries(-1, {x.ab.coef(-1), x.ab.coef(0)}); }
cplx du_of(const Point& pt, const Tangent& x) { return x.ab.coef(-1) / pt.ubm1(); }
cplx dv_of(const Tangent& x) { return x.ab.coef(0); }

cplx metric_tangent(const Point& pt, const Tangent& x, const Tangent& y, const Numerics& num) {
  const LaurentSeries dx = x.a + x.ab;
  const LaurentSeries dy = y.a + y.ab;
  const LaurentSeries wp = derivative(pt.w());
  const std::size_t M = quadrature_grid(num, width_of(dx) + width_of(dy) + width_of(wp));
  const CircleGrid wpg = grid_eval(wp, M);
  if (!(min_abs(wpg) > 0)) throw Error(ErrorKind::ZeroOnCircle, "w' vanishes on the circle");
  const cplx circle = circle_integral(grid_eval(dx, M) * grid_eval(dy, M) / (wpg * z_power_grid(M, 2)));
  // z^2 ell' = z^2 - e^u
  const LaurentSeries z2ellp(0, {-pt.ubm1(), 0.0, 1.0});
  const LaurentSeries num_ell = ell_variation(x) * ell_variation(y);
  const int order = std::max(0, -1 - num_ell.lo());
  const cplx at_zero = residue_integral(num_ell * taylor_reciprocal_at_zero(z2ellp, order));
  return circle - at_zero;
}

Tangent tan_mul(const Point& pt, const Tangent& x, const Tangent& y, const Numerics& num) {
  return eta_apply(pt, cot_mul(pt, eta_inverse(pt, x, num), eta_inverse(pt, y, num)));
}

Cotangent unit_cotangent(const Point& pt) { return {{}, LaurentSeries::constant(1.0 / pt.ubm1())}; }
Tangent unit_vector() { return {LaurentSeries::constant(-1.0), LaurentSeries::constant(1.0)}; }

Tangent euler_field(const Point& pt) {
  return {pt.lambda - z_derivative(pt.lambda), pt.lambda_bar - z_derivative(pt.lambda_bar)};
}

Tangent gamma_apply(const Point& pt, const Cotangent& o) {
  const LaurentSeries lp = derivative(pt.lambda);
  const LaurentSeries lbp = derivative(pt.lambda_bar);
  const Tangent E = euler_field(pt);
  const LaurentSeries B = E.a * o.w + E.ab * o.wb;
  const LaurentSeries A = lp * o.w + lbp * o.wb;
  return {z_times(lp * leq(B, -2) - E.a * leq(A, -2), 2),
          z_times(E.ab * geq(A, -1) - lbp * geq(B, -1), 2)};
}

Cotangent gamma_inverse(const Point& pt, const Tangent& x, const Numerics& num) {
  const LaurentSeries lp = derivative(pt.lambda);
  const LaurentSeries lbp = derivative(pt.lambda_bar);
  const Band band{-num.band, num.band};
  const LaurentSeries det = pt.lambda * lbp - pt.lambda_bar * lp;
  const LaurentSeries Q = quotient_on_circle(lbp * x.a - lp * x.ab, det, band, num.tail_tol, num.grid);
  const LaurentSeries w = geq(quotient_on_circle(geq(Q, 1), lp, band, num.tail_tol, num.grid), 1);
  const LaurentSeries wb = leq(quotient_on_circle(leq(Q, 0), lbp, band, num.tail_tol, num.grid), 2);
  return {w.shift(-2), -wb.shift(-2)};
}

cplx intersection_metric(const Point& pt, const Tangent& x, const Tangent& y, const Numerics& num) {
  const LaurentSeries lp = derivative(pt.lambda);
  const LaurentSeries lbp = derivative(pt.lambda_bar);
  const int width = width_of(x.a) + width_of(x.ab) + width_of(y.a) + width_of(y.ab) + width_of(pt.w());
  const std::size_t M = quadrature_grid(num, width);
  const CircleGrid Lp = grid_eval(lp, M), Lbp = grid_eval(lbp, M);
  if (!(min_abs(Lp) > 0) || !(min_abs(Lbp) > 0))
    throw Error(ErrorKind::ZeroOnCircle, "lambda' or lambda-bar' vanishes on the circle");
  const CircleGrid X = grid_eval(x.a, M) / Lp - grid_eval(x.ab, M) / Lbp;
  const CircleGrid Y = grid_eval(y.a, M) / Lp - grid_eval(y.ab, M) / Lbp;
  const CircleGrid D = grid_eval(pt.lambda, M) / Lp - grid_eval(pt.lambda_bar, M) / Lbp;
  if (!(min_abs(D) > 0)) throw Error(ErrorKind::ZeroOnCircle, "intersection denominator vanishes");
  return circle_integral(X * Y / (D * z_power_grid(M, 2)));
}

double curve_simplicity(const std::vector<cplx>& s) {
  const std::size_t M = s.size();
  double diam = 0.0;
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = i + 1; j < M; ++j) diam = std::max(diam, std::abs(s[i] - s[j]));
  if (diam == 0.0) return 0.0;
  const std::size_t guard = 2;
  double best = INFINITY;
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = i + guard + 1; j < M; ++j) {
      if (M - (j - i) <= guard) continue;
      best = std::min(best, std::abs(s[i] - s[j]));
    }
  return best / diam;
}

MembershipReport check_membership(const Point& pt, std::size_t M) {
  constexpr double floor = 1e-8;
  MembershipReport r;
  r.grid = M;
  const LaurentSeries lp = derivative(pt.lambda);
  const LaurentSeries lbp = derivative(pt.lambda_bar);
  const CircleGrid W = grid_eval(pt.w(), M);
  const CircleGrid Wp = grid_eval(lp + lbp, M);

  r.margin_ubm1 = std::abs(pt.ubm1());
  r.margin_wprime = min_abs(Wp);
  r.metric_ok = r.margin_ubm1 > 1e-10 && r.margin_wprime > floor;

  auto safe_winding = [](const CircleGrid& g) {
    try {
      return winding_number(g);
    } catch (const Error&) {
      return 999;
    }
  };
  r.winding_w = safe_winding(W);
  r.simplicity = curve_simplicity(W.values);
  r.m0 = r.metric_ok && r.winding_w == 1 && r.simplicity > 1e-6;

  const CircleGrid Lp = grid_eval(lp, M), Lbp = grid_eval(lbp, M);
  r.margin_lambda_prime = min_abs(Lp);
  r.margin_lambda_bar_prime = min_abs(Lbp);
  r.margin_inter_det = min_abs(grid_eval(pt.lambda * lbp - pt.lambda_bar * lp, M));
  r.winding_lambda_prime = safe_winding(Lp);
  r.winding_z2_lambda_bar_prime = safe_winding(grid_eval(lbp.shift(2), M));
  r.intersection_ok = r.margin_lambda_prime > floor && r.margin_lambda_bar_prime > floor && r.margin_inter_det > floor &&
             r.winding_lambda_prime == 0 && r.winding_z2_lambda_bar_prime == 0;

  r.margin_semisimple = min_abs(grid_eval(lp * derivative(lbp) - lbp * derivative(lp), M));
  r.semisimple_ok = r.margin_semisimple > floor;
  return r;
}

}  // namespace toda
