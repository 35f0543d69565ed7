#include "toda/canonical.hpp"

#include <algorithm>
#include <cmath>

#include "toda/flatcoords.hpp"

namespace toda {

namespace {

std::vector<cplx> eval_at(const LaurentSeries& f, const std::vector<cplx>& p) {
  std::vector<cplx> r(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) r[j] = evaluate(f, p[j]);
  return r;
}

void check_w_prime(const std::vector<cplx>& wp) {
  double m = INFINITY, big = 0;
  for (const cplx& v : wp) {
    m = std::min(m, std::abs(v));
    big = std::max(big, std::abs(v));
  }
  if (!(m > 1e-10 * std::max(1.0, big))) throw Error(ErrorKind::ZeroOnCircle, "w' vanishes on the circle");
}

}  // namespace

CanonicalData canonical_data(const Point& pt, std::size_t M) {
  CanonicalData cd;
  cd.p = circle_nodes(M);
  const auto L = grid_eval(pt.lambda, M).values, Lb = grid_eval(pt.lambda_bar, M).values;
  const auto Lp = grid_eval(derivative(pt.lambda), M).values;
  const auto Lbp = grid_eval(derivative(pt.lambda_bar), M).values;
  std::vector<cplx> wp(M);
  for (std::size_t j = 0; j < M; ++j) wp[j] = Lp[j] + Lbp[j];
  check_w_prime(wp);
  cd.sigma.resize(M);
  cd.u_sigma.resize(M);
  cd.f.resize(M);
  for (std::size_t j = 0; j < M; ++j) {
    const cplx s = Lp[j] / wp[j];
    cd.sigma[j] = s;
    cd.u_sigma[j] = s * Lb[j] + (s - 1.0) * L[j];
    cd.f[j] = -cd.p[j] * cd.p[j] * Lp[j] * Lbp[j] / wp[j];
  }
  cd.simplicity = curve_simplicity(cd.sigma);
  cd.self_intersecting = !(cd.simplicity > 1e-6);
  return cd;
}

double sigma_condition_residual(const Point& pt, const CanonicalData& cd) {
  double r = 0;
  const auto Lp = eval_at(derivative(pt.lambda), cd.p), Lbp = eval_at(derivative(pt.lambda_bar), cd.p);
  for (std::size_t j = 0; j < cd.p.size(); ++j)
    r = std::max(r, std::abs(cd.sigma[j] * Lbp[j] + (cd.sigma[j] - 1.0) * Lp[j]));
  return r;
}

std::vector<cplx> du_pair(const Point& pt, const std::vector<cplx>& p, const Tangent& x) {
  const auto Lp = eval_at(derivative(pt.lambda), p), Lbp = eval_at(derivative(pt.lambda_bar), p);
  const auto A = eval_at(x.a, p), Ab = eval_at(x.ab, p);
  std::vector<cplx> wp(p.size()), r(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) wp[j] = Lp[j] + Lbp[j];
  check_w_prime(wp);
  for (std::size_t j = 0; j < p.size(); ++j) r[j] = (Lp[j] * Ab[j] - Lbp[j] * A[j]) / wp[j];
  return r;
}

cplx du_pair(const Point& pt, cplx p, const Tangent& x) { return du_pair(pt, std::vector<cplx>{p}, x)[0]; }

double semisimplicity_residual(const Point& pt, const Tangent& x, const Tangent& y, std::size_t M,
                               const Numerics& num) {
  const auto p = circle_nodes(M);
  const auto dx = du_pair(pt, p, x), dy = du_pair(pt, p, y), dxy = du_pair(pt, p, tan_mul(pt, x, y, num));
  double r = 0;
  for (std::size_t j = 0; j < M; ++j) r = std::max(r, std::abs(dxy[j] - dx[j] * dy[j]));
  return r;
}

cplx diagonality_residual(const Point& pt, const Tangent& x, const Tangent& y, std::size_t M,
                          const Numerics& num) {
  const CanonicalData cd = canonical_data(pt, M);
  const auto dx = du_pair(pt, cd.p, x), dy = du_pair(pt, cd.p, y);
  CircleGrid g;
  g.values.resize(M);
  for (std::size_t j = 0; j < M; ++j) g.values[j] = dx[j] * dy[j] / cd.f[j];
  return metric_tangent(pt, x, y, num) - circle_integral(g);
}

Tangent reconstruct_from_du(const Point& pt, const Tangent& x, const Numerics& num) {
  const LaurentSeries lp = derivative(pt.lambda), lbp = derivative(pt.lambda_bar);
  const Band band{-num.band, num.band};
  const LaurentSeries a = quotient_on_circle(x.a, lp, band, num.tail_tol, num.grid) -
                          quotient_on_circle(x.ab, lbp, band, num.tail_tol, num.grid);
  return {lp * leq(a, 0), -(lbp * geq(a, 1))};
}

std::vector<cplx> char_velocities(const Point& pt, FlowTag flow, const std::vector<cplx>& p,
                                  const Numerics& num) {
  std::vector<cplx> r(p.size());
  switch (flow.kind) {
    case FlowKind::V:
      std::fill(r.begin(), r.end(), cplx(1.0));
      return r;
    case FlowKind::U:
      for (std::size_t j = 0; j < p.size(); ++j) r[j] = pt.ubm1() / p[j];
      return r;
    case FlowKind::S: {
      const auto g = eval_at(geq(z_derivative(power(pt.lambda, flow.n)), 0), p);
      return g;
    }
    case FlowKind::SBar: {
      const auto g = eval_at(leq(z_derivative(power(pt.lambda_bar, flow.n)), -1), p);
      return g;
    }
    case FlowKind::T: break;
  }
  const LaurentSeries w = pt.w();
  const LaurentSeries q = w_power(w, flow.n, num) * derivative(w);
  const auto Lp = eval_at(derivative(pt.lambda), p), Lbp = eval_at(derivative(pt.lambda_bar), p);
  const auto qp = eval_at(geq(q, 0), p), qm = eval_at(leq(q, -1), p);
  for (std::size_t j = 0; j < p.size(); ++j) {
    const cplx s = Lp[j] / (Lp[j] + Lbp[j]);
    r[j] = -p[j] * (s * qp[j] + (s - 1.0) * qm[j]);
  }
  return r;
}

std::vector<cplx> printed_lax_velocities(const Point& pt, FlowTag flow, const std::vector<cplx>& p) {
  if (flow.kind == FlowKind::SBar) return eval_at(leq(z_derivative(pt.lambda_bar), -1), p);
  return eval_at(geq(z_derivative(pt.lambda), 0), p);
}

}  // namespace toda
