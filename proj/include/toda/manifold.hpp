#pragma once

#include "toda/laurent.hpp"

namespace toda {

// Controls for the operations that leave the banded world (division and log on the circle).
struct Numerics {
  int band = 192;           // certified band is [-band, band]
  std::size_t grid = 0;     // 0 selects default_grid_size from the band
  double tail_tol = 1e-12;
};

std::size_t quadrature_grid(const Numerics& num, int width);

struct Point {
  LaurentSeries lambda;      // degrees <= 1, z^1 coefficient exactly 1
  LaurentSeries lambda_bar;  // degrees >= -1

  cplx u0() const { return lambda.coef(0); }
  cplx um1() const { return lambda.coef(-1); }
  cplx ubm1() const { return lambda_bar.coef(-1); }
  cplx ub0() const { return lambda_bar.coef(0); }
  cplx ub1() const { return lambda_bar.coef(1); }
  LaurentSeries w() const { return lambda + lambda_bar; }
  cplx u() const { return std::log(ubm1()); }
  cplx v() const { return ub0(); }
};

// Validates the band layout, u_1 = 1 and u-bar_{-1} != 0 (InvalidPoint otherwise).
Point make_point(LaurentSeries lambda, LaurentSeries lambda_bar);
// lambda = z - v - e^u/z, lambda_bar = v + e^u/z.
Point locus_point(cplx u, cplx v);

struct Tangent {
  LaurentSeries a;   // degrees <= 0
  LaurentSeries ab;  // degrees >= -1
  bool in_bands() const { return (a.empty() || a.hi() <= 0) && (ab.empty() || ab.lo() >= -1); }
};

struct Cotangent {
  LaurentSeries w;   // degrees >= -1
  LaurentSeries wb;  // degrees <= 0
  bool in_bands() const { return (w.empty() || w.lo() >= -1) && (wb.empty() || wb.hi() <= 0); }
};

Tangent operator+(const Tangent& x, const Tangent& y);
Tangent operator-(const Tangent& x, const Tangent& y);
Tangent operator*(cplx s, const Tangent& x);
Cotangent operator+(const Cotangent& x, const Cotangent& y);
Cotangent operator-(const Cotangent& x, const Cotangent& y);
Cotangent operator*(cplx s, const Cotangent& x);
double max_diff(const Tangent& x, const Tangent& y);
double max_diff(const Cotangent& x, const Cotangent& y);

cplx pair(const Cotangent& omega, const Tangent& alpha);

Cotangent cot_mul(const Point& pt, const Cotangent& o1, const Cotangent& o2);
Tangent eta_apply(const Point& pt, const Cotangent& o);
Cotangent eta_inverse(const Point& pt, const Tangent& x, const Numerics& num = {});
cplx metric_tangent(const Point& pt, const Tangent& x, const Tangent& y, const Numerics& num = {});
Tangent tan_mul(const Point& pt, const Tangent& x, const Tangent& y, const Numerics& num = {});

Cotangent unit_cotangent(const Point& pt);  // (0, 1/u-bar_{-1})
Tangent unit_vector();                      // (-1, 1)
Tangent euler_field(const Point& pt);

// Variations of u = log u-bar_{-1} and v = u-bar_0 along a tangent vector.
cplx du_of(const Point& pt, const Tangent& x);
cplx dv_of(const Tangent& x);
// d(ell) = ab_0 + ab_{-1}/z for ell = z + v + e^u/z.
LaurentSeries ell_variation(const Tangent& x);

Tangent gamma_apply(const Point& pt, const Cotangent& o);
Cotangent gamma_inverse(const Point& pt, const Tangent& x, const Numerics& num = {});
cplx intersection_metric(const Point& pt, const Tangent& x, const Tangent& y, const Numerics& num = {});

struct MembershipReport {
  std::size_t grid = 0;
  // Nondegeneracy of the flat metric.
  double margin_ubm1 = 0;
  double margin_wprime = 0;
  bool metric_ok = false;
  // M0: additionally Gamma = w(S^1) simple and winding +1 around the origin.
  int winding_w = 0;
  double simplicity = 0;  // min distance of non-adjacent samples over the diameter
  bool m0 = false;
  // Intersection form: lambda', lambda-bar', lambda lambda-bar' - lambda-bar lambda' nonvanishing,
  // plus the windings that place the zeros of lambda' inside and those of z^2 lambda-bar'
  // outside the unit disk (needed by gamma_inverse and the du(p) reconstruction).
  double margin_lambda_prime = 0;
  double margin_lambda_bar_prime = 0;
  double margin_inter_det = 0;
  int winding_lambda_prime = 0;
  int winding_z2_lambda_bar_prime = 0;
  bool intersection_ok = false;
  // Semisimplicity: lambda' lambda-bar'' - lambda-bar' lambda'' nonvanishing.
  double margin_semisimple = 0;
  bool semisimple_ok = false;
};

MembershipReport check_membership(const Point& pt, std::size_t M = 512);

// Heuristic self-intersection test for a sampled closed curve.
double curve_simplicity(const std::vector<cplx>& samples);

}  // namespace toda
