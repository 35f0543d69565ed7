#pragma once

#include <vector>

#include "toda/manifold.hpp"

namespace toda {

struct FlatChart {
  int n_max = 0;
  std::vector<cplx> t;  // t[n + n_max] for |n| <= n_max
  cplx u = 0.0;
  cplx v = 0.0;

  static FlatChart zeros(int n_max, cplx u = 0.0, cplx v = 0.0);
  cplx tn(int n) const;
  void set_tn(int n, cplx value);
};

// Forward chart: t_n = (1/2 pi i) oint log(z/w) w^{-n-1} w' dz, u = log u-bar_{-1}, v = u-bar_0.
FlatChart flat_coords(const Point& pt, int n_max, const Numerics& num = {});

struct InverseChartOptions {
  std::size_t grid = 0;  // 0: default_grid_size(2N)
  int max_iter = 50;
  double step_tol = 1e-13;
  double residual_tol = 1e-12;
  double tail_tol = 1e-12;
};

// Inverse chart: Newton solve of z = w exp(sum t_n w^n) on the grid, then split w by degree.
Point point_from_flat(const FlatChart& chart, int N, const InverseChartOptions& opt = {});

enum class Coord { T, U, V };

struct FlatIndex {
  Coord kind = Coord::T;
  int n = 0;
  static FlatIndex t(int n) { return {Coord::T, n}; }
  static FlatIndex u() { return {Coord::U, 0}; }
  static FlatIndex v() { return {Coord::V, 0}; }
  friend bool operator==(const FlatIndex&, const FlatIndex&) = default;
  friend auto operator<=>(const FlatIndex&, const FlatIndex&) = default;
};

// w^n; negative powers go through the circle with a certified band.
LaurentSeries w_power(const LaurentSeries& w, int n, const Numerics& num = {});

Tangent flat_frame(const Point& pt, FlatIndex idx, const Numerics& num = {});
// Differentials of the flat coordinates as cotangent vectors.
Cotangent flat_differential(const Point& pt, FlatIndex idx, const Numerics& num = {});

// d t_n / d w_m = -(1/2 pi i) oint w^{-n-1} z^{m-1} dz.
cplx jacobian_t_w(const Point& pt, int n, int m, const Numerics& num = {});

// Shift a chart along one flat direction.
FlatChart shifted(const FlatChart& c, FlatIndex idx, cplx step);

}  // namespace toda
