#include "toda/sampling.hpp"

#include <cmath>

namespace toda {

cplx Rng::disk(double r) {
  for (;;) {
    const cplx c = box(1.0);
    if (std::abs(c) <= 1.0) return r * c;
  }
}

LaurentSeries random_series(Rng& rng, int lo, int hi, double scale, double rho) {
  if (hi < lo) return {};
  std::vector<cplx> c;
  for (int d = lo; d <= hi; ++d) c.push_back(scale * std::pow(rho, std::abs(d)) * rng.box(1.0));
  return LaurentSeries(lo, std::move(c));
}

Point random_point(Rng& rng, const PointFamily& fam) {
  const cplx u = fam.u_center + rng.box(fam.u_radius);
  const cplx v = fam.v_center + rng.box(fam.v_radius);
  const cplx eu = std::exp(u);
  LaurentSeries lam = LaurentSeries(-1, {-eu, -v, 1.0}) + random_series(rng, -fam.N, -2, fam.amp, fam.rho);
  LaurentSeries lb = LaurentSeries(-1, {eu, v}) + random_series(rng, 1, fam.N, fam.amp, fam.rho);
  return make_point(std::move(lam), std::move(lb));
}

Tangent random_tangent(Rng& rng, int n) {
  return {random_series(rng, -n, 0, 1.0, 0.8), random_series(rng, -1, n, 1.0, 0.8)};
}

Cotangent random_cotangent(Rng& rng, int n) {
  return {random_series(rng, -1, n, 1.0, 0.8), random_series(rng, -n, 0, 1.0, 0.8)};
}

}  // namespace toda
