#pragma once

#include <vector>

#include "toda/flows.hpp"
#include "toda/manifold.hpp"

namespace toda {

struct CanonicalData {
  std::vector<cplx> p;      // grid on the unit circle
  std::vector<cplx> sigma;  // lambda'/(lambda' + lambda-bar')
  std::vector<cplx> u_sigma;
  std::vector<cplx> f;      // -p^2 lambda' lambda-bar' / w'
  double simplicity = 0;    // curve_simplicity of the sigma trace
  bool self_intersecting = false;
};

CanonicalData canonical_data(const Point& pt, std::size_t M = 256);

// sigma lambda-bar' + (sigma - 1) lambda' on the grid; zero by construction.
double sigma_condition_residual(const Point& pt, const CanonicalData& cd);

// du(p)(x) = (lambda' ab - lambda-bar' a)/(lambda' + lambda-bar') at each grid node.
std::vector<cplx> du_pair(const Point& pt, const std::vector<cplx>& p, const Tangent& x);
cplx du_pair(const Point& pt, cplx p, const Tangent& x);

double semisimplicity_residual(const Point& pt, const Tangent& x, const Tangent& y, std::size_t M = 256,
                               const Numerics& num = {});

// metric_tangent(x, y) - (1/2 pi i) oint du(p)(x) du(p)(y) / f(p) dp
cplx diagonality_residual(const Point& pt, const Tangent& x, const Tangent& y, std::size_t M = 512,
                          const Numerics& num = {});

// Rebuild (a, ab) from a(p) = a/lambda' - ab/lambda-bar' sampled on the circle.
Tangent reconstruct_from_du(const Point& pt, const Tangent& x, const Numerics& num = {});

// Characteristic velocity V(p) with d/dt du(p)(L) = V(p) du(p)(L_x) on the grid.
std::vector<cplx> char_velocities(const Point& pt, FlowTag flow, const std::vector<cplx>& p,
                                  const Numerics& num = {});
// The n-independent velocity printed for the Lax flows: [p lambda']_{>=0} or [p lambda-bar']_{<0}.
std::vector<cplx> printed_lax_velocities(const Point& pt, FlowTag flow, const std::vector<cplx>& p);

}  // namespace toda
