#pragma once

#include <array>

#include "toda/flatcoords.hpp"

namespace toda {

// Unordered triple of flat directions; stored sorted so equality is order-insensitive.
class TripleIndex {
 public:
  TripleIndex(FlatIndex a, FlatIndex b, FlatIndex c);
  const std::array<FlatIndex, 3>& slots() const { return s_; }
  int count(Coord k) const;
  friend bool operator==(const TripleIndex&, const TripleIndex&) = default;

 private:
  std::array<FlatIndex, 3> s_;
};

cplx potential_F(const Point& pt, const Numerics& num = {});

struct TripleOptions {
  Numerics num;
  std::size_t double_grid = 512;  // per-axis size of the torus rule for the t t t double integral
};

cplx triple_derivative_flat(const Point& pt, const TripleIndex& idx, const TripleOptions& opt = {});

// <x . y, z> from the circle integral of w/s variations and the z = 0 residue of the ell part.
cplx trilinear_form(const Point& pt, const Tangent& x, const Tangent& y, const Tangent& z,
                    const Numerics& num = {});

// E F - 2F - (1/2)(u-bar_0 - u_0) (1/2 pi i) oint w dz/z - u-bar_0^2, with E F by a centered
// difference along the Euler field.
cplx quasihomogeneity_residual(const Point& pt, double step = 1e-5, const Numerics& num = {});

}  // namespace toda
