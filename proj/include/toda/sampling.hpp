#pragma once

#include <cstdint>
#include <random>

#include "toda/manifold.hpp"

namespace toda {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
  // Uniform in the square |Re|, |Im| <= r.
  cplx box(double r) { return {uniform(-r, r), uniform(-r, r)}; }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  // Uniform in the disk |c| <= r.
  cplx disk(double r);

 private:
  std::mt19937_64 eng_;
};

struct PointFamily {
  int N = 24;
  double amp = 0.05;   // tail coefficient of degree d bounded by amp * rho^|d|
  double rho = 0.7;
  cplx u_center = 0.0;
  double u_radius = 0.3;
  cplx v_center = 0.0;
  double v_radius = 0.3;
};

// lambda = z - v - e^u/z + tail(-N..-2), lambda_bar = v + e^u/z + tail(1..N).
Point random_point(Rng& rng, const PointFamily& fam = {});
// Entries in degrees [lo, hi] with magnitude scale * rho^|d|.
LaurentSeries random_series(Rng& rng, int lo, int hi, double scale, double rho);
Tangent random_tangent(Rng& rng, int n = 6);
Cotangent random_cotangent(Rng& rng, int n = 6);

}  // namespace toda
