#pragma once

#include <functional>
#include <vector>

#include "toda/flows.hpp"
#include "toda/manifold.hpp"
#include "toda/sampling.hpp"

namespace toda {

// Function of (z, x): z-degrees lo..hi, each stored as values at the K nodes x_k = 2 pi k / K.
class LoopField {
 public:
  explicit LoopField(int K = 32) : K_(K) {}
  LoopField(int lo, int K, std::vector<cplx> data);  // data[(d - lo) * K + k]

  static LoopField constant_in_x(const LaurentSeries& f, int K);
  static LoopField from_nodes(const std::vector<LaurentSeries>& nodes);
  // Degree-0 field with the given nodal values.
  static LoopField scalar(const std::vector<cplx>& values);

  int K() const { return K_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + degrees() - 1; }
  int degrees() const { return static_cast<int>(data_.size()) / K_; }
  bool empty() const { return data_.empty(); }
  cplx at(int d, int k) const;
  std::vector<cplx> degree(int d) const;
  LaurentSeries node(int k) const;
  double max_abs() const;

  LoopField shift(int k) const;
  LoopField operator-() const;
  friend LoopField operator+(const LoopField& a, const LoopField& b);
  friend LoopField operator-(const LoopField& a, const LoopField& b);
  friend LoopField operator*(const LoopField& a, const LoopField& b);
  friend LoopField operator*(const LoopField& a, cplx s);
  friend LoopField operator*(cplx s, const LoopField& a) { return a * s; }

 private:
  void trim();
  int K_ = 32;
  int lo_ = 0;
  std::vector<cplx> data_;
};

LoopField geq(const LoopField& f, int k);
LoopField leq(const LoopField& f, int k);
LoopField z_derivative(const LoopField& f);
LoopField derivative(const LoopField& f);
// Spectral x-derivative (Nyquist mode dropped).
LoopField x_derivative(const LoopField& f);
// Zero the x-modes with |m| > K/3.
LoopField dealias(const LoopField& f);
double max_diff(const LoopField& a, const LoopField& b);
// Keep degrees in [lo, hi]; `discarded` receives the largest dropped magnitude.
LoopField truncate(const LoopField& f, int lo, int hi, double* discarded = nullptr);

struct LoopPoint {
  LoopField lambda, lambda_bar;
  int K() const { return lambda.K(); }
  Point node(int k) const;
};
struct LoopTangent {
  LoopField a, ab;
  double max_abs() const { return std::max(a.max_abs(), ab.max_abs()); }
};
struct LoopCotangent {
  LoopField w, wb;
};

LoopTangent operator+(const LoopTangent& x, const LoopTangent& y);
LoopTangent operator-(const LoopTangent& x, const LoopTangent& y);
LoopTangent operator*(cplx s, const LoopTangent& x);
double max_diff(const LoopTangent& x, const LoopTangent& y);
LoopPoint operator+(const LoopPoint& L, const LoopTangent& x);

LoopPoint constant_loop(const Point& pt, int K);
LoopTangent loop_x_derivative(const LoopPoint& L);
// The nodal values of a tangent / cotangent, as manifold objects.
Tangent node(const LoopTangent& x, int k);
Cotangent node(const LoopCotangent& o, int k);

// x-average of the nodewise residue pairing.
cplx loop_pair(const LoopCotangent& o, const LoopTangent& x);

// {f, g} = z f_z g_x - z g_z f_x
LoopField pb(const LoopField& f, const LoopField& g);

struct LoopNumerics {
  int band = 64;  // certified z-band for nodewise negative powers and logarithms
  double tail_tol = 1e-12;
};

LoopTangent lax_rhs(const LoopPoint& L, FlowTag flow);
LoopTangent primary_rhs(const LoopPoint& L, FlowTag flow, const LoopNumerics& num = {});
// Dispatch on the tag: S/SBar to lax_rhs, everything else to primary_rhs.
LoopTangent flow_rhs(const LoopPoint& L, FlowTag flow, const LoopNumerics& num = {});

// H_n = -(1/(n+1)) x-average of the z^0 coefficient of lambda^{n+1} (lambda-bar when bar).
cplx hamiltonian(const LoopPoint& L, int n, bool bar);
LoopCotangent gradient(const LoopPoint& L, int n, bool bar);

LoopTangent poisson1_apply(const LoopPoint& L, const LoopCotangent& o);
LoopTangent poisson2_apply(const LoopPoint& L, const LoopCotangent& o);

struct RecursionReport {
  double recursion = 0;    // |P1 dH_n +/- P2 dH_{n-1}|
  double lax_vs_p1 = 0;    // |lax_rhs(s_n) - P1 dH_n|
};
RecursionReport recursion_residual(const LoopPoint& L, int n, bool bar);

struct IntegratorOptions {
  int N = 16;              // stored z-band: lambda in [-N, 1], lambda-bar in [-1, N]
  double tail_tol = 1e-8;  // largest coefficient allowed to fall outside the band per step
  double blowup = 1e6;
  bool dealias = true;     // 2/3 rule on every right-hand side
  LoopNumerics num;
};

struct StepInfo {
  double tail = 0;  // largest coefficient dropped by the band truncation
};

LoopPoint rk4_step(const LoopPoint& L, FlowTag flow, double h, const IntegratorOptions& opt = {},
                   StepInfo* info = nullptr);

struct Snapshot {
  int step = 0;
  double time = 0;
  LoopPoint state;
  double tail = 0;
};
// Fixed-step integration over [0, T]; `every` controls which steps are kept (always the first and last).
std::vector<Snapshot> integrate(const LoopPoint& L, FlowTag flow, double T, double h, int every = 1,
                                const IntegratorOptions& opt = {});

struct LoopFamily {
  int K = 32;
  int N = 6;
  double tail = 0.05;
  double rho = 0.5;
  double amp = 0.05;  // size of the x-dependent Fourier modes
  int modes = 2;      // x-modes |m| <= modes
  cplx ubm1_center = 0.8;
  cplx v_center = 0.1;
};

// Band-limited in x: u-bar_{-1}(x), v(x) and every tail coefficient are Fourier polynomials.
LoopPoint random_loop(Rng& rng, const LoopFamily& fam = {});
LoopCotangent random_loop_cotangent(Rng& rng, int K = 32, int n = 4, int modes = 2);
// Degree-0 Fourier polynomial with modes |m| <= modes, coefficients amp * N(0,1) complex.
std::vector<cplx> random_modes(Rng& rng, int K, double amp, int modes);

}  // namespace toda
