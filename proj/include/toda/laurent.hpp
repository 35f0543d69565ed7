#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "toda/error.hpp"

namespace toda {

using cplx = std::complex<double>;

// Banded Laurent polynomial sum_{d=lo}^{hi} c_d z^d. Only exact zeros are trimmed,
// so the band reported by lo()/hi() is the band the arithmetic produced.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(int lo, std::vector<cplx> coeffs);

  static LaurentSeries monomial(int degree, cplx c = 1.0);
  static LaurentSeries constant(cplx c) { return monomial(0, c); }

  bool empty() const { return c_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const std::vector<cplx>& coeffs() const { return c_; }

  cplx coef(int degree) const;
  double max_abs() const;

  // Multiplication by z^k.
  LaurentSeries shift(int k) const;

  LaurentSeries operator-() const;
  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator-=(const LaurentSeries& o);
  LaurentSeries& operator*=(cplx s);

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.lo_ == b.lo_ && a.c_ == b.c_;
  }

 private:
  void normalize();
  int lo_ = 0;
  std::vector<cplx> c_;
};

LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b);
LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b);
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator*(LaurentSeries a, cplx s);
LaurentSeries operator*(cplx s, LaurentSeries a);
LaurentSeries operator+(LaurentSeries a, cplx s);
LaurentSeries operator-(LaurentSeries a, cplx s);

// Largest coefficient difference over the union of both bands.
double max_diff(const LaurentSeries& a, const LaurentSeries& b);

LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries power(const LaurentSeries& f, int n);

enum class Proj { Geq, Leq };
LaurentSeries project(const LaurentSeries& f, Proj mode, int k);
inline LaurentSeries geq(const LaurentSeries& f, int k) { return project(f, Proj::Geq, k); }
inline LaurentSeries leq(const LaurentSeries& f, int k) { return project(f, Proj::Leq, k); }
// (f)_{>=0} - (f)_{<=-1}
LaurentSeries pi_op(const LaurentSeries& f);

cplx residue_integral(const LaurentSeries& f);
LaurentSeries derivative(const LaurentSeries& f);
LaurentSeries z_derivative(const LaurentSeries& f);

cplx evaluate(const LaurentSeries& f, cplx z);

// Samples at z_j = exp(2 pi i j / M).
struct CircleGrid {
  std::vector<cplx> values;
  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t j) { return values[j]; }
  const cplx& operator[](std::size_t j) const { return values[j]; }
};

CircleGrid operator+(const CircleGrid& a, const CircleGrid& b);
CircleGrid operator-(const CircleGrid& a, const CircleGrid& b);
CircleGrid operator*(const CircleGrid& a, const CircleGrid& b);
CircleGrid operator/(const CircleGrid& a, const CircleGrid& b);
CircleGrid operator*(const CircleGrid& a, cplx s);

std::vector<cplx> circle_nodes(std::size_t M);
bool is_power_of_two(std::size_t M);
// Smallest power of two strictly larger than 4 * (width + 8).
std::size_t default_grid_size(int band_width);

CircleGrid grid_eval(const LaurentSeries& f, std::size_t M);
// Exact recovery requires M > hi - lo; otherwise BandTooWide.
LaurentSeries grid_to_series(const CircleGrid& g, int lo, int hi);
// Every DFT coefficient of the samples, index k holding degree k (mod M).
std::vector<cplx> grid_coefficients(const CircleGrid& g);

// (1/2 pi i) contour integral of f dz over |z| = 1, trapezoid rule.
cplx circle_integral(const CircleGrid& f);
// (1/2 pi i) contour integral of f dz / z, i.e. the mean of the samples.
cplx circle_mean(const CircleGrid& f);

struct Band {
  int lo;
  int hi;
};

// Samples -> series on `band`; the DFT coefficients outside the band must stay
// below tail_tol * max|coefficient| (TruncationLoss otherwise).
LaurentSeries certified_series(const CircleGrid& g, Band band, double tail_tol);

LaurentSeries reciprocal_on_circle(const LaurentSeries& f, Band band, double tail_tol = 1e-12,
                                   std::size_t M = 0);
LaurentSeries quotient_on_circle(const LaurentSeries& num, const LaurentSeries& den, Band band,
                                 double tail_tol = 1e-12, std::size_t M = 0);

// Number of turns of the sampled closed curve around 0. Adjacent phase steps
// above pi/2 make the count unreliable (WindingUnresolved).
int winding_number(const CircleGrid& g);

// Unwrapped principal log of the samples; requires zero winding.
CircleGrid log_samples(const CircleGrid& g);
LaurentSeries log_on_circle(const LaurentSeries& f, Band band, double tail_tol = 1e-12,
                            std::size_t M = 0);

LaurentSeries taylor_reciprocal_at_zero(const LaurentSeries& f, int order);

// Smallest |sample|; used for nonvanishing margins.
double min_abs(const CircleGrid& g);

}  // namespace toda
