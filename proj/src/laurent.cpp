#include "toda/laurent.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace toda {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::BandTooWide: return "BandTooWide";
    case ErrorKind::ZeroOnCircle: return "ZeroOnCircle";
    case ErrorKind::WindingNonzero: return "WindingNonzero";
    case ErrorKind::WindingUnresolved: return "WindingUnresolved";
    case ErrorKind::TruncationLoss: return "TruncationLoss";
    case ErrorKind::SingularAtZero: return "SingularAtZero";
    case ErrorKind::NewtonDiverged: return "NewtonDiverged";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::TailOverflow: return "TailOverflow";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::InvalidPoint: return "InvalidPoint";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- series

LaurentSeries::LaurentSeries(int lo, std::vector<cplx> coeffs) : lo_(lo), c_(std::move(coeffs)) {
  normalize();
}

LaurentSeries LaurentSeries::monomial(int degree, cplx c) { return LaurentSeries(degree, {c}); }

void LaurentSeries::normalize() {
  std::size_t first = 0;
  while (first < c_.size() && c_[first] == cplx(0.0)) ++first;
  if (first == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  std::size_t last = c_.size();
  while (c_[last - 1] == cplx(0.0)) --last;
  if (first > 0 || last < c_.size()) {
    c_ = std::vector<cplx>(c_.begin() + static_cast<std::ptrdiff_t>(first),
                           c_.begin() + static_cast<std::ptrdiff_t>(last));
    lo_ += static_cast<int>(first);
  }
}

cplx LaurentSeries::coef(int d) const {
  const long i = static_cast<long>(d) - lo_;
  if (i < 0 || i >= static_cast<long>(c_.size())) return 0.0;
  return c_[static_cast<std::size_t>(i)];
}

double LaurentSeries::max_abs() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

LaurentSeries LaurentSeries::shift(int k) const {
  LaurentSeries r = *this;
  if (!r.empty()) r.lo_ += k;
  return r;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
  if (o.empty()) return *this;
  if (empty()) return *this = o;
  const int lo = std::min(lo_, o.lo_);
  const int hi = std::max(this->hi(), o.hi());
  std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) c[static_cast<std::size_t>(lo_ - lo) + i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) c[static_cast<std::size_t>(o.lo_ - lo) + i] += o.c_[i];
  lo_ = lo;
  c_ = std::move(c);
  normalize();
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) { return *this += -o; }

LaurentSeries& LaurentSeries::operator*=(cplx s) {
  for (auto& c : c_) c *= s;
  normalize();
  return *this;
}

LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return series_mul(a, b); }
LaurentSeries operator*(LaurentSeries a, cplx s) { return a *= s; }
LaurentSeries operator*(cplx s, LaurentSeries a) { return a *= s; }
LaurentSeries operator+(LaurentSeries a, cplx s) { return a += LaurentSeries::constant(s); }
LaurentSeries operator-(LaurentSeries a, cplx s) { return a -= LaurentSeries::constant(s); }

double max_diff(const LaurentSeries& a, const LaurentSeries& b) { return (a - b).max_abs(); }

LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.empty() || b.empty()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<cplx> c(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == cplx(0.0)) continue;
    for (std::size_t j = 0; j < y.size(); ++j) c[i + j] += x[i] * y[j];
  }
  return LaurentSeries(a.lo() + b.lo(), std::move(c));
}

LaurentSeries power(const LaurentSeries& f, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "power: negative exponent needs a circle reciprocal");
  LaurentSeries r = LaurentSeries::constant(1.0);
  LaurentSeries base = f;
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return r;
}

LaurentSeries project(const LaurentSeries& f, Proj mode, int k) {
  if (f.empty()) return {};
  std::vector<cplx> c;
  if (mode == Proj::Geq) {
    if (f.hi() < k) return {};
    const int s = std::max(k, f.lo());
    c.assign(f.coeffs().begin() + (s - f.lo()), f.coeffs().end());
    return LaurentSeries(s, std::move(c));
  }
  if (f.lo() > k) return {};
  const int e = std::min(k, f.hi());
  c.assign(f.coeffs().begin(), f.coeffs().begin() + (e - f.lo() + 1));
  return LaurentSeries(f.lo(), std::move(c));
}

LaurentSeries pi_op(const LaurentSeries& f) { return geq(f, 0) - leq(f, -1); }

cplx residue_integral(const LaurentSeries& f) { return f.coef(-1); }

LaurentSeries derivative(const LaurentSeries& f) {
  if (f.empty()) return {};
  std::vector<cplx> c(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) c[i] = f.coeffs()[i] * static_cast<double>(f.lo() + static_cast<int>(i));
  return LaurentSeries(f.lo() - 1, std::move(c));
}

LaurentSeries z_derivative(const LaurentSeries& f) { return derivative(f).shift(1); }

cplx evaluate(const LaurentSeries& f, cplx z) {
  if (f.empty()) return 0.0;
  cplx acc = 0.0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * z + f.coeffs()[i];
  return acc * std::pow(z, f.lo());
}

// ------------------------------------------------------------------ grid

namespace {

struct Plans {
  fftw_plan fwd;
  fftw_plan bwd;
};

Plans plans_for(std::size_t M) {
  static std::mutex mu;
  static std::map<std::size_t, Plans> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * M));
  const int n = static_cast<int>(M);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  Plans p{fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, flags),
          fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, flags)};
  fftw_free(buf);
  cache.emplace(M, p);
  return p;
}

void transform(std::vector<cplx>& v, bool forward) {
  const Plans p = plans_for(v.size());
  auto* data = reinterpret_cast<fftw_complex*>(v.data());
  fftw_execute_dft(forward ? p.fwd : p.bwd, data, data);
}

std::size_t wrap(long d, std::size_t M) {
  const long m = static_cast<long>(M);
  return static_cast<std::size_t>(((d % m) + m) % m);
}

CircleGrid zip(const CircleGrid& a, const CircleGrid& b, auto op) {
  if (a.size() != b.size()) throw Error(ErrorKind::GridMismatch, "circle grids differ in size");
  CircleGrid r;
  r.values.resize(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r.values[j] = op(a.values[j], b.values[j]);
  return r;
}

}  // namespace

CircleGrid operator+(const CircleGrid& a, const CircleGrid& b) { return zip(a, b, std::plus<cplx>()); }
CircleGrid operator-(const CircleGrid& a, const CircleGrid& b) { return zip(a, b, std::minus<cplx>()); }
CircleGrid operator*(const CircleGrid& a, const CircleGrid& b) { return zip(a, b, std::multiplies<cplx>()); }
CircleGrid operator/(const CircleGrid& a, const CircleGrid& b) { return zip(a, b, std::divides<cplx>()); }
CircleGrid operator*(const CircleGrid& a, cplx s) {
  CircleGrid r = a;
  for (auto& v : r.values) v *= s;
  return r;
}

std::vector<cplx> circle_nodes(std::size_t M) {
  std::vector<cplx> z(M);
  for (std::size_t j = 0; j < M; ++j)
    z[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(M));
  return z;
}

bool is_power_of_two(std::size_t M) { return M > 0 && (M & (M - 1)) == 0; }

std::size_t default_grid_size(int band_width) {
  const std::size_t need = 4 * static_cast<std::size_t>(std::max(band_width, 0) + 8);
  std::size_t M = 1;
  while (M <= need) M <<= 1;
  return M;
}

CircleGrid grid_eval(const LaurentSeries& f, std::size_t M) {
  if (!is_power_of_two(M)) throw Error(ErrorKind::InvalidArgument, "grid size must be a power of two");
  CircleGrid g;
  g.values.assign(M, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) g.values[wrap(f.lo() + static_cast<long>(i), M)] += f.coeffs()[i];
  transform(g.values, false);
  return g;
}

std::vector<cplx> grid_coefficients(const CircleGrid& g) {
  std::vector<cplx> c = g.values;
  transform(c, true);
  const double inv = 1.0 / static_cast<double>(c.size());
  for (auto& v : c) v *= inv;
  return c;
}

LaurentSeries grid_to_series(const CircleGrid& g, int lo, int hi) {
  const std::size_t M = g.size();
  if (hi < lo) return {};
  if (static_cast<long>(M) <= static_cast<long>(hi) - lo) {
    std::ostringstream os;
    os << "band [" << lo << ", " << hi << "] needs more than " << M << " samples";
    throw Error(ErrorKind::BandTooWide, os.str());
  }
  const auto c = grid_coefficients(g);
  std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1));
  for (int d = lo; d <= hi; ++d) out[static_cast<std::size_t>(d - lo)] = c[wrap(d, M)];
  return LaurentSeries(lo, std::move(out));
}

cplx circle_mean(const CircleGrid& f) {
  cplx s = 0.0;
  for (const auto& v : f.values) s += v;
  return s / static_cast<double>(f.size());
}

cplx circle_integral(const CircleGrid& f) {
  const auto z = circle_nodes(f.size());
  cplx s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) s += f.values[j] * z[j];
  return s / static_cast<double>(f.size());
}

double min_abs(const CircleGrid& g) {
  double m = INFINITY;
  for (const auto& v : g.values) m = std::min(m, std::abs(v));
  return m;
}

LaurentSeries certified_series(const CircleGrid& g, Band band, double tail_tol) {
  const std::size_t M = g.size();
  if (static_cast<long>(M) <= static_cast<long>(band.hi) - band.lo)
    throw Error(ErrorKind::BandTooWide, "certified_series: band wider than grid");
  const auto c = grid_coefficients(g);
  std::vector<bool> kept(M, false);
  for (int d = band.lo; d <= band.hi; ++d) kept[wrap(d, M)] = true;
  double top = 0.0, tail = 0.0;
  for (std::size_t k = 0; k < M; ++k) {
    top = std::max(top, std::abs(c[k]));
    if (!kept[k]) tail = std::max(tail, std::abs(c[k]));
  }
  if (tail > tail_tol * top) {
    std::ostringstream os;
    os << "discarded tail " << tail << " exceeds " << tail_tol << " * " << top;
    throw Error(ErrorKind::TruncationLoss, os.str());
  }
  std::vector<cplx> out(static_cast<std::size_t>(band.hi - band.lo + 1));
  for (int d = band.lo; d <= band.hi; ++d) out[static_cast<std::size_t>(d - band.lo)] = c[wrap(d, M)];
  return LaurentSeries(band.lo, std::move(out));
}

namespace {

std::size_t pick_grid(std::size_t M, int width) { return M ? M : default_grid_size(width); }

void require_nonvanishing(const CircleGrid& g, const char* what) {
  double mx = 0.0;
  for (const auto& v : g.values) mx = std::max(mx, std::abs(v));
  if (!(min_abs(g) > 1e-10 * mx)) throw Error(ErrorKind::ZeroOnCircle, what);
}

}  // namespace

LaurentSeries reciprocal_on_circle(const LaurentSeries& f, Band band, double tail_tol, std::size_t M) {
  return quotient_on_circle(LaurentSeries::constant(1.0), f, band, tail_tol, M);
}

LaurentSeries quotient_on_circle(const LaurentSeries& num, const LaurentSeries& den, Band band,
                                 double tail_tol, std::size_t M) {
  const int width = std::max({band.hi - band.lo, den.hi() - den.lo(), num.hi() - num.lo()});
  M = pick_grid(M, width);
  const CircleGrid d = grid_eval(den, M);
  if (den.empty()) throw Error(ErrorKind::ZeroOnCircle, "division by the zero series");
  require_nonvanishing(d, "denominator vanishes on the circle");
  return certified_series(grid_eval(num, M) / d, band, tail_tol);
}

int winding_number(const CircleGrid& g) {
  const std::size_t M = g.size();
  double total = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    const cplx a = g.values[j];
    const cplx b = g.values[(j + 1) % M];
    if (a == cplx(0.0) || b == cplx(0.0)) throw Error(ErrorKind::ZeroOnCircle, "winding of a vanishing sample");
    const double step = std::arg(b / a);
    if (std::abs(step) > std::numbers::pi / 2)
      throw Error(ErrorKind::WindingUnresolved, "phase step above pi/2; refine the grid");
    total += step;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

CircleGrid log_samples(const CircleGrid& g) {
  require_nonvanishing(g, "log argument vanishes on the circle");
  const int w = winding_number(g);
  if (w != 0) throw Error(ErrorKind::WindingNonzero, "log argument winds " + std::to_string(w) + " times");
  CircleGrid out;
  out.values.resize(g.size());
  double phase = std::arg(g.values[0]);
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (j > 0) phase += std::arg(g.values[j] / g.values[j - 1]);
    out.values[j] = cplx(std::log(std::abs(g.values[j])), phase);
  }
  return out;
}

LaurentSeries log_on_circle(const LaurentSeries& f, Band band, double tail_tol, std::size_t M) {
  M = pick_grid(M, std::max(band.hi - band.lo, f.hi() - f.lo()));
  return certified_series(log_samples(grid_eval(f, M)), band, tail_tol);
}

LaurentSeries taylor_reciprocal_at_zero(const LaurentSeries& f, int order) {
  if (f.empty() || f.lo() != 0) throw Error(ErrorKind::SingularAtZero, "constant term vanishes");
  const cplx c0 = f.coef(0);
  std::vector<cplx> g(static_cast<std::size_t>(order + 1));
  g[0] = 1.0 / c0;
  for (int n = 1; n <= order; ++n) {
    cplx s = 0.0;
    for (int k = 1; k <= n; ++k) s += f.coef(k) * g[static_cast<std::size_t>(n - k)];
    g[static_cast<std::size_t>(n)] = -s / c0;
  }
  return LaurentSeries(0, std::move(g));
}

}  // namespace toda
