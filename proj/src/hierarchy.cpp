#include "toda/hierarchy.hpp"

#include <algorithm>
#include <cmath>

#include "toda/flatcoords.hpp"

namespace toda {

namespace {

std::vector<cplx> spectral(const std::vector<cplx>& v, auto multiplier) {
  CircleGrid g{v};
  auto c = grid_coefficients(g);
  const int K = static_cast<int>(c.size());
  for (int j = 0; j < K; ++j) {
    const int m = j < K / 2 ? j : j - K;
    c[static_cast<std::size_t>(j)] *= (2 * j == K) ? cplx(0.0) : multiplier(m);
  }
  return grid_eval(LaurentSeries(0, std::move(c)), static_cast<std::size_t>(K)).values;
}

void require_same_K(const LoopField& a, const LoopField& b) {
  if (a.K() != b.K()) throw Error(ErrorKind::GridMismatch, "loop fields use different x-grids");
}

LoopField one(int K) { return LoopField(0, K, std::vector<cplx>(static_cast<std::size_t>(K), 1.0)); }

LoopField power(const LoopField& f, int n) {
  LoopField r = one(f.K());
  for (int i = 0; i < n; ++i) r = r * f;
  return r;
}

LoopField apply_nodewise(const LoopField& f, auto op) {
  std::vector<LaurentSeries> nodes(static_cast<std::size_t>(f.K()));
  for (int k = 0; k < f.K(); ++k) nodes[static_cast<std::size_t>(k)] = op(f.node(k));
  return LoopField::from_nodes(nodes);
}

LoopTangent dealias(const LoopTangent& x) { return {dealias(x.a), dealias(x.ab)}; }

}  // namespace

LoopField::LoopField(int lo, int K, std::vector<cplx> data) : K_(K), lo_(lo), data_(std::move(data)) {
  if (K <= 0 || !is_power_of_two(static_cast<std::size_t>(K)))
    throw Error(ErrorKind::InvalidArgument, "K must be a power of two");
  if (data_.size() % static_cast<std::size_t>(K) != 0)
    throw Error(ErrorKind::InvalidArgument, "loop field data is not a whole number of degrees");
  trim();
}

void LoopField::trim() {
  auto row_zero = [&](int r) {
    for (int k = 0; k < K_; ++k)
      if (data_[static_cast<std::size_t>(r * K_ + k)] != cplx(0.0)) return false;
    return true;
  };
  int first = 0, last = degrees() - 1;
  while (first <= last && row_zero(first)) ++first;
  while (last >= first && row_zero(last)) --last;
  if (first > last) {
    data_.clear();
    lo_ = 0;
    return;
  }
  if (first > 0 || last < degrees() - 1) {
    data_ = std::vector<cplx>(data_.begin() + first * K_, data_.begin() + (last + 1) * K_);
    lo_ += first;
  }
}

LoopField LoopField::constant_in_x(const LaurentSeries& f, int K) {
  std::vector<cplx> d(f.size() * static_cast<std::size_t>(K));
  for (std::size_t i = 0; i < f.size(); ++i)
    std::fill(d.begin() + static_cast<long>(i) * K, d.begin() + static_cast<long>(i + 1) * K, f.coeffs()[i]);
  return LoopField(f.empty() ? 0 : f.lo(), K, std::move(d));
}

LoopField LoopField::from_nodes(const std::vector<LaurentSeries>& nodes) {
  const int K = static_cast<int>(nodes.size());
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& s : nodes) {
    if (s.empty()) continue;
    lo = any ? std::min(lo, s.lo()) : s.lo();
    hi = any ? std::max(hi, s.hi()) : s.hi();
    any = true;
  }
  if (!any) return LoopField(K);
  std::vector<cplx> d(static_cast<std::size_t>((hi - lo + 1) * K), 0.0);
  for (int k = 0; k < K; ++k)
    for (int deg = lo; deg <= hi; ++deg) d[static_cast<std::size_t>((deg - lo) * K + k)] = nodes[static_cast<std::size_t>(k)].coef(deg);
  return LoopField(lo, K, std::move(d));
}

LoopField LoopField::scalar(const std::vector<cplx>& values) {
  return LoopField(0, static_cast<int>(values.size()), values);
}

cplx LoopField::at(int d, int k) const {
  if (empty() || d < lo_ || d > hi()) return 0.0;
  return data_[static_cast<std::size_t>((d - lo_) * K_ + k)];
}

std::vector<cplx> LoopField::degree(int d) const {
  std::vector<cplx> r(static_cast<std::size_t>(K_), 0.0);
  if (empty() || d < lo_ || d > hi()) return r;
  std::copy_n(data_.begin() + (d - lo_) * K_, K_, r.begin());
  return r;
}

LaurentSeries LoopField::node(int k) const {
  if (empty()) return {};
  std::vector<cplx> c(static_cast<std::size_t>(degrees()));
  for (int i = 0; i < degrees(); ++i) c[static_cast<std::size_t>(i)] = data_[static_cast<std::size_t>(i * K_ + k)];
  return LaurentSeries(lo_, std::move(c));
}

double LoopField::max_abs() const {
  double m = 0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

LoopField LoopField::shift(int k) const {
  LoopField r = *this;
  if (!r.empty()) r.lo_ += k;
  return r;
}

LoopField LoopField::operator-() const { return *this * cplx(-1.0); }

namespace {
LoopField combine(const LoopField& a, const LoopField& b, double sb) {
  require_same_K(a, b);
  if (a.empty()) return b * cplx(sb);
  if (b.empty()) return a;
  const int K = a.K();
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::vector<cplx> d(static_cast<std::size_t>((hi - lo + 1) * K));
  for (int deg = lo; deg <= hi; ++deg)
    for (int k = 0; k < K; ++k) d[static_cast<std::size_t>((deg - lo) * K + k)] = a.at(deg, k) + sb * b.at(deg, k);
  return LoopField(lo, K, std::move(d));
}
}  // namespace

LoopField operator+(const LoopField& a, const LoopField& b) { return combine(a, b, 1.0); }
LoopField operator-(const LoopField& a, const LoopField& b) { return combine(a, b, -1.0); }

LoopField operator*(const LoopField& a, const LoopField& b) {
  require_same_K(a, b);
  const int K = a.K();
  if (a.empty() || b.empty()) return LoopField(K);
  const int na = a.degrees(), nb = b.degrees();
  std::vector<cplx> d(static_cast<std::size_t>((na + nb - 1) * K), 0.0);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      const cplx* pa = a.data_.data() + i * K;
      const cplx* pb_ = b.data_.data() + j * K;
      cplx* out = d.data() + (i + j) * K;
      for (int k = 0; k < K; ++k) out[k] += pa[k] * pb_[k];
    }
  return LoopField(a.lo() + b.lo(), K, std::move(d));
}

LoopField operator*(const LoopField& a, cplx s) {
  LoopField r = a;
  for (auto& v : r.data_) v *= s;
  r.trim();
  return r;
}

LoopField geq(const LoopField& f, int k) { return truncate(f, k, std::max(k, f.hi())); }
LoopField leq(const LoopField& f, int k) { return truncate(f, std::min(k, f.lo()), k); }

LoopField truncate(const LoopField& f, int lo, int hi, double* discarded) {
  const int K = f.K();
  double drop = 0;
  if (!f.empty()) {
    for (int deg = f.lo(); deg <= f.hi(); ++deg) {
      if (deg >= lo && deg <= hi) continue;
      for (int k = 0; k < K; ++k) drop = std::max(drop, std::abs(f.at(deg, k)));
    }
  }
  if (discarded) *discarded = drop;
  if (f.empty() || hi < lo) return LoopField(K);
  const int a = std::max(lo, f.lo()), b = std::min(hi, f.hi());
  if (a > b) return LoopField(K);
  std::vector<cplx> d(static_cast<std::size_t>((b - a + 1) * K));
  for (int deg = a; deg <= b; ++deg)
    for (int k = 0; k < K; ++k) d[static_cast<std::size_t>((deg - a) * K + k)] = f.at(deg, k);
  return LoopField(a, K, std::move(d));
}

LoopField z_derivative(const LoopField& f) {
  if (f.empty()) return f;
  std::vector<cplx> d(static_cast<std::size_t>(f.degrees() * f.K()));
  for (int deg = f.lo(); deg <= f.hi(); ++deg)
    for (int k = 0; k < f.K(); ++k) d[static_cast<std::size_t>((deg - f.lo()) * f.K() + k)] = static_cast<double>(deg) * f.at(deg, k);
  return LoopField(f.lo(), f.K(), std::move(d));
}

LoopField derivative(const LoopField& f) { return z_derivative(f).shift(-1); }

namespace {
LoopField per_degree(const LoopField& f, auto mult) {
  if (f.empty()) return f;
  std::vector<cplx> d;
  d.reserve(static_cast<std::size_t>(f.degrees() * f.K()));
  for (int deg = f.lo(); deg <= f.hi(); ++deg) {
    const auto row = spectral(f.degree(deg), mult);
    d.insert(d.end(), row.begin(), row.end());
  }
  return LoopField(f.lo(), f.K(), std::move(d));
}
}  // namespace

LoopField x_derivative(const LoopField& f) {
  return per_degree(f, [](int m) { return cplx(0.0, static_cast<double>(m)); });
}

LoopField dealias(const LoopField& f) {
  const int K = f.K();
  return per_degree(f, [K](int m) { return 3 * std::abs(m) > K ? cplx(0.0) : cplx(1.0); });
}

double max_diff(const LoopField& a, const LoopField& b) { return (a - b).max_abs(); }

Point LoopPoint::node(int k) const { return make_point(lambda.node(k), lambda_bar.node(k)); }

LoopTangent operator+(const LoopTangent& x, const LoopTangent& y) { return {x.a + y.a, x.ab + y.ab}; }
LoopTangent operator-(const LoopTangent& x, const LoopTangent& y) { return {x.a - y.a, x.ab - y.ab}; }
LoopTangent operator*(cplx s, const LoopTangent& x) { return {x.a * s, x.ab * s}; }
double max_diff(const LoopTangent& x, const LoopTangent& y) {
  return std::max(max_diff(x.a, y.a), max_diff(x.ab, y.ab));
}
LoopPoint operator+(const LoopPoint& L, const LoopTangent& x) { return {L.lambda + x.a, L.lambda_bar + x.ab}; }

LoopPoint constant_loop(const Point& pt, int K) {
  return {LoopField::constant_in_x(pt.lambda, K), LoopField::constant_in_x(pt.lambda_bar, K)};
}

LoopTangent loop_x_derivative(const LoopPoint& L) { return {x_derivative(L.lambda), x_derivative(L.lambda_bar)}; }

Tangent node(const LoopTangent& x, int k) { return {x.a.node(k), x.ab.node(k)}; }
Cotangent node(const LoopCotangent& o, int k) { return {o.w.node(k), o.wb.node(k)}; }

cplx loop_pair(const LoopCotangent& o, const LoopTangent& x) {
  require_same_K(o.w, x.a);
  require_same_K(o.wb, x.ab);
  const int K = x.a.K();
  cplx s = 0.0;
  for (int k = 0; k < K; ++k) {
    if (!o.w.empty())
      for (int d = o.w.lo(); d <= o.w.hi(); ++d) s += o.w.at(d, k) * x.a.at(-1 - d, k);
    if (!o.wb.empty())
      for (int d = o.wb.lo(); d <= o.wb.hi(); ++d) s += o.wb.at(d, k) * x.ab.at(-1 - d, k);
  }
  return s / static_cast<double>(K);
}

LoopField pb(const LoopField& f, const LoopField& g) {
  return z_derivative(f) * x_derivative(g) - z_derivative(g) * x_derivative(f);
}

LoopTangent lax_rhs(const LoopPoint& L, FlowTag flow) {
  if (flow.n < 1) throw Error(ErrorKind::InvalidArgument, "Lax flows need n >= 1");
  LoopField g;
  if (flow.kind == FlowKind::S)
    g = geq(power(L.lambda, flow.n), 0);
  else if (flow.kind == FlowKind::SBar)
    g = leq(power(L.lambda_bar, flow.n), -1);
  else
    throw Error(ErrorKind::InvalidArgument, "lax_rhs takes s_n or s-bar_n");
  return {pb(g, L.lambda), pb(g, L.lambda_bar)};
}

LoopTangent primary_rhs(const LoopPoint& L, FlowTag flow, const LoopNumerics& num) {
  switch (flow.kind) {
    case FlowKind::V: return loop_x_derivative(L);
    case FlowKind::U: return cplx(-1.0) * lax_rhs(L, FlowTag::sbar(1));
    case FlowKind::T: break;
    default: throw Error(ErrorKind::InvalidArgument, "primary_rhs takes t^{alpha,0}, t^{u,0} or t^{v,0}");
  }
  const LoopField w = L.lambda + L.lambda_bar;
  const int a1 = flow.n + 1;
  const Numerics nn{num.band, 0, num.tail_tol};
  if (a1 == 0) {
    const LoopField lg = apply_nodewise(w, [&](const LaurentSeries& wk) {
      return log_on_circle(wk.shift(-1), {-num.band, num.band}, num.tail_tol);
    });
    // log z contributes z d/dz(log z) f_x = f_x to the bracket with lambda.
    return {pb(leq(lg, -1), L.lambda) + x_derivative(L.lambda), -pb(geq(lg, 0), L.lambda_bar)};
  }
  const LoopField W =
      a1 > 0 ? power(w, a1) : apply_nodewise(w, [&](const LaurentSeries& wk) { return w_power(wk, a1, nn); });
  const cplx s = 1.0 / static_cast<double>(a1);
  return {pb(leq(W, -1), L.lambda) * s, -pb(geq(W, 0), L.lambda_bar) * s};
}

LoopTangent flow_rhs(const LoopPoint& L, FlowTag flow, const LoopNumerics& num) {
  if (flow.kind == FlowKind::S || flow.kind == FlowKind::SBar) return lax_rhs(L, flow);
  return primary_rhs(L, flow, num);
}

cplx hamiltonian(const LoopPoint& L, int n, bool bar) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "hamiltonian needs n >= 0");
  const auto c0 = power(bar ? L.lambda_bar : L.lambda, n + 1).degree(0);
  cplx s = 0.0;
  for (const auto& v : c0) s += v;
  return -s / static_cast<double>(c0.size()) / static_cast<double>(n + 1);
}

LoopCotangent gradient(const LoopPoint& L, int n, bool bar) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "gradient needs n >= 0");
  const int K = L.K();
  if (!bar) return {-geq(power(L.lambda, n).shift(-1), -1), LoopField(K)};
  return {LoopField(K), -leq(power(L.lambda_bar, n).shift(-1), 0)};
}

LoopTangent poisson1_apply(const LoopPoint& L, const LoopCotangent& o) {
  const LoopField zw = o.w.shift(1), zwb = o.wb.shift(1);
  const LoopField B = pb(L.lambda, zw) + pb(L.lambda_bar, zwb);
  const LoopField d = zw - zwb;
  return {-pb(L.lambda, leq(d, -1)) + leq(B, 0), pb(L.lambda_bar, geq(d, 0)) + geq(B, 1)};
}

LoopTangent poisson2_apply(const LoopPoint& L, const LoopCotangent& o) {
  const LoopField& lam = L.lambda;
  const LoopField& lb = L.lambda_bar;
  const LoopField zw = o.w.shift(1), zwb = o.wb.shift(1);
  const LoopField B = pb(lam, zw) + pb(lb, zwb);
  // phi = (1/2 pi i) oint (lambda' w + lambda-bar' w-bar) dz, nodewise
  const LoopField phi = LoopField::scalar((derivative(lam) * zw + derivative(lb) * zwb).degree(-1));
  const LoopField phix = x_derivative(phi);
  const LoopField mixed = lam * zw + lb * zwb;
  return {pb(lam, leq(mixed, -1)) - lam * leq(B, 0) + derivative(lam).shift(1) * phix,
          -pb(lb, geq(mixed, 0)) + lb * geq(B, 1) + derivative(lb).shift(1) * phix};
}

RecursionReport recursion_residual(const LoopPoint& L, int n, bool bar) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "recursion needs n >= 1");
  const LoopTangent p1 = poisson1_apply(L, gradient(L, n, bar));
  const LoopTangent p2 = poisson2_apply(L, gradient(L, n - 1, bar));
  RecursionReport r;
  r.recursion = (bar ? p1 - p2 : p1 + p2).max_abs();
  r.lax_vs_p1 = max_diff(lax_rhs(L, bar ? FlowTag::sbar(n) : FlowTag::s(n)), p1);
  return r;
}

namespace {

LoopTangent banded_rhs(const LoopPoint& L, FlowTag flow, const IntegratorOptions& opt, double& tail) {
  LoopTangent r = flow_rhs(L, flow, opt.num);
  if (opt.dealias) r = dealias(r);
  double d1 = 0, d2 = 0;
  // Degree 1 of the lambda variation vanishes up to rounding; dropping it keeps u_1 = 1.
  r.a = truncate(r.a, -opt.N, 0, &d1);
  r.ab = truncate(r.ab, -1, opt.N, &d2);
  tail = std::max({tail, d1, d2});
  return r;
}

}  // namespace

LoopPoint rk4_step(const LoopPoint& L, FlowTag flow, double h, const IntegratorOptions& opt, StepInfo* info) {
  double tail = 0;
  const LoopTangent k1 = banded_rhs(L, flow, opt, tail);
  const LoopTangent k2 = banded_rhs(L + (0.5 * h) * k1, flow, opt, tail);
  const LoopTangent k3 = banded_rhs(L + (0.5 * h) * k2, flow, opt, tail);
  const LoopTangent k4 = banded_rhs(L + h * k3, flow, opt, tail);
  const LoopPoint out = L + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (info) info->tail = tail;
  if (tail > opt.tail_tol)
    throw Error(ErrorKind::TailOverflow, "flow pushed coefficients outside the stored z-band");
  const double m = std::max(out.lambda.max_abs(), out.lambda_bar.max_abs());
  if (!(m <= opt.blowup)) throw Error(ErrorKind::BlowUp, "coefficient magnitude above the blow-up threshold");
  return out;
}

std::vector<Snapshot> integrate(const LoopPoint& L, FlowTag flow, double T, double h, int every,
                                const IntegratorOptions& opt) {
  if (!(h > 0) || !(T >= 0)) throw Error(ErrorKind::InvalidArgument, "integrate needs h > 0 and T >= 0");
  const int steps = static_cast<int>(std::llround(T / h));
  std::vector<Snapshot> out;
  out.push_back({0, 0.0, L, 0.0});
  LoopPoint cur = L;
  for (int s = 1; s <= steps; ++s) {
    StepInfo info;
    cur = rk4_step(cur, flow, h, opt, &info);
    if (s == steps || (every > 0 && s % every == 0)) out.push_back({s, s * h, cur, info.tail});
  }
  return out;
}

std::vector<cplx> random_modes(Rng& rng, int K, double amp, int modes) {
  std::vector<cplx> c(static_cast<std::size_t>(2 * modes + 1));
  for (auto& v : c) {
    const double re = rng.normal();
    v = amp * cplx(re, rng.normal());
  }
  return grid_eval(LaurentSeries(-modes, c), static_cast<std::size_t>(K)).values;
}

LoopPoint random_loop(Rng& rng, const LoopFamily& fam) {
  const int K = fam.K;
  auto scaled = [&](double s, cplx shift) {
    auto v = random_modes(rng, K, s, fam.modes);
    for (auto& x : v) x += shift;
    return v;
  };
  const auto eu = scaled(fam.amp, fam.ubm1_center);
  const auto v = scaled(fam.amp, fam.v_center);
  std::vector<LaurentSeries> lam(static_cast<std::size_t>(K)), lb(static_cast<std::size_t>(K));
  std::vector<std::vector<cplx>> lam_tail, lb_tail;
  for (int d = -fam.N; d <= -2; ++d) {
    const double s = fam.tail * std::pow(fam.rho, std::abs(d));
    auto row = scaled(s, 0.3 * s);
    lam_tail.push_back(std::move(row));
  }
  for (int d = 1; d <= fam.N; ++d) {
    const double s = fam.tail * std::pow(fam.rho, d);
    lb_tail.push_back(scaled(s, 0.3 * s));
  }
  for (int k = 0; k < K; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    std::vector<cplx> a;
    for (const auto& row : lam_tail) a.push_back(row[kk]);
    a.push_back(-eu[kk]);
    a.push_back(-v[kk]);
    a.push_back(1.0);
    lam[kk] = LaurentSeries(-fam.N, std::move(a));
    std::vector<cplx> b{eu[kk], v[kk]};
    for (const auto& row : lb_tail) b.push_back(row[kk]);
    lb[kk] = LaurentSeries(-1, std::move(b));
  }
  return {LoopField::from_nodes(lam), LoopField::from_nodes(lb)};
}

LoopCotangent random_loop_cotangent(Rng& rng, int K, int n, int modes) {
  auto field = [&](int lo, int hi) {
    std::vector<cplx> d;
    for (int deg = lo; deg <= hi; ++deg) {
      const auto row = random_modes(rng, K, 0.3, modes);
      d.insert(d.end(), row.begin(), row.end());
    }
    return LoopField(lo, K, std::move(d));
  };
  LoopField w = field(-1, n);
  LoopField wb = field(-n, 0);
  return {w, wb};
}

}  // namespace toda
