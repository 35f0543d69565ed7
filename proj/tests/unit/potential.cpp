#include <cmath>

#include "helpers.hpp"
#include "toda/potential.hpp"
#include "toda/sampling.hpp"

using namespace toda;

namespace {

// F with the first term as a literal double integral over |z1| = r1 < |z2| = r2 and the
// log(w/z) term from unwrapped samples.
cplx potential_by_quadrature(const Point& pt, double r1, double r2, std::size_t M) {
  const LaurentSeries w = pt.w();
  std::vector<cplx> w1(M), w2(M), e(M);
  for (std::size_t j = 0; j < M; ++j) {
    e[j] = std::polar(1.0, 2 * M_PI * static_cast<double>(j) / static_cast<double>(M));
    w1[j] = evaluate(w, r1 * e[j]);
    w2[j] = evaluate(w, r2 * e[j]);
  }
  cplx dbl = 0.0;
  for (std::size_t a = 0; a < M; ++a)
    for (std::size_t b = 0; b < M; ++b) dbl += w1[a] * w2[b] * std::log(1.0 - (r1 / r2) * e[a] / e[b]);
  dbl /= static_cast<double>(M * M);

  const CircleGrid g = grid_eval(w.shift(-1), M);
  const CircleGrid lg = log_samples(g);
  cplx I = 0.0;
  for (std::size_t j = 0; j < M; ++j) I += g[j] * lg[j] * e[j];
  I /= static_cast<double>(M);

  const cplx u0 = pt.u0(), ub0 = pt.ub0(), ubm1 = pt.ubm1();
  return 0.5 * dbl + 0.5 * (ub0 - u0) * (I - u0 - ub0) + 0.5 * ub0 * ub0 * std::log(ubm1) + ubm1 + pt.um1() +
         ubm1 * pt.ub1();
}

}  // namespace

TEST_SUITE("potential") {
  TEST_CASE("locus values") {
    CHECK(std::abs(potential_F(locus_point(0.0, 0.0))) < 1e-14);
    const cplx u = 0.3, v = 0.2;
    CHECK(std::abs(potential_F(locus_point(u, v)) - u * v * v / 2.0) < 1e-14);
    CHECK(std::abs(potential_F(locus_point(u, v)) - 0.006) < 1e-14);
  }

  TEST_CASE("coefficient form matches direct double quadrature") {
    Rng rng(31);
    const Point pt = random_point(rng);
    CHECK(std::abs(potential_F(pt) - potential_by_quadrature(pt, 0.9, 1.1, 512)) < 1e-9);
  }

  TEST_CASE("closed-form triple derivatives") {
    Rng rng(32);
    const Point pt = random_point(rng);
    const auto u = FlatIndex::u(), v = FlatIndex::v();
    CHECK(std::abs(triple_derivative_flat(pt, {v, v, u}) - 1.0) < 1e-15);
    CHECK(std::abs(triple_derivative_flat(pt, {u, u, u}) - pt.ub1() * pt.ubm1()) < 1e-12);
    CHECK(std::abs(triple_derivative_flat(pt, {FlatIndex::t(2), FlatIndex::t(-3), v}) - 1.0) < 1e-15);
    CHECK(std::abs(triple_derivative_flat(pt, {FlatIndex::t(2), FlatIndex::t(-2), v})) < 1e-15);
    CHECK(TripleIndex(u, v, FlatIndex::t(1)) == TripleIndex(FlatIndex::t(1), u, v));
  }

  TEST_CASE("trilinear form on flat frames and permutations") {
    Rng rng(33);
    const Point pt = random_point(rng);
    const FlatIndex a = FlatIndex::t(-1), b = FlatIndex::t(0), c = FlatIndex::t(1);
    const Tangent x = flat_frame(pt, a), y = flat_frame(pt, b), z = flat_frame(pt, c);
    const cplx want = triple_derivative_flat(pt, {a, b, c});
    CHECK(std::abs(trilinear_form(pt, x, y, z) - want) < 1e-10);
    const Tangent p = random_tangent(rng), q = random_tangent(rng), r = random_tangent(rng);
    const cplx base = trilinear_form(pt, p, q, r);
    CHECK(std::abs(trilinear_form(pt, q, r, p) - base) < 1e-13);
    CHECK(std::abs(trilinear_form(pt, r, q, p) - base) < 1e-13);
    CHECK(std::abs(metric_tangent(pt, tan_mul(pt, p, q), r) - base) < 1e-9);
  }

  TEST_CASE("quasihomogeneity") {
    CHECK(std::abs(quasihomogeneity_residual(locus_point(0.4, -0.3))) < 1e-8);
    Rng rng(34);
    CHECK(std::abs(quasihomogeneity_residual(random_point(rng))) < 1e-6);
  }
}
