#include <cmath>

#include "helpers.hpp"
#include "toda/flatcoords.hpp"
#include "toda/sampling.hpp"

using namespace toda;

TEST_SUITE("flatcoords") {
  TEST_CASE("the two-dimensional locus has t = 0") {
    const cplx u{0.3, -0.1}, v{-0.2, 0.4};
    const FlatChart c = flat_coords(locus_point(u, v), 8);
    CHECK(std::abs(c.u - u) < 1e-14);
    CHECK(std::abs(c.v - v) < 1e-14);
    for (int n = -8; n <= 8; ++n) CHECK(std::abs(c.tn(n)) < 1e-14);

    const Point back = point_from_flat(FlatChart::zeros(8, u, v), 16);
    const Point want = locus_point(u, v);
    CHECK(max_diff(back.lambda, want.lambda) < 1e-13);
    CHECK(max_diff(back.lambda_bar, want.lambda_bar) < 1e-13);
  }

  TEST_CASE("frames at w = z") {
    const Point pt = locus_point(0.0, 0.0);
    CHECK(max_diff(flat_frame(pt, FlatIndex::v()), unit_vector()) < 1e-15);
    const Tangent t0 = flat_frame(pt, FlatIndex::t(0));
    CHECK(t0.a.max_abs() < 1e-15);
    CHECK(max_diff(t0.ab, LaurentSeries::monomial(1, -1.0)) < 1e-15);
    const Tangent tm2 = flat_frame(pt, FlatIndex::t(-2));
    CHECK(max_diff(tm2.a, LaurentSeries::monomial(-1, -1.0)) < 1e-15);
    CHECK(tm2.ab.max_abs() < 1e-15);
  }

  TEST_CASE("jacobian at w = z") {
    const Point pt = locus_point(0.0, 0.0);
    for (int n = -3; n <= 3; ++n)
      for (int m = -3; m <= 4; ++m) CHECK(std::abs(jacobian_t_w(pt, n, m) - (m == n + 1 ? -1.0 : 0.0)) < 1e-14);
  }

  TEST_CASE("jacobian against finite differences") {
    Rng rng(21);
    const Point pt = random_point(rng);
    const double h = 1e-6;
    for (int m : {-2, 1, 3}) {
      const LaurentSeries dm = LaurentSeries::monomial(m, h);
      // w_m lives in lambda for m <= 0 and in lambda-bar otherwise
      const auto move = [&](double s) {
        return m <= 0 ? make_point(pt.lambda + s * dm, pt.lambda_bar) : make_point(pt.lambda, pt.lambda_bar + s * dm);
      };
      const FlatChart cp = flat_coords(move(1), 6), cm = flat_coords(move(-1), 6);
      for (int n = -3; n <= 3; ++n) CHECK(std::abs((cp.tn(n) - cm.tn(n)) / (2 * h) - jacobian_t_w(pt, n, m)) < 1e-6);
    }
  }

  TEST_CASE("identities on a random point") {
    Rng rng(22);
    PointFamily fam;
    fam.rho = 0.35;
    const Point pt = random_point(rng, fam);
    const FlatChart c = flat_coords(pt, 48);
    CHECK(std::abs(pt.u0() + c.tn(-1) + c.v) < 1e-12);
  }

  TEST_CASE("differentials are dual to the frames") {
    Rng rng(23);
    const Point pt = random_point(rng);
    for (int n = -3; n <= 3; ++n)
      for (int m = -3; m <= 3; ++m)
        CHECK(std::abs(pair(flat_differential(pt, FlatIndex::t(n)), flat_frame(pt, FlatIndex::t(m))) -
                       (n == m ? 1.0 : 0.0)) < 1e-12);
  }

  TEST_CASE("large charts are rejected") {
    FlatChart c = FlatChart::zeros(4);
    c.set_tn(1, 10.0);
    CHECK(thrown_kind([&] { point_from_flat(c, 32); }) == ErrorKind::NewtonDiverged);
  }
}
