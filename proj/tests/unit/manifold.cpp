#include "helpers.hpp"
#include "toda/manifold.hpp"
#include "toda/sampling.hpp"

using namespace toda;

namespace {

LaurentSeries S(int lo, std::vector<cplx> c) { return LaurentSeries(lo, std::move(c)); }

// lambda = z - 1/z, lambda-bar = 1/z
Point simple_point() { return make_point(S(-1, {-1, 0, 1}), S(-1, {1})); }

}  // namespace

TEST_SUITE("manifold") {
  TEST_CASE("residue pairing") {
    CHECK(pair({S(-1, {1}), {}}, {LaurentSeries::constant(1), {}}) == cplx(1));
    CHECK(pair({{}, LaurentSeries::constant(1)}, {{}, S(-1, {1})}) == cplx(1));
    CHECK(pair({LaurentSeries::monomial(1), {}}, {LaurentSeries::constant(1), {}}) == cplx(0));
  }

  TEST_CASE("cotangent unit and product at the simple point") {
    const Point pt = simple_point();
    const Cotangent o{S(-1, {1}), {}};
    CHECK(max_diff(cot_mul(pt, unit_cotangent(pt), o), o) < 1e-15);
    const Cotangent sq = cot_mul(pt, o, o);
    CHECK(max_diff(sq.w, LaurentSeries::constant(1)) < 1e-15);
    CHECK(sq.wb.max_abs() < 1e-15);
  }

  TEST_CASE("commutativity on random inputs") {
    Rng rng(7);
    const Point pt = random_point(rng);
    for (int s = 0; s < 5; ++s) {
      const Cotangent a = random_cotangent(rng), b = random_cotangent(rng);
      CHECK(max_diff(cot_mul(pt, a, b), cot_mul(pt, b, a)) < 1e-14);
    }
  }

  TEST_CASE("eta") {
    const Point pt = simple_point();
    CHECK(max_diff(eta_apply(pt, {{}, LaurentSeries::constant(1)}), unit_vector()) < 1e-15);
    const Tangent zero = eta_apply(pt, {});
    CHECK(zero.a.max_abs() == 0);
    CHECK(zero.ab.max_abs() == 0);
    const Tangent x = eta_apply(pt, {S(-1, {1}), {}});
    CHECK(x.in_bands());
    CHECK(max_diff(eta_inverse(pt, x), Cotangent{S(-1, {1}), {}}) < 1e-13);
    CHECK(max_diff(eta_inverse(pt, unit_vector()), unit_cotangent(pt)) < 1e-13);
  }

  TEST_CASE("eta round trip on random data") {
    Rng rng(11);
    const Point pt = random_point(rng);
    const Tangent x = random_tangent(rng);
    CHECK(max_diff(eta_apply(pt, eta_inverse(pt, x)), x) < 1e-10);
  }

  TEST_CASE("unit vector and locus table") {
    Rng rng(3);
    const Point pt = random_point(rng);
    const Tangent x = random_tangent(rng);
    CHECK(max_diff(tan_mul(pt, unit_vector(), x), x) < 1e-10);
  }

  TEST_CASE("euler field") {
    const Tangent E = euler_field(simple_point());
    CHECK(max_diff(E.a, S(-1, {-2})) < 1e-16);
    CHECK(max_diff(E.ab, S(-1, {2})) < 1e-16);
    Rng rng(5);
    const Point pt = random_point(rng);
    const Tangent Er = euler_field(pt);
    CHECK(Er.a.coef(1) == cplx(0));
    CHECK(Er.a.coef(0) == pt.u0());
    CHECK(Er.ab.coef(0) == pt.ub0());
  }

  TEST_CASE("gamma round trip and duality") {
    Rng rng(13);
    PointFamily fam;
    fam.u_center = -0.8;
    fam.u_radius = 0.2;
    const Point pt = random_point(rng, fam);
    REQUIRE(check_membership(pt).intersection_ok);
    Numerics wide;
    wide.band = 600;
    const Cotangent o = random_cotangent(rng);
    CHECK(max_diff(gamma_inverse(pt, gamma_apply(pt, o), wide), o) < 1e-10);
    const Cotangent o2 = random_cotangent(rng);
    CHECK(std::abs(pair(cot_mul(pt, o, o2), euler_field(pt)) - pair(o, gamma_apply(pt, o2))) < 1e-12);
  }

  TEST_CASE("membership") {
    const MembershipReport r = check_membership(simple_point());
    CHECK(r.metric_ok);
    CHECK(r.m0);
    CHECK(r.winding_w == 1);
    CHECK_FALSE(r.intersection_ok);  // lambda' = 1 + 1/z^2 vanishes at +-i
    CHECK(thrown_kind([] { make_point(S(0, {0, 1}), S(0, {1})); }) == ErrorKind::InvalidPoint);
    CHECK(thrown_kind([] { make_point(S(0, {0, 1}), S(-1, {0, 1})); }) == ErrorKind::InvalidPoint);
  }
}
