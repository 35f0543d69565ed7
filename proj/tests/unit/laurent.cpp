#include <cmath>

#include "helpers.hpp"
#include "toda/laurent.hpp"

using namespace toda;

namespace {
LaurentSeries S(int lo, std::vector<cplx> c) { return LaurentSeries(lo, std::move(c)); }
}  // namespace

TEST_SUITE("laurent") {
  TEST_CASE("series_mul") {
    CHECK(series_mul(S(-1, {1, 0, 1}), S(-1, {-1, 0, 1})) == S(-2, {-1, 0, 0, 0, 1}));
    CHECK(series_mul(S(-1, {1, 2}), LaurentSeries()).empty());
    CHECK(series_mul(S(0, {1, 1}), S(0, {1, 1})) == S(0, {1, 2, 1}));
  }

  TEST_CASE("projections and pi") {
    const LaurentSeries f = S(-1, {5, 3, 0, 2});
    CHECK(geq(f, 0) == S(0, {3, 0, 2}));
    CHECK(leq(f, -1) == S(-1, {5}));
    CHECK(pi_op(f) == S(-1, {-5, 3, 0, 2}));
    CHECK(geq(f, 10).empty());
  }

  TEST_CASE("residue") {
    CHECK(residue_integral(S(-1, {1})) == cplx(1));
    CHECK(residue_integral(S(0, {7, 0, 1})) == cplx(0));
    CHECK(residue_integral(S(-2, {1, 3})) == cplx(3));
  }

  TEST_CASE("derivatives") {
    CHECK(derivative(S(-1, {1, 0, 1})) == S(-2, {-1, 0, 1}));
    CHECK(z_derivative(LaurentSeries::monomial(3)) == LaurentSeries::monomial(3, 3.0));
    CHECK(derivative(LaurentSeries::constant(4.0)).empty());
  }

  TEST_CASE("grid sampling and recovery") {
    const CircleGrid g = grid_eval(LaurentSeries::monomial(1), 8);
    for (std::size_t j = 0; j < 8; ++j)
      CHECK(std::abs(g[j] - std::polar(1.0, 2 * M_PI * static_cast<double>(j) / 8)) < 1e-15);
    const LaurentSeries f = S(-1, {2, 1, 0, 3});
    CHECK(max_diff(grid_to_series(grid_eval(f, 8), -1, 2), f) < 1e-14);
    // z^5 on 4 nodes is indistinguishable from z; an alias landing outside the band is caught
    CHECK(max_diff(grid_to_series(grid_eval(LaurentSeries::monomial(5), 4), -1, 1), LaurentSeries::monomial(1)) < 1e-15);
    CHECK(thrown_kind([] { certified_series(grid_eval(LaurentSeries::monomial(6), 8), {-1, 1}, 1e-12); }) ==
          ErrorKind::TruncationLoss);
    CHECK(thrown_kind([] { grid_to_series(grid_eval(LaurentSeries::monomial(1), 4), -2, 2); }) ==
          ErrorKind::BandTooWide);
  }

  TEST_CASE("circle integrals agree with the residue") {
    const LaurentSeries f = S(-3, {0.5, -2.0, 1.5, 4.0, 1.0});
    CHECK(std::abs(circle_integral(grid_eval(f, 16)) - residue_integral(f)) < 1e-14);
    CHECK(std::abs(circle_mean(grid_eval(f, 16)) - f.coef(0)) < 1e-14);
  }

  TEST_CASE("reciprocal on the circle") {
    const Band band{-64, 64};
    CHECK(max_diff(reciprocal_on_circle(LaurentSeries::constant(1.0), band), LaurentSeries::constant(1.0)) < 1e-15);
    CHECK(max_diff(reciprocal_on_circle(LaurentSeries::monomial(1), band), LaurentSeries::monomial(-1)) < 1e-15);
    // long division of 1 by 1 + z/2 as a power series
    const LaurentSeries r = reciprocal_on_circle(S(0, {1, 0.5}), band);
    for (int k = 0; k < 40; ++k) CHECK(std::abs(r.coef(k) - std::pow(-0.5, k)) < 1e-13);
    CHECK(std::abs(r.coef(-1)) < 1e-15);
  }

  TEST_CASE("reciprocal too wide for its band") {
    CHECK(thrown_kind([] { reciprocal_on_circle(S(0, {1, 0.95}), {-8, 8}); }) == ErrorKind::TruncationLoss);
  }

  TEST_CASE("log on the circle") {
    const Band band{-64, 64};
    CHECK(log_on_circle(LaurentSeries::constant(1.0), band).max_abs() < 1e-15);
    CHECK(thrown_kind([&] { log_on_circle(LaurentSeries::monomial(1), band); }) == ErrorKind::WindingNonzero);
    // Mercator series of log(1 + z/2)
    const LaurentSeries l = log_on_circle(S(0, {1, 0.5}), band);
    for (int k = 1; k < 40; ++k) CHECK(std::abs(l.coef(k) - std::pow(-1.0, k + 1) * std::pow(0.5, k) / k) < 1e-14);
    CHECK(std::abs(l.coef(0)) < 1e-14);
  }

  TEST_CASE("winding number") {
    CHECK(winding_number(grid_eval(LaurentSeries::monomial(1), 64)) == 1);
    CHECK(winding_number(grid_eval(LaurentSeries::monomial(-2), 64)) == -2);
    CHECK(winding_number(grid_eval(S(0, {1, 0.3}), 64)) == 0);
  }

  TEST_CASE("taylor reciprocal at zero") {
    CHECK(max_diff(taylor_reciprocal_at_zero(LaurentSeries::constant(2.0), 5), LaurentSeries::constant(0.5)) < 1e-16);
    const LaurentSeries g = taylor_reciprocal_at_zero(S(0, {1, -1}), 10);
    for (int k = 0; k <= 10; ++k) CHECK(std::abs(g.coef(k) - 1.0) < 1e-15);
    CHECK(g.hi() <= 10);
    CHECK(thrown_kind([] { taylor_reciprocal_at_zero(LaurentSeries::monomial(1), 3); }) == ErrorKind::SingularAtZero);
  }

  TEST_CASE("default grid size") {
    CHECK(default_grid_size(0) == 64);
    CHECK(is_power_of_two(default_grid_size(100)));
    CHECK(default_grid_size(100) > 4 * 108);
  }
}
