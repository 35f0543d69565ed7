#include <cmath>

#include "helpers.hpp"
#include "toda/canonical.hpp"
#include "toda/sampling.hpp"

using namespace toda;

TEST_SUITE("canonical") {
  // lambda = z - 1/z, lambda-bar = 1/z, so w = z
  const Point pt = locus_point(0.0, 0.0);

  TEST_CASE("closed forms at w = z") {
    const CanonicalData cd = canonical_data(pt, 64);
    for (std::size_t j = 0; j < cd.p.size(); ++j) {
      const cplx p = cd.p[j];
      CHECK(std::abs(cd.sigma[j] - (1.0 + 1.0 / (p * p))) < 1e-14);
      CHECK(std::abs(cd.u_sigma[j] - 2.0 / p) < 1e-14);
    }
    CHECK(cd.self_intersecting);
    CHECK(sigma_condition_residual(pt, cd) < 1e-14);
  }

  TEST_CASE("du pairings with e and E") {
    Rng rng(41);
    const Point q = random_point(rng);
    const CanonicalData cd = canonical_data(q, 64);
    const auto de = du_pair(q, cd.p, unit_vector());
    const auto dE = du_pair(q, cd.p, euler_field(q));
    for (std::size_t j = 0; j < cd.p.size(); ++j) {
      CHECK(std::abs(de[j] - 1.0) < 1e-13);
      CHECK(std::abs(dE[j] - cd.u_sigma[j]) < 1e-13);
    }
    CHECK_FALSE(cd.self_intersecting);
  }

  TEST_CASE("characteristic velocities at w = z") {
    const CanonicalData cd = canonical_data(pt, 32);
    const auto A0 = char_velocities(pt, FlowTag::t(0), cd.p);
    const auto Au = char_velocities(pt, FlowTag::u(), cd.p);
    const auto Av = char_velocities(pt, FlowTag::v(), cd.p);
    for (std::size_t j = 0; j < cd.p.size(); ++j) {
      CHECK(std::abs(A0[j] + cd.p[j] * cd.sigma[j]) < 1e-13);
      CHECK(std::abs(Au[j] - 1.0 / cd.p[j]) < 1e-14);
      CHECK(std::abs(Av[j] - 1.0) < 1e-15);
    }
  }

  TEST_CASE("semisimplicity residual") {
    Rng rng(42);
    const Point q = random_point(rng);
    CHECK(semisimplicity_residual(q, unit_vector(), unit_vector()) < 1e-12);
    CHECK(semisimplicity_residual(q, random_tangent(rng), random_tangent(rng)) < 1e-8);
  }
}
