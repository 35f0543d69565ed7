#include <cmath>

#include "helpers.hpp"
#include "toda/flatcoords.hpp"
#include "toda/hierarchy.hpp"

using namespace toda;

namespace {

std::vector<cplx> fourier_mode(int K, int m) {
  std::vector<cplx> v(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) v[static_cast<std::size_t>(k)] = std::polar(1.0, 2 * M_PI * m * k / K);
  return v;
}

LoopField mode_field(int K, int d, int m, cplx c) {
  auto v = fourier_mode(K, m);
  for (auto& x : v) x *= c;
  return LoopField::scalar(v).shift(d);
}

LoopPoint seeded_loop(std::uint64_t seed) {
  Rng rng(seed);
  return random_loop(rng);
}

}  // namespace

TEST_SUITE("hierarchy") {
  TEST_CASE("cylinder bracket") {
    const int K = 16;
    const LoopField z = LoopField::constant_in_x(LaurentSeries::monomial(1), K);
    const LoopField e = LoopField::scalar(fourier_mode(K, 1));
    CHECK(max_diff(pb(z, e), cplx(0, 1) * (z * e)) < 1e-13);
    CHECK(pb(z, LoopField::constant_in_x(LaurentSeries(-1, {1, 2, 3}), K)).max_abs() < 1e-13);
    const LoopPoint L = seeded_loop(1);
    CHECK(max_diff(pb(L.lambda, L.lambda_bar), -pb(L.lambda_bar, L.lambda)) < 1e-13);
  }

  TEST_CASE("loop pairing") {
    const Point pt = locus_point(0.1, 0.2);
    Rng rng(2);
    const Cotangent o = random_cotangent(rng);
    const Tangent x = random_tangent(rng);
    const LoopCotangent lo{LoopField::constant_in_x(o.w, 8), LoopField::constant_in_x(o.wb, 8)};
    const LoopTangent lx{LoopField::constant_in_x(x.a, 8), LoopField::constant_in_x(x.ab, 8)};
    CHECK(std::abs(loop_pair(lo, lx) - pair(o, x)) < 1e-14);

    // orthogonality of e^{i x} against e^{-i x} versus e^{i x}
    const LoopCotangent om{mode_field(8, -1, 1, 1.0), LoopField(8)};
    const LoopTangent al{mode_field(8, 0, -1, 1.0), LoopField(8)};
    const LoopTangent al2{mode_field(8, 0, 1, 1.0), LoopField(8)};
    CHECK(std::abs(loop_pair(om, al) - 1.0) < 1e-14);
    CHECK(std::abs(loop_pair(om, al2)) < 1e-14);

    const LoopTangent wrong{LoopField::constant_in_x(x.a, 16), LoopField::constant_in_x(x.ab, 16)};
    CHECK(thrown_kind([&] { loop_pair(lo, wrong); }) == ErrorKind::GridMismatch);
    (void)pt;
  }

  TEST_CASE("constant loops are fixed points") {
    Rng rng(3);
    const LoopPoint L = constant_loop(random_point(rng, PointFamily{8}), 16);
    for (const FlowTag f : {FlowTag::s(1), FlowTag::sbar(2), FlowTag::t(0), FlowTag::t(-1), FlowTag::u(), FlowTag::v()})
      CHECK(flow_rhs(L, f).max_abs() < 1e-13);
    const LoopPoint M = integrate(L, FlowTag::s(1), 0.05, 0.01, 0).back().state;
    CHECK(max_diff(M.lambda, L.lambda) < 1e-13);
  }

  TEST_CASE("lax flows keep u_1 = 1") {
    const LoopPoint L = seeded_loop(4);
    for (int n = 1; n <= 3; ++n) {
      const LoopTangent x = lax_rhs(L, FlowTag::s(n));
      for (int k = 0; k < L.K(); ++k) CHECK(std::abs(x.a.at(1, k)) < 1e-13);
    }
  }

  TEST_CASE("primary flow t^{v,0} is the x-translation") {
    const LoopPoint L = seeded_loop(5);
    const LoopTangent x = primary_rhs(L, FlowTag::v());
    CHECK(max_diff(x, loop_x_derivative(L)) < 1e-13);
  }

  TEST_CASE("s_1 + t^{0,0} + t^{u,0} = 0") {
    const LoopPoint L = seeded_loop(6);
    const LoopTangent sum = lax_rhs(L, FlowTag::s(1)) + primary_rhs(L, FlowTag::t(0)) + primary_rhs(L, FlowTag::u());
    CHECK(sum.max_abs() < 1e-12);
  }

  TEST_CASE("primary flows agree with the tangent product") {
    const LoopPoint L = seeded_loop(7);
    const LoopTangent Lx = loop_x_derivative(L);
    for (int alpha : {-1, 0, 1}) {
      const LoopTangent x = primary_rhs(L, FlowTag::t(alpha));
      for (int k : {0, 5, 17}) {
        const Point pt = L.node(k);
        const Tangent want = tan_mul(pt, flat_frame(pt, FlatIndex::t(alpha)), node(Lx, k));
        CHECK(max_diff(node(x, k), want) < 1e-8);
      }
    }
  }

  TEST_CASE("lowest Hamiltonians") {
    const LoopPoint L = seeded_loop(8);
    cplx u0 = 0.0, v = 0.0;
    for (int k = 0; k < L.K(); ++k) {
      u0 += L.lambda.at(0, k);
      v += L.lambda_bar.at(0, k);
    }
    u0 /= static_cast<double>(L.K());
    v /= static_cast<double>(L.K());
    CHECK(std::abs(hamiltonian(L, 0, false) + u0) < 1e-14);
    CHECK(std::abs(hamiltonian(L, 0, true) + v) < 1e-14);
  }

  TEST_CASE("gradients against finite differences") {
    const LoopPoint L = seeded_loop(9);
    const int K = L.K();
    const double eps = 1e-6;
    struct Probe {
      bool bar;
      int d, m;
    };
    for (const int n : {1, 2}) {
      for (const bool hbar : {false, true}) {
        const LoopCotangent g = gradient(L, n, hbar);
        for (const Probe p : {Probe{false, -2, 1}, Probe{false, 0, -1}, Probe{true, -1, 2}, Probe{true, 3, 0}}) {
          LoopTangent dx{LoopField(K), LoopField(K)};
          (p.bar ? dx.ab : dx.a) = mode_field(K, p.d, p.m, 1.0);
          const cplx fd = (hamiltonian(L + eps * dx, n, hbar) - hamiltonian(L + (-eps) * dx, n, hbar)) / (2 * eps);
          CHECK(std::abs(fd - loop_pair(g, dx)) < 1e-7);
        }
      }
    }
  }

  TEST_CASE("poisson operators are skew") {
    const LoopPoint L = seeded_loop(10);
    Rng rng(11);
    const LoopCotangent a = random_loop_cotangent(rng, L.K()), b = random_loop_cotangent(rng, L.K());
    CHECK(std::abs(loop_pair(a, poisson1_apply(L, b)) + loop_pair(b, poisson1_apply(L, a))) < 1e-12);
    CHECK(std::abs(loop_pair(a, poisson2_apply(L, b)) + loop_pair(b, poisson2_apply(L, a))) < 1e-12);
  }

  TEST_CASE("recursion") {
    const LoopPoint L = seeded_loop(12);
    for (int n = 1; n <= 2; ++n)
      for (bool bar : {false, true}) {
        const RecursionReport r = recursion_residual(L, n, bar);
        CHECK(r.recursion < 1e-8);
        CHECK(r.lax_vs_p1 < 1e-8);
      }
  }

  TEST_CASE("integrator guards") {
    const LoopPoint L = seeded_loop(13);
    IntegratorOptions opt;
    opt.N = 7;
    opt.tail_tol = 1e-14;
    CHECK(thrown_kind([&] { rk4_step(L, FlowTag::s(1), 0.01, opt); }) == ErrorKind::TailOverflow);
    IntegratorOptions tiny;
    tiny.blowup = 1e-3;
    CHECK(thrown_kind([&] { rk4_step(L, FlowTag::s(1), 0.01, tiny); }) == ErrorKind::BlowUp);
  }

  TEST_CASE("H_1 is conserved along s_1") {
    const LoopPoint L = seeded_loop(14);
    const auto snaps = integrate(L, FlowTag::s(1), 0.1, 1e-3, 10);
    const cplx h0 = hamiltonian(L, 1, false);
    for (const auto& s : snaps) CHECK(std::abs(hamiltonian(s.state, 1, false) - h0) < 1e-9);
  }
}
