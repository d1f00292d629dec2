#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oncolattice/local_model.hpp"
#include "support.hpp"

using namespace oncolattice;
using testsupport::Gen;

namespace {

NondimParams random_nondim(Gen& g) {
  DimensionalParams d = baseline_params();
  d.alpha = g.log_uniform(1e4, 5e5);
  d.r2 = g.uniform(0.05, 0.38);
  d.q1 = g.log_uniform(1e-6, 1e-4);
  d.q2 = g.log_uniform(1e-6, 1e-4);
  if (g.coin()) {
    const double t0 = g.log_uniform(1e-3, 1.0);
    d.theta = OxygenResponse::sigmoid(t0, t0 + g.log_uniform(1e-3, 2.0), g.log_uniform(1e-3, 1.0));
    const double g0 = g.log_uniform(1e-3, 1.0);
    d.gamma = OxygenResponse::sigmoid(g0, g0 + g.log_uniform(1e-3, 2.0), g.log_uniform(1e-3, 1.0));
  } else {
    d.theta = OxygenResponse::constant(g.log_uniform(1e-3, 2.0));
    d.gamma = OxygenResponse::constant(g.log_uniform(1e-3, 2.0));
  }
  return nondimensionalize(d);
}

// The rescaled system written out term by term.
std::array<double, 3> oracle_nondim(double x, double y, double z, const NondimParams& p) {
  const double th = p.theta.value_unchecked(z), ga = p.gamma.value_unchecked(z);
  const double inf = th * x * y / (p.alpha + y);
  return {x * (1 - x - y) - inf, p.r * y * (1 - x - y) + inf - ga * y, p.beta * (1 - z) - p.q1 * x * z - p.q2 * y * z};
}

}  // namespace

TEST_CASE("dimensional right-hand side at a hand-checked point") {
  const DimensionalParams p = baseline_params();
  const LocalState s{1e4, 100, 4.3751};
  const LocalState d = rhs_dimensional(s, p);
  const double crowd = 1 - 10100.0 / 1e6;
  const double inf = 1.0 * 100 * 1e4 / (1e5 + 100);
  CHECK(d.u == doctest::Approx(0.3954 * 1e4 * crowd - inf).epsilon(1e-14));
  CHECK(d.n == doctest::Approx(0.21 * 100 * crowd + inf - 0.5115 * 100).epsilon(1e-14));
  CHECK(d.c == doctest::Approx(1e4 - 5.0976 * 4.3751 - 5.47e-5 * 1e4 * 4.3751 - 2.735e-5 * 100 * 4.3751).epsilon(1e-14));
}

TEST_CASE("zero tumour is invariant and oxygen relaxes to phi/beta") {
  const DimensionalParams p = baseline_params();
  const LocalState d = rhs_dimensional({0, 0, p.phi / p.beta}, p);
  CHECK(d.u == 0.0);
  CHECK(d.n == 0.0);
  CHECK(std::abs(d.c) < 1e-9);
}

TEST_CASE("property: rescaled system matches the dimensional one under the change of variables") {
  Gen g(99);
  for (int trial = 0; trial < 200; ++trial) {
    DimensionalParams d = baseline_params();
    d.theta = OxygenResponse::sigmoid(0.005115, 1.0, g.uniform(0.01, 0.5));
    d.gamma = OxygenResponse::sigmoid(0.1, 0.9, g.uniform(0.01, 0.5));
    const NondimParams p = nondimensionalize(d);
    const LocalState s{g.uniform(0, 1e6), g.uniform(0, 1e6), g.uniform(0, 2000)};
    const LocalState ds = rhs_dimensional(s, d);
    const NondimState ns = nondimensionalize_state(s, d);
    const NondimState dn = rhs_nondim(ns, p);
    CHECK(dn.x == doctest::Approx(ds.u / (d.K * d.r1)).epsilon(1e-10));
    CHECK(dn.y == doctest::Approx(ds.n / (d.K * d.r1)).epsilon(1e-10));
    CHECK(dn.z == doctest::Approx(ds.c * d.beta / (d.phi * d.r1)).epsilon(1e-10));
    const auto o = oracle_nondim(ns.x, ns.y, ns.z, p);
    CHECK(dn.x == doctest::Approx(o[0]).epsilon(1e-13));
    CHECK(dn.y == doctest::Approx(o[1]).epsilon(1e-13));
    CHECK(dn.z == doctest::Approx(o[2]).epsilon(1e-13));
  }
}

TEST_CASE("reduced system equals the 3-variable system with constant rates") {
  const NondimParams p = nondimensionalize(baseline_params());
  const ReducedParams q = reduce(p);
  for (double x : {0.0, 0.2, 0.7})
    for (double y : {0.0, 0.1, 0.9}) {
      const auto d2 = rhs_2d(x, y, q);
      const auto d3 = rhs_nondim({x, y, 0.4}, p);
      CHECK(d2[0] == doctest::Approx(d3.x).epsilon(1e-14));
      CHECK(d2[1] == doctest::Approx(d3.y).epsilon(1e-14));
    }
  DimensionalParams s = baseline_params();
  s.theta = OxygenResponse::sigmoid(0.1, 0.2, 1.0);
  CHECK_THROWS_AS(reduce(nondimensionalize(s)), ParameterError);
}

TEST_CASE("property: analytic Jacobians match finite differences") {
  Gen g(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const NondimParams p = random_nondim(g);
    const NondimState s{g.uniform(0.01, 1), g.uniform(0.01, 1), g.uniform(0.01, 1)};
    const DenseMatrix J = jacobian_3d(s, p);
    const double h = 1e-4;
    for (std::size_t j = 0; j < 3; ++j) {
      auto comp = [&](std::size_t i) {
        return [&, i](double v) {
          double st[3] = {s.x, s.y, s.z};
          st[j] = v;
          return oracle_nondim(st[0], st[1], st[2], p)[i];
        };
      };
      const double at[3] = {s.x, s.y, s.z};
      for (std::size_t i = 0; i < 3; ++i) {
        const double fd = testsupport::fd4(comp(i), at[j], h);
        CAPTURE(trial);
        CAPTURE(i);
        CAPTURE(j);
        CHECK(std::abs(J(i, j) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
      }
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const ReducedParams p{g.uniform(0.05, 0.95), g.log_uniform(0.01, 10), g.uniform(0, 3), g.uniform(0, 2)};
    const double x = g.uniform(0, 1), y = g.uniform(0, 1);
    const DenseMatrix J = jacobian_2d(x, y, p);
    for (std::size_t i = 0; i < 2; ++i) {
      const double fdx = testsupport::fd4([&](double v) { return rhs_2d(v, y, p)[i]; }, x, 1e-4);
      const double fdy = testsupport::fd4([&](double v) { return rhs_2d(x, v, p)[i]; }, y, 1e-4);
      CHECK(std::abs(J(i, 0) - fdx) <= 1e-5 * std::max(1.0, std::abs(fdx)));
      CHECK(std::abs(J(i, 1) - fdy) <= 1e-5 * std::max(1.0, std::abs(fdy)));
    }
  }
}

TEST_CASE("vector fields dispatch on the model variant") {
  const DimensionalParams d = baseline_params();
  const LocalModel m = d;
  const VectorField f = make_field(m);
  std::vector<double> y{1e4, 100, 4.3751}, dy(3);
  f(y, dy);
  const LocalState ref = rhs_dimensional({1e4, 100, 4.3751}, d);
  CHECK(dy[0] == ref.u);
  CHECK(dy[1] == ref.n);
  CHECK(dy[2] == ref.c);
  const LocalModel r = ReducedParams{0.5, 0.1, 1.0, 0.3};
  std::vector<double> y2{0.3, 0.2}, d2(2);
  make_field(r)(y2, d2);
  CHECK(d2[0] == rhs_2d(0.3, 0.2, std::get<ReducedParams>(r))[0]);
}

TEST_CASE("property: unit trapping region is forward invariant") {
  Gen g(4242);
  for (int trial = 0; trial < 30; ++trial) {
    const NondimParams p = random_nondim(g);
    const double x = g.uniform(0, 1);
    const std::vector<double> y0{x, g.uniform(0, 1 - x), g.uniform(0, 1)};
    IntegratorConfig c;
    c.t_end = 100;
    c.settle_norm = 0;
    const auto tr = integrate(make_field(p), y0, c);
    for (const auto& s : tr.states) {
      CHECK(s[0] >= -1e-6);
      CHECK(s[1] >= -1e-6);
      CHECK(s[0] + s[1] <= 1 + 1e-6);
      CHECK(s[2] >= -1e-6);
      CHECK(s[2] <= 1 + 1e-6);
    }
  }
}
