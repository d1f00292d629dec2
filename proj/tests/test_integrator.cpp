#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oncolattice/core.hpp"
#include "oncolattice/integrator.hpp"
#include "support.hpp"

using namespace oncolattice;

namespace {

IntegratorConfig horizon(double t) {
  IntegratorConfig c;
  c.t_end = t;
  c.settle_norm = 0.0;
  return c;
}

}  // namespace

TEST_CASE("exponential decay matches the exact solution") {
  const VectorField f = [](std::span<const double> y, std::span<double> d) { d[0] = -0.7 * y[0]; };
  const std::vector<double> y0{2.0};
  const auto tr = integrate(f, y0, horizon(10.0));
  CHECK(tr.terminated_by == Termination::HorizonReached);
  CHECK(tr.final_time() == 10.0);
  CHECK(tr.final_state()[0] == doctest::Approx(2.0 * std::exp(-7.0)).epsilon(1e-7));
}

TEST_CASE("harmonic oscillator conserves energy over many periods") {
  const VectorField f = [](std::span<const double> y, std::span<double> d) {
    d[0] = y[1];
    d[1] = -y[0];
  };
  const std::vector<double> y0{1.0, 0.0};
  const auto tr = integrate(f, y0, horizon(20 * M_PI));
  CHECK(tr.final_state()[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(tr.final_state()[1]) < 1e-6);
}

TEST_CASE("logistic growth: interpolated samples match the closed form") {
  const double r = 0.3954, K = 1e6, u0 = 1e4;
  const VectorField f = [&](std::span<const double> y, std::span<double> d) { d[0] = r * y[0] * (1 - y[0] / K); };
  const std::vector<double> y0{u0};
  const auto tr = integrate(f, y0, horizon(40.0));
  for (double t : {0.0, 3.3, 11.0, 17.25, 29.9, 40.0}) {
    const double exact = K / (1 + (K / u0 - 1) * std::exp(-r * t));
    CHECK(sample_at(tr, t)[0] == doctest::Approx(exact).epsilon(1e-5));
  }
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const double exact = K / (1 + (K / u0 - 1) * std::exp(-r * tr.times[k]));
    CHECK(tr.states[k][0] == doctest::Approx(exact).epsilon(1e-7));
    CHECK(sample_at(tr, tr.times[k])[0] == tr.states[k][0]);
  }
  CHECK_THROWS_AS(sample_at(tr, 40.5), std::out_of_range);
  CHECK_THROWS_AS(sample_at(tr, -0.1), std::out_of_range);
}

TEST_CASE("tightening tolerances reduces the error") {
  const VectorField f = [](std::span<const double> y, std::span<double> d) { d[0] = std::cos(y[0]) + 0.1; };
  const std::vector<double> y0{0.0};
  auto run = [&](double rtol) {
    IntegratorConfig c = horizon(30.0);
    c.rtol = rtol;
    c.atol = rtol * 1e-2;
    return integrate(f, y0, c);
  };
  const double ref = run(1e-12).final_state()[0];
  const auto loose = run(1e-5), tight = run(1e-9);
  CHECK(std::abs(tight.final_state()[0] - ref) < std::abs(loose.final_state()[0] - ref) + 1e-14);
  CHECK(tight.counts.accepted > loose.counts.accepted);
}

TEST_CASE("steady-state detection stops early") {
  const VectorField f = [](std::span<const double> y, std::span<double> d) { d[0] = -y[0]; };
  const std::vector<double> y0{1.0};
  IntegratorConfig c;
  c.t_end = 1000.0;
  c.settle_norm = 1e-9;
  c.settle_duration = 5.0;
  const auto tr = integrate(f, y0, c);
  CHECK(tr.terminated_by == Termination::SteadyStateDetected);
  CHECK(tr.final_time() < 100.0);
}

TEST_CASE("finite-time blow-up is reported as a step failure") {
  const VectorField f = [](std::span<const double> y, std::span<double> d) { d[0] = y[0] * y[0]; };
  const std::vector<double> y0{1.0};
  const auto tr = integrate(f, y0, horizon(2.0));
  CHECK(tr.terminated_by == Termination::StepFailure);
  CHECK(tr.final_time() < 1.0 + 1e-6);
  CHECK_FALSE(tr.failure.empty());
}

TEST_CASE("non-finite initial derivative fails immediately") {
  const VectorField f = [](std::span<const double>, std::span<double> d) { d[0] = NAN; };
  const std::vector<double> y0{1.0};
  const auto tr = integrate(f, y0, horizon(1.0));
  CHECK(tr.terminated_by == Termination::StepFailure);
}

TEST_CASE("observer sees every accepted step and store_steps=false keeps endpoints only") {
  const VectorField f = [](std::span<const double> y, std::span<double> d) { d[0] = -y[0]; };
  const std::vector<double> y0{1.0};
  IntegratorConfig c = horizon(5.0);
  c.store_steps = false;
  std::size_t calls = 0;
  double last_t = -1;
  const auto tr = integrate(f, y0, c, [&](double t, std::span<const double>) {
    CHECK(t > last_t);
    last_t = t;
    ++calls;
  });
  CHECK(tr.times.size() == 2);
  CHECK(calls >= tr.counts.accepted);
  CHECK(last_t == 5.0);
}

TEST_CASE("integration is deterministic") {
  const VectorField f = [](std::span<const double> y, std::span<double> d) {
    d[0] = y[1];
    d[1] = -std::sin(y[0]) - 0.1 * y[1];
  };
  const std::vector<double> y0{2.0, 0.0};
  const auto a = integrate(f, y0, horizon(50.0));
  const auto b = integrate(f, y0, horizon(50.0));
  CHECK(a.times == b.times);
  CHECK(a.states == b.states);
}

TEST_CASE("config validation") {
  IntegratorConfig c;
  c.rtol = 0;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = IntegratorConfig{};
  c.t_end = -1;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = IntegratorConfig{};
  c.h_max = 1e-6;
  CHECK_THROWS_AS(c.validate(), ParameterError);
}
