#include "oncolattice/local_model.hpp"

#include <cmath>

namespace oncolattice {

void ReducedParams::validate() const {
  for (double v : {r, alpha, theta, gamma})
    if (!std::isfinite(v) || v < 0.0) throw ParameterError("reduced parameters must be finite and >= 0");
  if (!(r < 1.0)) throw ParameterError("reduced model requires r < 1");
  if (!(alpha > 0.0)) throw ParameterError("reduced model requires alpha > 0");
}

ReducedParams reduce(const NondimParams& p) {
  if (!p.theta.is_constant() || !p.gamma.is_constant())
    throw ParameterError("reduced subsystem requires constant theta and gamma");
  ReducedParams out{p.r, p.alpha, p.theta(0.0), p.gamma(0.0)};
  out.validate();
  return out;
}

LocalState rhs_dimensional(const LocalState& s, const DimensionalParams& p) {
  const double th = p.theta.value_unchecked(s.c);
  const double ga = p.gamma.value_unchecked(s.c);
  const double crowd = 1.0 - (s.u + s.n) / p.K;
  const double infection = th * s.n * s.u / (p.alpha + s.n);
  return {p.r1 * s.u * crowd - infection,
          p.r2 * s.n * crowd + infection - ga * s.n,
          p.phi - p.beta * s.c - p.q1 * s.u * s.c - p.q2 * s.n * s.c};
}

NondimState rhs_nondim(const NondimState& s, const NondimParams& p) {
  const double th = p.theta.value_unchecked(s.z);
  const double ga = p.gamma.value_unchecked(s.z);
  const double crowd = 1.0 - s.x - s.y;
  const double infection = th * s.x * s.y / (p.alpha + s.y);
  return {s.x * crowd - infection,
          p.r * s.y * crowd + infection - ga * s.y,
          p.beta * (1.0 - s.z) - p.q1 * s.x * s.z - p.q2 * s.y * s.z};
}

std::array<double, 2> rhs_2d(double x, double y, const ReducedParams& p) {
  const double crowd = 1.0 - x - y;
  const double infection = p.theta * x * y / (p.alpha + y);
  return {x * crowd - infection, p.r * y * crowd + infection - p.gamma * y};
}

DenseMatrix jacobian_3d(const NondimState& s, const NondimParams& p) {
  const double x = s.x, y = s.y, z = s.z;
  const double th = p.theta.value_unchecked(z);
  const double ga = p.gamma.value_unchecked(z);
  const double dth = p.theta.derivative_unchecked(z);
  const double dga = p.gamma.derivative_unchecked(z);
  const double a = p.alpha;
  const double hill = y / (a + y);
  const double hill_y = a / ((a + y) * (a + y));

  DenseMatrix J(3);
  J(0, 0) = 1.0 - 2.0 * x - y - th * hill;
  J(0, 1) = -x - th * x * hill_y;
  J(0, 2) = -dth * x * hill;
  J(1, 0) = -p.r * y + th * hill;
  J(1, 1) = p.r * (1.0 - x - 2.0 * y) + th * x * hill_y - ga;
  J(1, 2) = dth * x * hill - dga * y;
  J(2, 0) = -p.q1 * z;
  J(2, 1) = -p.q2 * z;
  J(2, 2) = -p.beta - p.q1 * x - p.q2 * y;
  return J;
}

DenseMatrix jacobian_2d(double x, double y, const ReducedParams& p) {
  const double a = p.alpha;
  const double hill = y / (a + y);
  const double hill_y = a / ((a + y) * (a + y));
  DenseMatrix J(2);
  J(0, 0) = 1.0 - 2.0 * x - y - p.theta * hill;
  J(0, 1) = -x - p.theta * x * hill_y;
  J(1, 0) = -p.r * y + p.theta * hill;
  J(1, 1) = p.r * (1.0 - x - 2.0 * y) + p.theta * x * hill_y - p.gamma;
  return J;
}

VectorField make_field(const DimensionalParams& p) {
  return [p](std::span<const double> y, std::span<double> dy) {
    const LocalState d = rhs_dimensional({y[0], y[1], y[2]}, p);
    dy[0] = d.u;
    dy[1] = d.n;
    dy[2] = d.c;
  };
}

VectorField make_field(const NondimParams& p) {
  return [p](std::span<const double> y, std::span<double> dy) {
    const NondimState d = rhs_nondim({y[0], y[1], y[2]}, p);
    dy[0] = d.x;
    dy[1] = d.y;
    dy[2] = d.z;
  };
}

VectorField make_field(const ReducedParams& p) {
  return [p](std::span<const double> y, std::span<double> dy) {
    const auto d = rhs_2d(y[0], y[1], p);
    dy[0] = d[0];
    dy[1] = d[1];
  };
}

VectorField make_field(const LocalModel& m) {
  return std::visit([](const auto& p) { return make_field(p); }, m);
}

}  // namespace oncolattice
