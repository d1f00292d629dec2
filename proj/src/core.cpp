#include "oncolattice/core.hpp"

#include <cmath>
#include <sstream>

namespace oncolattice {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

OxygenResponse OxygenResponse::constant(double value) {
  require(finite_nonneg(value), "constant response value must be finite and >= 0");
  OxygenResponse r;
  r.form_ = ConstantForm{value};
  return r;
}

OxygenResponse OxygenResponse::sigmoid(double v0, double vinf, double k) {
  require(finite_nonneg(v0), "sigmoid v0 must be finite and >= 0");
  require(std::isfinite(vinf) && vinf > v0, "sigmoid requires vinf > v0");
  require(std::isfinite(k) && k > 0.0, "sigmoid steepness k must be > 0");
  OxygenResponse r;
  r.form_ = SigmoidForm{v0, vinf, k};
  return r;
}

double OxygenResponse::value_unchecked(double c) const noexcept {
  if (const auto* k = std::get_if<ConstantForm>(&form_)) return k->value;
  const auto& s = std::get<SigmoidForm>(form_);
  if (s.v0 == 0.0) return 0.0;
  return s.vinf * s.v0 / (s.v0 + (s.vinf - s.v0) * std::exp(-s.k * c));
}

double OxygenResponse::derivative_unchecked(double c) const noexcept {
  if (std::holds_alternative<ConstantForm>(form_)) return 0.0;
  const auto& s = std::get<SigmoidForm>(form_);
  const double v = value_unchecked(c);
  return s.k * v * (1.0 - v / s.vinf);
}

double OxygenResponse::operator()(double c) const {
  if (!(c >= 0.0)) throw DomainError("oxygen response evaluated at negative concentration");
  return value_unchecked(c);
}

double OxygenResponse::derivative(double c) const {
  if (!(c >= 0.0)) throw DomainError("oxygen response derivative at negative concentration");
  return derivative_unchecked(c);
}

double OxygenResponse::at_zero() const noexcept {
  if (const auto* k = std::get_if<ConstantForm>(&form_)) return k->value;
  return std::get<SigmoidForm>(form_).v0;
}

double OxygenResponse::limit() const noexcept {
  if (const auto* k = std::get_if<ConstantForm>(&form_)) return k->value;
  return std::get<SigmoidForm>(form_).vinf;
}

bool operator==(const OxygenResponse& a, const OxygenResponse& b) {
  if (a.form_.index() != b.form_.index()) return false;
  if (a.is_constant()) return std::get<ConstantForm>(a.form_).value == std::get<ConstantForm>(b.form_).value;
  const auto& x = std::get<SigmoidForm>(a.form_);
  const auto& y = std::get<SigmoidForm>(b.form_);
  return x.v0 == y.v0 && x.vinf == y.vinf && x.k == y.k;
}

double eval_response(const OxygenResponse& resp, double c) { return resp(c); }

double eval_response_deriv(const OxygenResponse& resp, double c) { return resp.derivative(c); }

void DimensionalParams::validate() const {
  for (double v : {r1, r2, K, alpha, phi, beta, q1, q2})
    require(finite_nonneg(v), "dimensional parameters must be finite and >= 0");
  require(r1 > r2, "growth rates must satisfy r1 > r2");
  require(K > 0.0, "carrying capacity K must be > 0");
  require(alpha > 0.0, "Hill constant alpha must be > 0");
}

void NondimParams::validate() const {
  for (double v : {r, alpha, beta, q1, q2})
    require(finite_nonneg(v), "nondimensional parameters must be finite and >= 0");
  require(r < 1.0, "nondimensional growth ratio r must be < 1");
  require(alpha > 0.0, "nondimensional Hill constant must be > 0");
  require(theta.arg_scale > 0.0 && theta.value_scale > 0.0, "theta scaling must be positive");
  require(gamma.arg_scale > 0.0 && gamma.value_scale > 0.0, "gamma scaling must be positive");
}

DimensionalParams baseline_params() {
  DimensionalParams p;
  p.r1 = 0.3954;
  p.r2 = 0.21;
  p.K = 1.0e6;
  p.alpha = 1.0e5;
  p.phi = 1.0e4;
  p.beta = 5.0976;
  p.q1 = 5.47e-5;
  p.q2 = 2.735e-5;
  p.theta = OxygenResponse::constant(1.0);
  p.gamma = OxygenResponse::constant(0.5115);
  return p;
}

NondimParams nondimensionalize(const DimensionalParams& p) {
  require(p.r1 > 0.0, "cannot rescale time: r1 = 0");
  require(p.phi > 0.0 && p.beta > 0.0, "cannot rescale oxygen: phi and beta must be > 0");
  p.validate();
  NondimParams out;
  out.r = p.r2 / p.r1;
  out.alpha = p.alpha / p.K;
  out.beta = p.beta / p.r1;
  out.q1 = p.q1 * p.K / p.r1;
  out.q2 = p.q2 * p.K / p.r1;
  const double arg = p.phi / p.beta;
  out.theta = ScaledResponse{p.theta, arg, 1.0 / p.r1};
  out.gamma = ScaledResponse{p.gamma, arg, 1.0 / p.r1};
  return out;
}

LocalState redimension_state(const NondimState& s, const DimensionalParams& p) {
  return {p.K * s.x, p.K * s.y, p.phi * s.z / p.beta};
}

NondimState nondimensionalize_state(const LocalState& s, const DimensionalParams& p) {
  return {s.u / p.K, s.n / p.K, p.beta * s.c / p.phi};
}

double redimension_time(double tau, const DimensionalParams& p) { return tau / p.r1; }

double nondimensionalize_time(double t, const DimensionalParams& p) { return t * p.r1; }

std::string describe(const OxygenResponse& r) {
  std::ostringstream os;
  os.precision(10);
  if (const auto* k = std::get_if<ConstantForm>(&r.form())) {
    os << "constant(" << k->value << ")";
  } else {
    const auto& s = std::get<SigmoidForm>(r.form());
    os << "sigmoid(v0=" << s.v0 << ", vinf=" << s.vinf << ", k=" << s.k << ")";
  }
  return os.str();
}

}  // namespace oncolattice
