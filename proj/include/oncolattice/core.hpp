#ifndef ONCOLATTICE_CORE_HPP
#define ONCOLATTICE_CORE_HPP

#include <stdexcept>
#include <string>
#include <variant>

namespace oncolattice {

/// Raised when a function is evaluated outside its domain (e.g. negative oxygen).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a parameter set violates its invariants.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ConstantForm {
  double value = 0.0;
};

/// v(c) = vinf * v0 / (v0 + (vinf - v0) * exp(-k c))
struct SigmoidForm {
  double v0 = 0.0;
  double vinf = 0.0;
  double k = 0.0;
};

/// Oxygen-dependent rate: either constant or a monotone sigmoid in c.
///
/// The checked accessors (`operator()`, `derivative`) reject negative oxygen.
/// The `*_unchecked` variants evaluate the closed form on the whole real line;
/// right-hand sides use them so that integrator trial stages slightly below
/// zero do not abort a run.
class OxygenResponse {
 public:
  OxygenResponse() = default;

  static OxygenResponse constant(double value);
  static OxygenResponse sigmoid(double v0, double vinf, double k);

  double operator()(double c) const;
  double derivative(double c) const;

  double value_unchecked(double c) const noexcept;
  double derivative_unchecked(double c) const noexcept;

  /// Rate at zero oxygen (theta_0 / gamma_0).
  double at_zero() const noexcept;
  /// Limit as c -> infinity.
  double limit() const noexcept;

  bool is_constant() const noexcept {
    return std::holds_alternative<ConstantForm>(form_);
  }
  const std::variant<ConstantForm, SigmoidForm>& form() const noexcept {
    return form_;
  }

  friend bool operator==(const OxygenResponse& a, const OxygenResponse& b);

 private:
  std::variant<ConstantForm, SigmoidForm> form_{ConstantForm{}};
};

double eval_response(const OxygenResponse& resp, double c);
double eval_response_deriv(const OxygenResponse& resp, double c);

/// A response composed with an affine rescaling: value_scale * base(arg_scale * z).
/// Nondimensional responses are stored this way so the dimensional source is
/// kept intact.
struct ScaledResponse {
  OxygenResponse base;
  double arg_scale = 1.0;
  double value_scale = 1.0;

  static ScaledResponse identity(OxygenResponse r) { return {std::move(r), 1.0, 1.0}; }

  double operator()(double z) const { return value_scale * base(arg_scale * z); }
  double derivative(double z) const {
    return value_scale * arg_scale * base.derivative(arg_scale * z);
  }
  double value_unchecked(double z) const noexcept {
    return value_scale * base.value_unchecked(arg_scale * z);
  }
  double derivative_unchecked(double z) const noexcept {
    return value_scale * arg_scale * base.derivative_unchecked(arg_scale * z);
  }
  double at_zero() const noexcept { return value_scale * base.at_zero(); }
  double limit() const noexcept { return value_scale * base.limit(); }
  bool is_constant() const noexcept { return base.is_constant(); }
};

/// Local-model parameters in physical units.
struct DimensionalParams {
  double r1 = 0.0;     // day^-1
  double r2 = 0.0;     // day^-1
  double K = 0.0;      // cells/mm^3
  double alpha = 0.0;  // cells/mm^3
  double phi = 0.0;    // mM/day
  double beta = 0.0;   // day^-1
  double q1 = 0.0;     // mm^3/(cell day)
  double q2 = 0.0;     // mm^3/(cell day)
  OxygenResponse theta;
  OxygenResponse gamma;

  void validate() const;
};

/// Local-model parameters after rescaling x=u/K, y=n/K, z=beta c/phi, tau=r1 t.
struct NondimParams {
  double r = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  ScaledResponse theta;
  ScaledResponse gamma;

  void validate() const;
};

struct LocalState {
  double u = 0.0;
  double n = 0.0;
  double c = 0.0;
};

struct NondimState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Baseline local-model parameter set with constant theta = 1.0, gamma = 0.5115.
DimensionalParams baseline_params();

NondimParams nondimensionalize(const DimensionalParams& p);

LocalState redimension_state(const NondimState& s, const DimensionalParams& p);
NondimState nondimensionalize_state(const LocalState& s, const DimensionalParams& p);
double redimension_time(double tau, const DimensionalParams& p);
double nondimensionalize_time(double t, const DimensionalParams& p);

std::string describe(const OxygenResponse& r);

}  // namespace oncolattice

#endif  // ONCOLATTICE_CORE_HPP
