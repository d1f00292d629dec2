#ifndef ONCOLATTICE_LOCAL_MODEL_HPP
#define ONCOLATTICE_LOCAL_MODEL_HPP

#include <array>
#include <variant>

#include "oncolattice/core.hpp"
#include "oncolattice/integrator.hpp"
#include "oncolattice/linalg.hpp"

namespace oncolattice {

/// Oxygen-free two-variable subsystem with constant rates (dimensionless).
struct ReducedParams {
  double r = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  double gamma = 0.0;

  void validate() const;
};

/// Constant responses only; evaluates theta_hat, gamma_hat once.
ReducedParams reduce(const NondimParams& p);

/// Tagged local model: dimensional, nondimensional, or the reduced 2-variable system.
using LocalModel = std::variant<DimensionalParams, NondimParams, ReducedParams>;

LocalState rhs_dimensional(const LocalState& s, const DimensionalParams& p);
NondimState rhs_nondim(const NondimState& s, const NondimParams& p);
std::array<double, 2> rhs_2d(double x, double y, const ReducedParams& p);

DenseMatrix jacobian_3d(const NondimState& s, const NondimParams& p);
DenseMatrix jacobian_2d(double x, double y, const ReducedParams& p);

VectorField make_field(const DimensionalParams& p);
VectorField make_field(const NondimParams& p);
VectorField make_field(const ReducedParams& p);
VectorField make_field(const LocalModel& m);

}  // namespace oncolattice

#endif  // ONCOLATTICE_LOCAL_MODEL_HPP
