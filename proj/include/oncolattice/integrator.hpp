#ifndef ONCOLATTICE_INTEGRATOR_HPP
#define ONCOLATTICE_INTEGRATOR_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace oncolattice {

/// Autonomous vector field: writes f(y) into dy.
using VectorField = std::function<void(std::span<const double> y, std::span<double> dy)>;

/// Called after every accepted step (and once at the initial point).
using StepObserver = std::function<void(double t, std::span<const double> y)>;

enum class Termination { HorizonReached, SteadyStateDetected, StepFailure };

const char* to_string(Termination t);

struct IntegratorConfig {
  double rtol = 1e-8;
  double atol = 1e-10;
  double h_init = 1e-4;
  double h_max = std::numeric_limits<double>::infinity();
  double t_end = 1.0;
  double settle_norm = 1e-9;  // 0 disables steady-state detection
  double settle_duration = 5.0;
  bool store_steps = true;

  void validate() const;
};

struct StepCounts {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<std::vector<double>> derivatives;
  Termination terminated_by = Termination::HorizonReached;
  StepCounts counts;
  std::string failure;  // reason when terminated_by == StepFailure

  const std::vector<double>& final_state() const { return states.back(); }
  double final_time() const { return times.back(); }
};

/// Dormand-Prince 5(4) with FSAL and per-step error control.
/// With store_steps == false only the initial and final points are kept.
Trajectory integrate(const VectorField& rhs, std::span<const double> y0,
                     const IntegratorConfig& cfg, const StepObserver& observer = {});

/// Cubic Hermite interpolation between stored steps. Throws std::out_of_range.
std::vector<double> sample_at(const Trajectory& traj, double t);

}  // namespace oncolattice

#endif  // ONCOLATTICE_INTEGRATOR_HPP
