#ifndef ONCOLATTICE_EXPERIMENTS_HPP
#define ONCOLATTICE_EXPERIMENTS_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "oncolattice/equilibria.hpp"
#include "oncolattice/integrator.hpp"
#include "oncolattice/local_model.hpp"
#include "oncolattice/regional.hpp"
#include "oncolattice/table.hpp"

namespace oncolattice {

/// Integration or evaluation failure inside a scenario.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputKind { Timeseries, PhasePortrait, Heatmap, StabilityRegion, Comparison, FullOxygenation };

const char* to_string(OutputKind k);
OutputKind output_kind_from_string(const std::string& s);  // throws std::invalid_argument

using ScenarioModel = std::variant<DimensionalParams, ReducedParams, LatticeModel>;

struct GridSpec {
  double theta_start = 0.0;
  double theta_step = 0.01;
  std::size_t theta_count = 101;
  double gamma_start = 0.0;
  double gamma_step = 0.01;
  std::size_t gamma_count = 101;

  std::vector<double> thetas() const;
  std::vector<double> gammas() const;
};

struct Scenario {
  std::string name;
  std::string provenance;
  ScenarioModel model;
  std::vector<double> initial;
  double horizon = 80.0;
  double output_step = 0.0;  // 0: horizon / 100
  std::vector<OutputKind> outputs{OutputKind::Timeseries};
  GridSpec grid;
  IntegratorConfig integrator;

  void validate() const;
};

std::vector<std::string> state_columns(const ScenarioModel& m);

/// Integrator settings used by scenarios: tolerances from `base`, horizon as given,
/// steady-state early exit disabled.
IntegratorConfig scenario_integrator(const IntegratorConfig& base, double horizon);

Table run_timeseries(const Scenario& sc);

// ---------------------------------------------------------------- phase portraits

struct PhasePortrait {
  Table field;         // x, y, dx, dy (unit direction, zero at rest points)
  Table trajectories;  // id, t, x, y
  std::vector<Classified2D> steady_states;
  std::vector<std::array<double, 2>> endpoints;
};

const std::vector<std::array<double, 2>>& portrait_starts();

PhasePortrait phase_portrait(const ReducedParams& p, std::size_t grid = 25, double horizon = 500.0,
                             const IntegratorConfig& base = {});

// ---------------------------------------------------------------- heatmap

struct Heatmap {
  std::vector<double> thetas;
  std::vector<double> gammas;
  std::vector<double> values;  // values[i * gammas.size() + j] for (thetas[i], gammas[j]); NaN = failed cell
  std::size_t failures = 0;

  double at(std::size_t i, std::size_t j) const { return values[i * gammas.size() + j]; }
};

/// Peak of u0 + n0 over [0, horizon] with constant theta/gamma substituted per cell.
double heatmap_cell(const LatticeModel& base, const std::vector<double>& y0, double theta, double gamma,
                    double horizon, const IntegratorConfig& tol = {});

Heatmap theta_gamma_heatmap(const GridSpec& grid, const LatticeModel& base, const std::vector<double>& y0,
                            double horizon = 80.0, std::size_t threads = 0,
                            const IntegratorConfig& tol = {});

Table heatmap_table(const Heatmap& h);

// ---------------------------------------------------------------- regional comparisons

struct ComparisonRun {
  double phi0 = 0.0;
  double primary_final = 0.0;
  double primary_peak = 0.0;
  std::vector<double> node_final;  // u_i + n_i at horizon, all nodes
  bool settled = false;            // max |rhs| < 1e-6 at horizon
  Table timeseries;
};

struct ComparisonReport {
  ComparisonRun without_oxygen;  // phi0 = 0
  ComparisonRun with_oxygen;     // phi0 = 1e4
  double reduction_vs_unoxygenated = 0.0;  // 1 - final(phi) / final(0)
  double reduction_vs_peak = 0.0;          // 1 - final(phi) / peak(phi)
};

ComparisonRun run_lattice(const LatticeModel& m, const std::vector<double>& y0, double horizon,
                          double output_step, const IntegratorConfig& tol = {});

ComparisonReport oxygenation_comparison(const LatticeModel& base, const std::vector<double>& y0,
                                        double horizon = 80.0, double output_step = 0.8,
                                        const IntegratorConfig& tol = {});

Table comparison_table(const ComparisonReport& r);

struct FullOxygenationReport {
  Table timeseries;
  std::vector<double> final_u;
  std::vector<double> final_n;
  std::vector<bool> infected_below_capacity;  // lymph nodes only, index 0 <-> node 1
  bool all_below = false;
};

FullOxygenationReport full_oxygenation_regional(const LatticeModel& base, const std::vector<double>& y0,
                                                double horizon = 80.0, double phi = 1.0e4,
                                                double output_step = 0.8, const IntegratorConfig& tol = {});

// ---------------------------------------------------------------- stability region

struct StabilityRegion {
  Table boundary;  // gamma, theta_boundary
  Table samples;   // gamma, theta, expected (0 tumour, 1 coexistence, 2 infected), observed, agree
  bool all_agree = false;
};

double stability_boundary(double r, double alpha, double gamma);

StabilityRegion stability_region(double r, double alpha, std::size_t points = 200);

// ---------------------------------------------------------------- scenario driver

struct Artifact {
  std::string name;  // file stem
  bool has_table = false;
  Table table;
  std::string svg;
  std::string text;
};

std::vector<Artifact> run_scenario(const Scenario& sc, std::size_t threads = 0);

}  // namespace oncolattice

#endif  // ONCOLATTICE_EXPERIMENTS_HPP
