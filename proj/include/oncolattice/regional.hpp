#ifndef ONCOLATTICE_REGIONAL_HPP
#define ONCOLATTICE_REGIONAL_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "oncolattice/core.hpp"
#include "oncolattice/integrator.hpp"
#include "oncolattice/linalg.hpp"

namespace oncolattice {

struct NodeParams {
  double K = 0.0;       // cells/mm^3
  double alpha = 0.0;   // cells/mm^3
  double eta = 0.0;     // day^-1
  double lambda = 0.0;  // mm^3/cell
  double qL = 0.0;
  double qR = 1.0;
  double phi = 0.0;  // mM/day
};

/// Linear chain: node 0 is the primary tumour, 1..ell are lymph nodes.
struct LatticeModel {
  std::vector<NodeParams> nodes;
  double r1 = 0.0;
  double r2 = 0.0;
  double beta = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  OxygenResponse theta;
  OxygenResponse gamma;
  bool full_oxygenation = false;

  std::size_t ell() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  std::size_t dim() const { return 3 * nodes.size(); }
  void validate() const;
  /// All phi zero, q_R = 1 and q_L = 0 everywhere.
  bool forward_regime() const;
};

/// Per-node vectors; flattened as [u0, n0, c0, u1, n1, c1, ...].
struct RegionalState {
  std::vector<double> u;
  std::vector<double> n;
  std::vector<double> c;

  std::vector<double> flatten() const;
  static RegionalState unflatten(std::span<const double> y);
};

double calibrate_lambda(double K);

/// Dimensionless p_i(x) = 1 - exp(-lambda_i x).
double spread_fraction(const NodeParams& node, double total);
/// P_i(x) = eta_i p_i(x).
double spreading_rate(const NodeParams& node, double total);

/// Flat right-hand side, allocation free.
void rhs_regional(std::span<const double> y, std::span<double> dy, const LatticeModel& m);
RegionalState rhs_regional(const RegionalState& s, const LatticeModel& m);
VectorField make_field(const LatticeModel& m);

/// Tumour-dominant steady state in the forward regime (n* = c* = 0). Throws
/// std::runtime_error naming the node when a balance equation has no positive root.
RegionalState tumour_dominant_regional(const LatticeModel& m);

struct Prop5Report {
  RegionalState steady;
  double theta0 = 0.0;
  double gamma0 = 0.0;
  double eta0_bound = 0.0;  // right-hand side of condition 1
  double cond1_slack = 0.0;  // eta0 - eta0_bound
  bool cond1 = false;
  std::vector<double> K_bound_spread;  // per lymph node, index 0 <-> node 1
  std::vector<double> K_bound_growth;
  std::vector<bool> cond2;
  std::vector<double> gamma0_bound;
  std::vector<bool> cond3;
  bool certified = false;
};

Prop5Report prop5_certificate(const LatticeModel& m);

/// Central finite differences, step rel_step * max(scale, |s_k|); scale is K_i for cells, 1 for oxygen.
DenseMatrix regional_jacobian(const RegionalState& s, const LatticeModel& m, double rel_step = 1e-6);

/// Reference lattice: baseline rates, K_i = K/10,
/// alpha_i = alpha/10, eta = 0.0002, q_L = 0.05, q_R = 0.95, phi only at node 0.
LatticeModel reference_lattice(std::size_t ell = 3);
RegionalState reference_initial_state(std::size_t ell = 3);

}  // namespace oncolattice

#endif  // ONCOLATTICE_REGIONAL_HPP
