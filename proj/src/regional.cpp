#include "oncolattice/regional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "oncolattice/roots.hpp"

namespace oncolattice {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double outflow_coef(const LatticeModel& m, std::size_t i) {
  const std::size_t last = m.nodes.size() - 1;
  if (i == 0) return m.nodes[0].qR;
  if (i == last) return m.nodes[i].qL;
  return m.nodes[i].qL + m.nodes[i].qR;
}

}  // namespace

void LatticeModel::validate() const {
  if (nodes.size() < 2) throw ParameterError("lattice needs a primary site and at least one lymph node");
  for (double v : {r1, r2, beta, q1, q2})
    if (!std::isfinite(v) || v < 0.0) throw ParameterError("lattice rates must be finite and >= 0");
  if (!(r1 > r2)) throw ParameterError("lattice requires r1 > r2");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    const std::string where = "node " + std::to_string(i) + ": ";
    for (double v : {nd.K, nd.alpha, nd.eta, nd.lambda, nd.qL, nd.qR, nd.phi})
      if (!std::isfinite(v) || v < 0.0) throw ParameterError(where + "parameters must be finite and >= 0");
    if (!(nd.K > 0.0) || !(nd.alpha > 0.0)) throw ParameterError(where + "K and alpha must be > 0");
    if (i > 0 && i + 1 < nodes.size() && std::abs(nd.qL + nd.qR - 1.0) > 1e-12)
      throw ParameterError(where + "q_L + q_R must equal 1 at interior nodes");
    if (i > 0 && nd.phi > 0.0 && !full_oxygenation)
      throw ParameterError(where + "phi > 0 at a lymph node requires full_oxygenation");
  }
}

bool LatticeModel::forward_regime() const {
  return std::all_of(nodes.begin(), nodes.end(), [](const NodeParams& nd) {
    return nd.phi == 0.0 && nd.qR == 1.0 && nd.qL == 0.0;
  });
}

std::vector<double> RegionalState::flatten() const {
  std::vector<double> y(3 * u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    y[3 * i] = u[i];
    y[3 * i + 1] = n[i];
    y[3 * i + 2] = c[i];
  }
  return y;
}

RegionalState RegionalState::unflatten(std::span<const double> y) {
  if (y.size() % 3 != 0) throw ParameterError("regional state length must be a multiple of 3");
  RegionalState s;
  const std::size_t k = y.size() / 3;
  s.u.resize(k);
  s.n.resize(k);
  s.c.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    s.u[i] = y[3 * i];
    s.n[i] = y[3 * i + 1];
    s.c[i] = y[3 * i + 2];
  }
  return s;
}

double calibrate_lambda(double K) {
  if (!(K > 0.0)) throw ParameterError("calibrate_lambda: K must be > 0");
  return -std::log(0.3) / K;
}

double spread_fraction(const NodeParams& node, double total) {
  return -std::expm1(-node.lambda * total);
}

double spreading_rate(const NodeParams& node, double total) {
  return node.eta * spread_fraction(node, total);
}

void rhs_regional(std::span<const double> y, std::span<double> dy, const LatticeModel& m) {
  const std::size_t k = m.nodes.size();
  double P_prev = 0.0;
  double P_cur = spreading_rate(m.nodes[0], y[0] + y[1]);
  for (std::size_t i = 0; i < k; ++i) {
    const NodeParams& nd = m.nodes[i];
    const double u = y[3 * i], n = y[3 * i + 1], c = y[3 * i + 2];
    const double P_next = i + 1 < k ? spreading_rate(m.nodes[i + 1], y[3 * i + 3] + y[3 * i + 4]) : 0.0;

    const double th = m.theta.value_unchecked(c);
    const double ga = m.gamma.value_unchecked(c);
    const double crowd = 1.0 - (u + n) / nd.K;
    const double infection = th * n * u / (nd.alpha + n);
    const double out = outflow_coef(m, i) * P_cur;

    double in_u = 0.0, in_n = 0.0;
    if (i > 0) {
      const double w = m.nodes[i - 1].qR * P_prev;
      in_u += w * y[3 * i - 3];
      in_n += w * y[3 * i - 2];
    }
    if (i + 1 < k) {
      const double w = m.nodes[i + 1].qL * P_next;
      in_u += w * y[3 * i + 3];
      in_n += w * y[3 * i + 4];
    }

    dy[3 * i] = m.r1 * u * crowd - infection - out * u + in_u;
    dy[3 * i + 1] = m.r2 * n * crowd + infection - ga * n - out * n + in_n;
    dy[3 * i + 2] = nd.phi - m.beta * c - m.q1 * u * c - m.q2 * n * c;

    P_prev = P_cur;
    P_cur = P_next;
  }
}

RegionalState rhs_regional(const RegionalState& s, const LatticeModel& m) {
  const std::vector<double> y = s.flatten();
  std::vector<double> dy(y.size());
  rhs_regional(y, dy, m);
  return RegionalState::unflatten(dy);
}

VectorField make_field(const LatticeModel& m) {
  m.validate();
  return [m](std::span<const double> y, std::span<double> dy) { rhs_regional(y, dy, m); };
}

RegionalState tumour_dominant_regional(const LatticeModel& m) {
  m.validate();
  if (!m.forward_regime())
    throw ParameterError("tumour-dominant steady state requires phi = 0, q_R = 1, q_L = 0 at every node");
  const std::size_t k = m.nodes.size();
  RegionalState s;
  s.u.assign(k, 0.0);
  s.n.assign(k, 0.0);
  s.c.assign(k, 0.0);

  const NodeParams& n0 = m.nodes[0];
  auto g0 = [&](double u) { return m.r1 * (1.0 - u / n0.K) - n0.eta * spread_fraction(n0, u); };
  {
    const auto roots = scan_roots(g0, n0.K * 1e-12, n0.K, 1000, 1e-15);
    if (roots.empty()) throw std::runtime_error("tumour-dominant state: no root at node 0");
    s.u[0] = roots.back();
  }

  for (std::size_t i = 1; i < k; ++i) {
    const NodeParams& prev = m.nodes[i - 1];
    const NodeParams& nd = m.nodes[i];
    const double inflow = prev.qR * spreading_rate(prev, s.u[i - 1]) * s.u[i - 1];
    const double out = outflow_coef(m, i);
    auto f = [&](double u) {
      return m.r1 * u * (1.0 - u / nd.K) + inflow - out * u * spreading_rate(nd, u);
    };
    auto roots = scan_roots(f, 0.0, 20.0 * nd.K, 20000, 1e-15);
    if (roots.empty() || !(roots.back() > 0.0))
      throw std::runtime_error("tumour-dominant state: no positive root at node " + std::to_string(i));
    s.u[i] = roots.back();
  }
  return s;
}

Prop5Report prop5_certificate(const LatticeModel& m) {
  Prop5Report rep;
  rep.steady = tumour_dominant_regional(m);
  rep.theta0 = m.theta.at_zero();
  rep.gamma0 = m.gamma.at_zero();
  const auto& u = rep.steady.u;
  const auto& nodes = m.nodes;

  const double p0 = spread_fraction(nodes[0], u[0]);
  rep.eta0_bound = (m.r1 * (1.0 - u[0] / nodes[0].K) + rep.theta0 * u[0] / nodes[0].alpha) / p0;
  // At E_u the node-0 balance makes eta0 - bound = -theta0 u0/(alpha0 p0) <= 0 up to rounding;
  // the relative guard keeps a rounding-level tie from counting as a strict pass.
  rep.cond1_slack = nodes[0].eta - rep.eta0_bound;
  rep.cond1 = rep.cond1_slack > 1e-9 * nodes[0].eta;
  rep.certified = rep.cond1;

  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const NodeParams& prev = nodes[i - 1];
    const NodeParams& nd = nodes[i];
    const double pp = spread_fraction(prev, u[i - 1]);
    const double spread_bound =
        nd.eta > 0.0 ? 10.0 * prev.eta / (7.0 * nd.eta) * u[i - 1] * pp : kInf;
    const double extra = rep.theta0 * u[i] / nd.alpha +
                         prev.eta * (pp + 2.0 * prev.lambda * u[i - 1] * std::exp(-prev.lambda * u[i - 1]));
    const double growth_bound = m.r1 * u[i] / (m.r1 + extra);
    const bool c2 = nd.K < std::min(spread_bound, growth_bound);
    const double g_bound = rep.theta0 * u[i] / nd.alpha + prev.eta * pp;
    const bool c3 = rep.gamma0 > g_bound;
    rep.K_bound_spread.push_back(spread_bound);
    rep.K_bound_growth.push_back(growth_bound);
    rep.cond2.push_back(c2);
    rep.gamma0_bound.push_back(g_bound);
    rep.cond3.push_back(c3);
    rep.certified = rep.certified && c2 && c3;
  }
  return rep;
}

DenseMatrix regional_jacobian(const RegionalState& s, const LatticeModel& m, double rel_step) {
  std::vector<double> y = s.flatten();
  const std::size_t d = y.size();
  DenseMatrix J(d);
  std::vector<double> fp(d), fm(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double orig = y[k];
    const double floor = k % 3 == 2 ? 1.0 : m.nodes[k / 3].K;
    const double h = rel_step * std::max(floor, std::abs(orig));
    y[k] = orig + h;
    rhs_regional(y, fp, m);
    y[k] = orig - h;
    rhs_regional(y, fm, m);
    y[k] = orig;
    for (std::size_t i = 0; i < d; ++i) J(i, k) = (fp[i] - fm[i]) / (2.0 * h);
  }
  return J;
}

LatticeModel reference_lattice(std::size_t ell) {
  if (ell < 1) throw ParameterError("reference_lattice: ell must be >= 1");
  const DimensionalParams base = baseline_params();
  LatticeModel m;
  m.r1 = base.r1;
  m.r2 = base.r2;
  m.beta = base.beta;
  m.q1 = base.q1;
  m.q2 = 0.5 * base.q1;
  m.theta = OxygenResponse::sigmoid(0.005115, 2.115, 0.016);
  m.gamma = OxygenResponse::sigmoid(0.1, 0.9, 0.08);
  for (std::size_t i = 0; i <= ell; ++i) {
    NodeParams nd;
    nd.K = i == 0 ? base.K : base.K / 10.0;
    nd.alpha = i == 0 ? base.alpha : base.alpha / 10.0;
    nd.eta = 0.0002;
    nd.lambda = calibrate_lambda(nd.K);
    nd.qL = i == 0 ? 0.0 : 0.05;
    nd.qR = i == 0 ? 1.0 : 0.95;
    nd.phi = i == 0 ? base.phi : 0.0;
    m.nodes.push_back(nd);
  }
  return m;
}

RegionalState reference_initial_state(std::size_t ell) {
  RegionalState s;
  s.u.assign(ell + 1, 0.0);
  s.n.assign(ell + 1, 0.0);
  s.c.assign(ell + 1, 4.375);
  s.u[0] = 10000.0;
  s.n[0] = 100.0;
  s.c[0] = 4.3751;
  return s;
}

}  // namespace oncolattice
