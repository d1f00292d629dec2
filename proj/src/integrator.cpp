#include "oncolattice/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oncolattice/core.hpp"

namespace oncolattice {

namespace {

constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;

constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::HorizonReached: return "horizon_reached";
    case Termination::SteadyStateDetected: return "steady_state_detected";
    case Termination::StepFailure: return "step_failure";
  }
  return "unknown";
}

void IntegratorConfig::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0)) throw ParameterError("integrator tolerances must be > 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ParameterError("integrator t_end must be > 0");
  if (!(h_init > 0.0)) throw ParameterError("integrator h_init must be > 0");
  if (!(h_max > 0.0) || h_init > h_max) throw ParameterError("integrator requires h_init <= h_max");
  if (!(settle_norm >= 0.0) || !(settle_duration >= 0.0))
    throw ParameterError("settle parameters must be >= 0");
}

Trajectory integrate(const VectorField& rhs, std::span<const double> y0,
                     const IntegratorConfig& cfg, const StepObserver& observer) {
  cfg.validate();
  const std::size_t n = y0.size();
  Trajectory traj;

  std::vector<double> y(y0.begin(), y0.end()), ynew(n), tmp(n), err(n);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);

  auto record = [&](double t, const std::vector<double>& state, const std::vector<double>& d) {
    traj.times.push_back(t);
    traj.states.push_back(state);
    traj.derivatives.push_back(d);
  };

  double t = 0.0;
  const double t_end = cfg.t_end;
  const double h_max = std::min(cfg.h_max, t_end);
  const double h_min = 1e-12 * t_end;

  rhs(y, k1);
  ++traj.counts.rhs_evals;
  record(t, y, k1);
  if (observer) observer(t, y);
  if (!all_finite(y) || !all_finite(k1)) {
    traj.terminated_by = Termination::StepFailure;
    traj.failure = "non-finite initial state or derivative";
    return traj;
  }

  double h = std::min(cfg.h_init, h_max);
  double settle_start = -1.0;
  bool last_rejected = false;
  if (cfg.settle_norm > 0.0 && inf_norm(k1) < cfg.settle_norm) settle_start = t;

  auto finish = [&](Termination why) {
    traj.terminated_by = why;
    if (!cfg.store_steps && traj.times.back() != t) record(t, y, k1);
    return traj;
  };

  while (t_end - t > 1e-14 * t_end) {
    if (h < h_min) {
      traj.failure = "step size underflow";
      return finish(Termination::StepFailure);
    }
    bool final_step = false;
    if (t + h >= t_end) {
      h = t_end - t;
      final_step = true;
    }

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(tmp, k3);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    rhs(ynew, k7);
    traj.counts.rhs_evals += 6;

    double err_norm = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      if (!std::isfinite(ynew[i]) || !std::isfinite(k7[i]) || !std::isfinite(err[i])) {
        finite = false;
        break;
      }
      const double sc = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err_norm = std::max(err_norm, std::abs(err[i]) / sc);
    }

    if (!finite) {
      ++traj.counts.rejected;
      h *= kMinFactor;
      last_rejected = true;
      continue;
    }

    if (err_norm > 1.0) {
      ++traj.counts.rejected;
      h *= std::max(kMinFactor, kSafety * std::pow(err_norm, -0.2));
      last_rejected = true;
      continue;
    }

    ++traj.counts.accepted;
    t = final_step ? t_end : t + h;
    y.swap(ynew);
    k1.swap(k7);
    if (cfg.store_steps) record(t, y, k1);
    if (observer) observer(t, y);

    if (cfg.settle_norm > 0.0) {
      if (inf_norm(k1) < cfg.settle_norm) {
        if (settle_start < 0.0) settle_start = t;
        if (t - settle_start >= cfg.settle_duration)
          return finish(Termination::SteadyStateDetected);
      } else {
        settle_start = -1.0;
      }
    }

    double factor = err_norm == 0.0 ? kMaxFactor : kSafety * std::pow(err_norm, -0.2);
    factor = std::clamp(factor, kMinFactor, kMaxFactor);
    if (last_rejected) factor = std::min(factor, 1.0);
    last_rejected = false;
    h = std::min(h * factor, h_max);
  }
  return finish(Termination::HorizonReached);
}

std::vector<double> sample_at(const Trajectory& traj, double t) {
  const auto& ts = traj.times;
  if (ts.empty() || !(t >= ts.front()) || !(t <= ts.back()))
    throw std::out_of_range("sample_at: time outside trajectory range");
  auto it = std::lower_bound(ts.begin(), ts.end(), t);
  std::size_t j = static_cast<std::size_t>(it - ts.begin());
  if (*it == t) return traj.states[j];
  const std::size_t i = j - 1;
  const double h = ts[j] - ts[i];
  const double s = (t - ts[i]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  const auto& y0 = traj.states[i];
  const auto& y1 = traj.states[j];
  const auto& d0 = traj.derivatives[i];
  const auto& d1 = traj.derivatives[j];
  std::vector<double> out(y0.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = h00 * y0[k] + h10 * h * d0[k] + h01 * y1[k] + h11 * h * d1[k];
  return out;
}

}  // namespace oncolattice
