#include "oncolattice/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "oncolattice/parallel.hpp"
#include "oncolattice/svg.hpp"

namespace oncolattice {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

VectorField field_for(const ScenarioModel& m) {
  return std::visit(
      overloaded{[](const DimensionalParams& p) {
                   p.validate();
                   return make_field(p);
                 },
                 [](const ReducedParams& p) {
                   p.validate();
                   return make_field(p);
                 },
                 [](const LatticeModel& p) { return make_field(p); }},
      m);
}

std::size_t state_dim(const ScenarioModel& m) {
  return std::visit(overloaded{[](const DimensionalParams&) -> std::size_t { return 3; },
                               [](const ReducedParams&) -> std::size_t { return 2; },
                               [](const LatticeModel& l) { return l.dim(); }},
                    m);
}

bool needs_initial(OutputKind k) {
  return k == OutputKind::Timeseries || k == OutputKind::Heatmap || k == OutputKind::Comparison ||
         k == OutputKind::FullOxygenation;
}

Table sample_uniform(const Trajectory& traj, double horizon, double step,
                     const std::vector<std::string>& columns) {
  Table t;
  t.columns = columns;
  const auto count = static_cast<std::size_t>(std::llround(horizon / step));
  for (std::size_t k = 0; k <= count; ++k) {
    const double tk = k == count ? horizon : step * static_cast<double>(k);
    const auto y = sample_at(traj, std::min(tk, traj.final_time()));
    std::vector<double> row;
    row.reserve(y.size() + 1);
    row.push_back(tk);
    row.insert(row.end(), y.begin(), y.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

Trajectory checked_integrate(const VectorField& f, const std::vector<double>& y0,
                             const IntegratorConfig& cfg, const std::string& what,
                             const StepObserver& obs = {}) {
  Trajectory traj = integrate(f, y0, cfg, obs);
  if (traj.terminated_by == Termination::StepFailure)
    throw NumericError(what + ": integration failed at t=" + format_double(traj.final_time()) + " (" +
                       traj.failure + ")");
  return traj;
}

std::vector<std::string> lattice_columns(std::size_t nodes) {
  std::vector<std::string> c{"t"};
  for (std::size_t i = 0; i < nodes; ++i) {
    const std::string k = std::to_string(i);
    c.push_back("u" + k);
    c.push_back("n" + k);
    c.push_back("c" + k);
  }
  return c;
}

std::string lattice_totals_svg(const Table& t, std::size_t nodes, const std::string& title) {
  PlotSpec spec{title, "t (days)", "u_i + n_i (cells/mm^3)", {}};
  const auto ts = t.column("t");
  for (std::size_t i = 0; i < nodes; ++i) {
    Series s;
    s.label = i == 0 ? "primary" : "node " + std::to_string(i);
    s.x = ts;
    const auto u = t.column("u" + std::to_string(i));
    const auto n = t.column("n" + std::to_string(i));
    for (std::size_t k = 0; k < u.size(); ++k) s.y.push_back(u[k] + n[k]);
    spec.series.push_back(std::move(s));
  }
  return svg_line_plot(spec);
}

double output_step_of(const Scenario& sc) {
  return sc.output_step > 0.0 ? sc.output_step : sc.horizon / 100.0;
}

std::string describe_classified(const Classified2D& c) {
  std::ostringstream os;
  os << "  - state: " << to_string(c.state.kind) << "\n"
     << "    x: " << format_double(c.state.x) << "\n"
     << "    y: " << format_double(c.state.y) << "\n"
     << "    verdict: " << to_string(c.verdict.kind) << "\n"
     << "    condition: \"" << c.verdict.condition << "\"\n";
  return os.str();
}

}  // namespace

const char* to_string(OutputKind k) {
  switch (k) {
    case OutputKind::Timeseries: return "timeseries";
    case OutputKind::PhasePortrait: return "phase_portrait";
    case OutputKind::Heatmap: return "heatmap";
    case OutputKind::StabilityRegion: return "stability_region";
    case OutputKind::Comparison: return "comparison";
    case OutputKind::FullOxygenation: return "full_oxygenation";
  }
  return "unknown";
}

OutputKind output_kind_from_string(const std::string& s) {
  for (auto k : {OutputKind::Timeseries, OutputKind::PhasePortrait, OutputKind::Heatmap,
                 OutputKind::StabilityRegion, OutputKind::Comparison, OutputKind::FullOxygenation})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown output kind '" + s + "'");
}

std::vector<double> GridSpec::thetas() const {
  std::vector<double> v(theta_count);
  for (std::size_t i = 0; i < theta_count; ++i) v[i] = theta_start + theta_step * static_cast<double>(i);
  return v;
}

std::vector<double> GridSpec::gammas() const {
  std::vector<double> v(gamma_count);
  for (std::size_t i = 0; i < gamma_count; ++i) v[i] = gamma_start + gamma_step * static_cast<double>(i);
  return v;
}

void Scenario::validate() const {
  if (name.empty()) throw ParameterError("scenario name must not be empty");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ParameterError("scenario horizon must be > 0");
  if (!(output_step >= 0.0) || output_step > horizon)
    throw ParameterError("scenario output_step must lie in [0, horizon]");
  if (outputs.empty()) throw ParameterError("scenario must request at least one output");
  std::visit(overloaded{[](const DimensionalParams& p) { p.validate(); },
                        [](const ReducedParams& p) { p.validate(); },
                        [](const LatticeModel& p) { p.validate(); }},
             model);
  const bool reduced = std::holds_alternative<ReducedParams>(model);
  const bool lattice = std::holds_alternative<LatticeModel>(model);
  for (OutputKind k : outputs) {
    if ((k == OutputKind::PhasePortrait || k == OutputKind::StabilityRegion) && !reduced)
      throw ParameterError(std::string(to_string(k)) + " requires the reduced 2-variable model");
    if ((k == OutputKind::Heatmap || k == OutputKind::Comparison || k == OutputKind::FullOxygenation) &&
        !lattice)
      throw ParameterError(std::string(to_string(k)) + " requires a regional model");
    if (needs_initial(k)) {
      if (initial.size() != state_dim(model))
        throw ParameterError("scenario initial state has " + std::to_string(initial.size()) +
                             " entries, model needs " + std::to_string(state_dim(model)));
      for (double v : initial)
        if (!std::isfinite(v) || v < 0.0) throw ParameterError("initial state must be finite and >= 0");
    }
  }
  if (grid.theta_count == 0 || grid.gamma_count == 0) throw ParameterError("grid counts must be > 0");
  integrator.validate();
}

std::vector<std::string> state_columns(const ScenarioModel& m) {
  return std::visit(
      overloaded{[](const DimensionalParams&) { return std::vector<std::string>{"t", "u", "n", "c"}; },
                 [](const ReducedParams&) { return std::vector<std::string>{"t", "x", "y"}; },
                 [](const LatticeModel& l) { return lattice_columns(l.nodes.size()); }},
      m);
}

IntegratorConfig scenario_integrator(const IntegratorConfig& base, double horizon) {
  IntegratorConfig cfg = base;
  cfg.t_end = horizon;
  cfg.settle_norm = 0.0;
  cfg.store_steps = true;
  cfg.h_init = std::min(cfg.h_init, horizon);
  return cfg;
}

Table run_timeseries(const Scenario& sc) {
  sc.validate();
  const auto cfg = scenario_integrator(sc.integrator, sc.horizon);
  const Trajectory traj = checked_integrate(field_for(sc.model), sc.initial, cfg, "scenario " + sc.name);
  return sample_uniform(traj, sc.horizon, output_step_of(sc), state_columns(sc.model));
}

// ---------------------------------------------------------------- phase portraits

const std::vector<std::array<double, 2>>& portrait_starts() {
  static const std::vector<std::array<double, 2>> starts{
      {0.1, 0.1}, {0.1, 0.5}, {0.1, 1.0}, {0.5, 0.1}, {0.5, 0.5}, {0.5, 1.0},
      {1.0, 0.1}, {1.0, 0.5}, {1.0, 1.0}, {1.2, 0.05}, {0.05, 1.2}, {0.3, 0.8}};
  return starts;
}

PhasePortrait phase_portrait(const ReducedParams& p, std::size_t grid, double horizon,
                             const IntegratorConfig& base) {
  p.validate();
  PhasePortrait out;
  out.field.columns = {"x", "y", "dx", "dy"};
  const std::size_t g = std::max<std::size_t>(grid, 2);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      const double x = 1.2 * static_cast<double>(i) / static_cast<double>(g - 1);
      const double y = 1.2 * static_cast<double>(j) / static_cast<double>(g - 1);
      const auto d = rhs_2d(x, y, p);
      const double norm = std::hypot(d[0], d[1]);
      out.field.rows.push_back({x, y, norm > 1e-14 ? d[0] / norm : 0.0, norm > 1e-14 ? d[1] / norm : 0.0});
    }
  }
  out.trajectories.columns = {"id", "t", "x", "y"};
  const auto cfg = scenario_integrator(base, horizon);
  const VectorField f = make_field(p);
  const auto& starts = portrait_starts();
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const std::vector<double> y0{starts[k][0], starts[k][1]};
    const Trajectory traj = checked_integrate(f, y0, cfg, "phase portrait");
    const Table t = sample_uniform(traj, horizon, horizon / 500.0, {"t", "x", "y"});
    for (const auto& row : t.rows) out.trajectories.rows.push_back({static_cast<double>(k), row[0], row[1], row[2]});
    out.endpoints.push_back({traj.final_state()[0], traj.final_state()[1]});
  }
  out.steady_states = classify_2d(p);
  return out;
}

// ---------------------------------------------------------------- heatmap

double heatmap_cell(const LatticeModel& base, const std::vector<double>& y0, double theta, double gamma,
                    double horizon, const IntegratorConfig& tol) {
  LatticeModel m = base;
  m.theta = OxygenResponse::constant(theta);
  m.gamma = OxygenResponse::constant(gamma);
  IntegratorConfig cfg = scenario_integrator(tol, horizon);
  cfg.store_steps = false;
  double peak = y0[0] + y0[1];
  const auto traj = integrate(make_field(m), y0, cfg, [&peak](double, std::span<const double> y) {
    peak = std::max(peak, y[0] + y[1]);
  });
  if (traj.terminated_by == Termination::StepFailure) return kNaN;
  return peak;
}

Heatmap theta_gamma_heatmap(const GridSpec& grid, const LatticeModel& base, const std::vector<double>& y0,
                            double horizon, std::size_t threads, const IntegratorConfig& tol) {
  base.validate();
  if (y0.size() != base.dim()) throw ParameterError("heatmap initial state has wrong dimension");
  Heatmap h;
  h.thetas = grid.thetas();
  h.gammas = grid.gammas();
  h.values.assign(h.thetas.size() * h.gammas.size(), kNaN);
  const std::size_t ng = h.gammas.size();
  parallel_for(
      h.values.size(),
      [&](std::size_t idx) {
        h.values[idx] = heatmap_cell(base, y0, h.thetas[idx / ng], h.gammas[idx % ng], horizon, tol);
      },
      threads);
  h.failures = static_cast<std::size_t>(
      std::count_if(h.values.begin(), h.values.end(), [](double v) { return std::isnan(v); }));
  return h;
}

Table heatmap_table(const Heatmap& h) {
  Table t;
  for (double g : h.gammas) t.columns.push_back(format_double(g));
  for (std::size_t i = 0; i < h.thetas.size(); ++i)
    t.rows.emplace_back(h.values.begin() + static_cast<std::ptrdiff_t>(i * h.gammas.size()),
                        h.values.begin() + static_cast<std::ptrdiff_t>((i + 1) * h.gammas.size()));
  return t;
}

// ---------------------------------------------------------------- regional comparisons

ComparisonRun run_lattice(const LatticeModel& m, const std::vector<double>& y0, double horizon,
                          double output_step, const IntegratorConfig& tol) {
  const VectorField f = make_field(m);
  const auto cfg = scenario_integrator(tol, horizon);
  const Trajectory traj = checked_integrate(f, y0, cfg, "regional run");
  ComparisonRun run;
  run.phi0 = m.nodes[0].phi;
  run.timeseries = sample_uniform(traj, horizon, output_step, lattice_columns(m.nodes.size()));
  const auto& yf = traj.final_state();
  for (std::size_t i = 0; i < m.nodes.size(); ++i) run.node_final.push_back(yf[3 * i] + yf[3 * i + 1]);
  run.primary_final = run.node_final[0];
  for (const auto& s : traj.states) run.primary_peak = std::max(run.primary_peak, s[0] + s[1]);
  std::vector<double> d(yf.size());
  rhs_regional(yf, d, m);
  double norm = 0.0;
  for (double v : d) norm = std::max(norm, std::abs(v));
  run.settled = norm < 1e-6;
  return run;
}

ComparisonReport oxygenation_comparison(const LatticeModel& base, const std::vector<double>& y0,
                                        double horizon, double output_step, const IntegratorConfig& tol) {
  LatticeModel dark = base, lit = base;
  dark.nodes[0].phi = 0.0;
  lit.nodes[0].phi = 1.0e4;
  ComparisonReport r;
  r.without_oxygen = run_lattice(dark, y0, horizon, output_step, tol);
  r.with_oxygen = run_lattice(lit, y0, horizon, output_step, tol);
  r.reduction_vs_unoxygenated = 1.0 - r.with_oxygen.primary_final / r.without_oxygen.primary_final;
  r.reduction_vs_peak = 1.0 - r.with_oxygen.primary_final / r.with_oxygen.primary_peak;
  return r;
}

Table comparison_table(const ComparisonReport& r) {
  Table t;
  t.columns = {"phi0", "primary_final", "primary_peak"};
  for (std::size_t i = 1; i < r.with_oxygen.node_final.size(); ++i)
    t.columns.push_back("node" + std::to_string(i) + "_final");
  for (const ComparisonRun* run : {&r.without_oxygen, &r.with_oxygen}) {
    std::vector<double> row{run->phi0, run->primary_final, run->primary_peak};
    row.insert(row.end(), run->node_final.begin() + 1, run->node_final.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

FullOxygenationReport full_oxygenation_regional(const LatticeModel& base, const std::vector<double>& y0,
                                                double horizon, double phi, double output_step,
                                                const IntegratorConfig& tol) {
  LatticeModel m = base;
  m.full_oxygenation = true;
  for (auto& nd : m.nodes) nd.phi = phi;
  const ComparisonRun run = run_lattice(m, y0, horizon, output_step, tol);
  FullOxygenationReport rep;
  rep.timeseries = run.timeseries;
  const auto& last = rep.timeseries.rows.back();
  rep.all_below = true;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    rep.final_u.push_back(last[1 + 3 * i]);
    rep.final_n.push_back(last[2 + 3 * i]);
    if (i > 0) {
      const bool below = rep.final_n.back() < m.nodes[i].K;
      rep.infected_below_capacity.push_back(below);
      rep.all_below = rep.all_below && below;
    }
  }
  return rep;
}

// ---------------------------------------------------------------- stability region

double stability_boundary(double r, double alpha, double gamma) {
  return gamma * (alpha / (r - gamma) + 1.0 / r);
}

StabilityRegion stability_region(double r, double alpha, std::size_t points) {
  StabilityRegion out;
  out.boundary.columns = {"gamma", "theta_boundary"};
  out.samples.columns = {"gamma", "theta", "expected", "observed", "agree"};
  out.all_agree = true;
  const double g_hi = r - 1e-3;
  const std::size_t n = std::max<std::size_t>(points, 2);
  for (std::size_t k = 0; k < n; ++k) {
    const double g = g_hi * static_cast<double>(k + 1) / static_cast<double>(n);
    const double tb = stability_boundary(r, alpha, g);
    out.boundary.rows.push_back({g, tb});
    const std::array<std::pair<double, double>, 3> probes{
        std::pair{0.5 * alpha * g, 0.0}, std::pair{0.5 * (alpha * g + tb), 1.0}, std::pair{1.5 * tb, 2.0}};
    for (const auto& [theta, expected] : probes) {
      double observed = -1.0;
      for (const auto& c : classify_2d({r, alpha, theta, g})) {
        if (c.verdict.kind != Stability::Stable) continue;
        if (c.state.kind == Kind2D::TumourOnly) observed = 0.0;
        if (c.state.kind == Kind2D::Coexistence) observed = 1.0;
        if (c.state.kind == Kind2D::InfectedOnly) observed = 2.0;
      }
      const bool agree = observed == expected;
      out.all_agree = out.all_agree && agree;
      out.samples.rows.push_back({g, theta, expected, observed, agree ? 1.0 : 0.0});
    }
  }
  return out;
}

// ---------------------------------------------------------------- scenario driver

std::vector<Artifact> run_scenario(const Scenario& sc, std::size_t threads) {
  sc.validate();
  std::vector<Artifact> out;
  const double step = output_step_of(sc);
  for (OutputKind kind : sc.outputs) {
    switch (kind) {
      case OutputKind::Timeseries: {
        Artifact a;
        a.name = sc.name;
        a.has_table = true;
        a.table = run_timeseries(sc);
        if (const auto* l = std::get_if<LatticeModel>(&sc.model)) {
          a.svg = lattice_totals_svg(a.table, l->nodes.size(), sc.name);
        } else {
          PlotSpec spec{sc.name, "t", "density", {}};
          const auto ts = a.table.column("t");
          const bool reduced = std::holds_alternative<ReducedParams>(sc.model);
          for (const char* c : reduced ? std::vector<const char*>{"x", "y"} : std::vector<const char*>{"u", "n"})
            spec.series.push_back({c, ts, a.table.column(c), {}, 1.5});
          a.svg = svg_line_plot(spec);
        }
        out.push_back(std::move(a));
        break;
      }
      case OutputKind::PhasePortrait: {
        const auto& p = std::get<ReducedParams>(sc.model);
        const PhasePortrait pp = phase_portrait(p, 25, sc.horizon, sc.integrator);
        Artifact a;
        a.name = sc.name;
        a.has_table = true;
        a.table = pp.trajectories;
        PlotSpec spec{sc.name, "x", "y", {}};
        for (const auto& row : pp.field.rows)
          spec.series.push_back({{}, {row[0], row[0] + 0.03 * row[2]}, {row[1], row[1] + 0.03 * row[3]}, "#999999", 0.8});
        for (std::size_t k = 0; k < pp.endpoints.size(); ++k) {
          Series s;
          s.color = "#1f77b4";
          for (const auto& row : pp.trajectories.rows)
            if (row[0] == static_cast<double>(k)) {
              s.x.push_back(row[2]);
              s.y.push_back(row[3]);
            }
          spec.series.push_back(std::move(s));
        }
        a.svg = svg_line_plot(spec);
        std::ostringstream os;
        os << "steady_states:\n";
        for (const auto& c : pp.steady_states) os << describe_classified(c);
        a.text = os.str();
        out.push_back(std::move(a));
        Artifact f;
        f.name = sc.name + "_field";
        f.has_table = true;
        f.table = pp.field;
        out.push_back(std::move(f));
        break;
      }
      case OutputKind::Heatmap: {
        const auto& l = std::get<LatticeModel>(sc.model);
        const Heatmap h = theta_gamma_heatmap(sc.grid, l, sc.initial, sc.horizon, threads, sc.integrator);
        Artifact a;
        a.name = sc.name;
        a.has_table = true;
        a.table = heatmap_table(h);
        a.svg = svg_heatmap(sc.name + ": max u0+n0", "gamma", "theta", h.gammas, h.thetas, h.values);
        a.text = "failed_cells: " + std::to_string(h.failures) + "\n";
        out.push_back(std::move(a));
        Artifact ax;
        ax.name = sc.name + "_theta";
        ax.has_table = true;
        ax.table.columns = {"theta"};
        for (double t : h.thetas) ax.table.rows.push_back({t});
        out.push_back(std::move(ax));
        break;
      }
      case OutputKind::StabilityRegion: {
        const auto& p = std::get<ReducedParams>(sc.model);
        const StabilityRegion sr = stability_region(p.r, p.alpha);
        Artifact a;
        a.name = sc.name;
        a.has_table = true;
        a.table = sr.boundary;
        PlotSpec spec{sc.name, "gamma", "theta", {}};
        spec.series.push_back({"theta boundary", sr.boundary.column("gamma"), sr.boundary.column("theta_boundary"), {}, 2.0});
        std::vector<double> ag;
        for (double g : sr.boundary.column("gamma")) ag.push_back(p.alpha * g);
        spec.series.push_back({"alpha*gamma", sr.boundary.column("gamma"), ag, {}, 1.5});
        a.svg = svg_line_plot(spec);
        a.text = std::string("all_samples_agree: ") + (sr.all_agree ? "true" : "false") + "\n";
        out.push_back(std::move(a));
        Artifact s;
        s.name = sc.name + "_samples";
        s.has_table = true;
        s.table = sr.samples;
        out.push_back(std::move(s));
        break;
      }
      case OutputKind::Comparison: {
        const auto& l = std::get<LatticeModel>(sc.model);
        const ComparisonReport r = oxygenation_comparison(l, sc.initial, sc.horizon, step, sc.integrator);
        Artifact a;
        a.name = sc.name;
        a.has_table = true;
        a.table = comparison_table(r);
        std::ostringstream os;
        os << "primary_final_phi0_0: " << format_double(r.without_oxygen.primary_final) << "\n"
           << "primary_final_phi0_1e4: " << format_double(r.with_oxygen.primary_final) << "\n"
           << "primary_peak_phi0_1e4: " << format_double(r.with_oxygen.primary_peak) << "\n"
           << "reduction_vs_unoxygenated_final: " << format_double(r.reduction_vs_unoxygenated) << "\n"
           << "reduction_vs_oxygenated_peak: " << format_double(r.reduction_vs_peak) << "\n"
           << "settled_phi0_0: " << (r.without_oxygen.settled ? "true" : "false") << "\n"
           << "settled_phi0_1e4: " << (r.with_oxygen.settled ? "true" : "false") << "\n";
        a.text = os.str();
        out.push_back(std::move(a));
        for (const ComparisonRun* run : {&r.without_oxygen, &r.with_oxygen}) {
          Artifact t;
          t.name = sc.name + (run->phi0 == 0.0 ? "_phi0_0" : "_phi0_1e4");
          t.has_table = true;
          t.table = run->timeseries;
          t.svg = lattice_totals_svg(t.table, l.nodes.size(), t.name);
          out.push_back(std::move(t));
        }
        break;
      }
      case OutputKind::FullOxygenation: {
        const auto& l = std::get<LatticeModel>(sc.model);
        const double phi = l.nodes[0].phi > 0.0 ? l.nodes[0].phi : 1.0e4;
        const FullOxygenationReport rep = full_oxygenation_regional(l, sc.initial, sc.horizon, phi, step, sc.integrator);
        Artifact a;
        a.name = sc.name;
        a.has_table = true;
        a.table = rep.timeseries;
        a.svg = lattice_totals_svg(a.table, l.nodes.size(), sc.name);
        std::ostringstream os;
        os << "nodes:\n";
        for (std::size_t i = 0; i < rep.final_u.size(); ++i) {
          os << "  - index: " << i << "\n    u_final: " << format_double(rep.final_u[i])
             << "\n    n_final: " << format_double(rep.final_n[i]) << "\n";
          if (i > 0)
            os << "    n_below_K: " << (rep.infected_below_capacity[i - 1] ? "true" : "false") << "\n";
        }
        os << "all_lymph_nodes_below_K: " << (rep.all_below ? "true" : "false") << "\n";
        a.text = os.str();
        out.push_back(std::move(a));
        break;
      }
    }
  }
  return out;
}

}  // namespace oncolattice
