#include "oncolattice/cli.hpp"

#include <CLI11.hpp>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "oncolattice/config.hpp"
#include "oncolattice/presets.hpp"

namespace oncolattice {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << s;
  if (!f) throw std::runtime_error("write failed for " + p.string());
}

std::string num(double v) { return format_double(v); }

std::string complex_list(const std::vector<std::complex<double>>& ev) {
  std::string s = "[";
  for (std::size_t k = 0; k < ev.size(); ++k) {
    if (k) s += ", ";
    s += num(ev[k].real());
    if (ev[k].imag() != 0.0) s += (ev[k].imag() < 0 ? " - " : " + ") + num(std::abs(ev[k].imag())) + "i";
  }
  return s + "]";
}

void describe3(std::ostringstream& os, const Classified3D& c) {
  os << "  - state: " << to_string(c.state.kind) << "\n"
     << "    x: " << num(c.state.x) << "\n    y: " << num(c.state.y) << "\n    z: " << num(c.state.z) << "\n"
     << "    verdict: " << to_string(c.verdict.kind) << "\n"
     << "    basis: " << to_string(c.verdict.basis) << "\n"
     << "    condition: \"" << c.verdict.condition << "\"\n"
     << "    eigenvalues: \"" << complex_list(c.state.eigenvalues) << "\"\n";
  if (c.multiple_roots) os << "    multiple_roots: true\n";
}

ReducedParams reduced_of(const Scenario& sc) {
  if (const auto* r = std::get_if<ReducedParams>(&sc.model)) return *r;
  if (const auto* d = std::get_if<DimensionalParams>(&sc.model)) return reduce(nondimensionalize(*d));
  throw ParameterError("command needs a reduced model or a local model with constant responses");
}

const LatticeModel& lattice_of(const Scenario& sc) {
  if (const auto* l = std::get_if<LatticeModel>(&sc.model)) return *l;
  throw ParameterError("command needs a regional model");
}

}  // namespace

std::string classify_report(const ReducedParams& p) {
  std::ostringstream os;
  os << "parameters: {r: " << num(p.r) << ", alpha: " << num(p.alpha) << ", theta: " << num(p.theta)
     << ", gamma: " << num(p.gamma) << "}\n";
  os << "alpha_gamma: " << num(p.alpha * p.gamma) << "\n";
  os << "infected_only_threshold: " << num(infected_only_threshold(p)) << "\n";
  os << "states:\n";
  for (const auto& c : classify_2d(p)) {
    os << "  - summary: \"" << to_string(c.state.kind) << ": " << to_string(c.verdict.kind) << " (" << c.verdict.condition
       << ")\"\n";
    os << "    x: " << num(c.state.x) << "\n    y: " << num(c.state.y) << "\n";
    os << "    eigenvalues: \"" << complex_list(c.eigenvalues) << "\"\n";
  }
  return os.str();
}

std::string equilibria_report(const Scenario& sc) {
  std::ostringstream os;
  if (const auto* r = std::get_if<ReducedParams>(&sc.model)) return classify_report(*r);
  if (const auto* d = std::get_if<DimensionalParams>(&sc.model)) {
    const NondimParams p = nondimensionalize(*d);
    os << "nondimensional: {r: " << num(p.r) << ", alpha: " << num(p.alpha) << ", beta: " << num(p.beta)
       << ", q1: " << num(p.q1) << ", q2: " << num(p.q2) << "}\n";
    os << "states:\n";
    describe3(os, tumour_free_3d(p));
    describe3(os, tumour_dominant_3d(p));
    for (const auto& c : uninfected_free_3d(p)) describe3(os, c);
    const VectorField f = make_field(p);
    IntegratorConfig cfg;
    cfg.t_end = 2000.0;
    cfg.store_steps = false;
    const std::vector<double> y0{0.5, 0.5, 0.5};
    const Trajectory tr = integrate(f, y0, cfg);
    const auto& e = tr.final_state();
    if (auto in = interior_3d(p, {e[0], e[1], e[2]})) describe3(os, *in);
    else os << "  # no interior state found from the trajectory endpoint (" << num(e[0]) << ", " << num(e[1])
            << ", " << num(e[2]) << ")\n";
    return os.str();
  }
  const auto& m = std::get<LatticeModel>(sc.model);
  if (!m.forward_regime()) {
    os << "tumour_dominant: null  # only defined with all phi = 0, qR = 1, qL = 0\n";
    return os.str();
  }
  const RegionalState s = tumour_dominant_regional(m);
  os << "tumour_dominant:\n";
  for (std::size_t i = 0; i < s.u.size(); ++i)
    os << "  - {index: " << i << ", u: " << num(s.u[i]) << ", n: 0, c: 0}\n";
  return os.str();
}

std::string certify_report(const LatticeModel& m) {
  const Prop5Report r = prop5_certificate(m);
  std::ostringstream os;
  os << "theta0: " << num(r.theta0) << "\ngamma0: " << num(r.gamma0) << "\n";
  os << "steady_u: [";
  for (std::size_t i = 0; i < r.steady.u.size(); ++i) os << (i ? ", " : "") << num(r.steady.u[i]);
  os << "]\n";
  os << "cond1: {holds: " << (r.cond1 ? "true" : "false") << ", eta0: " << num(m.nodes[0].eta)
     << ", bound: " << num(r.eta0_bound) << ", slack: " << num(r.cond1_slack) << "}\n";
  os << "cond2:\n";
  for (std::size_t i = 0; i < r.cond2.size(); ++i)
    os << "  - {node: " << i + 1 << ", holds: " << (r.cond2[i] ? "true" : "false") << ", K: " << num(m.nodes[i + 1].K)
       << ", spread_bound: " << num(r.K_bound_spread[i]) << ", growth_bound: " << num(r.K_bound_growth[i]) << "}\n";
  os << "cond3:\n";
  for (std::size_t i = 0; i < r.cond3.size(); ++i)
    os << "  - {node: " << i + 1 << ", holds: " << (r.cond3[i] ? "true" : "false") << ", gamma0: " << num(r.gamma0)
       << ", bound: " << num(r.gamma0_bound[i]) << "}\n";
  os << "certified: " << (r.certified ? "true" : "false") << "\n";
  const DenseMatrix J = regional_jacobian(r.steady, m);
  const auto discs = gershgorin_discs(J);
  os << "gershgorin:\n";
  for (const auto& d : discs) os << "  - {center: " << num(d.center) << ", radius: " << num(d.radius) << "}\n";
  os << "discs_in_left_half_plane: " << (discs_all_negative(discs) ? "true" : "false") << "\n";
  os << "max_real_eigenvalue: " << num(max_real_part(eigenvalues(J))) << "\n";
  return os.str();
}

std::vector<std::string> write_artifacts(const Scenario& sc, const std::vector<Artifact>& artifacts,
                                         const std::string& dir, const std::string& format, long long seed) {
  const fs::path base(dir);
  fs::create_directories(base);
  const bool csv = format == "csv" || format == "both";
  const bool svg = format == "svg" || format == "both";
  std::vector<std::string> files;
  auto emit = [&](const std::string& name, const std::string& body) {
    write_text(base / name, body);
    files.push_back(name);
  };
  for (const auto& a : artifacts) {
    if (a.has_table && csv) emit(a.name + ".csv", to_csv(a.table));
    if (!a.svg.empty() && svg) emit(a.name + ".svg", a.svg);
    if (!a.text.empty()) emit(a.name + ".txt", a.text);
  }
  emit(sc.name + ".config.yaml", serialize_config(sc));

  YAML::Node entries(YAML::NodeType::Sequence);
  const fs::path manifest = base / "manifest.yaml";
  if (fs::exists(manifest)) {
    try {
      const YAML::Node old = YAML::LoadFile(manifest.string())["scenarios"];
      if (old && old.IsSequence())
        for (const auto& e : old)
          if (e["name"] && e["name"].as<std::string>() != sc.name) entries.push_back(e);
    } catch (const YAML::Exception&) {
      // unreadable manifest: rewrite from scratch
    }
  }
  YAML::Node entry;
  entry["name"] = sc.name;
  entry["provenance"] = sc.provenance;
  entry["parameter_hash"] = config_hash(sc);
  entry["seed"] = seed;
  for (const auto& f : files) entry["files"].push_back(f);
  entries.push_back(entry);
  YAML::Node root;
  root["scenarios"] = entries;
  YAML::Emitter m;
  m << root;
  write_text(manifest, std::string(m.c_str()) + "\n");
  files.push_back("manifest.yaml");
  return files;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oxygen-dependent oncolytic virotherapy models: simulation and steady-state analysis", "oncolattice"};
  app.require_subcommand(1);
  std::string out_dir = ".";
  std::string format = "both";
  long long seed = 0;
  std::size_t threads = 0;
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--format", format, "Artifact format")->check(CLI::IsMember({"csv", "svg", "both"}))->capture_default_str();
  app.add_option("--seed", seed, "Seed recorded in the manifest for randomized harnesses")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads for sweeps (0: ONCOLATTICE_THREADS or hardware)");

  std::string config, figure;
  auto* simulate = app.add_subcommand("simulate", "Integrate a scenario and write its time series");
  auto* equilibria = app.add_subcommand("equilibria", "Steady states with stability verdicts");
  auto* classify = app.add_subcommand("classify", "Steady-state classification of the reduced model");
  auto* phase = app.add_subcommand("phase", "Phase portrait of the reduced model");
  auto* heatmap = app.add_subcommand("heatmap", "Peak primary density over a theta-gamma grid");
  auto* certify = app.add_subcommand("regional-certify", "Lattice stability certificate and Gershgorin report");
  auto* reproduce = app.add_subcommand("reproduce", "Run a named figure preset");
  for (auto* sub : {simulate, equilibria, classify, phase, heatmap, certify})
    sub->add_option("config", config, "YAML configuration")->required();
  reproduce->add_option("figure-id", figure, "Preset id, e.g. fig10b")->required();
  app.footer("Exit codes: 0 success, 1 configuration error, 2 numeric failure.\nFigure ids: " + [] {
    std::string s;
    for (const auto& id : preset_ids()) s += (s.empty() ? "" : " ") + id;
    return s;
  }());

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kExitOk : kExitConfig;
  }

  auto emit = [&](const Scenario& sc, const std::vector<Artifact>& arts) {
    for (const auto& f : write_artifacts(sc, arts, out_dir, format, seed)) out << (fs::path(out_dir) / f).string() << "\n";
  };
  auto with_outputs = [](Scenario sc, OutputKind k) {
    sc.outputs = {k};
    return sc;
  };

  try {
    if (*reproduce) {
      Scenario sc;
      try {
        sc = make_preset(figure);
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
      }
      emit(sc, run_scenario(sc, threads));
      return kExitOk;
    }
    const Scenario sc = load_config(config);
    if (*simulate) {
      emit(sc, run_scenario(with_outputs(sc, OutputKind::Timeseries), threads));
    } else if (*equilibria) {
      out << equilibria_report(sc);
    } else if (*classify) {
      out << classify_report(reduced_of(sc));
    } else if (*phase) {
      Scenario s = sc;
      s.model = reduced_of(sc);
      emit(s, run_scenario(with_outputs(s, OutputKind::PhasePortrait), threads));
    } else if (*heatmap) {
      lattice_of(sc);
      emit(sc, run_scenario(with_outputs(sc, OutputKind::Heatmap), threads));
    } else if (*certify) {
      out << certify_report(lattice_of(sc));
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ConvergenceError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const DomainError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace oncolattice
