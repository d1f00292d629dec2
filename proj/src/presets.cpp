#include "oncolattice/presets.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace oncolattice {

namespace {

using S = OxygenResponse;

Scenario local(const std::string& name, const std::string& source, S theta, S gamma, double n0 = 100.0) {
  DimensionalParams p = baseline_params();
  p.theta = std::move(theta);
  p.gamma = std::move(gamma);
  Scenario sc;
  sc.name = name;
  sc.provenance = source;
  sc.model = p;
  sc.initial = {1.0e4, n0, 4.3751};
  sc.horizon = 80.0;
  return sc;
}

Scenario reduced(const std::string& name, const std::string& source, ReducedParams p) {
  Scenario sc;
  sc.name = name;
  sc.provenance = source;
  sc.model = p;
  sc.initial = {0.5, 0.5};
  sc.horizon = 500.0;
  sc.outputs = {OutputKind::PhasePortrait};
  return sc;
}

LatticeModel fig10_lattice(double phi0) {
  LatticeModel m = reference_lattice(3);
  m.theta = S::sigmoid(0.005115, 1.0, 0.08);
  m.gamma = S::sigmoid(0.1, 0.9, 0.08);
  m.nodes[0].phi = phi0;
  return m;
}

Scenario regional(const std::string& name, const std::string& source, LatticeModel m,
                  std::vector<OutputKind> outputs = {OutputKind::Timeseries}) {
  Scenario sc;
  sc.name = name;
  sc.provenance = source;
  sc.initial = reference_initial_state(m.ell()).flatten();
  sc.model = std::move(m);
  sc.horizon = 80.0;
  sc.output_step = 0.8;
  sc.outputs = std::move(outputs);
  return sc;
}

const std::string kLocalNote = "; baseline local parameters; u0=1e4, c0=4.3751, 80 days";

const std::map<std::string, std::function<Scenario()>>& registry() {
  static const std::map<std::string, std::function<Scenario()>> r{
      {"fig1a", [] { return reduced("fig1a", "reduced model from baseline constants, alpha=10 (gamma > max(r, theta/alpha))", baseline_reduced(10.0)); }},
      {"fig1b", [] { return reduced("fig1b", "reduced model from baseline constants, alpha=1 (r < gamma < theta/alpha)", baseline_reduced(1.0)); }},
      {"fig2a", [] { return reduced("fig2a", "reduced model r=0.5311, alpha=0.1, theta=0.01, gamma=0.3", {0.5311, 0.1, 0.01, 0.3}); }},
      {"fig2b", [] { return reduced("fig2b", "reduced model r=0.5311, alpha=0.1, theta=0.3, gamma=0.3", {0.5311, 0.1, 0.3, 0.3}); }},
      {"fig2c", [] { return reduced("fig2c", "reduced model r=0.5311, alpha=0.1, theta=0.9, gamma=0.3", {0.5311, 0.1, 0.9, 0.3}); }},
      {"fig2d", [] { return reduced("fig2d", "reduced model r=0.4, alpha=0.1, theta=1.4, gamma=0.3", {0.4, 0.1, 1.4, 0.3}); }},
      {"fig3", [] {
         Scenario sc = reduced("fig3", "stability region r=r2/r1, alpha=0.1", {0.21 / 0.3954, 0.1, 0.3, 0.3});
         sc.outputs = {OutputKind::StabilityRegion};
         return sc;
       }},
      {"fig5", [] { return local("fig5", "constant theta=1.0, gamma=0.5115" + kLocalNote, S::constant(1.0), S::constant(0.5115)); }},
      {"fig6a", [] {
         return local("fig6a", "theta sigmoid(0.1, 0.12, 0.08), gamma sigmoid(0.05115, 0.09115, 0.08)" + kLocalNote,
                      S::sigmoid(0.1, 0.12, 0.08), S::sigmoid(0.05115, 0.09115, 0.08));
       }},
      {"fig6b", [] {
         return local("fig6b", "theta sigmoid(0.1, 0.12, 0.08), gamma sigmoid(0.005115, 0.009115, 0.008)" + kLocalNote,
                      S::sigmoid(0.1, 0.12, 0.08), S::sigmoid(0.005115, 0.009115, 0.008));
       }},
      {"fig7a", [] {
         return local("fig7a", "theta sigmoid(0.01, 0.012, 0.008), gamma sigmoid(0.05115, 0.2115, 0.08), n0=100" + kLocalNote,
                      S::sigmoid(0.01, 0.012, 0.008), S::sigmoid(0.05115, 0.2115, 0.08));
       }},
      {"fig7b", [] {
         return local("fig7b", "theta sigmoid(0.01, 0.012, 0.008), gamma sigmoid(0.05115, 0.2115, 0.08), n0=5e5" + kLocalNote,
                      S::sigmoid(0.01, 0.012, 0.008), S::sigmoid(0.05115, 0.2115, 0.08), 5.0e5);
       }},
      {"fig7c", [] {
         return local("fig7c", "theta sigmoid(5.115e-3, 1.0, 0.08), gamma sigmoid(0.2, 0.4, 0.08)" + kLocalNote,
                      S::sigmoid(5.115e-3, 1.0, 0.08), S::sigmoid(0.2, 0.4, 0.08));
       }},
      {"fig7d", [] {
         return local("fig7d", "theta sigmoid(5.115e-3, 1.0, 0.08), gamma sigmoid(0.7, 0.9, 0.08)" + kLocalNote,
                      S::sigmoid(5.115e-3, 1.0, 0.08), S::sigmoid(0.7, 0.9, 0.08));
       }},
      {"fig8a", [] {
         return local("fig8a", "theta sigmoid(5.115e-3, 1.0, 0.08), gamma sigmoid(0.1, 0.9, 0.008)" + kLocalNote,
                      S::sigmoid(5.115e-3, 1.0, 0.08), S::sigmoid(0.1, 0.9, 0.008));
       }},
      {"fig8b", [] {
         return local("fig8b", "theta sigmoid(5.115e-3, 1.0, 0.08), gamma sigmoid(0.09, 0.2, 0.01)" + kLocalNote,
                      S::sigmoid(5.115e-3, 1.0, 0.08), S::sigmoid(0.09, 0.2, 0.01));
       }},
      {"fig9", [] {
         return local("fig9", "theta sigmoid(0.005115, 0.02115, 0.8), gamma sigmoid(0.3, 1.0, 0.8), n0=5e5" + kLocalNote,
                      S::sigmoid(0.005115, 0.02115, 0.8), S::sigmoid(0.3, 1.0, 0.8), 5.0e5);
       }},
      {"fig10", [] {
         return regional("fig10", "lattice ell=3, theta sigmoid(0.005115, 1.0, 0.08), gamma sigmoid(0.1, 0.9, 0.08); phi0=0 vs phi0=1e4",
                         fig10_lattice(1.0e4), {OutputKind::Comparison});
       }},
      {"fig10a", [] {
         return regional("fig10a", "lattice ell=3, theta sigmoid(0.005115, 1.0, 0.08), gamma sigmoid(0.1, 0.9, 0.08), phi0=0",
                         fig10_lattice(0.0));
       }},
      {"fig10b", [] {
         return regional("fig10b", "lattice ell=3, theta sigmoid(0.005115, 1.0, 0.08), gamma sigmoid(0.1, 0.9, 0.08), phi0=1e4",
                         fig10_lattice(1.0e4));
       }},
      {"fig11a", [] {
         LatticeModel m = fig10_lattice(0.0);
         m.theta = S::sigmoid(0.05115, 2.115, 0.016);
         m.gamma = S::constant(0.005115);
         return regional("fig11a", "lattice ell=3, theta sigmoid(0.05115, 2.115, 0.016), gamma constant 0.005115, phi0=0", m);
       }},
      {"fig11b", [] {
         LatticeModel m = fig10_lattice(1.0e4);
         m.theta = S::sigmoid(0.05115, 2.115, 0.016);
         m.gamma = S::constant(0.005115);
         return regional("fig11b", "lattice ell=3, theta sigmoid(0.05115, 2.115, 0.016), gamma constant 0.005115, phi0=1e4", m);
       }},
      {"fig13", [] {
         Scenario sc = regional("fig13", "max u0+n0 over 80 days on theta=0.01i, gamma=0.01j, i,j=0..100; reference lattice, phi0=1e4",
                                reference_lattice(3), {OutputKind::Heatmap});
         sc.horizon = 80.0;
         sc.output_step = 0.0;
         return sc;
       }},
      {"fig14", [] {
         LatticeModel m = fig10_lattice(1.0e4);
         m.full_oxygenation = true;
         for (auto& nd : m.nodes) nd.phi = 1.0e4;
         return regional("fig14", "lattice ell=3, fig10 responses, phi_k=1e4 at every node", m, {OutputKind::FullOxygenation});
       }},
  };
  return r;
}

}  // namespace

ReducedParams baseline_reduced(double alpha) {
  DimensionalParams d = baseline_params();
  NondimParams n = nondimensionalize(d);
  ReducedParams p = reduce(n);
  p.alpha = alpha;
  return p;
}

const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids{"fig1a", "fig1b", "fig2a", "fig2b", "fig2c", "fig2d", "fig3",
                                            "fig5", "fig6a", "fig6b", "fig7a", "fig7b", "fig7c", "fig7d",
                                            "fig8a", "fig8b", "fig9", "fig10", "fig10a", "fig10b", "fig11a",
                                            "fig11b", "fig13", "fig14"};
  return ids;
}

Scenario make_preset(const std::string& id) {
  const auto& r = registry();
  const auto it = r.find(id);
  if (it == r.end()) {
    std::string msg = "unknown figure id '" + id + "'; valid ids:";
    for (const auto& k : preset_ids()) msg += " " + k;
    throw std::invalid_argument(msg);
  }
  return it->second();
}

}  // namespace oncolattice
