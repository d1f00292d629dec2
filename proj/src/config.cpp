#include "oncolattice/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>

namespace oncolattice {

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& path, const std::string& msg) const {
    std::ostringstream os;
    os << source_;
    const YAML::Mark m = n.Mark();
    if (m.line >= 0) os << ':' << m.line + 1 << ':' << m.column + 1;
    os << ": " << (path.empty() ? "<root>" : path) << ": " << msg;
    throw ConfigError(os.str());
  }

  void expect_map(const YAML::Node& n, const std::string& path) const {
    if (!n.IsMap()) fail(n, path, "expected a mapping");
  }

  void only_keys(const YAML::Node& n, const std::string& path, std::initializer_list<const char*> keys) const {
    expect_map(n, path);
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& kv : n) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) {
        std::string list;
        for (const auto& k : allowed) list += (list.empty() ? "" : ", ") + k;
        fail(kv.first, join(path, key), "unknown key (allowed: " + list + ")");
      }
    }
  }

  double number(const YAML::Node& n, const std::string& path) const {
    if (!n.IsScalar()) fail(n, path, "expected a number");
    try {
      const double v = n.as<double>();
      if (std::isnan(v)) fail(n, path, "NaN is not allowed");
      return v;
    } catch (const YAML::BadConversion&) {
      fail(n, path, "expected a number, got '" + n.Scalar() + "'");
    }
  }

  std::size_t count(const YAML::Node& n, const std::string& path) const {
    const double v = number(n, path);
    if (v < 0 || v != std::floor(v) || v > 1e9) fail(n, path, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  bool boolean(const YAML::Node& n, const std::string& path) const {
    try {
      return n.as<bool>();
    } catch (const YAML::BadConversion&) {
      fail(n, path, "expected true or false");
    }
  }

  std::string text(const YAML::Node& n, const std::string& path) const {
    if (!n.IsScalar()) fail(n, path, "expected a string");
    return n.Scalar();
  }

  double required(const YAML::Node& map, const std::string& path, const char* key) const {
    const YAML::Node v = map[key];
    if (!v) fail(map, join(path, key), "missing required key");
    return number(v, join(path, key));
  }

  std::optional<double> optional(const YAML::Node& map, const std::string& path, const char* key) const {
    const YAML::Node v = map[key];
    if (!v) return std::nullopt;
    return number(v, join(path, key));
  }

  static std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

 private:
  std::string source_;
};

template <class F>
void guarded(const Reader& rd, const YAML::Node& n, const std::string& path, F&& f) {
  try {
    f();
  } catch (const ParameterError& e) {
    rd.fail(n, path, e.what());
  } catch (const DomainError& e) {
    rd.fail(n, path, e.what());
  } catch (const std::invalid_argument& e) {
    rd.fail(n, path, e.what());
  }
}

OxygenResponse read_response(const Reader& rd, const YAML::Node& n, const std::string& path) {
  rd.expect_map(n, path);
  const YAML::Node kind = n["kind"];
  if (!kind) rd.fail(n, path + ".kind", "missing required key (constant or sigmoid)");
  const std::string k = rd.text(kind, path + ".kind");
  OxygenResponse r;
  if (k == "constant") {
    rd.only_keys(n, path, {"kind", "value"});
    const double v = rd.required(n, path, "value");
    guarded(rd, n, path, [&] { r = OxygenResponse::constant(v); });
  } else if (k == "sigmoid") {
    rd.only_keys(n, path, {"kind", "v0", "vinf", "k"});
    const double v0 = rd.required(n, path, "v0"), vinf = rd.required(n, path, "vinf"), kk = rd.required(n, path, "k");
    guarded(rd, n, path, [&] { r = OxygenResponse::sigmoid(v0, vinf, kk); });
  } else {
    rd.fail(kind, path + ".kind", "expected constant or sigmoid, got '" + k + "'");
  }
  return r;
}

void read_responses(const Reader& rd, const YAML::Node& root, OxygenResponse& theta, OxygenResponse& gamma) {
  const YAML::Node n = root["responses"];
  if (!n) rd.fail(root, "responses", "missing required section");
  rd.only_keys(n, "responses", {"theta", "gamma"});
  if (!n["theta"]) rd.fail(n, "responses.theta", "missing required key");
  if (!n["gamma"]) rd.fail(n, "responses.gamma", "missing required key");
  theta = read_response(rd, n["theta"], "responses.theta");
  gamma = read_response(rd, n["gamma"], "responses.gamma");
}

LatticeModel read_lattice(const Reader& rd, const YAML::Node& root) {
  LatticeModel m;
  const YAML::Node params = root["parameters"];
  if (!params) rd.fail(root, "parameters", "missing required section");
  rd.only_keys(params, "parameters", {"r1", "r2", "K", "alpha", "phi", "beta", "q1", "q2"});
  m.r1 = rd.required(params, "parameters", "r1");
  m.r2 = rd.required(params, "parameters", "r2");
  m.beta = rd.required(params, "parameters", "beta");
  m.q1 = rd.required(params, "parameters", "q1");
  m.q2 = rd.required(params, "parameters", "q2");
  const auto K = rd.optional(params, "parameters", "K");
  const auto alpha = rd.optional(params, "parameters", "alpha");
  const auto phi = rd.optional(params, "parameters", "phi");
  read_responses(rd, root, m.theta, m.gamma);

  const YAML::Node lat = root["lattice"];
  if (!lat) rd.fail(root, "lattice", "missing required section for a regional model");
  rd.only_keys(lat, "lattice", {"ell", "full_oxygenation", "node_defaults", "nodes"});
  if (!lat["ell"]) rd.fail(lat, "lattice.ell", "missing required key");
  const std::size_t ell = rd.count(lat["ell"], "lattice.ell");
  if (ell < 1) rd.fail(lat["ell"], "lattice.ell", "must be >= 1");
  if (lat["full_oxygenation"]) m.full_oxygenation = rd.boolean(lat["full_oxygenation"], "lattice.full_oxygenation");

  struct Partial {
    std::optional<double> K, alpha, eta, lambda, qL, qR, phi;
  };
  auto read_partial = [&](const YAML::Node& n, const std::string& path, Partial& p, bool allow_index) {
    if (allow_index)
      rd.only_keys(n, path, {"index", "K", "alpha", "eta", "lambda", "qL", "qR", "phi"});
    else
      rd.only_keys(n, path, {"K", "alpha", "eta", "qL", "qR", "phi"});
    if (auto v = rd.optional(n, path, "K")) p.K = v;
    if (auto v = rd.optional(n, path, "alpha")) p.alpha = v;
    if (auto v = rd.optional(n, path, "eta")) p.eta = v;
    if (allow_index)
      if (auto v = rd.optional(n, path, "lambda")) p.lambda = v;
    if (auto v = rd.optional(n, path, "qL")) p.qL = v;
    if (auto v = rd.optional(n, path, "qR")) p.qR = v;
    if (auto v = rd.optional(n, path, "phi")) p.phi = v;
  };

  std::vector<Partial> nodes(ell + 1);
  nodes[0] = {K, alpha, 0.0002, std::nullopt, 0.0, 1.0, phi};
  for (std::size_t i = 1; i <= ell; ++i) {
    nodes[i].K = K ? std::optional<double>(*K / 10.0) : std::nullopt;
    nodes[i].alpha = alpha ? std::optional<double>(*alpha / 10.0) : std::nullopt;
    nodes[i] = {nodes[i].K, nodes[i].alpha, 0.0002, std::nullopt, 0.05, 0.95, 0.0};
  }
  if (const YAML::Node d = lat["node_defaults"]) {
    for (std::size_t i = 1; i <= ell; ++i) read_partial(d, "lattice.node_defaults", nodes[i], false);
  }
  if (const YAML::Node list = lat["nodes"]) {
    if (!list.IsSequence()) rd.fail(list, "lattice.nodes", "expected a list");
    std::set<std::size_t> seen;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string path = "lattice.nodes[" + std::to_string(k) + "]";
      const YAML::Node n = list[k];
      rd.expect_map(n, path);
      if (!n["index"]) rd.fail(n, path + ".index", "missing required key");
      const std::size_t idx = rd.count(n["index"], path + ".index");
      if (idx > ell) rd.fail(n["index"], path + ".index", "exceeds ell");
      if (!seen.insert(idx).second) rd.fail(n["index"], path + ".index", "duplicate node index");
      read_partial(n, path, nodes[idx], true);
    }
  }
  for (std::size_t i = 0; i <= ell; ++i) {
    const auto& p = nodes[i];
    const std::string path = "lattice.nodes[index=" + std::to_string(i) + "]";
    if (!p.K) rd.fail(lat, path + ".K", "not given here, in node_defaults, or via parameters.K");
    if (!p.alpha) rd.fail(lat, path + ".alpha", "not given here, in node_defaults, or via parameters.alpha");
    if (!p.phi) rd.fail(lat, path + ".phi", "not given here or via parameters.phi");
    NodeParams nd{*p.K, *p.alpha, *p.eta, 0.0, *p.qL, *p.qR, *p.phi};
    if (p.lambda)
      nd.lambda = *p.lambda;
    else
      guarded(rd, lat, path + ".lambda", [&] { nd.lambda = calibrate_lambda(nd.K); });
    m.nodes.push_back(nd);
  }
  guarded(rd, lat, "lattice", [&] { m.validate(); });
  return m;
}

DimensionalParams read_local(const Reader& rd, const YAML::Node& root) {
  DimensionalParams p;
  const YAML::Node params = root["parameters"];
  if (!params) rd.fail(root, "parameters", "missing required section");
  rd.only_keys(params, "parameters", {"r1", "r2", "K", "alpha", "phi", "beta", "q1", "q2"});
  p.r1 = rd.required(params, "parameters", "r1");
  p.r2 = rd.required(params, "parameters", "r2");
  p.K = rd.required(params, "parameters", "K");
  p.alpha = rd.required(params, "parameters", "alpha");
  p.phi = rd.required(params, "parameters", "phi");
  p.beta = rd.required(params, "parameters", "beta");
  p.q1 = rd.required(params, "parameters", "q1");
  p.q2 = rd.required(params, "parameters", "q2");
  read_responses(rd, root, p.theta, p.gamma);
  guarded(rd, params, "parameters", [&] { p.validate(); });
  return p;
}

ReducedParams read_reduced(const Reader& rd, const YAML::Node& root) {
  const YAML::Node n = root["reduced"];
  if (!n) rd.fail(root, "reduced", "missing required section for a reduced model");
  rd.only_keys(n, "reduced", {"r", "alpha", "theta", "gamma"});
  ReducedParams p{rd.required(n, "reduced", "r"), rd.required(n, "reduced", "alpha"),
                  rd.required(n, "reduced", "theta"), rd.required(n, "reduced", "gamma")};
  guarded(rd, n, "reduced", [&] { p.validate(); });
  return p;
}

void read_integrator(const Reader& rd, const YAML::Node& root, IntegratorConfig& cfg) {
  const YAML::Node n = root["integrator"];
  if (!n) return;
  rd.only_keys(n, "integrator", {"rtol", "atol", "h_init", "h_max"});
  if (auto v = rd.optional(n, "integrator", "rtol")) cfg.rtol = *v;
  if (auto v = rd.optional(n, "integrator", "atol")) cfg.atol = *v;
  if (auto v = rd.optional(n, "integrator", "h_init")) cfg.h_init = *v;
  if (auto v = rd.optional(n, "integrator", "h_max")) cfg.h_max = *v;
  guarded(rd, n, "integrator", [&] { cfg.validate(); });
}

void read_scenario(const Reader& rd, const YAML::Node& root, Scenario& sc) {
  const YAML::Node n = root["scenario"];
  if (!n) rd.fail(root, "scenario", "missing required section");
  rd.only_keys(n, "scenario", {"name", "provenance", "horizon", "output_step", "initial", "outputs", "grid"});
  if (!n["name"]) rd.fail(n, "scenario.name", "missing required key");
  sc.name = rd.text(n["name"], "scenario.name");
  for (char ch : sc.name)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.'))
      rd.fail(n["name"], "scenario.name", "only letters, digits, '_', '-' and '.' are allowed");
  if (n["provenance"]) sc.provenance = rd.text(n["provenance"], "scenario.provenance");
  if (auto v = rd.optional(n, "scenario", "horizon")) sc.horizon = *v;
  if (auto v = rd.optional(n, "scenario", "output_step")) sc.output_step = *v;
  if (const YAML::Node init = n["initial"]) {
    if (!init.IsSequence()) rd.fail(init, "scenario.initial", "expected a list of numbers");
    for (std::size_t k = 0; k < init.size(); ++k)
      sc.initial.push_back(rd.number(init[k], "scenario.initial[" + std::to_string(k) + "]"));
  }
  if (const YAML::Node outs = n["outputs"]) {
    if (!outs.IsSequence()) rd.fail(outs, "scenario.outputs", "expected a list");
    sc.outputs.clear();
    for (std::size_t k = 0; k < outs.size(); ++k) {
      const std::string path = "scenario.outputs[" + std::to_string(k) + "]";
      guarded(rd, outs[k], path, [&] { sc.outputs.push_back(output_kind_from_string(rd.text(outs[k], path))); });
    }
  }
  if (const YAML::Node g = n["grid"]) {
    const std::string path = "scenario.grid";
    rd.only_keys(g, path, {"theta_start", "theta_step", "theta_count", "gamma_start", "gamma_step", "gamma_count"});
    if (auto v = rd.optional(g, path, "theta_start")) sc.grid.theta_start = *v;
    if (auto v = rd.optional(g, path, "theta_step")) sc.grid.theta_step = *v;
    if (g["theta_count"]) sc.grid.theta_count = rd.count(g["theta_count"], path + ".theta_count");
    if (auto v = rd.optional(g, path, "gamma_start")) sc.grid.gamma_start = *v;
    if (auto v = rd.optional(g, path, "gamma_step")) sc.grid.gamma_step = *v;
    if (g["gamma_count"]) sc.grid.gamma_count = rd.count(g["gamma_count"], path + ".gamma_count");
  }
}

// ---------------------------------------------------------------- emitter

void emit_num(YAML::Emitter& out, const char* key, double v) {
  out << YAML::Key << key << YAML::Value << format_double(v);
}

void emit_response(YAML::Emitter& out, const char* key, const OxygenResponse& r) {
  out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginMap;
  if (const auto* c = std::get_if<ConstantForm>(&r.form())) {
    out << YAML::Key << "kind" << YAML::Value << "constant";
    emit_num(out, "value", c->value);
  } else {
    const auto& s = std::get<SigmoidForm>(r.form());
    out << YAML::Key << "kind" << YAML::Value << "sigmoid";
    emit_num(out, "v0", s.v0);
    emit_num(out, "vinf", s.vinf);
    emit_num(out, "k", s.k);
  }
  out << YAML::EndMap;
}

void emit_responses(YAML::Emitter& out, const OxygenResponse& theta, const OxygenResponse& gamma) {
  out << YAML::Key << "responses" << YAML::Value << YAML::BeginMap;
  emit_response(out, "theta", theta);
  emit_response(out, "gamma", gamma);
  out << YAML::EndMap;
}

}  // namespace

Scenario parse_config(const std::string& text, const std::string& source) {
  const Reader rd(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << source << ':' << e.mark.line + 1 << ':' << e.mark.column + 1 << ": <root>: " << e.msg;
    throw ConfigError(os.str());
  }
  if (!root || root.IsNull()) rd.fail(root, "", "empty configuration");
  rd.only_keys(root, "", {"model", "parameters", "responses", "reduced", "lattice", "scenario", "integrator"});
  if (!root["model"]) rd.fail(root, "model", "missing required key (local, reduced or regional)");
  const std::string kind = rd.text(root["model"], "model");
  Scenario sc;
  auto forbid = [&](const char* key) {
    if (root[key]) rd.fail(root[key], key, "not used by model '" + kind + "'");
  };
  if (kind == "local") {
    forbid("reduced");
    forbid("lattice");
    sc.model = read_local(rd, root);
  } else if (kind == "reduced") {
    forbid("parameters");
    forbid("responses");
    forbid("lattice");
    sc.model = read_reduced(rd, root);
  } else if (kind == "regional") {
    forbid("reduced");
    sc.model = read_lattice(rd, root);
  } else {
    rd.fail(root["model"], "model", "expected local, reduced or regional, got '" + kind + "'");
  }
  read_scenario(rd, root, sc);
  read_integrator(rd, root, sc.integrator);
  guarded(rd, root["scenario"], "scenario", [&] { sc.validate(); });
  return sc;
}

Scenario load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string serialize_config(const Scenario& s) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  if (const auto* p = std::get_if<DimensionalParams>(&s.model)) {
    out << YAML::Key << "model" << YAML::Value << "local";
    out << YAML::Key << "parameters" << YAML::Value << YAML::BeginMap;
    emit_num(out, "r1", p->r1);
    emit_num(out, "r2", p->r2);
    emit_num(out, "K", p->K);
    emit_num(out, "alpha", p->alpha);
    emit_num(out, "phi", p->phi);
    emit_num(out, "beta", p->beta);
    emit_num(out, "q1", p->q1);
    emit_num(out, "q2", p->q2);
    out << YAML::EndMap;
    emit_responses(out, p->theta, p->gamma);
  } else if (const auto* r = std::get_if<ReducedParams>(&s.model)) {
    out << YAML::Key << "model" << YAML::Value << "reduced";
    out << YAML::Key << "reduced" << YAML::Value << YAML::BeginMap;
    emit_num(out, "r", r->r);
    emit_num(out, "alpha", r->alpha);
    emit_num(out, "theta", r->theta);
    emit_num(out, "gamma", r->gamma);
    out << YAML::EndMap;
  } else {
    const auto& m = std::get<LatticeModel>(s.model);
    out << YAML::Key << "model" << YAML::Value << "regional";
    out << YAML::Key << "parameters" << YAML::Value << YAML::BeginMap;
    emit_num(out, "r1", m.r1);
    emit_num(out, "r2", m.r2);
    emit_num(out, "beta", m.beta);
    emit_num(out, "q1", m.q1);
    emit_num(out, "q2", m.q2);
    out << YAML::EndMap;
    emit_responses(out, m.theta, m.gamma);
    out << YAML::Key << "lattice" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "ell" << YAML::Value << m.ell();
    out << YAML::Key << "full_oxygenation" << YAML::Value << m.full_oxygenation;
    out << YAML::Key << "nodes" << YAML::Value << YAML::BeginSeq;
    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
      const auto& nd = m.nodes[i];
      out << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "index" << YAML::Value << i;
      emit_num(out, "K", nd.K);
      emit_num(out, "alpha", nd.alpha);
      emit_num(out, "eta", nd.eta);
      emit_num(out, "lambda", nd.lambda);
      emit_num(out, "qL", nd.qL);
      emit_num(out, "qR", nd.qR);
      emit_num(out, "phi", nd.phi);
      out << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }
  out << YAML::Key << "scenario" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << s.name;
  out << YAML::Key << "provenance" << YAML::Value << YAML::DoubleQuoted << s.provenance;
  emit_num(out, "horizon", s.horizon);
  emit_num(out, "output_step", s.output_step);
  out << YAML::Key << "initial" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double v : s.initial) out << format_double(v);
  out << YAML::EndSeq;
  out << YAML::Key << "outputs" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (OutputKind k : s.outputs) out << to_string(k);
  out << YAML::EndSeq;
  out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
  emit_num(out, "theta_start", s.grid.theta_start);
  emit_num(out, "theta_step", s.grid.theta_step);
  out << YAML::Key << "theta_count" << YAML::Value << s.grid.theta_count;
  emit_num(out, "gamma_start", s.grid.gamma_start);
  emit_num(out, "gamma_step", s.grid.gamma_step);
  out << YAML::Key << "gamma_count" << YAML::Value << s.grid.gamma_count;
  out << YAML::EndMap << YAML::EndMap;
  out << YAML::Key << "integrator" << YAML::Value << YAML::BeginMap;
  emit_num(out, "rtol", s.integrator.rtol);
  emit_num(out, "atol", s.integrator.atol);
  emit_num(out, "h_init", s.integrator.h_init);
  if (std::isfinite(s.integrator.h_max)) emit_num(out, "h_max", s.integrator.h_max);
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string config_hash(const Scenario& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : serialize_config(s)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace oncolattice
