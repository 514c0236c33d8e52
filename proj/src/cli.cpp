#include "thermoshift/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "thermoshift/gibbs.hpp"
#include "thermoshift/io.hpp"
#include "thermoshift/mixing.hpp"
#include "thermoshift/rotation.hpp"
#include "thermoshift/rpf.hpp"
#include "thermoshift/sinai.hpp"

namespace thermoshift {

namespace {

constexpr double kCheckTolerance = 1e-9;

struct Report {
  std::string text;
  int status = kOk;
};

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  std::optional<std::string> text(const std::string& key) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return std::nullopt;
    return it->second;
  }

  double real(const std::string& key, double fallback) const {
    auto s = text(key);
    if (!s) return fallback;
    try {
      std::size_t used = 0;
      const double v = std::stod(*s, &used);
      if (used == s->size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw InputError("parameter " + key + ": '" + *s + "' is not a number");
  }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    auto s = text(key);
    if (!s) return fallback;
    try {
      std::size_t used = 0;
      const long v = std::stol(*s, &used);
      if (used == s->size() && v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw InputError("parameter " + key + ": '" + *s + "' is not a positive integer");
  }

 private:
  const std::map<std::string, std::string>& raw_;
};

std::vector<Vertex> parse_vertex_list(const DirectedGraph& g, const std::string& key, const std::string& list) {
  std::vector<Vertex> out;
  std::stringstream in(list);
  for (std::string id; std::getline(in, id, ',');) {
    if (id.empty()) continue;
    auto v = g.find(id);
    if (!v) throw InputError("parameter " + key + ": unknown vertex '" + id + "'");
    out.push_back(*v);
  }
  if (out.empty()) throw InputError("parameter " + key + " lists no vertices");
  return out;
}

Json id_list(const DirectedGraph& g, const std::vector<Vertex>& vs) {
  Json out = Json::array();
  for (Vertex v : vs) out.push_back(g.id(v));
  return out;
}

DirectedGraph need_graph(const RunConfig& config) {
  if (!config.graph_path) throw InputError("--graph is required for " + config.command);
  return load_graph(*config.graph_path);
}

LocallyConstantPotential potential_or_zero(const RunConfig& config, const DirectedGraph& g) {
  if (!config.potential_path) return LocallyConstantPotential::constant(g, 0.0);
  return load_potential(g, *config.potential_path);
}

LocallyConstantPotential one_sided(const LocallyConstantPotential& phi) {
  if (phi.one_sided()) return phi;
  return sinai_reduce(phi).phi;
}

// Key of a recoded vertex: its parent word, space-joined.
std::string alphabet_key(const DirectedGraph& parent, const std::vector<Path>& words, Vertex v) {
  return join_ids(parent, words.at(v));
}

Report analyze(const RunConfig& config) {
  const DirectedGraph g = need_graph(config);
  Json doc;
  doc["vertices"] = g.size();
  doc["edges"] = g.edge_count();
  doc["pruned"] = g.pruned();
  const bool transitive = is_transitive(g);
  doc["transitive"] = transitive;
  if (transitive) {
    const SpectralDecomposition dec = spectral_decomposition(g);
    doc["period"] = dec.period;
    Json classes = Json::array();
    for (const auto& c : dec.classes) classes.push_back(id_list(g, c));
    doc["classes"] = std::move(classes);
  } else {
    doc["period"] = nullptr;
    doc["classes"] = nullptr;
  }
  Json components = Json::array();
  for (const auto& c : transitive_components(g)) components.push_back(c.ids());
  doc["components"] = std::move(components);
  return {dump_json(doc) + "\n", kOk};
}

Report reduce(const RunConfig& config) {
  const DirectedGraph g = need_graph(config);
  if (!config.potential_path) throw InputError("--potential is required for reduce");
  const LocallyConstantPotential psi = load_potential(g, *config.potential_path);
  const LocallyConstantPotential phi = one_sided(psi);
  double scale = 1.0;
  for (const auto& [w, v] : psi.table()) scale = std::max(scale, std::abs(v));
  const bool certified = certify_one_sided(phi, 1e-9 * scale);
  return {dump_json(potential_to_json(phi)) + "\n", certified ? kOk : kInvariantViolation};
}

Report equilibrium(const RunConfig& config) {
  const DirectedGraph g = need_graph(config);
  const LocallyConstantPotential phi = one_sided(potential_or_zero(config, g));
  const RpfSolution sol = solve_rpf(g, phi);
  const MarkovMeasure mu = equilibrium_measure(sol);
  const auto& words = sol.recoding.alphabet.words;
  const Eigen::MatrixXd& B = sol.transfer;

  Json doc;
  doc["lambda"] = sol.lambda;
  doc["pressure"] = sol.pressure;
  doc["block_length"] = sol.recoding.block_length;
  doc["iterations"] = sol.iterations;
  Json h = Json::object(), nu = Json::object(), pi = Json::object(), P = Json::object();
  for (Vertex v = 0; v < words.size(); ++v) {
    const auto i = static_cast<Eigen::Index>(v);
    const std::string key = alphabet_key(g, words, v);
    h[key] = sol.h(i);
    nu[key] = sol.nu(i);
    pi[key] = mu.pi()(i);
    Json row = Json::object();
    for (Vertex w : sol.alphabet().successors(v)) {
      row[alphabet_key(g, words, w)] = mu.P()(i, static_cast<Eigen::Index>(w));
    }
    P[key] = std::move(row);
  }
  doc["h"] = std::move(h);
  doc["nu"] = std::move(nu);
  doc["pi"] = std::move(pi);
  doc["P"] = std::move(P);

  const double scale = sol.lambda * std::max(sol.h.cwiseAbs().maxCoeff(), sol.nu.cwiseAbs().maxCoeff());
  const double h_residual = (B.transpose() * sol.h - sol.lambda * sol.h).cwiseAbs().maxCoeff() / scale;
  const double nu_residual = (B * sol.nu - sol.lambda * sol.nu).cwiseAbs().maxCoeff() / scale;
  double normalized_residual = 0.0;
  for (Vertex b = 0; b < words.size(); ++b) {
    double sum = 0.0;
    for (Vertex a : sol.alphabet().predecessors(b)) {
      const Vertex e[2] = {a, b};
      sum += std::exp(sol.phi_star.value(e));
    }
    normalized_residual = std::max(normalized_residual, std::abs(sum - 1.0));
  }
  Json checks;
  checks["eigenfunction_residual"] = h_residual;
  checks["eigenmeasure_residual"] = nu_residual;
  checks["normalization_error"] = std::abs(sol.h.dot(sol.nu) - 1.0);
  checks["normalized_operator_residual"] = normalized_residual;
  checks["stationarity_residual"] = mu.stationarity_residual();
  checks["variational_gap"] = std::abs(pressure_functional(mu, phi) - sol.pressure);
  bool ok = true;
  for (const auto& [name, value] : checks.items()) ok = ok && value.get<double>() <= kCheckTolerance;
  checks["passed"] = ok;
  doc["checks"] = std::move(checks);
  return {dump_json(doc) + "\n", ok ? kOk : kInvariantViolation};
}

struct Equilibrium {
  RpfSolution sol;
  MarkovMeasure mu;
};

Equilibrium equilibrium_of(const RunConfig& config, const DirectedGraph& g) {
  const LocallyConstantPotential phi = one_sided(potential_or_zero(config, g));
  RpfSolution sol = solve_rpf(g, phi);
  MarkovMeasure mu = equilibrium_measure(sol);
  return {std::move(sol), std::move(mu)};
}

Report gibbs_check(const RunConfig& config) {
  const Params params(config.params);
  const DirectedGraph g = need_graph(config);
  const Equilibrium eq = equilibrium_of(config, g);
  const DirectedGraph& alphabet = eq.mu.graph();
  std::vector<Vertex> s_star;
  if (auto list = params.text("s_star")) {
    s_star = parse_vertex_list(alphabet, "s_star", *list);
  } else {
    s_star = alphabet.by_identifier();
  }
  const GibbsCertificate cert = gibbs_ratio_bounds(eq.mu, s_star, params.count("max_len", 5));

  Json doc;
  doc["s_star"] = id_list(alphabet, cert.s_star);
  doc["m_const"] = cert.m_const;
  doc["boundary_distortion"] = cert.boundary_distortion;
  doc["c_star_1"] = cert.c_star_1;
  doc["c_star_2"] = cert.c_star_2;
  doc["c_star"] = cert.c_star;
  doc["observed_c_star"] = cert.observed_c_star;
  doc["min_ratio"] = cert.min_ratio;
  doc["max_ratio"] = cert.max_ratio;
  Json worst;
  worst["a"] = join_ids(alphabet, cert.worst_pair.a);
  worst["c"] = join_ids(alphabet, cert.worst_pair.c);
  worst["kind"] = cert.worst_pair.kind;
  worst["ratio"] = cert.worst_pair.ratio;
  doc["worst_pair"] = std::move(worst);
  doc["pairs_checked"] = cert.pairs_checked;
  doc["holds"] = cert.holds;
  return {dump_json(doc) + "\n", cert.holds ? kOk : kInvariantViolation};
}

Report mixing(const RunConfig& config, const std::string& format, std::ostream& err) {
  const Params params(config.params);
  const DirectedGraph g = need_graph(config);
  const Equilibrium eq = equilibrium_of(config, g);
  const double delta = params.real("delta", 0.1);
  const std::size_t n_max = params.count("n_max", 4);
  const std::size_t k_max = params.count("k_max", 20);
  std::vector<Vertex> v_prime;
  if (auto list = params.text("v_prime")) v_prime = parse_vertex_list(eq.mu.graph(), "v_prime", *list);

  WeakBernoulliReport report = weak_bernoulli_statistic(eq.mu, v_prime, n_max, k_max, config.threads);
  report.delta = delta;
  report.bound = weak_bernoulli_bound(delta);
  int status = kOk;
  try {
    report.K_delta = find_K_delta(eq.mu, delta).K;
  } catch (const NonConvergenceError& e) {
    err << "mixing: " << e.what() << "\n";
    status = kInvariantViolation;
  }
  for (const auto& [nk, wb] : report.table) {
    if (report.K_delta && nk.second > *report.K_delta && !(wb < report.bound)) {
      err << "mixing: WB(" << nk.first << "," << nk.second << ") = " << format_real(wb)
          << " exceeds the bound beyond K(delta)\n";
      status = kInvariantViolation;
    }
  }

  if (format == "csv") {
    std::string text = "n,k,wb,bound,pass\n";
    for (const auto& [nk, wb] : report.table) {
      text += std::to_string(nk.first) + "," + std::to_string(nk.second) + "," + format_real(wb) + "," +
              format_real(report.bound) + "," + (wb < report.bound ? "1" : "0") + "\n";
    }
    return {text, status};
  }
  Json doc;
  doc["partition"] = v_prime.empty() ? Json(nullptr) : id_list(eq.mu.graph(), v_prime);
  doc["delta"] = report.delta;
  doc["bound"] = report.bound;
  doc["K_delta"] = report.K_delta ? Json(*report.K_delta) : Json(nullptr);
  Json table = Json::array();
  for (const auto& [nk, wb] : report.table) {
    Json row;
    row["n"] = nk.first;
    row["k"] = nk.second;
    row["wb"] = wb;
    row["pass"] = wb < report.bound;
    table.push_back(std::move(row));
  }
  doc["table"] = std::move(table);
  return {dump_json(doc) + "\n", status};
}

Report factorize(const RunConfig& config) {
  const DirectedGraph g = need_graph(config);
  const Equilibrium eq = equilibrium_of(config, g);
  const DirectedGraph& alphabet = eq.sol.alphabet();
  const auto& words = eq.sol.recoding.alphabet.words;
  const RotationFactor rf = build_rotation_factor(alphabet, eq.mu);
  const EntropyIdentity ent = entropy_identity_check(rf, eq.mu);
  const PowerPressureCheck pc = power_potential_pressure_check(alphabet, eq.sol.recoding.edge_potential);
  const ProductWitness witness = product_structure_witness(rf, eq.mu);

  double decomposition_error = 0.0;
  for (std::size_t len = 1; len <= 5; ++len) {
    for (const auto& w : alphabet.admissible_words(len)) {
      double average = 0.0;
      for (std::size_t i = 0; i < rf.p; ++i) average += conditioned_cylinder(rf, i, w);
      average /= static_cast<double>(rf.p);
      decomposition_error = std::max(decomposition_error, std::abs(average - eq.mu.cylinder(w)));
    }
  }

  Json doc;
  doc["p"] = rf.p;
  Json classes = Json::array();
  for (const auto& c : rf.decomposition.classes) {
    Json cls = Json::array();
    for (Vertex v : c) cls.push_back(alphabet_key(g, words, v));
    classes.push_back(std::move(cls));
  }
  doc["classes"] = std::move(classes);
  doc["mu_Xi"] = rf.class_mass;
  double entropy_gap = 0.0;
  for (double l : ent.lhs) entropy_gap = std::max(entropy_gap, std::abs(l - ent.rhs));
  doc["entropy_check"] = {{"lhs", ent.lhs}, {"rhs", ent.rhs}, {"max_gap", entropy_gap}};
  double pressure_gap = 0.0;
  for (double v : pc.power) pressure_gap = std::max(pressure_gap, std::abs(v - pc.p_times));
  doc["pressure_check"] = {{"p_times", pc.p_times}, {"power", pc.power}, {"max_gap", pressure_gap}};
  Json wit;
  wit["words_checked"] = witness.words_checked;
  wit["index_process"] = witness.index_process;
  wit["pushforward"] = witness.pushforward;
  wit["pushforward_error"] = witness.pushforward_error;
  wit["shift_mass_error"] = witness.shift_mass_error;
  wit["return_entropy"] = witness.return_entropy;
  wit["expected_entropy"] = witness.expected_entropy;
  wit["holds"] = witness.holds;
  doc["witness"] = std::move(wit);
  doc["decomposition_error"] = decomposition_error;

  const bool ok = witness.holds && entropy_gap <= kCheckTolerance && pressure_gap <= kCheckTolerance &&
                  decomposition_error <= 1e-12;
  return {dump_json(doc) + "\n", ok ? kOk : kInvariantViolation};
}

Report truncate(const RunConfig& config, const std::string& format) {
  if (!config.manifest_path) throw InputError("--manifest is required for truncate");
  std::vector<DirectedGraph> graphs;
  for (const auto& path : load_manifest(*config.manifest_path)) graphs.push_back(load_graph(path));
  const LocallyConstantPotential phi = one_sided(potential_or_zero(config, graphs.back()));
  const std::vector<double> pressures = truncation_pressure_sequence(graphs, phi);
  bool monotone = true;
  for (std::size_t i = 1; i < pressures.size(); ++i) {
    monotone = monotone && pressures[i] >= pressures[i - 1] - kCheckTolerance;
  }
  const int status = monotone ? kOk : kInvariantViolation;
  if (format == "csv") {
    std::string text = "index,vertices,edges,pressure\n";
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      text += std::to_string(i) + "," + std::to_string(graphs[i].size()) + "," +
              std::to_string(graphs[i].edge_count()) + "," + format_real(pressures[i]) + "\n";
    }
    return {text, status};
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    rows.push_back({{"index", i}, {"vertices", graphs[i].size()}, {"edges", graphs[i].edge_count()},
                    {"pressure", pressures[i]}});
  }
  Json doc;
  doc["rows"] = std::move(rows);
  doc["monotone"] = monotone;
  return {dump_json(doc) + "\n", status};
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Params params(config.params);
    const bool tabular = config.command == "mixing" || config.command == "truncate";
    const std::string format = params.text("format").value_or(tabular ? "csv" : "json");
    if (format != "json" && format != "csv") throw InputError("parameter format: expected json or csv");
    if (format == "csv" && !tabular) throw InputError("parameter format: csv is not available for " + config.command);

    Report report;
    if (config.command == "analyze") {
      report = analyze(config);
    } else if (config.command == "reduce") {
      report = reduce(config);
    } else if (config.command == "equilibrium") {
      report = equilibrium(config);
    } else if (config.command == "gibbs-check") {
      report = gibbs_check(config);
    } else if (config.command == "mixing") {
      report = mixing(config, format, err);
    } else if (config.command == "factorize") {
      report = factorize(config);
    } else if (config.command == "truncate") {
      report = truncate(config, format);
    } else {
      throw InputError("unknown command '" + config.command + "'");
    }

    if (auto path = params.text("output_path")) {
      std::ofstream file(*path, std::ios::binary);
      if (!(file << report.text)) throw InputError("cannot write " + *path);
    } else {
      out << report.text;
    }
    if (report.status != kOk) err << config.command << ": invariant check failed\n";
    return report.status;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kInvariantViolation;
  }
}

}  // namespace thermoshift
