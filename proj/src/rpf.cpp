#include "thermoshift/rpf.hpp"

#include <cmath>
#include <string>

namespace thermoshift {

Recoding recode(const LocallyConstantPotential& phi) {
  if (!phi.one_sided()) throw PreconditionError("recode requires a one-sided potential");
  const LocallyConstantPotential base = phi.left() == 0 ? phi : widen(phi, 0, phi.right());
  const auto r = static_cast<std::size_t>(base.right());
  const std::size_t k = std::max<std::size_t>(r, 1);
  BlockGraph alphabet = higher_block(base.graph(), k);

  std::map<Path, double> table;
  for (auto [a, b] : alphabet.graph.edges()) {
    Path word = alphabet.words[a];
    word.push_back(alphabet.words[b].back());
    table[{a, b}] = base.value(std::span<const Vertex>(word).first(r + 1));
  }
  LocallyConstantPotential edge(alphabet.graph, 0, 1, std::move(table), phi.declared_theta());
  return Recoding{std::move(alphabet), k, std::move(edge)};
}

Eigen::MatrixXd transfer_matrix(const Recoding& rec) {
  const auto n = static_cast<Eigen::Index>(rec.alphabet.graph.size());
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [edge, value] : rec.edge_potential.table()) {
    B(static_cast<Eigen::Index>(edge[0]), static_cast<Eigen::Index>(edge[1])) = std::exp(value);
  }
  return B;
}

Eigen::VectorXd apply_L(const LocallyConstantPotential& phi, const Eigen::VectorXd& F, std::size_t n) {
  const Recoding rec = recode(phi);
  const DirectedGraph& g = rec.alphabet.graph;
  if (F.size() != static_cast<Eigen::Index>(g.size())) {
    throw InputError("apply_L: function size does not match the recoded alphabet");
  }
  Eigen::VectorXd current = F;
  for (std::size_t step = 0; step < n; ++step) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(current.size());
    for (Vertex b = 0; b < g.size(); ++b) {
      for (Vertex a : g.predecessors(b)) {
        const Vertex edge[2] = {a, b};
        next(static_cast<Eigen::Index>(b)) +=
            std::exp(rec.edge_potential.value(edge)) * current(static_cast<Eigen::Index>(a));
      }
    }
    current = std::move(next);
  }
  return current;
}

LocallyConstantPotential lift_edge_potential(const BlockGraph& alphabet, const DirectedGraph& parent,
                                             const LocallyConstantPotential& edge_potential) {
  std::map<Path, double> table;
  for (const auto& [edge, value] : edge_potential.table()) {
    Path word = alphabet.words.at(edge[0]);
    word.push_back(alphabet.words.at(edge[1]).back());
    table.emplace(std::move(word), value);
  }
  const long k = static_cast<long>(alphabet.words.front().size());
  return LocallyConstantPotential(parent, 0, k, std::move(table), edge_potential.declared_theta());
}

namespace {

// Perron vector of a nonnegative irreducible matrix by power iteration on B + I,
// which is primitive whatever the period of B.
Eigen::VectorXd perron_vector(const Eigen::MatrixXd& B, std::optional<Eigen::VectorXd> initial,
                              const RpfOptions& options, std::size_t& iterations) {
  const auto n = B.rows();
  Eigen::VectorXd v = initial ? Eigen::VectorXd(initial->cwiseAbs()) : Eigen::VectorXd::Ones(n);
  if (v.size() != n) throw InputError("initial vector size does not match the recoded alphabet");
  if (v.sum() <= 0.0) throw InputError("initial vector must have positive mass");
  v /= v.sum();
  const Eigen::MatrixXd shifted = B + Eigen::MatrixXd::Identity(n, n);
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    Eigen::VectorXd w = shifted * v;
    v = w / w.sum();
    const Eigen::VectorXd Bv = B * v;
    const double lambda = Bv.sum();
    const double residual = (Bv - lambda * v).cwiseAbs().maxCoeff() / (lambda * v.cwiseAbs().maxCoeff());
    if (residual < options.tolerance) {
      iterations = std::max(iterations, it);
      return v;
    }
  }
  throw NonConvergenceError("power iteration did not reach relative residual " +
                            std::to_string(options.tolerance) + " within " +
                            std::to_string(options.max_iterations) + " iterations");
}

}  // namespace

RpfSolution solve_rpf(const DirectedGraph& g, const LocallyConstantPotential& phi, const RpfOptions& options) {
  if (!(phi.graph() == g)) throw InputError("solve_rpf: potential is defined on a different graph");
  if (!phi.one_sided()) throw PreconditionError("solve_rpf requires a one-sided potential");
  if (!is_transitive(g)) throw PreconditionError("solve_rpf requires a transitive graph");

  Recoding rec = recode(phi);
  Eigen::MatrixXd B = transfer_matrix(rec);
  std::size_t iterations = 0;
  Eigen::VectorXd nu = perron_vector(B, options.initial_right, options, iterations);
  Eigen::VectorXd h = perron_vector(B.transpose(), options.initial_left, options, iterations);

  nu /= nu.sum();
  const double lambda = h.dot(B * nu) / h.dot(nu);
  h /= h.dot(nu);

  std::map<Path, double> star;
  for (const auto& [edge, value] : rec.edge_potential.table()) {
    const auto a = static_cast<Eigen::Index>(edge[0]);
    const auto b = static_cast<Eigen::Index>(edge[1]);
    star.emplace(edge, value + std::log(h(a)) - std::log(h(b)) - std::log(lambda));
  }
  LocallyConstantPotential phi_star(rec.alphabet.graph, 0, 1, std::move(star), phi.declared_theta());

  std::vector<double> convergence;
  const Eigen::MatrixXd limit = nu * h.transpose();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(B.rows(), B.cols());
  for (std::size_t n = 1; n <= options.convergence_horizon; ++n) {
    power = power * B / lambda;
    convergence.push_back((power - limit).cwiseAbs().maxCoeff());
  }

  RpfSolution sol{std::move(rec), std::move(B), lambda, std::log(lambda), std::move(h), std::move(nu),
                  std::move(phi_star), std::move(convergence), iterations};
  return sol;
}

MarkovMeasure equilibrium_measure(const RpfSolution& sol) {
  const auto n = sol.transfer.rows();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      if (sol.transfer(a, b) > 0.0) P(a, b) = sol.transfer(a, b) * sol.nu(b) / (sol.lambda * sol.nu(a));
    }
  }
  Eigen::VectorXd pi = sol.h.cwiseProduct(sol.nu);
  pi /= pi.sum();
  return MarkovMeasure(sol.alphabet(), std::move(pi), std::move(P), sol.recoding.alphabet.words);
}

double pressure_functional(const MarkovMeasure& m, const LocallyConstantPotential& phi) {
  const Recoding rec = recode(phi);
  if (!(m.graph() == rec.alphabet.graph)) {
    throw InputError("pressure_functional: measure is not supported on the recoded graph of the potential");
  }
  double integral = 0.0;
  for (const auto& [edge, value] : rec.edge_potential.table()) {
    const auto a = static_cast<Eigen::Index>(edge[0]);
    const auto b = static_cast<Eigen::Index>(edge[1]);
    const double weight = m.pi()(a) * m.P()(a, b);
    if (weight > 0.0) integral += weight * value;
  }
  return entropy(m) + integral;
}

std::pair<MarkovMeasure, double> parry_measure(const DirectedGraph& g) {
  const RpfSolution sol = solve_rpf(g, LocallyConstantPotential::constant(g, 0.0));
  return {equilibrium_measure(sol), sol.pressure};
}

std::vector<double> truncation_pressure_sequence(const std::vector<DirectedGraph>& graphs,
                                                 const LocallyConstantPotential& phi) {
  if (graphs.empty()) throw InputError("truncation sequence is empty");
  if (!(phi.graph() == graphs.back())) {
    throw InputError("truncation potential must be defined on the largest graph");
  }
  for (std::size_t i = 0; i + 1 < graphs.size(); ++i) {
    if (!is_subgraph(graphs[i], graphs[i + 1])) {
      throw InputError("truncation graph " + std::to_string(i) + " is not a subgraph of graph " +
                       std::to_string(i + 1));
    }
  }
  std::vector<double> pressures;
  for (const auto& g : graphs) pressures.push_back(solve_rpf(g, restrict_to(phi, g)).pressure);
  return pressures;
}

LocallyConstantPotential normalized_potential(const MarkovMeasure& m) {
  std::map<Path, double> table;
  for (auto [a, b] : m.graph().edges()) {
    const auto ia = static_cast<Eigen::Index>(a);
    const auto ib = static_cast<Eigen::Index>(b);
    const double forward = m.pi()(ia) * m.P()(ia, ib);
    if (!(forward > 0.0) || !(m.pi()(ib) > 0.0)) {
      throw PreconditionError("normalized_potential requires a measure charging every edge");
    }
    table[{a, b}] = std::log(forward / m.pi()(ib));
  }
  return LocallyConstantPotential(m.graph(), 0, 1, std::move(table));
}

}  // namespace thermoshift
