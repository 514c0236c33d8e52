#include "thermoshift/rotation.hpp"

#include <cmath>
#include <map>

#include "thermoshift/rpf.hpp"

namespace thermoshift {

RotationFactor build_rotation_factor(const DirectedGraph& g, const MarkovMeasure& mu) {
  if (!(mu.graph() == g)) throw InputError("rotation factor: measure is defined on a different graph");
  if (!is_transitive(g)) throw PreconditionError("rotation factor requires a transitive graph");

  RotationFactor rf;
  rf.decomposition = spectral_decomposition(g);
  rf.p = rf.decomposition.period;
  rf.class_mass.assign(rf.p, 0.0);
  for (Vertex v = 0; v < g.size(); ++v) {
    rf.class_mass[rf.decomposition.class_of[v]] += mu.pi()(static_cast<Eigen::Index>(v));
  }

  for (std::size_t i = 0; i < rf.p; ++i) {
    BlockGraph power = power_graph(g, rf.decomposition, i);
    const auto n = static_cast<Eigen::Index>(power.graph.size());
    Eigen::VectorXd pi(n);
    std::vector<double> tail(power.words.size());  // mu[w] / pi(w_0)
    for (Vertex w = 0; w < power.words.size(); ++w) {
      const double mass = mu.cylinder(power.words[w]);
      pi(static_cast<Eigen::Index>(w)) = mass / rf.class_mass[i];
      tail[w] = mass / mu.pi()(static_cast<Eigen::Index>(power.words[w].front()));
    }
    // mu[w w'] / mu[w] = P(w_{p-1}, w'_0) mu[w'] / pi(w'_0)
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (auto [a, b] : power.graph.edges()) {
      P(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          mu.P()(static_cast<Eigen::Index>(power.words[a].back()),
                 static_cast<Eigen::Index>(power.words[b].front())) *
          tail[b];
    }
    rf.mu_i.emplace_back(power.graph, std::move(pi), std::move(P), power.words);
    rf.power_graphs.push_back(std::move(power));
  }
  return rf;
}

double conditioned_cylinder(const RotationFactor& rf, std::size_t i, std::span<const Vertex> word) {
  if (i >= rf.p) throw InputError("class index out of range");
  if (word.empty()) return 1.0;
  const BlockGraph& power = rf.power_graphs[i];
  const std::size_t p = rf.p;
  const std::size_t blocks = (word.size() + p - 1) / p;

  // Enumerate block sequences whose concatenation starts with `word`.
  double total = 0.0;
  std::vector<Vertex> sequence;
  auto extend = [&](auto&& self, std::size_t depth) -> void {
    if (depth == blocks) {
      total += rf.mu_i[i].cylinder(sequence);
      return;
    }
    for (Vertex v = 0; v < power.words.size(); ++v) {
      const Path& block = power.words[v];
      bool fits = true;
      for (std::size_t j = 0; j < p && depth * p + j < word.size(); ++j) {
        if (block[j] != word[depth * p + j]) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      if (!sequence.empty() && !power.graph.has_edge(sequence.back(), v)) continue;
      sequence.push_back(v);
      self(self, depth + 1);
      sequence.pop_back();
    }
  };
  extend(extend, 0);
  return total;
}

EntropyIdentity entropy_identity_check(const RotationFactor& rf, const MarkovMeasure& mu) {
  EntropyIdentity out;
  for (const auto& m : rf.mu_i) out.lhs.push_back(entropy(m));
  out.rhs = static_cast<double>(rf.p) * entropy(mu);
  return out;
}

LocallyConstantPotential power_potential(const DirectedGraph& g, const SpectralDecomposition& dec,
                                         const BlockGraph& power,
                                         const LocallyConstantPotential& psi) {
  if (!psi.one_sided()) throw PreconditionError("power potential requires a one-sided potential");
  if (!(psi.graph() == g)) throw InputError("power potential: psi is defined on a different graph");
  const std::size_t p = dec.period;
  const auto left = static_cast<std::size_t>(psi.left());
  const std::size_t width = psi.width();
  // psi_p reads base coordinates 0 .. p - 1 + right.
  const std::size_t reach = p + static_cast<std::size_t>(psi.right());
  const std::size_t blocks = (reach + p - 1) / p;

  std::map<Path, double> table;
  for (const auto& seq : power.graph.admissible_words(blocks)) {
    Path concat;
    for (Vertex v : seq) concat.insert(concat.end(), power.words[v].begin(), power.words[v].end());
    double sum = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      sum += psi.value(std::span<const Vertex>(concat).subspan(j + left, width));
    }
    table.emplace(seq, sum);
  }
  return LocallyConstantPotential(power.graph, 0, static_cast<long>(blocks) - 1, std::move(table));
}

PowerPressureCheck power_potential_pressure_check(const DirectedGraph& g, const LocallyConstantPotential& psi) {
  if (!is_transitive(g)) throw PreconditionError("power pressure check requires a transitive graph");
  if (!psi.one_sided()) throw PreconditionError("power pressure check requires a one-sided potential");
  const SpectralDecomposition dec = spectral_decomposition(g);
  PowerPressureCheck out;
  out.p_times = static_cast<double>(dec.period) * solve_rpf(g, psi).pressure;
  for (std::size_t i = 0; i < dec.period; ++i) {
    const BlockGraph power = power_graph(g, dec, i);
    out.power.push_back(solve_rpf(power.graph, power_potential(g, dec, power, psi)).pressure);
  }
  return out;
}

ProductWitness product_structure_witness(const RotationFactor& rf, const MarkovMeasure& mu,
                                         std::size_t max_len) {
  ProductWitness out;
  const DirectedGraph& g = mu.graph();
  const auto& class_of = rf.decomposition.class_of;
  const std::size_t p = rf.p;

  for (std::size_t len = 1; len <= max_len; ++len) {
    for (const auto& w : g.admissible_words(len)) {
      ++out.words_checked;
      for (std::size_t t = 0; t < w.size(); ++t) {
        if (class_of[w[t]] != (class_of[w[0]] + t) % p) out.index_process = false;
      }
    }
  }

  out.pushforward = rf.class_mass;
  for (double m : rf.class_mass) {
    out.pushforward_error = std::max(out.pushforward_error, std::abs(m - 1.0 / static_cast<double>(p)));
  }
  std::vector<double> moved(p, 0.0);
  for (auto [a, b] : g.edges()) {
    if (class_of[b] != (class_of[a] + 1) % p) continue;
    const auto ia = static_cast<Eigen::Index>(a);
    moved[class_of[a]] += mu.pi()(ia) * mu.P()(ia, static_cast<Eigen::Index>(b));
  }
  for (std::size_t i = 0; i < p; ++i) {
    out.shift_mass_error = std::max(out.shift_mass_error, std::abs(moved[i] - rf.class_mass[i]));
  }

  out.return_entropy = entropy(rf.mu_i.front());
  out.expected_entropy = static_cast<double>(p) * entropy(mu);
  out.holds = out.index_process && out.pushforward_error <= 1e-12 && out.shift_mass_error <= 1e-12 &&
              std::abs(out.return_entropy - out.expected_entropy) <= 1e-9;
  return out;
}

}  // namespace thermoshift
