#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "thermoshift/markov.hpp"
#include "thermoshift/potential.hpp"

namespace thermoshift {

/// A one-sided potential with window (0, r) rewritten as an edge potential on the
/// graph of admissible k-words, k = max(r, 1). Edge (a, b) of the recoded graph
/// is the admissible (k+1)-word a_0 ... a_{k-1} b_{k-1}.
struct Recoding {
  BlockGraph alphabet;
  std::size_t block_length = 1;
  LocallyConstantPotential edge_potential;  // window (0,1) on alphabet.graph
};

/// Requires a one-sided potential.
Recoding recode(const LocallyConstantPotential& phi);

/// B(a,b) = A(a,b) exp(phi(a,b)) on the recoded alphabet.
Eigen::MatrixXd transfer_matrix(const Recoding& rec);

/// n-fold Ruelle operator (L F)(x) = sum_{sigma y = x} exp(phi(y)) F(y) for F a
/// function of the first recoded symbol.
Eigen::VectorXd apply_L(const LocallyConstantPotential& phi, const Eigen::VectorXd& F, std::size_t n);

/// A window-(0,1) edge potential on the recoded alphabet, expressed on the parent
/// graph with window (0, k).
LocallyConstantPotential lift_edge_potential(const BlockGraph& alphabet, const DirectedGraph& parent,
                                             const LocallyConstantPotential& edge_potential);

struct RpfOptions {
  std::optional<Eigen::VectorXd> initial_right;
  std::optional<Eigen::VectorXd> initial_left;
  double tolerance = 1e-13;
  std::size_t max_iterations = 100000;
  std::size_t convergence_horizon = 20;
};

/// Perron data of the Ruelle operator on the recoded alphabet.
///
/// With B as above, L acts on functions of the first symbol as B^T, so the
/// eigenfunction h is the left Perron vector (B^T h = lambda h) and the
/// eigenmeasure weights nu[a] form the right Perron vector (B nu = lambda nu).
/// nu is a probability vector and sum_a h(a) nu(a) = 1.
struct RpfSolution {
  Recoding recoding;
  Eigen::MatrixXd transfer;
  double lambda = 0.0;
  double pressure = 0.0;
  Eigen::VectorXd h;
  Eigen::VectorXd nu;
  /// phi + log h - log h o sigma - log lambda, window (0,1) on the recoded alphabet.
  LocallyConstantPotential phi_star;
  /// convergence[n-1] = max_a sup_x |lambda^{-n} L^n 1_[a](x) - nu[a] h(x)|
  std::vector<double> convergence;
  std::size_t iterations = 0;

  const DirectedGraph& alphabet() const { return recoding.alphabet.graph; }
};

/// Requires g transitive, phi one-sided and defined on g.
RpfSolution solve_rpf(const DirectedGraph& g, const LocallyConstantPotential& phi,
                      const RpfOptions& options = {});

/// P(a,b) = B(a,b) nu(b) / (lambda nu(a)), pi = h nu.
MarkovMeasure equilibrium_measure(const RpfSolution& sol);

/// entropy(m) + integral of phi. m must live on the recoded alphabet of phi.
double pressure_functional(const MarkovMeasure& m, const LocallyConstantPotential& phi);

/// Measure of maximal entropy and its entropy log lambda(A).
std::pair<MarkovMeasure, double> parry_measure(const DirectedGraph& g);

/// Pressures log lambda_i of phi restricted to each graph of a nested sequence.
/// phi lives on the last (largest) graph.
std::vector<double> truncation_pressure_sequence(const std::vector<DirectedGraph>& graphs,
                                                 const LocallyConstantPotential& phi);

/// The normalized potential log(pi(a) P(a,b) / pi(b)) of a Markov measure charging
/// every edge; the Ruelle operator of this potential fixes 1 and preserves the measure.
LocallyConstantPotential normalized_potential(const MarkovMeasure& m);

}  // namespace thermoshift
