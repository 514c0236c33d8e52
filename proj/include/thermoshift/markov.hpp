#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "thermoshift/graph.hpp"

namespace thermoshift {

/// Stationary Markov measure on the vertex paths of a graph.
///
/// P is row-stochastic and vanishes off the edges of the graph; pi P = pi.
/// When the graph is a recoding, `words()` holds the parent word of each vertex.
class MarkovMeasure {
 public:
  MarkovMeasure(DirectedGraph graph, Eigen::VectorXd pi, Eigen::MatrixXd transition,
                std::vector<Path> words = {});

  /// Solves for the stationary vector of an irreducible transition matrix.
  static MarkovMeasure from_transition(DirectedGraph graph, Eigen::MatrixXd transition,
                                       std::vector<Path> words = {});

  const DirectedGraph& graph() const { return graph_; }
  const Eigen::VectorXd& pi() const { return pi_; }
  const Eigen::MatrixXd& P() const { return P_; }
  const std::vector<Path>& words() const { return words_; }

  /// mu[w_0 ... w_{n-1}] = pi(w_0) prod P(w_i, w_{i+1}); 0 for inadmissible words.
  double cylinder(std::span<const Vertex> word) const;

  /// max_b |(pi P)(b) - pi(b)|
  double stationarity_residual() const;

 private:
  DirectedGraph graph_;
  Eigen::VectorXd pi_;
  Eigen::MatrixXd P_;
  std::vector<Path> words_;
};

/// Kolmogorov-Sinai entropy -sum_a pi(a) sum_b P(a,b) log P(a,b).
double entropy(const MarkovMeasure& m);

}  // namespace thermoshift
