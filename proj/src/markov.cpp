#include "thermoshift/markov.hpp"

#include <cmath>

namespace thermoshift {

namespace {
constexpr double kStochasticTolerance = 1e-9;
}

MarkovMeasure::MarkovMeasure(DirectedGraph graph, Eigen::VectorXd pi, Eigen::MatrixXd transition,
                             std::vector<Path> words)
    : graph_(std::move(graph)), pi_(std::move(pi)), P_(std::move(transition)), words_(std::move(words)) {
  const auto n = static_cast<Eigen::Index>(graph_.size());
  if (pi_.size() != n || P_.rows() != n || P_.cols() != n) {
    throw InputError("Markov measure dimensions do not match the graph");
  }
  if (!words_.empty() && words_.size() != graph_.size()) throw InputError("word map does not match the graph");
  if ((pi_.array() < 0.0).any() || std::abs(pi_.sum() - 1.0) > kStochasticTolerance) {
    throw InputError("stationary vector must be a probability vector");
  }
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const double p = P_(a, b);
      if (p < 0.0) throw InputError("transition probabilities must be nonnegative");
      if (p > 0.0 && !graph_.has_edge(static_cast<Vertex>(a), static_cast<Vertex>(b))) {
        throw InputError("transition matrix charges a non-edge");
      }
    }
    if (std::abs(P_.row(a).sum() - 1.0) > kStochasticTolerance) {
      throw InputError("transition matrix must be row-stochastic");
    }
  }
}

MarkovMeasure MarkovMeasure::from_transition(DirectedGraph graph, Eigen::MatrixXd transition,
                                             std::vector<Path> words) {
  const auto n = transition.rows();
  // [P^T - I; 1^T] pi = [0; 1]
  Eigen::MatrixXd system(n + 1, n);
  system.topRows(n) = transition.transpose() - Eigen::MatrixXd::Identity(n, n);
  system.row(n).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  Eigen::VectorXd pi = system.colPivHouseholderQr().solve(rhs);
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();
  return MarkovMeasure(std::move(graph), std::move(pi), std::move(transition), std::move(words));
}

double MarkovMeasure::cylinder(std::span<const Vertex> word) const {
  if (word.empty()) return 1.0;
  if (word.front() >= graph_.size()) return 0.0;
  double mass = pi_(static_cast<Eigen::Index>(word.front()));
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (word[i + 1] >= graph_.size()) return 0.0;
    mass *= P_(static_cast<Eigen::Index>(word[i]), static_cast<Eigen::Index>(word[i + 1]));
  }
  return mass;
}

double MarkovMeasure::stationarity_residual() const {
  return (pi_.transpose() * P_ - pi_.transpose()).cwiseAbs().maxCoeff();
}

double entropy(const MarkovMeasure& m) {
  double h = 0.0;
  const auto& P = m.P();
  for (Eigen::Index a = 0; a < P.rows(); ++a) {
    double row = 0.0;
    for (Eigen::Index b = 0; b < P.cols(); ++b) {
      const double p = P(a, b);
      if (p > 0.0) row -= p * std::log(p);
    }
    h += m.pi()(a) * row;
  }
  return h;
}

}  // namespace thermoshift
