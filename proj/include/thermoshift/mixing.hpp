#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "thermoshift/gibbs.hpp"
#include "thermoshift/markov.hpp"

namespace thermoshift {

/// Largest admissible delta (1 - e^{-t} stays inside (t/2, t) below it with room to spare).
inline constexpr double kDeltaZero = 0.35;

/// 2 sinh(10 delta) + 4 delta
double weak_bernoulli_bound(double delta);

/// Partition into the 1-cylinders of v_prime plus one cell for the union of the rest.
struct CylinderPartition {
  std::vector<Vertex> singled;
  std::vector<std::size_t> cell_of;  // indexed by vertex
  std::size_t cells = 0;
};

/// Empty v_prime means the full 1-cylinder partition.
CylinderPartition make_partition(const DirectedGraph& g, const std::vector<Vertex>& v_prime);

/// sum_{A, B} |mu(A n B) - mu(A) mu(B)| over A in alpha_{-n}^0 and B in alpha_k^{k+n}
/// for the partition alpha generated by v_prime. Computed exactly; the windows
/// [-n, 0] and [k, k+n] are disjoint for every k >= 1.
double weak_bernoulli_value(const MarkovMeasure& mu, const CylinderPartition& alpha, std::size_t n,
                            std::size_t k);

struct WeakBernoulliReport {
  std::vector<Vertex> partition;  // v_prime (empty = full partition)
  std::map<std::pair<std::size_t, std::size_t>, double> table;  // (n, k) -> WB
  double delta = 0.0;
  double bound = 0.0;
  std::optional<std::size_t> K_delta;
};

/// WB(n, k) for 1 <= n <= n_max and 1 <= k <= k_max. Cells are independent and
/// are spread over `threads` workers; results do not depend on the thread count.
WeakBernoulliReport weak_bernoulli_statistic(const MarkovMeasure& mu, const std::vector<Vertex>& v_prime,
                                             std::size_t n_max, std::size_t k_max, std::size_t threads = 1);

struct KDelta {
  std::size_t K = 0;            // K(delta) = max K(c, c') + m
  std::size_t m = 1;            // m(delta)
  std::size_t max_pair_K = 0;   // max K(c, c')
  GibbsCertificate certificate; // S* and C*
  std::vector<Path> gamma;
  double gamma_mass = 0.0;
  double gamma_threshold = 0.0;  // exp(-delta / (2 C*^2))
  std::vector<Path> representatives;
};

/// S*: states by decreasing mass until their union exceeds 1 - delta.
std::vector<Vertex> choose_s_star(const MarkovMeasure& mu, double delta);

/// Runs the K(delta) construction for the measure's normalized potential.
/// Throws InputError when delta is outside (0, kDeltaZero) and NonConvergenceError
/// when no k <= 10^4 works (the measure is not mixing enough).
KDelta find_K_delta(const MarkovMeasure& mu, double delta, double gamma_mass = 0.0);

struct PairBound {
  double lhs = 0.0;  // |mu(A n B) - mu(A) mu(B)|
  double rhs = 0.0;  // 2 sinh(10 delta) mu(A) mu(B)
  bool holds() const { return lhs <= rhs; }
};

/// A = _{-n}[a_0..a_n], B = _k[b_0..b_n]; a_n and b_0 must lie in the certificate's S*.
PairBound step1_pair_bound(const MarkovMeasure& mu, const GibbsCertificate& cert, const Path& A,
                           const Path& B, double delta, std::size_t k);

}  // namespace thermoshift
