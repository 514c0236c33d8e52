#pragma once

#include <span>
#include <vector>

#include "thermoshift/markov.hpp"
#include "thermoshift/potential.hpp"

namespace thermoshift {

/// The rotation factor x -> class_of(x_0) of a transitive shift and the
/// conditioned measures mu_i = mu(. | X_i) presented on the power graphs.
struct RotationFactor {
  std::size_t p = 1;
  SpectralDecomposition decomposition;
  std::vector<double> class_mass;         // mu(X_i)
  std::vector<BlockGraph> power_graphs;   // power_graph(g, i)
  std::vector<MarkovMeasure> mu_i;        // sigma^p-invariant Markov measure on power_graphs[i]
};

/// mu must live on g; g must be transitive.
RotationFactor build_rotation_factor(const DirectedGraph& g, const MarkovMeasure& mu);

/// mu_i[w] for a word w of the base graph at coordinate 0, evaluated through the
/// power graph by summing over the p-blocks extending w.
double conditioned_cylinder(const RotationFactor& rf, std::size_t i, std::span<const Vertex> word);

struct EntropyIdentity {
  std::vector<double> lhs;  // h_{mu_i}(sigma^p)
  double rhs = 0.0;         // p h_mu(sigma)
};

EntropyIdentity entropy_identity_check(const RotationFactor& rf, const MarkovMeasure& mu);

struct PowerPressureCheck {
  double p_times = 0.0;        // p P_G(psi)
  std::vector<double> power;   // P_G(psi_p^i) on power_graph(g, i)
};

/// psi_p = psi + ... + psi o sigma^{p-1} as a potential on each power graph.
/// Block coordinates 0..t cover the p + r - 1 base coordinates psi_p reads.
LocallyConstantPotential power_potential(const DirectedGraph& g, const SpectralDecomposition& dec,
                                         const BlockGraph& power,
                                         const LocallyConstantPotential& psi);

/// Requires g transitive and psi one-sided.
PowerPressureCheck power_potential_pressure_check(const DirectedGraph& g, const LocallyConstantPotential& psi);

struct ProductWitness {
  std::size_t words_checked = 0;
  bool index_process = true;          // i(sigma^t x) = i(x) + t mod p on admissible words
  std::vector<double> pushforward;    // mu(X_i)
  double pushforward_error = 0.0;     // max |mu(X_i) - 1/p|
  double shift_mass_error = 0.0;      // max |mu(X_i n sigma^{-1} X_{i+1}) - mu(X_i)|
  double return_entropy = 0.0;        // h_{mu_0}(sigma^p)
  double expected_entropy = 0.0;      // p h_mu(sigma)
  bool holds = true;
};

/// Index process on words up to max_len, uniform pushforward within 1e-12,
/// return entropy within 1e-9.
ProductWitness product_structure_witness(const RotationFactor& rf, const MarkovMeasure& mu,
                                         std::size_t max_len = 8);

}  // namespace thermoshift
