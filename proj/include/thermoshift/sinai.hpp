#pragma once

#include <vector>

#include "thermoshift/potential.hpp"

namespace thermoshift {

/// A two-sided potential psi rewritten as phi = psi + u - u o sigma with phi one-sided.
struct SinaiReduction {
  LocallyConstantPotential phi;  // window (0, r')
  LocallyConstantPotential u;    // bounded transfer function
  /// past[v] is the fixed admissible past (coordinates -depth..-1) glued in front
  /// of any point starting at v. Empty when no reduction was needed.
  std::vector<Path> past;
};

/// Deterministic pasts: step to the predecessor with the least identifier, repeatedly.
std::vector<Path> choose_pasts(const DirectedGraph& g, std::size_t depth);

/// Finite-range Sinai reduction. One-sided input returns phi = psi, u = 0.
SinaiReduction sinai_reduce(const LocallyConstantPotential& psi);

/// True iff the value never depends on coordinates < 0 (up to `tolerance`).
bool certify_one_sided(const LocallyConstantPotential& phi, double tolerance = 0.0);

}  // namespace thermoshift
