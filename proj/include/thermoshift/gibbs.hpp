#pragma once

#include <vector>

#include "thermoshift/markov.hpp"
#include "thermoshift/potential.hpp"

namespace thermoshift {

/// One concatenation tested against the product bound.
struct CylinderPair {
  Path a;
  Path c;
  int kind = 1;  // 1: mu[a,c] with last(a) in S*; 2: mu[c,a] with first(a) in S*
  double ratio = 1.0;
};

struct GibbsCertificate {
  std::vector<Vertex> s_star;
  /// exp(sup_n var_{n+1} phi*_n), the distortion constant as usually written.
  double m_const = 1.0;
  /// exp(sup_n var_n phi*_n): the distortion over all continuations of an n-word,
  /// which is what bounds exp(phi*_n(a, y)) for y ranging over sigma[last(a)].
  double boundary_distortion = 1.0;
  double c_star_1 = 1.0;  // max M / mu(sigma[a]) over S*
  double c_star_2 = 1.0;  // max M / mu[a] over S*
  double c_star = 1.0;
  double observed_c_star = 1.0;  // max(max ratio, 1 / min ratio)
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  CylinderPair worst_pair;
  std::size_t pairs_checked = 0;
  bool holds = true;  // every ratio lies in [1/c_star, c_star]
};

/// A-priori constants (no enumeration) for S* using distortion `M`.
GibbsCertificate a_priori_certificate(const MarkovMeasure& mu, std::vector<Vertex> s_star, double M);

/// Enumerates every admissible concatenation with |a|, |c| <= max_len that meets
/// the S* boundary condition and compares mu[a,c] / (mu[a] mu[c]) with C*.
/// C* is formed with the boundary distortion of the measure's normalized potential.
GibbsCertificate gibbs_ratio_bounds(const MarkovMeasure& mu, const std::vector<Vertex>& s_star,
                                    std::size_t max_len);

/// sup_{n>=1} var_{n+offset}(phi_n) for a one-sided finite-range phi.
double sup_birkhoff_variation(const LocallyConstantPotential& phi, std::size_t offset);

/// exp(sup_{n>=1} var_{n+1} phi*_n) for a one-sided finite-range phi*.
double distortion_constant(const LocallyConstantPotential& phi_star);

/// exp(sup_{n>=1} var_n phi*_n).
double boundary_distortion_constant(const LocallyConstantPotential& phi_star);

}  // namespace thermoshift
