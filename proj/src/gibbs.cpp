#include "thermoshift/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermoshift/rpf.hpp"

namespace thermoshift {

// The variations stabilize once n exceeds the window length, so a few extra n are enough.
double sup_birkhoff_variation(const LocallyConstantPotential& phi, std::size_t offset) {
  if (!phi.one_sided()) throw PreconditionError("distortion constants need a one-sided potential");
  const auto horizon = static_cast<std::size_t>(phi.right()) + 2;
  double best = 0.0;
  for (std::size_t n = 1; n <= horizon; ++n) {
    best = std::max(best, var_n(birkhoff_potential(phi, n), n + offset, VariationKind::one_sided));
  }
  return best;
}

double distortion_constant(const LocallyConstantPotential& phi_star) {
  return std::exp(sup_birkhoff_variation(phi_star, 1));
}

double boundary_distortion_constant(const LocallyConstantPotential& phi_star) {
  return std::exp(sup_birkhoff_variation(phi_star, 0));
}

GibbsCertificate a_priori_certificate(const MarkovMeasure& mu, std::vector<Vertex> s_star, double M) {
  if (s_star.empty()) throw InputError("S* must be nonempty");
  const DirectedGraph& g = mu.graph();
  GibbsCertificate cert;
  for (Vertex a : s_star) {
    if (a >= g.size()) throw InputError("S* contains an unknown vertex");
    double image = 0.0;  // mu(sigma[a]) = mass of the successors of a
    for (Vertex b : g.successors(a)) image += mu.pi()(static_cast<Eigen::Index>(b));
    cert.c_star_1 = std::max(cert.c_star_1, M / image);
    cert.c_star_2 = std::max(cert.c_star_2, M / mu.pi()(static_cast<Eigen::Index>(a)));
  }
  cert.s_star = std::move(s_star);
  cert.boundary_distortion = M;
  cert.c_star = std::max(cert.c_star_1, cert.c_star_2);
  return cert;
}

GibbsCertificate gibbs_ratio_bounds(const MarkovMeasure& mu, const std::vector<Vertex>& s_star,
                                    std::size_t max_len) {
  if (max_len == 0) throw InputError("max_len must be at least 1");
  const auto phi_star = normalized_potential(mu);
  GibbsCertificate cert = a_priori_certificate(mu, s_star, boundary_distortion_constant(phi_star));
  cert.m_const = distortion_constant(phi_star);

  const DirectedGraph& g = mu.graph();
  std::vector<bool> in_s(g.size(), false);
  for (Vertex v : s_star) in_s[v] = true;

  std::vector<Path> words;
  std::vector<double> mass;
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (auto& w : g.admissible_words(len)) {
      mass.push_back(mu.cylinder(w));
      words.push_back(std::move(w));
    }
  }

  cert.min_ratio = std::numeric_limits<double>::infinity();
  cert.max_ratio = 0.0;
  double worst = 0.0;
  auto consider = [&](std::size_t ia, std::size_t ic, int kind) {
    const Path& a = words[ia];
    const Path& c = words[ic];
    Path joined = kind == 1 ? a : c;
    const Path& tail = kind == 1 ? c : a;
    joined.insert(joined.end(), tail.begin(), tail.end());
    const double ratio = mu.cylinder(joined) / (mass[ia] * mass[ic]);
    ++cert.pairs_checked;
    cert.min_ratio = std::min(cert.min_ratio, ratio);
    cert.max_ratio = std::max(cert.max_ratio, ratio);
    const double extremity = std::max(ratio, 1.0 / ratio);
    if (extremity > worst) {
      worst = extremity;
      cert.worst_pair = CylinderPair{a, c, kind, ratio};
    }
  };
  for (std::size_t ia = 0; ia < words.size(); ++ia) {
    if (!(mass[ia] > 0.0)) continue;
    const Path& a = words[ia];
    for (std::size_t ic = 0; ic < words.size(); ++ic) {
      if (!(mass[ic] > 0.0)) continue;
      const Path& c = words[ic];
      if (in_s[a.back()] && g.has_edge(a.back(), c.front())) consider(ia, ic, 1);
      if (in_s[a.front()] && g.has_edge(c.back(), a.front())) consider(ia, ic, 2);
    }
  }
  if (cert.pairs_checked == 0) {
    cert.min_ratio = cert.max_ratio = 1.0;
  }
  cert.observed_c_star = std::max(cert.max_ratio, 1.0 / cert.min_ratio);
  cert.holds = cert.max_ratio <= cert.c_star && cert.min_ratio >= 1.0 / cert.c_star;
  return cert;
}

}  // namespace thermoshift
