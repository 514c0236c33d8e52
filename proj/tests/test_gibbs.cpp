#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "systems.hpp"
#include "thermoshift/gibbs.hpp"
#include "thermoshift/rpf.hpp"

using namespace thermoshift;

namespace {

// i.i.d. measure with dyadic weights, so every cylinder is computed exactly.
MarkovMeasure dyadic_bernoulli() {
  const DirectedGraph g = systems::full_shift(2);
  Eigen::Vector2d pi(0.25, 0.75);
  Eigen::Matrix2d P;
  P << 0.25, 0.75, 0.25, 0.75;
  return MarkovMeasure(g, pi, P);
}

// sup_n var_{n+offset} of the n-th Birkhoff sum, n <= n_max, by direct word-pair enumeration.
double brute_distortion(const LocallyConstantPotential& phi, std::size_t offset, std::size_t n_max) {
  double best = 0.0;
  const auto r = static_cast<std::size_t>(phi.right());
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::size_t len = n + r;
    const std::size_t agree = std::min(n + offset, len);
    const auto words = oracles::paths(phi.graph(), len);
    std::vector<double> sums;
    for (const auto& w : words) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += phi.table().at(Path(w.begin() + static_cast<long>(j), w.begin() + static_cast<long>(j + r + 1)));
      sums.push_back(s);
    }
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t k = 0; k < words.size(); ++k)
        if (std::equal(words[i].begin(), words[i].begin() + static_cast<long>(agree), words[k].begin()))
          best = std::max(best, sums[i] - sums[k]);
  }
  return std::exp(best);
}

}  // namespace

TEST_CASE("product measures have ratio exactly one") {
  auto half = parry_measure(systems::full_shift(2)).first;
  auto cert = gibbs_ratio_bounds(half, {0, 1}, 5);
  CHECK(cert.observed_c_star == 1.0);
  CHECK(cert.min_ratio == 1.0);
  CHECK(cert.max_ratio == 1.0);
  CHECK(cert.holds);

  auto skewed = gibbs_ratio_bounds(dyadic_bernoulli(), {0, 1}, 5);
  CHECK(skewed.observed_c_star == 1.0);
  CHECK(skewed.holds);
}

TEST_CASE("golden mean Parry measure, S* = {a}") {
  const DirectedGraph g = systems::golden_mean();
  auto mu = parry_measure(g).first;
  auto cert = gibbs_ratio_bounds(mu, {g.index("a")}, 5);
  CHECK(cert.pairs_checked > 0);
  CHECK(cert.holds);
  CHECK(cert.observed_c_star <= cert.c_star);
  CHECK(cert.c_star >= std::max(cert.c_star_1, cert.c_star_2));
  CHECK(cert.m_const == 1.0);

  // Independent ratio sweep.
  const double C = cert.c_star;
  for (std::size_t la = 1; la <= 5; ++la) {
    for (const auto& a : oracles::paths(g, la)) {
      for (std::size_t lc = 1; lc <= 5; ++lc) {
        for (const auto& c : oracles::paths(g, lc)) {
          if (a.back() != g.index("a") || !g.has_edge(a.back(), c.front())) continue;
          Path ac = a;
          ac.insert(ac.end(), c.begin(), c.end());
          const double ratio = mu.cylinder(ac) / (mu.cylinder(a) * mu.cylinder(c));
          CHECK(ratio <= C);
          CHECK(ratio >= 1.0 / C);
        }
      }
    }
  }
}

TEST_CASE("one-symbol ratios are P(a,c)/pi(c)") {
  std::mt19937_64 rng(41);
  const DirectedGraph g = systems::random_transitive(rng, 4);
  auto mu = systems::equilibrium(g, systems::random_potential(rng, g, 0, 1));
  for (auto [a, c] : g.edges()) {
    const Path ac = {a, c};
    const auto ia = static_cast<Eigen::Index>(a), ic = static_cast<Eigen::Index>(c);
    CHECK(mu.cylinder(ac) / (mu.pi()(ia) * mu.pi()(ic)) == doctest::Approx(mu.P()(ia, ic) / mu.pi()(ic)).epsilon(1e-14));
  }
}

TEST_CASE("distortion constants") {
  const DirectedGraph g = systems::golden_mean();
  CHECK(distortion_constant(LocallyConstantPotential::constant(g, -0.3)) == 1.0);
  auto markov = parry_measure(g).first;
  CHECK(distortion_constant(normalized_potential(markov)) == 1.0);

  std::mt19937_64 rng(43);
  for (const auto& base : {systems::full_shift(2), systems::golden_mean()}) {
    auto phi = systems::random_potential(rng, base, 0, 2);
    auto sol = solve_rpf(base, phi);
    auto star = lift_edge_potential(sol.recoding.alphabet, base, sol.phi_star);
    CHECK(star.right() == 2);
    const double M = distortion_constant(star);
    CHECK(M == doctest::Approx(brute_distortion(star, 1, 6)).epsilon(1e-13));
    CHECK(M > 1.0);
    CHECK(boundary_distortion_constant(star) == doctest::Approx(brute_distortion(star, 0, 6)).epsilon(1e-13));
    // On the recoded alphabet the same potential has window (0,1), so M = 1 there.
    CHECK(distortion_constant(sol.phi_star) == 1.0);
  }
}

TEST_CASE("S* validation") {
  auto mu = parry_measure(systems::golden_mean()).first;
  CHECK_THROWS_AS(gibbs_ratio_bounds(mu, {7}, 3), InputError);
  CHECK_THROWS_AS(gibbs_ratio_bounds(mu, {}, 3), InputError);
}

TEST_CASE("random 4-state systems satisfy the certificate") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 3; ++i) {
    const DirectedGraph g = systems::random_transitive(rng, 4);
    auto mu = systems::equilibrium(g, systems::random_potential(rng, g, 0, 1));
    for (Vertex s = 0; s < g.size(); ++s) {
      auto cert = gibbs_ratio_bounds(mu, {s}, 5);
      CHECK(cert.holds);
      CHECK(cert.observed_c_star <= cert.c_star);
    }
  }
}

TEST_CASE("the var_{n+1} constant alone does not bound the ratios") {
  // For a Markov measure exp(sup var_{n+1} phi*_n) = 1, so the constants built from it
  // are max 1/mu(sigma[a]) and max 1/mu[a]. A transition with small probability into a
  // heavy state pushes P(a,c)/pi(c) below their reciprocal.
  std::mt19937_64 rng(53);
  int violations = 0;
  for (int i = 0; i < 20; ++i) {
    const DirectedGraph g = systems::random_transitive(rng, 4);
    auto mu = systems::equilibrium(g, systems::random_potential(rng, g, 0, 1, -2.0, 2.0));
    std::vector<Vertex> all(g.size());
    std::iota(all.begin(), all.end(), Vertex{0});
    auto literal = a_priori_certificate(mu, all, distortion_constant(normalized_potential(mu)));
    auto cert = gibbs_ratio_bounds(mu, all, 3);
    CHECK(cert.holds);
    if (cert.min_ratio < 1.0 / literal.c_star || cert.max_ratio > literal.c_star) ++violations;
  }
  MESSAGE("systems where the var_{n+1} constant fails: " << violations << " / 20");
  CHECK(violations > 0);
}
