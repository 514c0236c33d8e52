#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "systems.hpp"
#include "thermoshift/rotation.hpp"

using namespace thermoshift;

namespace {

double direct_sum(const LocallyConstantPotential& psi, const Path& w, std::size_t terms) {
  const auto width = psi.width();
  double total = 0.0;
  for (std::size_t j = 0; j < terms; ++j) total += psi.table().at(Path(w.begin() + static_cast<long>(j), w.begin() + static_cast<long>(j + width)));
  return total;
}

// log spectral radius of exp(psi) on the edges of g, psi of window (0,1).
double edge_pressure(const DirectedGraph& g, const LocallyConstantPotential& psi) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
  for (auto [a, b] : g.edges()) B(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = std::exp(psi.table().at(Path{a, b}));
  return std::log(oracles::perron(B).lambda);
}

std::vector<DirectedGraph> periodic_graphs() {
  return {systems::two_cycle(), systems::period_two(), systems::period_three(), systems::period_four(),
          systems::hexagon_even_chord(), systems::four_cycle()};
}

}  // namespace

TEST_CASE("mixing shifts have a trivial factor") {
  std::mt19937_64 rng(81);
  const DirectedGraph g = systems::random_transitive(rng, 4);
  auto mu = systems::equilibrium(g, systems::random_potential(rng, g, 0, 1));
  auto rf = build_rotation_factor(g, mu);
  CHECK(rf.p == 1);
  REQUIRE(rf.mu_i.size() == 1);
  CHECK(rf.class_mass[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t len = 1; len <= 4; ++len)
    for (const auto& w : oracles::paths(g, len))
      CHECK(conditioned_cylinder(rf, 0, w) == doctest::Approx(mu.cylinder(w)).epsilon(1e-13));
}

TEST_CASE("2-cycle") {
  const DirectedGraph g = systems::two_cycle();
  auto mu = systems::parry(g);
  auto rf = build_rotation_factor(g, mu);
  CHECK(rf.p == 2);
  for (double m : rf.class_mass) CHECK(m == doctest::Approx(0.5).epsilon(1e-14));
  for (const auto& m : rf.mu_i) {
    CHECK(m.graph().size() == 1);
    CHECK(entropy(m) == 0.0);
  }
  auto ent = entropy_identity_check(rf, mu);
  CHECK(ent.rhs == doctest::Approx(0.0));
}

TEST_CASE("period-2 example: mu_0 is Bernoulli(1/2, 1/2)") {
  const DirectedGraph g = systems::period_two();
  auto mu = systems::parry(g);
  auto rf = build_rotation_factor(g, mu);
  REQUIRE(rf.p == 2);
  CHECK(rf.decomposition.classes[0] == std::vector<Vertex>{g.index("a")});
  const auto& m0 = rf.mu_i[0];
  REQUIRE(m0.graph().size() == 2);
  for (Eigen::Index a = 0; a < 2; ++a) {
    CHECK(m0.pi()(a) == doctest::Approx(0.5).epsilon(1e-13));
    for (Eigen::Index b = 0; b < 2; ++b) CHECK(m0.P()(a, b) == doctest::Approx(0.5).epsilon(1e-13));
  }
  CHECK(entropy(m0) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  auto ent = entropy_identity_check(rf, mu);
  for (double lhs : ent.lhs) CHECK(lhs == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(ent.rhs == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("conditioned measures match mu(. | X_i)") {
  std::mt19937_64 rng(83);
  for (const auto& g : periodic_graphs()) {
    auto mu = systems::equilibrium(g, systems::random_potential(rng, g, 0, 1));
    auto rf = build_rotation_factor(g, mu);
    CHECK(rf.p == period(g));
    for (std::size_t i = 0; i < rf.p; ++i) {
      CHECK(rf.class_mass[i] == doctest::Approx(1.0 / static_cast<double>(rf.p)).epsilon(1e-12));
      for (std::size_t len = 1; len <= 6; ++len) {
        for (const auto& w : oracles::paths(g, len)) {
          const double expected = rf.decomposition.class_of[w[0]] == i ? mu.cylinder(w) / rf.class_mass[i] : 0.0;
          CHECK(conditioned_cylinder(rf, i, w) == doctest::Approx(expected).epsilon(1e-12));
        }
      }
      // Cylinders of the power graph are cylinders of the base word they spell.
      const auto& pg = rf.power_graphs[i];
      for (const auto& blocks : oracles::paths(pg.graph, 2)) {
        Path spelled;
        for (Vertex v : blocks) spelled.insert(spelled.end(), pg.words[v].begin(), pg.words[v].end());
        CHECK(rf.mu_i[i].cylinder(blocks) == doctest::Approx(mu.cylinder(spelled) / rf.class_mass[i]).epsilon(1e-12));
      }
      CHECK(rf.mu_i[i].stationarity_residual() < 1e-13);
    }
    // mu = sum_i mu(X_i) mu_i.
    for (const auto& w : oracles::paths(g, 5)) {
      double total = 0.0;
      for (std::size_t i = 0; i < rf.p; ++i) total += rf.class_mass[i] * conditioned_cylinder(rf, i, w);
      CHECK(total == doctest::Approx(mu.cylinder(w)).epsilon(1e-12));
    }
  }
}

TEST_CASE("entropy identity h_{mu_i}(sigma^p) = p h_mu(sigma)") {
  std::mt19937_64 rng(89);
  for (const auto& g : periodic_graphs()) {
    for (auto [l, r] : std::vector<std::pair<long, long>>{{0, 1}, {0, 2}}) {
      auto mu = systems::equilibrium(g, systems::random_potential(rng, g, l, r));
      auto rf = build_rotation_factor(mu.graph(), mu);
      auto ent = entropy_identity_check(rf, mu);
      CHECK(ent.rhs == doctest::Approx(static_cast<double>(rf.p) * oracles::markov_entropy(mu.pi(), mu.P())).epsilon(1e-12));
      for (double lhs : ent.lhs) CHECK(lhs == doctest::Approx(ent.rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("power potential is the p-fold Birkhoff sum") {
  std::mt19937_64 rng(97);
  for (const auto& g : periodic_graphs()) {
    const auto dec = spectral_decomposition(g);
    for (auto [l, r] : std::vector<std::pair<long, long>>{{0, 0}, {0, 1}, {0, 2}, {0, 3}}) {
      auto psi = systems::random_potential(rng, g, l, r);
      for (std::size_t i = 0; i < dec.period; ++i) {
        auto pg = power_graph(g, dec, i);
        auto psi_p = power_potential(g, dec, pg, psi);
        CHECK(psi_p.left() == 0);
        for (const auto& [blocks, value] : psi_p.table()) {
          Path spelled;
          for (Vertex v : blocks) spelled.insert(spelled.end(), pg.words[v].begin(), pg.words[v].end());
          CHECK(value == doctest::Approx(direct_sum(psi, spelled, dec.period)).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("P(psi_p on sigma^p|X_i) = p P(psi)") {
  std::mt19937_64 rng(101);
  for (const auto& g : periodic_graphs()) {
    auto psi = systems::random_potential(rng, g, 0, 1);
    auto check = power_potential_pressure_check(g, psi);
    const double p = static_cast<double>(period(g));
    CHECK(check.p_times == doctest::Approx(p * edge_pressure(g, psi)).epsilon(1e-11));
    REQUIRE(check.power.size() == period(g));
    for (double value : check.power) CHECK(value == doctest::Approx(check.p_times).epsilon(1e-10));

    auto wide = systems::random_potential(rng, g, 0, 3);
    auto wide_check = power_potential_pressure_check(g, wide);
    for (double value : wide_check.power) CHECK(value == doctest::Approx(wide_check.p_times).epsilon(1e-10));
  }
}

TEST_CASE("product structure witness") {
  std::mt19937_64 rng(103);
  for (const auto& g : periodic_graphs()) {
    auto mu = systems::equilibrium(g, systems::random_potential(rng, g, 0, 1));
    auto rf = build_rotation_factor(g, mu);
    auto w = product_structure_witness(rf, mu, 6);
    CHECK(w.holds);
    CHECK(w.index_process);
    CHECK(w.words_checked > 0);
    CHECK(w.pushforward_error <= 1e-12);
    CHECK(w.shift_mass_error <= 1e-12);
    CHECK(w.return_entropy == doctest::Approx(w.expected_entropy).epsilon(1e-9));
  }
}

TEST_CASE("errors") {
  const DirectedGraph loops({"a", "b"}, {{"a", "a"}, {"b", "b"}});
  MarkovMeasure split(loops, Eigen::Vector2d(0.5, 0.5), Eigen::Matrix2d::Identity());
  CHECK_THROWS_AS(build_rotation_factor(loops, split), PreconditionError);
  CHECK_THROWS_AS(build_rotation_factor(systems::golden_mean(), systems::parry(systems::full_shift(2))), InputError);
}
