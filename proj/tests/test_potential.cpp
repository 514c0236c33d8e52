#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "systems.hpp"
#include "thermoshift/potential.hpp"

using namespace thermoshift;

namespace {

// phi(sigma^j w) for a word whose symbols sit at coordinates lo, lo+1, ...
double read(const LocallyConstantPotential& phi, const Path& w, long lo, long j) {
  Path window;
  for (long c = j + phi.left(); c <= j + phi.right(); ++c) window.push_back(w.at(static_cast<std::size_t>(c - lo)));
  return phi.table().at(window);
}

// sup (phi_n(u) - phi_n(v)) over admissible words on coordinates lo..hi that agree on
// the coordinates a..b.
double brute_variation(const LocallyConstantPotential& phi, std::size_t n_terms, long a, long b) {
  const long lo = std::min(a, phi.left());
  const long hi = std::max(b, phi.right() + static_cast<long>(n_terms) - 1);
  const auto words = oracles::paths(phi.graph(), static_cast<std::size_t>(hi - lo + 1));
  double best = 0.0;
  for (const auto& u : words) {
    for (const auto& v : words) {
      bool agree = true;
      for (long c = a; c <= b && agree; ++c) agree = u[static_cast<std::size_t>(c - lo)] == v[static_cast<std::size_t>(c - lo)];
      if (!agree) continue;
      double du = 0.0, dv = 0.0;
      for (std::size_t j = 0; j < n_terms; ++j) {
        du += read(phi, u, lo, static_cast<long>(j));
        dv += read(phi, v, lo, static_cast<long>(j));
      }
      best = std::max(best, du - dv);
    }
  }
  return best;
}

LocallyConstantPotential edge_potential(const DirectedGraph& g, std::map<std::string, double> values) {
  std::map<Path, double> table;
  for (const auto& [key, v] : values) table[{g.index(key.substr(0, 1)), g.index(key.substr(1, 1))}] = v;
  return LocallyConstantPotential(g, 0, 1, table);
}

}  // namespace

TEST_CASE("table validation") {
  const DirectedGraph g = systems::golden_mean();
  std::map<Path, double> missing = {{{0, 0}, 1.0}, {{0, 1}, 1.0}};
  CHECK_THROWS_AS(LocallyConstantPotential(g, 0, 1, missing), InputError);
  std::map<Path, double> extra = {{{0, 0}, 1.0}, {{0, 1}, 1.0}, {{1, 0}, 1.0}, {{1, 1}, 1.0}};
  CHECK_THROWS_AS(LocallyConstantPotential(g, 0, 1, extra), InputError);
  std::map<Path, double> ok = {{{0, 0}, 1.0}, {{0, 1}, 2.0}, {{1, 0}, 3.0}};
  CHECK_THROWS_AS(LocallyConstantPotential(g, 0, 1, ok, 1.5), InputError);
  CHECK_THROWS_AS(LocallyConstantPotential(g, 1, 0, ok), InputError);
  LocallyConstantPotential phi(g, 0, 1, ok, 0.5);
  CHECK(phi.sup() == 3.0);
  CHECK(phi.inf() == 1.0);
}

TEST_CASE("natural distance") {
  const DirectedGraph full = systems::full_shift(2);
  auto x = make_word(full, {"a", "b", "a", "a", "b"}, -2, Sidedness::two_sided);
  CHECK(natural_distance(x, x).value == 0.0);
  auto y0 = make_word(full, {"a", "b", "b", "a", "b"}, -2, Sidedness::two_sided);
  CHECK(natural_distance(x, y0).value == doctest::Approx(1.0));
  auto y2 = make_word(full, {"b", "b", "a", "a", "b"}, -2, Sidedness::two_sided);
  CHECK(natural_distance(x, y2).value == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  auto one = make_word(full, std::vector<std::string>{"a", "b"});
  CHECK_THROWS_AS(natural_distance(x, one), InputError);
}

TEST_CASE("var_n examples") {
  const DirectedGraph full = systems::full_shift(2);
  auto c = LocallyConstantPotential::constant(full, 3.0);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(var_n(c, n) == 0.0);
  auto phi = edge_potential(full, {{"aa", 0.0}, {"ab", 1.0}, {"ba", 0.0}, {"bb", 0.0}});
  CHECK(var_n(phi, 2) == 0.0);
  CHECK(var_n(phi, 1) == 1.0);
}

TEST_CASE("var_n agrees with brute force and is nonincreasing") {
  std::mt19937_64 rng(11);
  const std::vector<DirectedGraph> graphs = {systems::full_shift(2), systems::golden_mean(), systems::full_shift(3),
                                             systems::period_two()};
  for (const auto& g : graphs) {
    for (auto [l, r] : std::vector<std::pair<long, long>>{{0, 1}, {0, 2}, {-1, 1}, {-2, 0}, {1, 2}}) {
      auto phi = systems::random_potential(rng, g, l, r);
      double previous = INFINITY;
      for (std::size_t n = 1; n <= 4; ++n) {
        const long a = phi.one_sided() ? 0 : -static_cast<long>(n) + 1;
        const double expected = brute_variation(phi, 1, a, static_cast<long>(n) - 1);
        CAPTURE(l);
        CAPTURE(r);
        CAPTURE(n);
        CHECK(var_n(phi, n) == doctest::Approx(expected).epsilon(1e-14));
        CHECK(var_n(phi, n) <= previous);
        previous = var_n(phi, n);
      }
      CHECK(var_n(phi, static_cast<std::size_t>(std::max(std::abs(l), std::abs(r)) + 2)) == 0.0);
    }
  }
}

TEST_CASE("birkhoff sums") {
  const DirectedGraph golden = systems::golden_mean();
  auto c = LocallyConstantPotential::constant(golden, 0.25);
  CHECK(birkhoff_sum(c, make_word(golden, std::vector<std::string>{"a", "a", "b", "a", "a"}), 5) == doctest::Approx(1.25));

  auto phi = edge_potential(golden, {{"aa", 1.0}, {"ab", 2.0}, {"ba", 3.0}});
  auto abab = make_word(golden, std::vector<std::string>{"a", "b", "a", "b", "a"});
  CHECK(birkhoff_sum(phi, abab, 4) == 10.0);
  try {
    birkhoff_sum(phi, abab, 5);
    CHECK(false);
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("5") != std::string::npos);
  }

  // Log transition weights telescope to the log of the product along a cycle.
  const DirectedGraph full = systems::full_shift(2);
  auto logw = edge_potential(full, {{"aa", std::log(0.3)}, {"ab", std::log(0.7)}, {"ba", std::log(0.4)},
                                    {"bb", std::log(0.6)}});
  auto cycle = make_word(full, std::vector<std::string>{"a", "b", "b", "a"});
  CHECK(birkhoff_sum(logw, cycle, 3) == doctest::Approx(std::log(0.7 * 0.6 * 0.4)));

  // Cocycle identity.
  std::mt19937_64 rng(5);
  auto psi = systems::random_potential(rng, full, -1, 1);
  auto w = make_word(full, {"a", "b", "b", "a", "b", "a", "a", "b", "b"}, -1, Sidedness::two_sided);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = 1; m + n <= 7; ++m) {
      CHECK(birkhoff_sum(psi, w, n + m) ==
            doctest::Approx(birkhoff_sum(psi, w, n) + birkhoff_sum(psi, shift(w, static_cast<long>(n)), m)));
    }
  }
}

TEST_CASE("birkhoff potential matches pointwise sums") {
  std::mt19937_64 rng(3);
  const DirectedGraph g = systems::golden_mean();
  auto phi = systems::random_potential(rng, g, 0, 2);
  for (std::size_t n = 1; n <= 4; ++n) {
    auto sum = birkhoff_potential(phi, n);
    for (const auto& w : oracles::paths(g, sum.width())) {
      double direct = 0.0;
      for (std::size_t j = 0; j < n; ++j) direct += read(phi, w, 0, static_cast<long>(j));
      CHECK(sum.table().at(w) == doctest::Approx(direct));
    }
  }
}

TEST_CASE("variation inequality") {
  const DirectedGraph full = systems::full_shift(2);
  auto c = LocallyConstantPotential::constant(full, 1.0);
  auto cc = variation_inequality_check(c, 3, 2);
  CHECK(cc.lhs == 0.0);
  CHECK(cc.rhs == 0.0);

  std::mt19937_64 rng(13);
  auto edge = systems::random_potential(rng, full, 0, 1);
  auto beyond = variation_inequality_check(edge, 2, 3);
  CHECK(beyond.lhs == 0.0);
  CHECK(beyond.rhs == 0.0);

  auto e31 = variation_inequality_check(edge, 3, 1);
  CHECK(e31.lhs == doctest::Approx(brute_variation(edge, 3, 0, 3)).epsilon(1e-14));
  CHECK(e31.lhs <= e31.rhs);

  const std::vector<DirectedGraph> graphs = {systems::full_shift(2), systems::golden_mean(), systems::full_shift(3)};
  for (const auto& g : graphs) {
    for (auto [l, r] : std::vector<std::pair<long, long>>{{0, 1}, {0, 2}, {0, 3}}) {
      auto phi = systems::random_potential(rng, g, l, r);
      for (std::size_t n = 1; n <= 6; ++n) {
        for (std::size_t m = 1; m <= 6; ++m) {
          auto check = variation_inequality_check(phi, n, m);
          CHECK(check.lhs <= check.rhs + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("variation envelope") {
  const DirectedGraph full = systems::full_shift(2);
  std::mt19937_64 rng(17);
  auto phi = systems::random_potential(rng, full, 0, 3);
  CHECK_FALSE(variation_envelope(phi).has_value());
  LocallyConstantPotential with_theta(full, 0, 3, phi.table(), 0.5);
  auto C = variation_envelope(with_theta);
  REQUIRE(C.has_value());
  for (std::size_t n = 2; n <= 6; ++n) CHECK(var_n(with_theta, n) <= *C * std::pow(0.5, n) * (1 + 1e-12));
}

TEST_CASE("higher block recoding turns var_k into var_1") {
  std::mt19937_64 rng(19);
  const DirectedGraph g = systems::golden_mean();
  auto phi = systems::random_potential(rng, g, 0, 2);
  auto rec = higher_block(g, 2);
  std::map<Path, double> table;
  for (auto [a, b] : rec.graph.edges()) {
    Path w = rec.words[a];
    w.push_back(rec.words[b].back());
    table[{a, b}] = phi.table().at(w);
  }
  LocallyConstantPotential recoded(rec.graph, 0, 1, table);
  CHECK(var_n(recoded, 1) == doctest::Approx(var_n(phi, 2)));
}
