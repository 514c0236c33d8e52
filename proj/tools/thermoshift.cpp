// thermoshift: command-line front end.
//
//   thermoshift analyze --graph g.json
//   thermoshift equilibrium --graph g.json --potential phi.json --out report.json
//   thermoshift mixing --graph g.json --delta 0.1 --n-max 4 --k-max 20
//   thermoshift truncate --manifest sequence.json
#include <cstdlib>
#include <iostream>
#include <utility>

#include "CLI11.hpp"
#include "thermoshift/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Thermodynamic formalism on finite Markov shifts"};
  app.require_subcommand(1, 1);

  thermoshift::RunConfig config;
  std::string graph, potential, manifest, delta, n_max, k_max, max_len, s_star, v_prime, out, format;

  const std::pair<const char*, const char*> commands[] = {
      {"analyze", "transitivity, period, spectral classes, components"},
      {"reduce", "one-sided potential cohomologous to a two-sided one"},
      {"equilibrium", "Perron data, pressure and equilibrium Markov measure"},
      {"gibbs-check", "cylinder ratio bounds against C*"},
      {"mixing", "weak Bernoulli table WB(n, k) and K(delta)"},
      {"factorize", "rotation factor of a periodic shift"},
      {"truncate", "pressures along a nested graph sequence"}};
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--graph", graph, "graph JSON");
    sub->add_option("--potential", potential, "potential JSON");
    sub->add_option("--manifest", manifest, "truncation manifest JSON");
    sub->add_option("--delta", delta, "mixing tolerance (default 0.1)");
    sub->add_option("--n-max", n_max, "largest block length n (default 4)");
    sub->add_option("--k-max", k_max, "largest gap k (default 20)");
    sub->add_option("--max-len", max_len, "longest cylinder in gibbs-check (default 5)");
    sub->add_option("--s-star", s_star, "comma-separated vertices");
    sub->add_option("--v-prime", v_prime, "comma-separated vertices");
    sub->add_option("--out", out, "report path (default stdout)");
    sub->add_option("--format", format, "json or csv");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : thermoshift::kInputError;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (!graph.empty()) config.graph_path = graph;
  if (!potential.empty()) config.potential_path = potential;
  if (!manifest.empty()) config.manifest_path = manifest;
  const std::pair<const char*, const std::string*> params[] = {
      {"delta", &delta}, {"n_max", &n_max},   {"k_max", &k_max},         {"max_len", &max_len},
      {"s_star", &s_star}, {"v_prime", &v_prime}, {"output_path", &out}, {"format", &format}};
  for (const auto& [key, value] : params) {
    if (!value->empty()) config.params[key] = *value;
  }

  if (const char* env = std::getenv("THERMOSHIFT_THREADS")) {
    char* end = nullptr;
    const long threads = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || threads < 1) {
      std::cerr << "error: THERMOSHIFT_THREADS must be a positive integer\n";
      return thermoshift::kInputError;
    }
    config.threads = static_cast<std::size_t>(threads);
  }

  return thermoshift::run(config, std::cout, std::cerr);
}
