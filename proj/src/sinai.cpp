#include "thermoshift/sinai.hpp"

#include <algorithm>
#include <cmath>

namespace thermoshift {

std::vector<Path> choose_pasts(const DirectedGraph& g, std::size_t depth) {
  std::vector<Path> pasts(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    Path reversed;
    Vertex current = v;
    for (std::size_t step = 0; step < depth; ++step) {
      auto preds = g.predecessors(current);
      current = *std::min_element(preds.begin(), preds.end(),
                                  [&g](Vertex a, Vertex b) { return g.id(a) < g.id(b); });
      reversed.push_back(current);
    }
    pasts[v] = Path(reversed.rbegin(), reversed.rend());
  }
  return pasts;
}

bool certify_one_sided(const LocallyConstantPotential& phi, double tolerance) {
  if (phi.one_sided()) return true;
  const auto skip = static_cast<std::size_t>(std::min(-phi.left(), static_cast<long>(phi.width())));
  std::map<Path, std::pair<double, double>> range;
  for (const auto& [word, v] : phi.table()) {
    Path future(word.begin() + static_cast<long>(skip), word.end());
    auto [it, fresh] = range.try_emplace(std::move(future), v, v);
    if (!fresh) {
      it->second.first = std::min(it->second.first, v);
      it->second.second = std::max(it->second.second, v);
    }
  }
  return std::all_of(range.begin(), range.end(),
                     [tolerance](const auto& entry) { return entry.second.second - entry.second.first <= tolerance; });
}

SinaiReduction sinai_reduce(const LocallyConstantPotential& psi) {
  const DirectedGraph& g = psi.graph();
  if (psi.one_sided()) {
    return SinaiReduction{psi, LocallyConstantPotential::constant(g, 0.0), {}};
  }
  const long depth = -psi.left();
  const long r = psi.right();
  auto past = choose_pasts(g, static_cast<std::size_t>(depth));

  // Glue the chosen past of x_0 in front of a word starting at coordinate 0.
  auto with_past = [&past](std::span<const Vertex> future) {
    Path glued = past[future.front()];
    glued.insert(glued.end(), future.begin(), future.end());
    return glued;
  };

  // u(x) = sum_{n<depth} psi(sigma^n r(x)) - psi(sigma^n x); reads coordinates -depth..depth-1+r.
  const long u_lo = -depth;
  const long u_hi = depth - 1 + r;
  std::map<Path, double> u_table;
  for (auto& word : g.admissible_words(static_cast<std::size_t>(u_hi - u_lo + 1))) {
    Word x{word, u_lo, Sidedness::two_sided};
    Word rx{with_past(std::span<const Vertex>(word).subspan(static_cast<std::size_t>(depth))), u_lo,
            Sidedness::two_sided};
    double total = 0.0;
    for (long n = 0; n < depth; ++n) total += psi.at(rx, n) - psi.at(x, n);
    u_table.emplace(std::move(word), total);
  }
  LocallyConstantPotential u(g, u_lo, u_hi, std::move(u_table), psi.declared_theta());

  auto full = linear_combination({{1.0, psi}, {1.0, u}, {-1.0, shifted(u, 1)}});
  double scale = 1.0;
  for (const auto& [w, v] : full.table()) scale = std::max(scale, std::abs(v));
  if (!certify_one_sided(full, 1e-9 * scale)) {
    throw std::logic_error("sinai_reduce: cohomologous potential is not one-sided");
  }

  std::map<Path, double> phi_table;
  for (auto& word : g.admissible_words(static_cast<std::size_t>(full.right() + 1))) {
    const double v = full.value(with_past(word));
    phi_table.emplace(std::move(word), v);
  }
  LocallyConstantPotential phi(g, 0, full.right(), std::move(phi_table), psi.declared_theta());
  return SinaiReduction{std::move(phi), std::move(u), std::move(past)};
}

}  // namespace thermoshift
