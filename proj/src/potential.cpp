#include "thermoshift/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace thermoshift {

Word make_word(const DirectedGraph& g, Path symbols, long anchor, Sidedness sidedness) {
  if (symbols.empty()) throw InputError("word must be nonempty");
  if (sidedness == Sidedness::one_sided && anchor != 0) {
    throw InputError("one-sided words are anchored at coordinate 0");
  }
  if (!g.is_admissible(symbols)) throw InputError("word is not admissible in the graph");
  return Word{std::move(symbols), anchor, sidedness};
}

Word make_word(const DirectedGraph& g, const std::vector<std::string>& ids, long anchor,
               Sidedness sidedness) {
  Path symbols;
  symbols.reserve(ids.size());
  for (const auto& id : ids) symbols.push_back(g.index(id));
  return make_word(g, std::move(symbols), anchor, sidedness);
}

Word shift(const Word& w, long n) {
  if (w.sidedness == Sidedness::two_sided) return Word{w.symbols, w.anchor - n, w.sidedness};
  if (n < 0 || static_cast<std::size_t>(n) >= w.symbols.size()) {
    throw InputError("cannot shift a one-sided word past its last symbol");
  }
  return Word{Path(w.symbols.begin() + n, w.symbols.end()), 0, w.sidedness};
}

Distance natural_distance(const Word& x, const Word& y) {
  if (x.sidedness != y.sidedness) throw InputError("natural_distance: words differ in sidedness");
  const long lo = std::max(x.first(), y.first());
  const long hi = std::min(x.last(), y.last());
  Distance d;
  d.horizon = (lo <= 0 && hi >= 0) ? std::min(-lo, hi) : -1;
  if (x.sidedness == Sidedness::one_sided) d.horizon = hi;
  long best = std::numeric_limits<long>::max();
  for (long i = lo; i <= hi; ++i) {
    if (x.at(i) != y.at(i)) best = std::min(best, std::labs(i));
  }
  d.value = best == std::numeric_limits<long>::max() ? 0.0 : std::exp(-static_cast<double>(best));
  return d;
}

LocallyConstantPotential::LocallyConstantPotential(DirectedGraph graph, long left, long right,
                                                   std::map<Path, double> table,
                                                   std::optional<double> declared_theta)
    : graph_(std::move(graph)), left_(left), right_(right), table_(std::move(table)), theta_(declared_theta) {
  if (left_ > right_) throw InputError("potential window must satisfy left <= right");
  if (theta_ && !(*theta_ > 0.0 && *theta_ < 1.0)) throw InputError("declared theta must lie in (0,1)");
  for (const auto& [word, v] : table_) {
    if (word.size() != width() || !graph_.is_admissible(word)) {
      throw InputError("potential table has an entry for an inadmissible window word");
    }
    if (!std::isfinite(v)) throw InputError("potential values must be finite");
  }
  for (const auto& word : graph_.admissible_words(width())) {
    if (!table_.count(word)) {
      throw InputError("potential table is missing the window word '" + encode_path(graph_, word) + "'");
    }
  }
}

LocallyConstantPotential LocallyConstantPotential::constant(DirectedGraph graph, double value) {
  std::map<Path, double> table;
  for (Vertex v = 0; v < graph.size(); ++v) table[{v}] = value;
  return LocallyConstantPotential(std::move(graph), 0, 0, std::move(table));
}

double LocallyConstantPotential::value(std::span<const Vertex> window) const {
  auto it = table_.find(Path(window.begin(), window.end()));
  if (it == table_.end()) throw InputError("potential evaluated on an inadmissible window word");
  return it->second;
}

double LocallyConstantPotential::at(const Word& w, long j) const {
  if (!w.covers(j + left_) || !w.covers(j + right_)) {
    throw InputError("word does not determine coordinates " + std::to_string(j + left_) + ".." +
                     std::to_string(j + right_));
  }
  const auto offset = static_cast<std::size_t>(j + left_ - w.anchor);
  return value(std::span<const Vertex>(w.symbols).subspan(offset, width()));
}

double LocallyConstantPotential::sup() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [word, v] : table_) best = std::max(best, v);
  return best;
}

double LocallyConstantPotential::inf() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [word, v] : table_) best = std::min(best, v);
  return best;
}

namespace {

LocallyConstantPotential combine_on(const std::vector<std::pair<double, LocallyConstantPotential>>& terms,
                                    long lo, long hi) {
  const DirectedGraph& g = terms.front().second.graph();
  std::map<Path, double> table;
  for (auto& word : g.admissible_words(static_cast<std::size_t>(hi - lo + 1))) {
    double total = 0.0;
    for (const auto& [c, phi] : terms) {
      const auto offset = static_cast<std::size_t>(phi.left() - lo);
      total += c * phi.value(std::span<const Vertex>(word).subspan(offset, phi.width()));
    }
    table.emplace(std::move(word), total);
  }
  return LocallyConstantPotential(g, lo, hi, std::move(table), terms.front().second.declared_theta());
}

}  // namespace

LocallyConstantPotential linear_combination(
    const std::vector<std::pair<double, LocallyConstantPotential>>& terms) {
  if (terms.empty()) throw InputError("linear_combination needs at least one term");
  long lo = terms.front().second.left();
  long hi = terms.front().second.right();
  for (const auto& [c, phi] : terms) {
    if (!(phi.graph() == terms.front().second.graph())) {
      throw InputError("linear_combination: potentials live on different graphs");
    }
    lo = std::min(lo, phi.left());
    hi = std::max(hi, phi.right());
  }
  return combine_on(terms, lo, hi);
}

LocallyConstantPotential shifted(const LocallyConstantPotential& phi, long s) {
  return LocallyConstantPotential(phi.graph(), phi.left() + s, phi.right() + s, phi.table(),
                                  phi.declared_theta());
}

LocallyConstantPotential widen(const LocallyConstantPotential& phi, long left, long right) {
  if (left > phi.left() || right < phi.right()) throw InputError("widen: new window must contain the old one");
  return combine_on({{1.0, phi}}, left, right);
}

LocallyConstantPotential restrict_to(const LocallyConstantPotential& phi, const DirectedGraph& sub) {
  if (!is_subgraph(sub, phi.graph())) throw InputError("restrict_to: not a subgraph of the potential's graph");
  std::map<Path, double> table;
  for (auto& word : sub.admissible_words(phi.width())) {
    Path outer;
    for (Vertex v : word) outer.push_back(phi.graph().index(sub.id(v)));
    table.emplace(std::move(word), phi.value(outer));
  }
  return LocallyConstantPotential(sub, phi.left(), phi.right(), std::move(table), phi.declared_theta());
}

LocallyConstantPotential birkhoff_potential(const LocallyConstantPotential& phi, std::size_t n) {
  if (n == 0) throw InputError("birkhoff_potential: n must be at least 1");
  std::vector<std::pair<double, LocallyConstantPotential>> terms;
  for (std::size_t j = 0; j < n; ++j) terms.emplace_back(1.0, shifted(phi, static_cast<long>(j)));
  return linear_combination(terms);
}

double var_n(const LocallyConstantPotential& phi, std::size_t n, VariationKind kind) {
  if (n == 0) throw InputError("var_n: n must be at least 1");
  if (kind == VariationKind::automatic) {
    kind = phi.one_sided() ? VariationKind::one_sided : VariationKind::two_sided;
  }
  const long reach = static_cast<long>(n) - 1;
  long agree_lo = kind == VariationKind::one_sided ? 0 : -reach;
  long agree_hi = reach;
  const long lo = phi.left();
  const long hi = phi.right();
  if (agree_lo <= lo && agree_hi >= hi) return 0.0;

  // Agreement outside the window only matters through the agreed coordinate
  // nearest to it; the graph is pruned so any common part extends freely.
  if (agree_hi < lo) {
    agree_lo = agree_hi;
  } else if (agree_lo > hi) {
    agree_hi = agree_lo;
  } else {
    agree_lo = std::max(agree_lo, lo);
    agree_hi = std::min(agree_hi, hi);
  }
  const long hull_lo = std::min(lo, agree_lo);
  const long hull_hi = std::max(hi, agree_hi);

  std::map<Path, std::pair<double, double>> range;
  for (const auto& word : phi.graph().admissible_words(static_cast<std::size_t>(hull_hi - hull_lo + 1))) {
    Path key(word.begin() + (agree_lo - hull_lo), word.begin() + (agree_hi - hull_lo + 1));
    const double v = phi.value(std::span<const Vertex>(word).subspan(static_cast<std::size_t>(lo - hull_lo),
                                                                      phi.width()));
    auto [it, fresh] = range.try_emplace(std::move(key), v, v);
    if (!fresh) {
      it->second.first = std::min(it->second.first, v);
      it->second.second = std::max(it->second.second, v);
    }
  }
  double best = 0.0;
  for (const auto& [key, mm] : range) best = std::max(best, mm.second - mm.first);
  return best;
}

double birkhoff_sum(const LocallyConstantPotential& phi, const Word& w, std::size_t n) {
  if (n == 0) throw InputError("birkhoff_sum: n must be at least 1");
  const long need_lo = phi.left();
  const long need_hi = static_cast<long>(n) - 1 + phi.right();
  if (!w.covers(need_lo) || !w.covers(need_hi)) {
    throw InputError("birkhoff_sum: word must cover coordinates " + std::to_string(need_lo) + ".." +
                     std::to_string(need_hi) + " (length " + std::to_string(need_hi - need_lo + 1) + ")");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) total += phi.at(w, static_cast<long>(j));
  return total;
}

namespace {

// Beyond this index every variation of phi vanishes.
std::size_t variation_reach(const LocallyConstantPotential& phi) {
  if (phi.one_sided()) return static_cast<std::size_t>(phi.right()) + 1;
  return static_cast<std::size_t>(std::max(std::labs(phi.left()), std::labs(phi.right()))) + 1;
}

}  // namespace

VariationCheck variation_inequality_check(const LocallyConstantPotential& phi, std::size_t n,
                                          std::size_t m) {
  if (n == 0 || m == 0) throw InputError("variation_inequality_check: n and m must be at least 1");
  VariationCheck check;
  check.lhs = var_n(birkhoff_potential(phi, n), n + m,
                    phi.one_sided() ? VariationKind::one_sided : VariationKind::two_sided);
  const std::size_t reach = variation_reach(phi);
  for (std::size_t j = m + 1; j <= reach; ++j) check.rhs += var_n(phi, j);
  return check;
}

std::optional<double> variation_envelope(const LocallyConstantPotential& phi) {
  if (!phi.declared_theta()) return std::nullopt;
  const double theta = *phi.declared_theta();
  double c = 0.0;
  for (std::size_t n = 2; n <= variation_reach(phi); ++n) {
    c = std::max(c, var_n(phi, n) / std::pow(theta, static_cast<double>(n)));
  }
  return c;
}

}  // namespace thermoshift
