#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "thermoshift/graph.hpp"

namespace thermoshift {

enum class Sidedness { one_sided, two_sided };

/// Finite admissible word placed at coordinates anchor, anchor+1, ...
/// One-sided words are always anchored at 0.
struct Word {
  Path symbols;
  long anchor = 0;
  Sidedness sidedness = Sidedness::one_sided;

  long first() const { return anchor; }
  long last() const { return anchor + static_cast<long>(symbols.size()) - 1; }
  bool covers(long coord) const { return coord >= first() && coord <= last(); }
  Vertex at(long coord) const { return symbols.at(static_cast<std::size_t>(coord - anchor)); }
};

/// Validates admissibility (and anchor 0 for one-sided words).
Word make_word(const DirectedGraph& g, Path symbols, long anchor = 0,
               Sidedness sidedness = Sidedness::one_sided);
Word make_word(const DirectedGraph& g, const std::vector<std::string>& ids, long anchor = 0,
               Sidedness sidedness = Sidedness::one_sided);

/// The word x -> sigma^n x: same symbols, coordinates moved n places left.
/// One-sided words lose their first n symbols instead.
Word shift(const Word& w, long n);

struct Distance {
  double value = 0.0;
  long horizon = 0;  // largest |i| such that every coordinate with |i| <= horizon was compared
};

/// exp(-min{|i| : x_i != y_i}) over the coordinates determined by both words;
/// 0 when the words agree on that range.
Distance natural_distance(const Word& x, const Word& y);

/// A potential reading coordinates left..right of a point, given as a table on
/// the admissible (right-left+1)-words of its graph.
class LocallyConstantPotential {
 public:
  LocallyConstantPotential(DirectedGraph graph, long left, long right, std::map<Path, double> table,
                           std::optional<double> declared_theta = std::nullopt);

  static LocallyConstantPotential constant(DirectedGraph graph, double value);

  const DirectedGraph& graph() const { return graph_; }
  long left() const { return left_; }
  long right() const { return right_; }
  std::size_t width() const { return static_cast<std::size_t>(right_ - left_ + 1); }
  bool one_sided() const { return left_ >= 0; }
  std::optional<double> declared_theta() const { return theta_; }
  const std::map<Path, double>& table() const { return table_; }

  /// Value on a window word (coordinate `left` first).
  double value(std::span<const Vertex> window) const;
  /// phi(sigma^j w). Throws InputError if w does not determine the window.
  double at(const Word& w, long j = 0) const;

  double sup() const;
  double inf() const;

 private:
  DirectedGraph graph_;
  long left_;
  long right_;
  std::map<Path, double> table_;
  std::optional<double> theta_;
};

/// Sum over terms of coefficient * potential, re-expressed on the hull of all windows.
/// All potentials must share the same graph.
LocallyConstantPotential linear_combination(
    const std::vector<std::pair<double, LocallyConstantPotential>>& terms);

/// phi o sigma^s.
LocallyConstantPotential shifted(const LocallyConstantPotential& phi, long s);
/// Same function, tabulated on a window containing the original one.
LocallyConstantPotential widen(const LocallyConstantPotential& phi, long left, long right);
/// Restriction of phi to a subgraph (matched by identifier).
LocallyConstantPotential restrict_to(const LocallyConstantPotential& phi, const DirectedGraph& sub);
/// Birkhoff sum phi_n = phi + phi o sigma + ... + phi o sigma^{n-1}, as a potential.
LocallyConstantPotential birkhoff_potential(const LocallyConstantPotential& phi, std::size_t n);

enum class VariationKind {
  automatic,  // two-sided when the window reaches negative coordinates
  one_sided,  // agreement on coordinates 0..n-1
  two_sided,  // agreement on coordinates -(n-1)..n-1
};

/// Exact supremum of phi(u) - phi(v) over points agreeing on the coordinates
/// selected by `kind`.
double var_n(const LocallyConstantPotential& phi, std::size_t n,
             VariationKind kind = VariationKind::automatic);

double birkhoff_sum(const LocallyConstantPotential& phi, const Word& w, std::size_t n);

struct VariationCheck {
  double lhs = 0.0;  // var_{n+m} of the n-th Birkhoff sum
  double rhs = 0.0;  // sum_{j>m} var_j phi
};

VariationCheck variation_inequality_check(const LocallyConstantPotential& phi, std::size_t n,
                                          std::size_t m);

/// Smallest C with var_n phi <= C theta^n for all n >= 2, using the declared theta.
/// Empty when no theta was declared.
std::optional<double> variation_envelope(const LocallyConstantPotential& phi);

}  // namespace thermoshift
