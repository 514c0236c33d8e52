#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace thermoshift {

using Vertex = std::size_t;
using Path = std::vector<Vertex>;

/// Malformed or inconsistent user input (unknown vertex, bad window, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called on an object that violates its precondition
/// (non-transitive graph, two-sided potential where one-sided is needed, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An iterative procedure hit its iteration cap.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite directed graph presenting a subshift of finite type.
///
/// Vertices keep the order they were given in; vertex identifiers are unique.
/// Construction prunes vertices without incoming or outgoing edges until a
/// fixpoint is reached, so every vertex lies on a bi-infinite path. The pruned
/// identifiers are kept for reporting.
class DirectedGraph {
 public:
  DirectedGraph(std::vector<std::string> vertices,
                const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t size() const { return ids_.size(); }
  std::size_t edge_count() const;

  const std::string& id(Vertex v) const { return ids_.at(v); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<std::string>& pruned() const { return pruned_; }

  std::optional<Vertex> find(std::string_view id) const;
  /// Throws InputError for unknown identifiers.
  Vertex index(std::string_view id) const;

  bool has_edge(Vertex from, Vertex to) const;
  std::span<const Vertex> successors(Vertex v) const { return out_.at(v); }
  std::span<const Vertex> predecessors(Vertex v) const { return in_.at(v); }
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  bool is_admissible(std::span<const Vertex> word) const;
  /// All admissible words of the given length, in lexicographic index order.
  std::vector<Path> admissible_words(std::size_t length) const;

  /// Identifier order: the lexicographically least identifier comes first.
  std::vector<Vertex> by_identifier() const;

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b);

 private:
  std::vector<std::string> ids_;
  std::vector<std::string> pruned_;
  std::unordered_map<std::string, Vertex> lookup_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

/// Joins identifiers into a single whitespace-free identifier. Commas and
/// backslashes inside identifiers are escaped so the encoding is injective.
std::string encode_word(std::span<const std::string> symbols);
std::string encode_path(const DirectedGraph& g, std::span<const Vertex> path);

/// True iff a path with exactly n edges leads from a to b.
bool reaches(const DirectedGraph& g, Vertex a, Vertex b, std::size_t n);
bool reaches(const DirectedGraph& g, std::string_view a, std::string_view b, std::size_t n);

bool is_transitive(const DirectedGraph& g);

/// gcd of cycle lengths. Requires a transitive graph.
std::size_t period(const DirectedGraph& g);

struct SpectralDecomposition {
  std::size_t period = 1;
  std::vector<std::vector<Vertex>> classes;
  std::vector<std::size_t> class_of;  // indexed by vertex
};

/// Cyclically moving classes of a transitive graph. Every edge goes from class
/// i to class (i+1) mod p; the class of the lexicographically least identifier
/// is class 0.
SpectralDecomposition spectral_decomposition(const DirectedGraph& g);

/// A graph whose vertices stand for words of a parent graph.
struct BlockGraph {
  DirectedGraph graph;
  std::vector<Path> words;  // words[v] is the parent word of vertex v
};

/// Presentation of sigma^p restricted to class i: vertices are the admissible
/// p-vertex words starting in class i, with an edge between consecutive blocks
/// whenever the last symbol of the first block has an edge to the first symbol
/// of the second.
BlockGraph power_graph(const DirectedGraph& g, const SpectralDecomposition& dec, std::size_t i);

/// Higher block recoding: vertices are admissible k-words, edges are the
/// admissible (k+1)-words. k = 1 returns a copy of g.
BlockGraph higher_block(const DirectedGraph& g, std::size_t k);

/// Strongly connected components carrying at least one edge, as induced
/// subgraphs, ordered by their least vertex index.
std::vector<DirectedGraph> transitive_components(const DirectedGraph& g);

/// True iff every vertex and edge of sub occurs (by identifier) in super.
bool is_subgraph(const DirectedGraph& sub, const DirectedGraph& super);

}  // namespace thermoshift
