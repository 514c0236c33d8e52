#include "thermoshift/graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>

namespace thermoshift {

namespace {

void check_identifier(const std::string& id) {
  if (id.empty()) throw InputError("vertex identifier must be nonempty");
  for (unsigned char c : id) {
    if (std::isspace(c)) throw InputError("vertex identifier '" + id + "' contains whitespace");
  }
}

}  // namespace

DirectedGraph::DirectedGraph(std::vector<std::string> vertices,
                             const std::vector<std::pair<std::string, std::string>>& edges) {
  std::unordered_map<std::string, Vertex> all;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    check_identifier(vertices[i]);
    if (!all.emplace(vertices[i], i).second) {
      throw InputError("duplicate vertex identifier '" + vertices[i] + "'");
    }
  }
  const std::size_t n = vertices.size();
  std::vector<std::set<Vertex>> out(n), in(n);
  for (const auto& [from, to] : edges) {
    auto a = all.find(from);
    auto b = all.find(to);
    if (a == all.end()) throw InputError("edge references unknown vertex '" + from + "'");
    if (b == all.end()) throw InputError("edge references unknown vertex '" + to + "'");
    out[a->second].insert(b->second);
    in[b->second].insert(a->second);
  }

  // Prune sources and sinks until every remaining vertex has both.
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> indeg(n), outdeg(n);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    indeg[v] = in[v].size();
    outdeg[v] = out[v].size();
    if (indeg[v] == 0 || outdeg[v] == 0) {
      alive[v] = false;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : out[v]) {
      if (alive[w] && --indeg[w] == 0) {
        alive[w] = false;
        queue.push_back(w);
      }
    }
    for (Vertex u : in[v]) {
      if (alive[u] && --outdeg[u] == 0) {
        alive[u] = false;
        queue.push_back(u);
      }
    }
  }

  std::vector<Vertex> remap(n, n);
  for (Vertex v = 0; v < n; ++v) {
    if (alive[v]) {
      remap[v] = ids_.size();
      ids_.push_back(vertices[v]);
    } else {
      pruned_.push_back(vertices[v]);
    }
  }
  if (ids_.empty()) throw InputError("graph is empty after pruning vertices without in- or out-edges");

  out_.resize(ids_.size());
  in_.resize(ids_.size());
  for (Vertex v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (Vertex w : out[v]) {
      if (!alive[w]) continue;
      out_[remap[v]].push_back(remap[w]);
      in_[remap[w]].push_back(remap[v]);
    }
  }
  for (auto& list : in_) std::sort(list.begin(), list.end());
  for (Vertex v = 0; v < ids_.size(); ++v) lookup_.emplace(ids_[v], v);
}

std::size_t DirectedGraph::edge_count() const {
  std::size_t count = 0;
  for (const auto& list : out_) count += list.size();
  return count;
}

std::optional<Vertex> DirectedGraph::find(std::string_view id) const {
  auto it = lookup_.find(std::string(id));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Vertex DirectedGraph::index(std::string_view id) const {
  auto v = find(id);
  if (!v) throw InputError("unknown vertex '" + std::string(id) + "'");
  return *v;
}

bool DirectedGraph::has_edge(Vertex from, Vertex to) const {
  const auto& list = out_.at(from);
  return std::binary_search(list.begin(), list.end(), to);
}

std::vector<std::pair<Vertex, Vertex>> DirectedGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> result;
  for (Vertex v = 0; v < out_.size(); ++v) {
    for (Vertex w : out_[v]) result.emplace_back(v, w);
  }
  return result;
}

bool DirectedGraph::is_admissible(std::span<const Vertex> word) const {
  if (word.empty()) return false;
  for (Vertex v : word) {
    if (v >= size()) return false;
  }
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (!has_edge(word[i], word[i + 1])) return false;
  }
  return true;
}

std::vector<Path> DirectedGraph::admissible_words(std::size_t length) const {
  std::vector<Path> words;
  if (length == 0) return words;
  for (Vertex v = 0; v < size(); ++v) words.push_back({v});
  for (std::size_t step = 1; step < length; ++step) {
    std::vector<Path> next;
    for (const auto& w : words) {
      for (Vertex s : out_[w.back()]) {
        Path extended = w;
        extended.push_back(s);
        next.push_back(std::move(extended));
      }
    }
    words = std::move(next);
  }
  return words;
}

std::vector<Vertex> DirectedGraph::by_identifier() const {
  std::vector<Vertex> order(size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::sort(order.begin(), order.end(), [this](Vertex a, Vertex b) { return ids_[a] < ids_[b]; });
  return order;
}

bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
  return a.ids_ == b.ids_ && a.out_ == b.out_;
}

std::string encode_word(std::span<const std::string> symbols) {
  std::string result;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i > 0) result.push_back(',');
    for (char c : symbols[i]) {
      if (c == ',' || c == '\\') result.push_back('\\');
      result.push_back(c);
    }
  }
  return result;
}

std::string encode_path(const DirectedGraph& g, std::span<const Vertex> path) {
  std::vector<std::string> symbols;
  symbols.reserve(path.size());
  for (Vertex v : path) symbols.push_back(g.id(v));
  return encode_word(symbols);
}

bool reaches(const DirectedGraph& g, Vertex a, Vertex b, std::size_t n) {
  if (a >= g.size() || b >= g.size()) throw InputError("vertex index out of range");
  std::vector<char> frontier(g.size(), 0);
  frontier[a] = 1;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<char> next(g.size(), 0);
    for (Vertex v = 0; v < g.size(); ++v) {
      if (!frontier[v]) continue;
      for (Vertex w : g.successors(v)) next[w] = 1;
    }
    frontier = std::move(next);
  }
  return frontier[b] != 0;
}

bool reaches(const DirectedGraph& g, std::string_view a, std::string_view b, std::size_t n) {
  return reaches(g, g.index(a), g.index(b), n);
}

namespace {

std::vector<bool> reachable_from(const DirectedGraph& g, Vertex start, bool forward) {
  std::vector<bool> seen(g.size(), false);
  std::vector<Vertex> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    auto next = forward ? g.successors(v) : g.predecessors(v);
    for (Vertex w : next) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

// BFS levels from the base vertex; period = gcd over edges of level(u)+1-level(v).
std::pair<std::vector<long>, std::size_t> levels_and_period(const DirectedGraph& g, Vertex base) {
  std::vector<long> level(g.size(), -1);
  std::deque<Vertex> queue{base};
  level[base] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.successors(v)) {
      if (level[w] < 0) {
        level[w] = level[v] + 1;
        queue.push_back(w);
      }
    }
  }
  long p = 0;
  for (auto [u, v] : g.edges()) {
    p = std::gcd(p, std::labs(level[u] + 1 - level[v]));
  }
  return {level, static_cast<std::size_t>(p)};
}

void require_transitive(const DirectedGraph& g, const char* what) {
  if (!is_transitive(g)) throw PreconditionError(std::string(what) + " requires a transitive graph");
}

}  // namespace

bool is_transitive(const DirectedGraph& g) {
  auto fwd = reachable_from(g, 0, true);
  auto bwd = reachable_from(g, 0, false);
  return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
         std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
}

std::size_t period(const DirectedGraph& g) {
  require_transitive(g, "period");
  return levels_and_period(g, 0).second;
}

SpectralDecomposition spectral_decomposition(const DirectedGraph& g) {
  require_transitive(g, "spectral_decomposition");
  const Vertex base = g.by_identifier().front();
  auto [level, p] = levels_and_period(g, base);
  SpectralDecomposition dec;
  dec.period = p;
  dec.classes.resize(p);
  dec.class_of.resize(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    dec.class_of[v] = static_cast<std::size_t>(level[v]) % p;
    dec.classes[dec.class_of[v]].push_back(v);
  }
  return dec;
}

namespace {

BlockGraph make_block_graph(const DirectedGraph& parent, std::vector<Path> words,
                            const std::vector<std::pair<std::size_t, std::size_t>>& links) {
  std::vector<std::string> ids;
  ids.reserve(words.size());
  for (const auto& w : words) ids.push_back(encode_path(parent, w));
  std::vector<std::pair<std::string, std::string>> edges;
  edges.reserve(links.size());
  for (auto [a, b] : links) edges.emplace_back(ids[a], ids[b]);
  DirectedGraph graph(ids, edges);
  // Pruning can only drop words that do not extend; keep words aligned with the result.
  std::vector<Path> kept(graph.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (auto v = graph.find(ids[i])) kept[*v] = std::move(words[i]);
  }
  return BlockGraph{std::move(graph), std::move(kept)};
}

}  // namespace

BlockGraph power_graph(const DirectedGraph& g, const SpectralDecomposition& dec, std::size_t i) {
  if (i >= dec.period) throw InputError("class index out of range");
  if (dec.class_of.size() != g.size()) throw InputError("decomposition does not match graph");
  const std::size_t p = dec.period;
  std::vector<Path> words;
  for (auto& w : g.admissible_words(p)) {
    if (dec.class_of[w.front()] == i) words.push_back(std::move(w));
  }
  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = 0; b < words.size(); ++b) {
      if (g.has_edge(words[a].back(), words[b].front())) links.emplace_back(a, b);
    }
  }
  return make_block_graph(g, std::move(words), links);
}

BlockGraph higher_block(const DirectedGraph& g, std::size_t k) {
  if (k == 0) throw InputError("block length must be at least 1");
  auto words = g.admissible_words(k);
  if (k == 1) return BlockGraph{g, std::move(words)};
  // Words come out sorted, so the successors of a word are found by binary search on
  // its (k-1)-suffix extended by each successor symbol.
  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (std::size_t a = 0; a < words.size(); ++a) {
    Path next(words[a].begin() + 1, words[a].end());
    next.push_back(0);
    for (Vertex s : g.successors(words[a].back())) {
      next.back() = s;
      auto it = std::lower_bound(words.begin(), words.end(), next);
      links.emplace_back(a, static_cast<std::size_t>(it - words.begin()));
    }
  }
  return make_block_graph(g, std::move(words), links);
}

std::vector<DirectedGraph> transitive_components(const DirectedGraph& g) {
  // Iterative Tarjan.
  const std::size_t n = g.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> number(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::vector<std::vector<Vertex>> components;
  std::size_t counter = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (number[root] != unvisited) continue;
    std::vector<std::pair<Vertex, std::size_t>> call{{root, 0}};
    number[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      auto succ = g.successors(v);
      if (next < succ.size()) {
        Vertex w = succ[next++];
        if (number[w] == unvisited) {
          number[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], number[w]);
        }
        continue;
      }
      if (low[v] == number[v]) {
        std::vector<Vertex> component;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        components.push_back(std::move(component));
      }
      Vertex finished = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }

  std::vector<DirectedGraph> result;
  for (auto& component : components) {
    std::sort(component.begin(), component.end());
    std::vector<std::string> ids;
    std::vector<std::pair<std::string, std::string>> edges;
    for (Vertex v : component) {
      ids.push_back(g.id(v));
      for (Vertex w : g.successors(v)) {
        if (std::binary_search(component.begin(), component.end(), w)) edges.emplace_back(g.id(v), g.id(w));
      }
    }
    if (edges.empty()) continue;
    result.emplace_back(std::move(ids), edges);
  }
  std::sort(result.begin(), result.end(), [&g](const DirectedGraph& a, const DirectedGraph& b) {
    return g.index(a.id(0)) < g.index(b.id(0));
  });
  return result;
}

bool is_subgraph(const DirectedGraph& sub, const DirectedGraph& super) {
  for (Vertex v = 0; v < sub.size(); ++v) {
    if (!super.find(sub.id(v))) return false;
  }
  for (auto [u, v] : sub.edges()) {
    if (!super.has_edge(super.index(sub.id(u)), super.index(sub.id(v)))) return false;
  }
  return true;
}

}  // namespace thermoshift
