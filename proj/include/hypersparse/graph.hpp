#pragma once

// Weighted multigraph machinery: collapsing parallel edges, Stoer-Wagner
// global minimum cut, exact edge strengths by recursive min-cut removal, and
// k-strong components. Everything is templated on the weight type so the same
// code runs on exact rationals and on integer multiples of a fixed grid step.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypersparse/hypergraph.hpp"
#include "hypersparse/rational.hpp"

namespace hypersparse {

template <typename W>
struct MultigraphEdge {
  Vertex u;
  Vertex v;
  W weight;
  std::uint64_t tag = 0;
};

template <typename W>
class WeightedMultigraph {
 public:
  WeightedMultigraph() = default;
  explicit WeightedMultigraph(std::size_t n) : n_(n) {}

  std::size_t num_vertices() const { return n_; }
  const std::vector<MultigraphEdge<W>>& edges() const { return edges_; }

  void add_edge(Vertex u, Vertex v, W weight, std::uint64_t tag = 0) {
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (u < 1 || v < 1 || u > n_ || v > n_) throw std::invalid_argument("endpoint out of range");
    if (weight < W(0)) throw std::invalid_argument("negative edge weight");
    edges_.push_back({u, v, std::move(weight), tag});
  }

 private:
  std::size_t n_ = 0;
  std::vector<MultigraphEdge<W>> edges_;
};

/// Dense symmetric matrix of summed pair weights.
template <typename W>
class CollapsedGraph {
 public:
  CollapsedGraph() = default;
  explicit CollapsedGraph(std::size_t n) : n_(n), w_(n * n, W(0)) {}

  std::size_t num_vertices() const { return n_; }

  const W& weight(Vertex u, Vertex v) const { return w_[index(u, v)]; }

  void add(Vertex u, Vertex v, const W& delta) {
    w_[index(u, v)] += delta;
    w_[index(v, u)] += delta;
  }

  void set(Vertex u, Vertex v, const W& value) {
    w_[index(u, v)] = value;
    w_[index(v, u)] = value;
  }

  /// Unordered pairs (u < v) with positive total weight, lexicographic.
  std::vector<std::pair<Vertex, Vertex>> positive_pairs() const {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u = 1; u <= n_; ++u) {
      for (Vertex v = u + 1; v <= n_; ++v) {
        if (weight(u, v) > W(0)) pairs.emplace_back(u, v);
      }
    }
    return pairs;
  }

 private:
  std::size_t index(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u - 1) * n_ + (v - 1);
  }

  std::size_t n_ = 0;
  std::vector<W> w_;
};

template <typename W>
CollapsedGraph<W> collapse(const WeightedMultigraph<W>& g) {
  CollapsedGraph<W> c(g.num_vertices());
  for (const auto& e : g.edges()) c.add(e.u, e.v, e.weight);
  return c;
}

template <typename W>
struct MinCut {
  W value;
  std::vector<Vertex> side;  // sorted; contains the smallest vertex of the subset
};

namespace detail {

/// Connected components of the positive-weight subgraph induced on `subset`.
/// Components are sorted internally and ordered by their smallest vertex.
template <typename W>
std::vector<std::vector<Vertex>> induced_components(const CollapsedGraph<W>& g,
                                                    std::span<const Vertex> subset) {
  std::vector<std::vector<Vertex>> components;
  std::vector<char> seen(subset.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < subset.size(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      comp.push_back(subset[a]);
      for (std::size_t b = 0; b < subset.size(); ++b) {
        if (!seen[b] && g.weight(subset[a], subset[b]) > W(0)) {
          seen[b] = 1;
          stack.push_back(b);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  std::sort(components.begin(), components.end());
  return components;
}

}  // namespace detail

/// Exact global minimum cut of the subgraph induced on `subset` (Stoer-Wagner).
/// Ties between phases keep the first minimum found; the maximum-adjacency
/// order breaks ties by smallest vertex id. The returned side is normalized to
/// contain the smallest vertex of `subset`.
template <typename W>
MinCut<W> global_min_cut(const CollapsedGraph<W>& g, std::span<const Vertex> subset) {
  const std::size_t k = subset.size();
  if (k < 2) throw std::invalid_argument("min cut needs at least 2 vertices");

  std::vector<Vertex> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<W> adj(k * k, W(0));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a != b) adj[a * k + b] = g.weight(sorted[a], sorted[b]);
    }
  }
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t a = 0; a < k; ++a) members[a] = {a};
  std::vector<char> alive(k, 1);

  bool have_best = false;
  W best(0);
  std::vector<std::size_t> best_members;

  std::vector<W> key(k);
  std::vector<char> added(k);
  for (std::size_t phase = 0; phase + 1 < k; ++phase) {
    std::fill(added.begin(), added.end(), 0);
    for (std::size_t a = 0; a < k; ++a) key[a] = W(0);
    std::size_t prev = k;
    std::size_t last = k;
    const std::size_t remaining = k - phase;
    for (std::size_t step = 0; step < remaining; ++step) {
      std::size_t pick = k;
      for (std::size_t a = 0; a < k; ++a) {
        if (!alive[a] || added[a]) continue;
        if (pick == k || key[a] > key[pick]) pick = a;
      }
      added[pick] = 1;
      prev = last;
      last = pick;
      for (std::size_t a = 0; a < k; ++a) {
        if (alive[a] && !added[a]) key[a] += adj[pick * k + a];
      }
    }
    // cut of the phase: `last` against everything else
    if (!have_best || key[last] < best) {
      have_best = true;
      best = key[last];
      best_members = members[last];
    }
    // merge last into prev
    for (std::size_t a = 0; a < k; ++a) {
      if (a == prev || a == last || !alive[a]) continue;
      adj[prev * k + a] += adj[last * k + a];
      adj[a * k + prev] = adj[prev * k + a];
    }
    members[prev].insert(members[prev].end(), members[last].begin(), members[last].end());
    alive[last] = 0;
  }

  std::vector<char> in_side(k, 0);
  for (std::size_t a : best_members) in_side[a] = 1;
  const bool flip = !in_side[0];
  std::vector<Vertex> side;
  for (std::size_t a = 0; a < k; ++a) {
    if (static_cast<bool>(in_side[a]) != flip) side.push_back(sorted[a]);
  }
  return MinCut<W>{best, std::move(side)};
}

/// Strength of every vertex pair. For pairs with positive collapsed weight
/// this is the usual edge strength; for any other pair it is the largest
/// min-cut value among induced subgraphs containing both endpoints (0 when
/// the endpoints are disconnected).
template <typename W>
class StrengthTable {
 public:
  StrengthTable() = default;
  StrengthTable(CollapsedGraph<W> graph, std::vector<W> strength)
      : graph_(std::move(graph)), strength_(std::move(strength)) {}

  std::size_t num_vertices() const { return graph_.num_vertices(); }
  const CollapsedGraph<W>& graph() const { return graph_; }

  const W& strength(Vertex u, Vertex v) const {
    return strength_[static_cast<std::size_t>(u - 1) * num_vertices() + (v - 1)];
  }

  std::vector<std::pair<Vertex, Vertex>> positive_pairs() const { return graph_.positive_pairs(); }

  /// Sorted distinct strengths over positive-weight pairs.
  std::vector<W> distinct_strengths() const {
    std::vector<W> values;
    for (auto [u, v] : positive_pairs()) values.push_back(strength(u, v));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
  }

  /// Sum over positive-weight pairs of w(f) / k_f, exactly.
  Rational sum_weight_over_strength() const {
    Rational total = 0;
    for (auto [u, v] : positive_pairs()) {
      total += to_rational(graph_.weight(u, v)) / to_rational(strength(u, v));
    }
    return total;
  }

 private:
  CollapsedGraph<W> graph_;
  std::vector<W> strength_;
};

/// Recursive min-cut removal: cut each connected component along a minimum
/// cut, recurse into the resulting components, and record for every pair the
/// largest min-cut value among components containing both endpoints.
template <typename W>
StrengthTable<W> edge_strengths(const CollapsedGraph<W>& g) {
  const std::size_t n = g.num_vertices();
  std::vector<W> strength(n * n, W(0));
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{1});

  std::vector<std::vector<Vertex>> work = detail::induced_components(g, std::span<const Vertex>(all));
  while (!work.empty()) {
    std::vector<Vertex> comp = std::move(work.back());
    work.pop_back();
    if (comp.size() < 2) continue;
    MinCut<W> cut = global_min_cut(g, std::span<const Vertex>(comp));
    for (std::size_t a = 0; a < comp.size(); ++a) {
      for (std::size_t b = a + 1; b < comp.size(); ++b) {
        W& s = strength[static_cast<std::size_t>(comp[a] - 1) * n + (comp[b] - 1)];
        if (s < cut.value) {
          s = cut.value;
          strength[static_cast<std::size_t>(comp[b] - 1) * n + (comp[a] - 1)] = cut.value;
        }
      }
    }
    std::vector<Vertex> other;
    std::set_difference(comp.begin(), comp.end(), cut.side.begin(), cut.side.end(),
                        std::back_inserter(other));
    for (const auto* part : {&cut.side, &other}) {
      for (auto& sub : detail::induced_components(g, std::span<const Vertex>(*part))) {
        if (sub.size() >= 2) work.push_back(std::move(sub));
      }
    }
  }
  return StrengthTable<W>(g, std::move(strength));
}

template <typename W>
StrengthTable<W> edge_strengths(const WeightedMultigraph<W>& g) {
  return edge_strengths(collapse(g));
}

/// Connected components of the positive-weight pairs with strength >= k,
/// ordered by smallest vertex. Every vertex appears in exactly one class.
template <typename W>
std::vector<std::vector<Vertex>> k_strong_components(const StrengthTable<W>& table, const W& k) {
  if (!(k > W(0))) throw std::invalid_argument("k must be positive");
  const std::size_t n = table.num_vertices();
  std::vector<Vertex> parent(n + 1);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (auto [u, v] : table.positive_pairs()) {
    if (table.strength(u, v) >= k) {
      Vertex a = find(u);
      Vertex b = find(v);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<Vertex>> classes;
  std::vector<std::size_t> slot(n + 1, static_cast<std::size_t>(-1));
  for (Vertex v = 1; v <= n; ++v) {
    Vertex root = find(v);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = classes.size();
      classes.emplace_back();
    }
    classes[slot[root]].push_back(v);
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Brute-force oracle: enumerates every vertex subset and every cut of it.

inline constexpr std::size_t kBruteForceVertexLimit = 16;

/// Min-cut value of G[X] for every bitmask X (bit v-1 for vertex v); entries
/// for |X| < 2 are zero.
template <typename W>
std::vector<W> brute_force_subset_min_cuts(const WeightedMultigraph<W>& g) {
  const std::size_t n = g.num_vertices();
  if (n > kBruteForceVertexLimit) {
    throw CapExceeded("brute-force strength supports at most " +
                      std::to_string(kBruteForceVertexLimit) + " vertices");
  }
  const std::uint32_t full = n == 0 ? 0 : (1u << n);
  std::vector<W> min_cut(full, W(0));
  for (std::uint32_t x = 1; x < full; ++x) {
    if (std::popcount(x) < 2) continue;
    const std::uint32_t low = x & (~x + 1);
    bool have = false;
    W best(0);
    // every S with low in S, S != X
    for (std::uint32_t rest = (x ^ low); ; rest = (rest - 1) & (x ^ low)) {
      const std::uint32_t s = rest | low;
      if (s != x) {
        W cut(0);
        for (const auto& e : g.edges()) {
          const std::uint32_t bu = 1u << (e.u - 1);
          const std::uint32_t bv = 1u << (e.v - 1);
          if ((x & bu) && (x & bv) && (((s & bu) != 0) != ((s & bv) != 0))) cut += e.weight;
        }
        if (!have || cut < best) {
          have = true;
          best = cut;
        }
      }
      if (rest == 0) break;
    }
    min_cut[x] = best;
  }
  return min_cut;
}

/// max over X containing u and v of min-cut(G[X]).
template <typename W>
W brute_force_strength(const WeightedMultigraph<W>& g, Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("strength needs two distinct vertices");
  const auto cuts = brute_force_subset_min_cuts(g);
  const std::uint32_t need = (1u << (u - 1)) | (1u << (v - 1));
  W best(0);
  for (std::uint32_t x = 0; x < cuts.size(); ++x) {
    if ((x & need) == need && cuts[x] > best) best = cuts[x];
  }
  return best;
}

}  // namespace hypersparse
