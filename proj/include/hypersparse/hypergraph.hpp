#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hypersparse/rational.hpp"

namespace hypersparse {

/// Vertex ids are 1-based, contiguous in [1, n].
using Vertex = std::uint32_t;

/// Raised when a hypergraph file or edge line is malformed.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line), message_(message) {}

  std::size_t line() const { return line_; }
  const std::string& detail() const { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

/// Raised when the combinatorial size of a requested object exceeds a cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal invariant proven for the algorithms is breached.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct HyperEdge {
  std::vector<Vertex> vertices;  // sorted ascending, distinct, size >= 2
  Rational weight;

  friend bool operator==(const HyperEdge&, const HyperEdge&) = default;
};

/// Builds a normalized edge (sorted, deduplicated). Throws std::invalid_argument
/// if fewer than two distinct vertices remain or the weight is not positive.
HyperEdge make_edge(std::vector<Vertex> vertices, Rational weight);

class WeightedHypergraph {
 public:
  WeightedHypergraph() = default;
  explicit WeightedHypergraph(std::size_t n) : n_(n) {}
  /// Validates every edge against the invariants; throws std::invalid_argument.
  WeightedHypergraph(std::size_t n, std::vector<HyperEdge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<HyperEdge>& edges() const { return edges_; }
  const HyperEdge& edge(std::size_t i) const { return edges_[i]; }

  /// Appends an edge already in normalized form; validates it.
  void add_edge(HyperEdge edge);
  void add_edge(std::vector<Vertex> vertices, Rational weight) {
    add_edge(make_edge(std::move(vertices), std::move(weight)));
  }

  std::size_t rank() const;
  Rational total_weight() const;
  bool is_unweighted() const;

  friend bool operator==(const WeightedHypergraph&, const WeightedHypergraph&) = default;

 private:
  void check(const HyperEdge& edge) const;

  std::size_t n_ = 0;
  std::vector<HyperEdge> edges_;
};

/// Bipartition (S, V \ S). `in_s[v - 1]` tells whether vertex v is in S.
class Cut {
 public:
  /// Throws std::invalid_argument if either side is empty.
  explicit Cut(std::vector<bool> in_s);
  static Cut from_side(std::size_t n, const std::vector<Vertex>& side);

  std::size_t num_vertices() const { return in_s_.size(); }
  bool contains(Vertex v) const { return in_s_[v - 1]; }
  Cut complement() const;

 private:
  std::vector<bool> in_s_;
};

/// Whether the edge has a vertex on each side.
bool crosses(const HyperEdge& edge, const Cut& cut);
Rational cut_weight(const WeightedHypergraph& h, const Cut& cut);

// ---------------------------------------------------------------------------
// Text format: "<m> <n> <fmt>" header, then one edge per line,
// "<weight> <v1> ... <vk>" when fmt = 1 and "<v1> ... <vk>" when fmt = 0.
// Lines starting with '%' are comments.

WeightedHypergraph parse_hypergraph(std::istream& in);
WeightedHypergraph parse_hypergraph(std::string_view text);
/// Parses the body of one edge line; `line_number` is only used in errors.
HyperEdge parse_edge_line(std::string_view line, std::size_t n, bool weighted,
                          std::size_t line_number);

void write_hypergraph(std::ostream& out, const WeightedHypergraph& h);
std::string serialize_hypergraph(const WeightedHypergraph& h);

// ---------------------------------------------------------------------------
// Generators. All take a cap on the number of emitted edges and throw
// CapExceeded instead of truncating.

inline constexpr std::size_t kDefaultEdgeCap = 1'000'000;

/// 2n vertices; edge i is {v_i, v_{n+1}, ..., v_{2n}} with weight 1.
WeightedHypergraph gen_sunflower(std::size_t n);

/// One weight-1 hyperedge over all n vertices plus every pair with weight 1/n^2.
WeightedHypergraph gen_footnote_graph(std::size_t n);

enum class ExampleFamily { kExample1, kExample2 };

/// kExample1: for each i <= n, every edge {v_i} + T with T an (r-1)-subset of
/// {v_{n+1}..v_{2n}}. kExample2: e0 = {v_1..v_{2r-1}, v_{n+1}},
/// e1 = {v_1..v_r, v_{n+1}..v_{n+r}}, then every 2r-subset of each half.
WeightedHypergraph gen_example(ExampleFamily which, std::size_t n, std::size_t r,
                               std::size_t edge_cap = kDefaultEdgeCap);

struct RandomHypergraphParams {
  std::size_t n = 10;
  std::size_t m = 30;
  std::size_t max_rank = 4;
  bool weighted = false;
  std::uint64_t max_weight = 10;
  std::uint64_t seed = 0;
};

/// Edge sizes uniform in [2, min(max_rank, n)], vertices uniform without
/// replacement. Weighted edges get a uniform weight in [1, max_weight] on a
/// 1/1000 grid.
WeightedHypergraph gen_random(const RandomHypergraphParams& params);

/// Saturating binomial coefficient.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace hypersparse
