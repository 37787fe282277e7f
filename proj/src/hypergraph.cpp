#include "hypersparse/hypergraph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace hypersparse {

HyperEdge make_edge(std::vector<Vertex> vertices, Rational weight) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices.size() < 2) {
    throw std::invalid_argument("hyperedge needs at least 2 distinct vertices");
  }
  if (weight <= 0) throw std::invalid_argument("hyperedge weight must be positive");
  return HyperEdge{std::move(vertices), std::move(weight)};
}

WeightedHypergraph::WeightedHypergraph(std::size_t n, std::vector<HyperEdge> edges)
    : n_(n), edges_(std::move(edges)) {
  for (const auto& e : edges_) check(e);
}

void WeightedHypergraph::check(const HyperEdge& edge) const {
  if (edge.vertices.size() < 2) {
    throw std::invalid_argument("hyperedge needs at least 2 distinct vertices");
  }
  for (std::size_t i = 0; i < edge.vertices.size(); ++i) {
    Vertex v = edge.vertices[i];
    if (v < 1 || v > n_) {
      throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range [1," +
                                  std::to_string(n_) + "]");
    }
    if (i > 0 && edge.vertices[i - 1] >= v) {
      throw std::invalid_argument("hyperedge vertices must be sorted and distinct");
    }
  }
  if (edge.weight <= 0) throw std::invalid_argument("hyperedge weight must be positive");
}

void WeightedHypergraph::add_edge(HyperEdge edge) {
  check(edge);
  edges_.push_back(std::move(edge));
}

std::size_t WeightedHypergraph::rank() const {
  std::size_t r = 0;
  for (const auto& e : edges_) r = std::max(r, e.vertices.size());
  return r;
}

Rational WeightedHypergraph::total_weight() const {
  Rational total = 0;
  for (const auto& e : edges_) total += e.weight;
  return total;
}

bool WeightedHypergraph::is_unweighted() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const HyperEdge& e) { return e.weight == 1; });
}

Cut::Cut(std::vector<bool> in_s) : in_s_(std::move(in_s)) {
  auto inside = std::count(in_s_.begin(), in_s_.end(), true);
  if (inside == 0 || static_cast<std::size_t>(inside) == in_s_.size()) {
    throw std::invalid_argument("cut sides must both be nonempty");
  }
}

Cut Cut::from_side(std::size_t n, const std::vector<Vertex>& side) {
  std::vector<bool> in_s(n, false);
  for (Vertex v : side) {
    if (v < 1 || v > n) throw std::invalid_argument("cut vertex out of range");
    in_s[v - 1] = true;
  }
  return Cut(std::move(in_s));
}

Cut Cut::complement() const {
  std::vector<bool> flipped(in_s_.size());
  for (std::size_t i = 0; i < in_s_.size(); ++i) flipped[i] = !in_s_[i];
  return Cut(std::move(flipped));
}

bool crosses(const HyperEdge& edge, const Cut& cut) {
  bool first = cut.contains(edge.vertices.front());
  for (Vertex v : edge.vertices) {
    if (cut.contains(v) != first) return true;
  }
  return false;
}

Rational cut_weight(const WeightedHypergraph& h, const Cut& cut) {
  if (cut.num_vertices() != h.num_vertices()) {
    throw std::invalid_argument("cut and hypergraph vertex counts differ");
  }
  Rational total = 0;
  for (const auto& e : h.edges()) {
    if (crosses(e, cut)) total += e.weight;
  }
  return total;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

bool parse_count(std::string_view token, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

bool is_skippable(std::string_view line) {
  auto tokens = tokenize(line);
  return tokens.empty() || (!line.empty() && line.front() == '%') ||
         tokens.front().front() == '%';
}

}  // namespace

HyperEdge parse_edge_line(std::string_view line, std::size_t n, bool weighted,
                          std::size_t line_number) {
  auto tokens = tokenize(line);
  std::size_t first_vertex = 0;
  Rational weight = 1;
  if (weighted) {
    if (tokens.empty()) throw ParseError(line_number, "missing edge weight");
    try {
      weight = parse_rational(tokens[0]);
    } catch (const std::invalid_argument&) {
      throw ParseError(line_number, "malformed weight '" + std::string(tokens[0]) + "'");
    }
    if (weight <= 0) {
      throw ParseError(line_number, "non-positive weight " + std::string(tokens[0]));
    }
    first_vertex = 1;
  }
  std::vector<Vertex> vertices;
  for (std::size_t i = first_vertex; i < tokens.size(); ++i) {
    std::uint64_t id = 0;
    if (!parse_count(tokens[i], id)) {
      throw ParseError(line_number, "malformed vertex id '" + std::string(tokens[i]) + "'");
    }
    if (id < 1 || id > n) {
      throw ParseError(line_number, "vertex id " + std::string(tokens[i]) +
                                        " out of range [1," + std::to_string(n) + "]");
    }
    vertices.push_back(static_cast<Vertex>(id));
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices.size() < 2) {
    throw ParseError(line_number, "edge has fewer than 2 distinct vertices");
  }
  return HyperEdge{std::move(vertices), std::move(weight)};
}

WeightedHypergraph parse_hypergraph(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;
  bool have_header = false;
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  bool weighted = false;
  WeightedHypergraph h;
  std::vector<HyperEdge> edges;

  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_skippable(line)) continue;
    if (!have_header) {
      auto tokens = tokenize(line);
      std::uint64_t fmt = 0;
      if (tokens.size() != 3 || !parse_count(tokens[0], m) || !parse_count(tokens[1], n) ||
          !parse_count(tokens[2], fmt) || fmt > 1) {
        throw ParseError(line_number, "malformed header, expected '<m> <n> <fmt>' with fmt 0|1");
      }
      weighted = fmt == 1;
      have_header = true;
      edges.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(m, 1u << 20)));
      continue;
    }
    if (edges.size() == m) throw ParseError(line_number, "more edge lines than header declares");
    edges.push_back(parse_edge_line(line, static_cast<std::size_t>(n), weighted, line_number));
  }
  if (!have_header) throw ParseError(line_number + 1, "malformed header, missing");
  if (edges.size() != m) {
    throw ParseError(line_number + 1, "expected " + std::to_string(m) + " edges, found " +
                                          std::to_string(edges.size()));
  }
  return WeightedHypergraph(static_cast<std::size_t>(n), std::move(edges));
}

WeightedHypergraph parse_hypergraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_hypergraph(in);
}

void write_hypergraph(std::ostream& out, const WeightedHypergraph& h) {
  out << h.num_edges() << ' ' << h.num_vertices() << " 1\n";
  for (const auto& e : h.edges()) {
    out << format_rational(e.weight);
    for (Vertex v : e.vertices) out << ' ' << v;
    out << '\n';
  }
}

std::string serialize_hypergraph(const WeightedHypergraph& h) {
  std::ostringstream out;
  write_hypergraph(out, h);
  return out.str();
}

}  // namespace hypersparse
