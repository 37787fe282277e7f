#include <algorithm>
#include <numeric>

#include "hypersparse/hypergraph.hpp"
#include "hypersparse/rng.hpp"

namespace hypersparse {
namespace {

constexpr std::uint64_t kSaturated = ~std::uint64_t{0};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

void require_cap(std::uint64_t count, std::size_t cap) {
  if (count > cap) {
    throw CapExceeded("generator would emit " +
                      (count == kSaturated ? std::string("too many") : std::to_string(count)) +
                      " edges, cap is " + std::to_string(cap));
  }
}

// Calls `emit` with each k-subset of {first, ..., first + size - 1} in
// lexicographic order.
template <typename Emit>
void for_each_subset(Vertex first, std::size_t size, std::size_t k, Emit&& emit) {
  if (k > size) return;
  std::vector<Vertex> subset(k);
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) subset[i] = first + static_cast<Vertex>(idx[i]);
    emit(subset);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == size - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // result * (n - i) / (i + 1) stays integral at every step.
  unsigned __int128 result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    result = result * (n - i) / (i + 1);
    if (result > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(result);
}

WeightedHypergraph gen_sunflower(std::size_t n) {
  if (n == 0) throw std::invalid_argument("sunflower needs n >= 1");
  WeightedHypergraph h(2 * n);
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Vertex> vertices{static_cast<Vertex>(i)};
    for (std::size_t j = n + 1; j <= 2 * n; ++j) vertices.push_back(static_cast<Vertex>(j));
    h.add_edge(std::move(vertices), Rational(1));
  }
  return h;
}

WeightedHypergraph gen_footnote_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("footnote graph needs n >= 3");
  WeightedHypergraph h(n);
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{1});
  h.add_edge(all, Rational(1));
  const Rational pair_weight(1, static_cast<unsigned long>(n * n));
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) h.add_edge({u, v}, pair_weight);
  }
  return h;
}

WeightedHypergraph gen_example(ExampleFamily which, std::size_t n, std::size_t r,
                               std::size_t edge_cap) {
  if (which == ExampleFamily::kExample1) {
    if (n < 1 || r < 2 || r - 1 > n) {
      throw std::invalid_argument("example1 needs n >= 1 and 2 <= r <= n + 1");
    }
    require_cap(saturating_mul(n, binomial(n, r - 1)), edge_cap);
    WeightedHypergraph h(2 * n);
    for (std::size_t i = 1; i <= n; ++i) {
      for_each_subset(static_cast<Vertex>(n + 1), n, r - 1, [&](const std::vector<Vertex>& t) {
        std::vector<Vertex> vertices{static_cast<Vertex>(i)};
        vertices.insert(vertices.end(), t.begin(), t.end());
        h.add_edge(std::move(vertices), Rational(1));
      });
    }
    return h;
  }

  if (r < 1 || 4 * r > n) throw std::invalid_argument("example2 needs r >= 1 and 2r <= n/2");
  require_cap(saturating_add(2, saturating_mul(2, binomial(n, 2 * r))), edge_cap);
  WeightedHypergraph h(2 * n);
  std::vector<Vertex> e0;
  for (std::size_t i = 1; i <= 2 * r - 1; ++i) e0.push_back(static_cast<Vertex>(i));
  e0.push_back(static_cast<Vertex>(n + 1));
  h.add_edge(std::move(e0), Rational(1));
  std::vector<Vertex> e1;
  for (std::size_t i = 1; i <= r; ++i) e1.push_back(static_cast<Vertex>(i));
  for (std::size_t i = n + 1; i <= n + r; ++i) e1.push_back(static_cast<Vertex>(i));
  h.add_edge(std::move(e1), Rational(1));
  for (Vertex first : {Vertex{1}, static_cast<Vertex>(n + 1)}) {
    for_each_subset(first, n, 2 * r,
                    [&](const std::vector<Vertex>& s) { h.add_edge(s, Rational(1)); });
  }
  return h;
}

WeightedHypergraph gen_random(const RandomHypergraphParams& params) {
  if (params.n < 2) throw std::invalid_argument("random hypergraph needs n >= 2");
  if (params.max_rank < 2) throw std::invalid_argument("random hypergraph needs max_rank >= 2");
  if (params.weighted && params.max_weight < 1) {
    throw std::invalid_argument("max_weight must be >= 1");
  }
  Rng rng(params.seed);
  const std::size_t top = std::min(params.max_rank, params.n);
  WeightedHypergraph h(params.n);
  std::vector<Vertex> pool(params.n);
  for (std::size_t e = 0; e < params.m; ++e) {
    const auto size = static_cast<std::size_t>(rng.uniform_int(2, top));
    std::iota(pool.begin(), pool.end(), Vertex{1});
    // partial Fisher-Yates
    for (std::size_t i = 0; i < size; ++i) {
      auto j = static_cast<std::size_t>(rng.uniform_int(i, params.n - 1));
      std::swap(pool[i], pool[j]);
    }
    std::vector<Vertex> vertices(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
    Rational weight = 1;
    if (params.weighted) {
      const std::uint64_t steps = (params.max_weight - 1) * 1000;
      weight = Rational(mpz_class(static_cast<unsigned long>(1000 + rng.uniform_int(0, steps))),
                        mpz_class(1000));
      weight.canonicalize();
    }
    h.add_edge(std::move(vertices), std::move(weight));
  }
  return h;
}

}  // namespace hypersparse
