#include "hypersparse/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hypersparse/rng.hpp"

namespace hypersparse {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t size) : parent_(size) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::size_t count_components(std::size_t n, const std::vector<const HyperEdge*>& edges) {
  return component_map(n, edges).num_super;
}

PipelineResult empty_result(const WeightedHypergraph& h, const SparsifyParams& params) {
  PipelineResult result;
  result.sparsifier = WeightedHypergraph(h.num_vertices());
  result.seed = params.seed;
  result.m_in = h.num_edges();
  result.rho_max = 0;
  result.sum_p = 0;
  return result;
}

}  // namespace

Rational pipeline_alpha(std::size_t n, double epsilon) {
  require_epsilon(epsilon);
  const Rational eps = rational_from_decimal(epsilon);
  return Rational(mpz_class(static_cast<unsigned long>(10 * n * n))) / (eps * eps * eps);
}

WeightBuckets bucket_by_weight(const WeightedHypergraph& h, double epsilon) {
  if (h.num_edges() == 0) throw std::invalid_argument("weight bucketing needs at least one edge");
  WeightBuckets out;
  out.alpha = pipeline_alpha(h.num_vertices(), epsilon);
  out.w0 = h.edge(0).weight;
  for (const auto& e : h.edges()) out.w0 = std::min(out.w0, e.weight);
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    std::size_t bucket = 1;
    Rational upper = out.w0 * out.alpha;
    while (h.edge(i).weight >= upper) {
      upper *= out.alpha;
      ++bucket;
    }
    out.buckets[bucket].push_back(i);
  }
  return out;
}

ContractionMap component_map(std::size_t n, const std::vector<const HyperEdge*>& edges) {
  UnionFind uf(n);
  for (const HyperEdge* e : edges) {
    for (Vertex v : e->vertices) uf.unite(e->vertices.front() - 1, v - 1);
  }
  ContractionMap map;
  map.super.assign(n, 0);
  std::vector<Vertex> id_of_root(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t root = uf.find(v);
    if (id_of_root[root] == 0) id_of_root[root] = static_cast<Vertex>(++map.num_super);
    map.super[v] = id_of_root[root];
  }
  return map;
}

namespace {

std::vector<Vertex> contract_vertices(const HyperEdge& e, const ContractionMap& map) {
  std::vector<Vertex> out;
  out.reserve(e.vertices.size());
  for (Vertex v : e.vertices) out.push_back(map(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Contraction contract_components(const WeightedHypergraph& higher, const WeightedHypergraph& layer) {
  if (higher.num_vertices() != layer.num_vertices()) {
    throw std::invalid_argument("contraction inputs must share a vertex set");
  }
  std::vector<const HyperEdge*> edges;
  for (const auto& e : higher.edges()) edges.push_back(&e);
  Contraction out;
  out.map = component_map(higher.num_vertices(), edges);
  out.contracted = WeightedHypergraph(out.map.num_super);
  for (std::size_t i = 0; i < layer.num_edges(); ++i) {
    auto vertices = contract_vertices(layer.edge(i), out.map);
    if (vertices.size() < 2) {
      ++out.dropped;
      continue;
    }
    out.contracted.add_edge(HyperEdge{std::move(vertices), layer.edge(i).weight});
    out.source.push_back(i);
  }
  return out;
}

PipelineResult sparsify_parity(const WeightedHypergraph& h, const WeightBuckets& buckets,
                               int parity, const SparsifyParams& params) {
  require_epsilon(params.epsilon);
  const std::size_t n = h.num_vertices();
  SparsifyParams inner = params;
  inner.epsilon = params.epsilon / 2.0;

  PipelineResult result = empty_result(h, params);
  result.alpha = buckets.alpha;
  std::vector<const HyperEdge*> heavier;

  for (auto it = buckets.buckets.rbegin(); it != buckets.buckets.rend(); ++it) {
    const std::size_t index = it->first;
    if (static_cast<int>(index % 2) != parity) continue;
    const auto& members = it->second;

    BucketRecord record;
    record.parity = parity;
    record.index = index;
    record.edges_in = members.size();
    record.weight_in = 0;
    record.weight_out = 0;
    const ContractionMap map = component_map(n, heavier);
    record.supervertices_before = map.num_super;

    // Contract, then split the contracted hypergraph into connected components.
    std::vector<std::vector<Vertex>> contracted;
    std::vector<std::size_t> original;
    for (std::size_t idx : members) {
      record.weight_in += h.edge(idx).weight;
      auto vertices = contract_vertices(h.edge(idx), map);
      if (vertices.size() < 2) {
        ++record.edges_dropped;
        continue;
      }
      contracted.push_back(std::move(vertices));
      original.push_back(idx);
    }
    UnionFind uf(map.num_super + 1);
    for (const auto& vs : contracted) {
      for (Vertex v : vs) uf.unite(vs.front(), v);
    }
    std::map<std::size_t, std::vector<std::size_t>> by_component;
    for (std::size_t k = 0; k < contracted.size(); ++k) {
      by_component[uf.find(contracted[k].front())].push_back(k);
    }

    std::size_t component_index = 0;
    for (const auto& [root, edge_ids] : by_component) {
      std::vector<Vertex> supers;
      for (std::size_t k : edge_ids) {
        supers.insert(supers.end(), contracted[k].begin(), contracted[k].end());
      }
      std::sort(supers.begin(), supers.end());
      supers.erase(std::unique(supers.begin(), supers.end()), supers.end());
      auto local = [&](Vertex s) {
        return static_cast<Vertex>(std::lower_bound(supers.begin(), supers.end(), s) -
                                   supers.begin() + 1);
      };
      WeightedHypergraph sub(supers.size());
      for (std::size_t k : edge_ids) {
        std::vector<Vertex> vs;
        for (Vertex s : contracted[k]) vs.push_back(local(s));
        sub.add_edge(HyperEdge{std::move(vs), h.edge(original[k]).weight});
      }
      record.component_sizes.push_back(supers.size());

      SparsifyParams call = inner;
      call.seed = mix_seed(mix_seed(mix_seed(params.seed, static_cast<std::uint64_t>(parity)),
                                    index),
                           component_index++);
      const SparsifierResult part = sparsify_weighted(sub, call);
      for (std::size_t j = 0; j < part.sparsifier.num_edges(); ++j) {
        const std::size_t idx = original[edge_ids[part.source[j]]];
        const Rational& w = part.sparsifier.edge(j).weight;
        record.weight_out += w;
        result.sparsifier.add_edge(HyperEdge{h.edge(idx).vertices, w});
        result.source.push_back(idx);
        ++record.edges_out;
      }
      result.sum_p += part.plan.sum_p();
      result.rho_max = std::max(result.rho_max, part.plan.rho);
    }

    for (std::size_t idx : members) heavier.push_back(&h.edge(idx));
    record.supervertices_after = count_components(n, heavier);
    std::size_t merged = 0;
    for (std::size_t size : record.component_sizes) merged += size - 1;
    if (merged != record.supervertices_before - record.supervertices_after) {
      throw InvariantViolation("bucket " + std::to_string(index) +
                               ": contracted components do not account for the merges");
    }
    result.buckets.push_back(std::move(record));
  }
  return result;
}

PipelineResult fast_sparsify(const WeightedHypergraph& h, const SparsifyParams& params) {
  require_epsilon(params.epsilon);
  PipelineResult result = empty_result(h, params);
  if (h.num_edges() == 0) return result;
  const WeightBuckets buckets = bucket_by_weight(h, params.epsilon);
  result.alpha = buckets.alpha;

  std::vector<std::pair<std::size_t, Rational>> kept;
  for (int parity : {0, 1}) {
    PipelineResult part = sparsify_parity(h, buckets, parity, params);
    for (std::size_t j = 0; j < part.sparsifier.num_edges(); ++j) {
      kept.emplace_back(part.source[j], part.sparsifier.edge(j).weight);
    }
    result.buckets.insert(result.buckets.end(), part.buckets.begin(), part.buckets.end());
    result.sum_p += part.sum_p;
    result.rho_max = std::max(result.rho_max, part.rho_max);
  }
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [idx, w] : kept) {
    result.sparsifier.add_edge(HyperEdge{h.edge(idx).vertices, std::move(w)});
    result.source.push_back(idx);
  }
  return result;
}

std::optional<std::string> check_bucket_records(const std::vector<BucketRecord>& records,
                                                std::size_t n) {
  std::size_t merged_by_parity[2] = {0, 0};
  for (const auto& r : records) {
    std::ostringstream where;
    where << "parity " << r.parity << " bucket " << r.index << ": ";
    if (r.weight_out > r.weight_in * 3) {
      return where.str() + "output weight " + format_rational(r.weight_out) +
             " exceeds 3x input weight " + format_rational(r.weight_in);
    }
    std::size_t merged = 0;
    for (std::size_t size : r.component_sizes) merged += size - 1;
    if (r.supervertices_after > r.supervertices_before ||
        merged != r.supervertices_before - r.supervertices_after) {
      return where.str() + "component sizes do not telescope";
    }
    merged_by_parity[r.parity & 1] += merged;
  }
  for (std::size_t total : merged_by_parity) {
    if (n > 0 && total > n - 1) return std::string("merges exceed n - 1 across buckets");
  }
  return std::nullopt;
}

SparsifierMeta meta_of(const PipelineResult& result, const SparsifyParams& params) {
  SparsifierMeta meta;
  meta.epsilon = rational_from_decimal(params.epsilon);
  meta.gamma = params.gamma;
  meta.d = params.d;
  meta.rho = result.rho_max;
  meta.seed = result.seed;
  meta.n = result.sparsifier.num_vertices();
  meta.m_in = result.m_in;
  meta.m_out = result.m_out();
  meta.sum_p = result.sum_p;
  return meta;
}

}  // namespace hypersparse
