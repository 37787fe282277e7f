#pragma once

// Sparsification for arbitrary weight ratios: edges are bucketed by weight on
// a geometric grid of ratio alpha = 10 n^2 / eps^3, and each parity class of
// buckets is sparsified from the heaviest bucket down, contracting the
// connected components formed by the heavier buckets of the same parity.
// Also the merge-and-reduce streaming wrapper built on top.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypersparse/hypergraph.hpp"
#include "hypersparse/rational.hpp"
#include "hypersparse/sparsify.hpp"

namespace hypersparse {

/// 10 n^2 / eps^3, exact.
Rational pipeline_alpha(std::size_t n, double epsilon);

struct WeightBuckets {
  Rational alpha;
  Rational w0;  // minimum edge weight
  /// Bucket i >= 1 holds the edges with weight in [w0 alpha^(i-1), w0 alpha^i).
  std::map<std::size_t, std::vector<std::size_t>> buckets;
};

WeightBuckets bucket_by_weight(const WeightedHypergraph& h, double epsilon);

/// Supervertex of each original vertex: connected components of the given
/// edges, isolated vertices included, numbered 1.. in order of smallest member.
struct ContractionMap {
  std::vector<Vertex> super;  // super[v - 1]
  std::size_t num_super = 0;

  Vertex operator()(Vertex v) const { return super[v - 1]; }
};

ContractionMap component_map(std::size_t n, const std::vector<const HyperEdge*>& edges);

struct Contraction {
  WeightedHypergraph contracted;  // over supervertices [1, num_super]
  std::vector<std::size_t> source;  // index into `layer` of each contracted edge
  ContractionMap map;
  std::size_t dropped = 0;  // edges that collapsed onto one supervertex
};

/// Maps every `layer` edge through the components of `higher`; both share the
/// vertex set [1, n]. Edges inside a single component are dropped.
Contraction contract_components(const WeightedHypergraph& higher, const WeightedHypergraph& layer);

/// Accounting for one bucket of one parity.
struct BucketRecord {
  int parity = 0;
  std::size_t index = 0;
  std::size_t edges_in = 0;
  std::size_t edges_dropped = 0;
  std::size_t edges_out = 0;
  Rational weight_in;
  Rational weight_out;
  std::size_t supervertices_before = 0;  // components of the heavier same-parity buckets
  std::size_t supervertices_after = 0;   // components once this bucket is added
  std::vector<std::size_t> component_sizes;  // supervertex counts of the contracted components
};

struct PipelineResult {
  WeightedHypergraph sparsifier;
  std::vector<std::size_t> source;
  std::vector<BucketRecord> buckets;
  Rational alpha;
  Rational rho_max;  // largest rho among the inner plans
  Rational sum_p;
  std::uint64_t seed = 0;
  std::size_t m_in = 0;

  std::size_t m_out() const { return sparsifier.num_edges(); }
};

/// Sparsifies the buckets of one parity (0 even, 1 odd), heaviest first.
/// Throws InvariantViolation if the per-bucket component accounting breaks.
PipelineResult sparsify_parity(const WeightedHypergraph& h, const WeightBuckets& buckets,
                               int parity, const SparsifyParams& params);

/// Union of the even and odd parity sparsifiers.
PipelineResult fast_sparsify(const WeightedHypergraph& h, const SparsifyParams& params);

/// Empty when every record satisfies weight_out <= 3 weight_in and the
/// component sizes telescope (sum of size - 1 equals the drop in supervertex
/// count, totalling at most n - 1 per parity); otherwise a description.
std::optional<std::string> check_bucket_records(const std::vector<BucketRecord>& records,
                                                std::size_t n);

SparsifierMeta meta_of(const PipelineResult& result, const SparsifyParams& params);

// ---------------------------------------------------------------------------
// Streaming

struct StreamParams {
  std::size_t n = 0;
  std::uint64_t m_bound = 0;
  double epsilon = 0.5;
  int gamma = 2;
  int d = 1;
  std::uint64_t seed = 0;
  std::optional<Rational> rho_override;
  /// Raw edges held before the first reduction; 0 picks ceil(rho gamma (n-1))
  /// at the inner epsilon. Must be at least n.
  std::size_t buffer_capacity = 0;
  std::size_t copy_cap = kDefaultEdgeCap;
};

/// max(1, log2(m_bound / n)).
double stream_log_ratio(std::size_t n, std::uint64_t m_bound);
/// eps / (2 max(1, log2(m_bound / n))).
double stream_epsilon_inner(std::size_t n, std::uint64_t m_bound, double epsilon);

struct StreamResult {
  WeightedHypergraph sparsifier;
  std::uint64_t m_seen = 0;
  double epsilon_inner = 0;
  double log_ratio = 0;
  std::size_t buffer_capacity = 0;
  std::size_t high_water = 0;
  std::size_t f_measured = 0;  // max(buffer capacity, largest reduction output)
  std::size_t levels_used = 0;
  std::size_t reductions = 0;
  Rational final_rho;  // rho and sum of p of the last reduction
  Rational final_sum_p;

  /// 2 log2^2(m_bound / n) f_measured with the log floored at 1.
  double high_water_bound() const { return 2.0 * log_ratio * log_ratio * static_cast<double>(f_measured); }
};

/// Single-pass merge-and-reduce. Level 0 collects raw edges; a full level 0 is
/// reduced and carried upward like a binary counter, merging with each
/// occupied level on the way.
class StreamSparsifier {
 public:
  explicit StreamSparsifier(const StreamParams& params);

  /// Throws std::length_error once more than m_bound edges arrive.
  void insert(HyperEdge edge);
  /// Reduces the union of everything stored once more. Throws
  /// InvariantViolation if the stored-edge high-water mark broke its bound.
  StreamResult finish();

  std::size_t stored() const;
  std::size_t high_water() const { return high_water_; }
  double epsilon_inner() const { return epsilon_inner_; }
  std::size_t buffer_capacity() const { return capacity_; }

 private:
  WeightedHypergraph reduce(const WeightedHypergraph& h);
  void flush();
  void note_stored(std::size_t extra = 0);

  StreamParams params_;
  double epsilon_inner_;
  std::size_t capacity_;
  std::vector<HyperEdge> buffer_;
  std::vector<std::optional<WeightedHypergraph>> levels_;
  std::uint64_t seen_ = 0;
  std::size_t high_water_ = 0;
  std::size_t f_measured_ = 0;
  std::size_t reductions_ = 0;
  Rational last_rho_ = 0;
  Rational last_sum_p_ = 0;
};

StreamResult stream_sparsify(const std::vector<HyperEdge>& edges, const StreamParams& params);

/// Reads edge lines (weighted or not) until end of input.
StreamResult stream_sparsify(std::istream& in, bool weighted, const StreamParams& params);

}  // namespace hypersparse
