#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hypersparse/balance.hpp"
#include "hypersparse/hypergraph.hpp"
#include "hypersparse/rational.hpp"

namespace hypersparse {

/// Sampling probabilities p_e = min(1, rho / kappa_e). Entry i stands for
/// multiplicity[i] identical copies of edge i (1 for unweighted inputs).
struct SamplingPlan {
  std::size_t n = 0;
  int gamma = 2;
  int d = 1;
  Rational epsilon;
  Rational rho;
  bool rho_overridden = false;
  std::vector<Rational> kappa;
  std::vector<Rational> p;
  std::vector<std::uint64_t> multiplicity;

  std::size_t num_entries() const { return p.size(); }
  std::uint64_t num_copies() const;
  /// Sum of p over all copies.
  Rational sum_p() const;
  /// rho * gamma * (n - 1).
  Rational size_bound() const;
};

/// 8 (d + 6) gamma^2 ln(n) / (0.38 eps^2), rounded to 9 decimal places.
Rational theoretical_rho(std::size_t n, int d, int gamma, double epsilon);

/// Throws std::invalid_argument unless 0 < epsilon <= 1.
void require_epsilon(double epsilon);

SamplingPlan make_plan(const BalancedAssignment& assignment, double epsilon, int d,
                       const std::optional<Rational>& rho_override = std::nullopt);

struct SparsifierResult {
  WeightedHypergraph sparsifier;
  std::vector<std::size_t> source;  // input edge index of each output edge
  SamplingPlan plan;
  std::uint64_t seed = 0;
  std::size_t m_in = 0;
  bool balanced = false;  // false when balancing was skipped because every p_e is 1
  std::uint64_t balance_iterations = 0;

  std::size_t m_out() const { return sparsifier.num_edges(); }
};

/// Samples every copy independently (one draw per copy, in copy order). Edge i
/// is split into multiplicity[i] copies of weight w_i / multiplicity[i]; a kept
/// copy counts 1 / p_i times that, and kept copies of one edge are merged.
SparsifierResult sample_sparsifier(const WeightedHypergraph& h, const SamplingPlan& plan,
                                   std::uint64_t seed);

struct WeightedReduction {
  WeightedHypergraph copies;             // unweighted multi-hypergraph
  std::vector<std::size_t> source;       // input edge of each copy
  std::vector<std::uint64_t> multiplicity;  // copies per input edge
  Rational scale;                        // (3 / eps) / w_min
};

/// Rescales so the lightest edge weighs 3/eps and replaces each edge by
/// floor(scaled weight) unit copies. Throws CapExceeded beyond `copy_cap`.
WeightedReduction reduce_weighted(const WeightedHypergraph& h, double epsilon,
                                  std::size_t copy_cap = kDefaultEdgeCap);

/// Copy counts and scale of reduce_weighted without building the copies.
WeightedReduction reduction_counts(const WeightedHypergraph& h, double epsilon);

struct SparsifyParams {
  double epsilon = 0.5;
  int gamma = 2;
  int d = 1;
  std::uint64_t seed = 0;
  std::optional<Rational> rho_override;
  /// Limit on materialized copies (only needed when balancing runs).
  std::size_t copy_cap = kDefaultEdgeCap;
  /// Skip balancing when rho >= number of copies; every strength is at most
  /// the copy count then, so all p_e are 1 regardless of the assignment.
  bool skip_trivial_balance = true;
};

/// Balance, plan and sample an all-unit-weight hypergraph; (1 +- 2 eps) with
/// high probability under the theoretical rho.
SparsifierResult sparsify_unweighted(const WeightedHypergraph& h, const SparsifyParams& params);

/// Plan for an unweighted hypergraph without sampling it; exposed so repeated
/// trials can share one balancing run.
SparsifierResult plan_unweighted(const WeightedHypergraph& h, const SparsifyParams& params);

/// (1 +- eps) sparsifier of a weighted hypergraph via the copy reduction and
/// an inner unweighted run at eps / 6. Output edges are input edges, one per
/// input edge that kept at least one copy.
SparsifierResult sparsify_weighted(const WeightedHypergraph& h, const SparsifyParams& params);

/// The sidecar written next to a sparsifier file.
struct SparsifierMeta {
  Rational epsilon;
  int gamma = 2;
  int d = 1;
  Rational rho;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m_in = 0;
  std::size_t m_out = 0;
  Rational sum_p;
};

SparsifierMeta meta_of(const SparsifierResult& result, double epsilon);
void write_meta(std::ostream& out, const SparsifierMeta& meta);

}  // namespace hypersparse
