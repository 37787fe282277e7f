#pragma once

// Balanced weight assignment over the clique expansion of an unweighted
// multi-hypergraph. Each hyperedge copy spreads one unit of weight over the
// pairs ("slots") of its clique; weights move one grid step at a time from the
// strongest positive slot of a bad copy to its weakest slot until every copy
// satisfies max-positive-slot-strength <= gamma * min-slot-strength.
//
// All weights and strengths are integer multiples of delta = 1/n^2 and are
// stored as such (type Units).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypersparse/graph.hpp"
#include "hypersparse/hypergraph.hpp"
#include "hypersparse/rational.hpp"

namespace hypersparse {

using Units = std::int64_t;
using Slot = std::pair<Vertex, Vertex>;

/// Pairs of a sorted vertex list in lexicographic order; slot index s of a
/// copy refers to position s of this list.
std::vector<Slot> clique_slots(const std::vector<Vertex>& vertices);

/// Starting slot weights of one copy with `slots` slots: floor(unit_total / slots)
/// each, the remainder spread one unit at a time over the first slots.
std::vector<Units> initial_slot_weights(std::size_t slots, Units unit_total);

/// Final output of the balancing loop.
struct BalancedAssignment {
  std::size_t n = 0;
  int gamma = 2;
  Units unit_total = 0;  // n^2 units make weight 1
  std::vector<std::vector<Vertex>> copies;
  std::vector<std::size_t> offsets;  // slot weights of copy c: [offsets[c], offsets[c+1])
  std::vector<Units> weights;
  StrengthTable<Units> strengths;
  std::uint64_t iterations = 0;
  Units k0 = 0;
  int ell = 0;

  std::size_t num_copies() const { return copies.size(); }
  std::span<const Units> slot_weights(std::size_t copy) const {
    return {weights.data() + offsets[copy], offsets[copy + 1] - offsets[copy]};
  }
  Rational delta() const { return Rational(1) / to_rational(unit_total); }
  /// Minimum strength over all slots of the copy.
  Units kappa(std::size_t copy) const;
  /// Maximum strength over the copy's positive-weight slots.
  Units kappa_max(std::size_t copy) const;
  /// The termination bound m * ell * n^2.
  std::uint64_t iteration_bound() const;
};

struct BadCopy {
  std::size_t copy;
  std::size_t slot_min;
  std::size_t slot_max;
  int ind;
};

namespace detail {

class CopyBitset {
 public:
  explicit CopyBitset(std::size_t size = 0) : words_((size + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  /// Smallest set index, or npos.
  std::size_t find_first() const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::uint64_t> words_;
};

/// Copies sharing one vertex set. Per slot: the aggregate weight and the set
/// of copies holding positive weight there.
struct BalanceGroup {
  std::vector<Vertex> vertices;
  std::vector<Slot> slots;
  std::vector<std::size_t> copies;  // ascending global copy ids
  std::vector<Units> slot_total;
  std::vector<CopyBitset> holders;
};

}  // namespace detail

/// One balancing iteration as seen by observers; iteration 0 is the initial
/// state (no transfer, `bad` empty).
struct IterationRecord {
  std::uint64_t iteration = 0;
  std::optional<BadCopy> bad;
};

class BalanceState {
 public:
  /// Initial weights: base = floor(n^2 / q) units per slot for a copy with q
  /// slots, the remainder handed out one unit each to the first slots.
  /// Requires every edge weight to be exactly 1 and gamma >= 2.
  static BalanceState init(const WeightedHypergraph& h, int gamma);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_copies() const { return copy_group_.size(); }
  int gamma() const { return gamma_; }
  Units unit_total() const { return unit_total_; }
  Units k0() const { return thresholds_.empty() ? 0 : thresholds_.front(); }
  int ell() const { return static_cast<int>(thresholds_.size()) - 1; }
  /// K_i = K0 * gamma^i for 0 <= i <= ell.
  Units threshold(int i) const { return thresholds_[static_cast<std::size_t>(i)]; }

  /// ind(x): 0 for x == K0, j for x in (K_{j-1}, K_j]; nullopt outside [K0, K_ell].
  std::optional<int> interval_index(Units strength) const;

  const StrengthTable<Units>& strengths() const { return strengths_; }
  const CollapsedGraph<Units>& collapsed() const { return collapsed_; }

  const std::vector<Vertex>& copy_vertices(std::size_t copy) const;
  const std::vector<Slot>& copy_slots(std::size_t copy) const;
  std::span<const Units> slot_weights(std::size_t copy) const {
    return {weights_.data() + offsets_[copy], offsets_[copy + 1] - offsets_[copy]};
  }
  Units kappa(std::size_t copy) const;
  Units kappa_max(std::size_t copy) const;

  /// Total weight of pairs whose strength exceeds `threshold`.
  Units weight_above(Units threshold) const;
  /// Sum of all slot weights (constant: num_copies * n^2).
  Units total_units() const;

  /// Bad copy with maximum ind(e); ties go to the smallest vertex-set key,
  /// then the smallest copy index. Throws InvariantViolation if a slot
  /// strength left [K0, K_ell].
  std::optional<BadCopy> find_max_bad() const;

  /// Moves one unit from bad.slot_max to bad.slot_min and recomputes strengths.
  void transfer(const BadCopy& bad);

  BalancedAssignment snapshot(std::uint64_t iterations) const;

 private:
  BalanceState() = default;
  void recompute_strengths();

  std::size_t n_ = 0;
  int gamma_ = 2;
  Units unit_total_ = 0;
  std::vector<Units> thresholds_;
  std::vector<detail::BalanceGroup> groups_;
  std::vector<std::uint32_t> copy_group_;
  std::vector<std::uint32_t> copy_local_;
  std::vector<std::size_t> offsets_;
  std::vector<Units> weights_;
  CollapsedGraph<Units> collapsed_;
  StrengthTable<Units> strengths_;
  std::vector<int> pair_ind_;  // ind of each pair's strength, -1 if outside [K0, K_ell]
};

/// Raised when the iteration cap is hit; the loop provably terminates, so this
/// signals a bug rather than a hard instance.
class BalanceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using BalanceObserver = std::function<void(const BalanceState&, const IterationRecord&)>;

BalanceState init_weights(const WeightedHypergraph& h, int gamma);
std::optional<BadCopy> find_max_bad(const BalanceState& state);
void transfer_step(BalanceState& state, const BadCopy& bad);

/// Runs the balancing loop to completion. `iteration_cap` defaults to twice
/// the proven bound m * ell * n^2.
BalancedAssignment run_balance(const WeightedHypergraph& h, int gamma,
                               std::optional<std::uint64_t> iteration_cap = std::nullopt,
                               const BalanceObserver& observer = {});

struct BalanceViolation {
  std::size_t copy;
  int condition;  // 1: slot sum != 1, 2: kappa_max > gamma * kappa
  Rational slot_sum;
  Rational kappa;
  Rational kappa_max;
};

struct BalanceReport {
  bool ok = true;
  std::vector<BalanceViolation> violations;
};

/// Checks both balance conditions after recomputing strengths from scratch
/// over exact rationals (a separate instantiation of the strength code).
BalanceReport is_balanced(const BalancedAssignment& assignment, int gamma);

/// "<iteration> <key> <ind> <u>-<v> <u>-<v> <hist_0>,...,<hist_ell>"; the
/// histogram counts positive-weight pairs per strength interval.
std::string format_trace_line(const BalanceState& state, const IterationRecord& record);

}  // namespace hypersparse
