#include "hypersparse/balance.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <sstream>

namespace hypersparse {

std::vector<Slot> clique_slots(const std::vector<Vertex>& vertices) {
  std::vector<Slot> slots;
  slots.reserve(vertices.size() * (vertices.size() - 1) / 2);
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      slots.emplace_back(vertices[a], vertices[b]);
    }
  }
  return slots;
}

std::vector<Units> initial_slot_weights(std::size_t slots, Units unit_total) {
  const auto q = static_cast<Units>(slots);
  const Units base = unit_total / q;
  const Units remainder = unit_total - q * base;
  std::vector<Units> w(slots, base);
  for (Units s = 0; s < remainder; ++s) w[static_cast<std::size_t>(s)] += 1;
  return w;
}

namespace detail {

std::size_t CopyBitset::find_first() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return npos;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// BalancedAssignment

Units BalancedAssignment::kappa(std::size_t copy) const {
  Units best = std::numeric_limits<Units>::max();
  for (auto [u, v] : clique_slots(copies[copy])) best = std::min(best, strengths.strength(u, v));
  return best;
}

Units BalancedAssignment::kappa_max(std::size_t copy) const {
  Units best = 0;
  auto slots = clique_slots(copies[copy]);
  auto w = slot_weights(copy);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (w[s] > 0) best = std::max(best, strengths.strength(slots[s].first, slots[s].second));
  }
  return best;
}

std::uint64_t BalancedAssignment::iteration_bound() const {
  return static_cast<std::uint64_t>(num_copies()) * static_cast<std::uint64_t>(ell) *
         static_cast<std::uint64_t>(unit_total);
}

// ---------------------------------------------------------------------------
// BalanceState

BalanceState BalanceState::init(const WeightedHypergraph& h, int gamma) {
  if (gamma < 2) throw std::invalid_argument("gamma must be an integer >= 2");
  if (!h.is_unweighted()) throw std::invalid_argument("balancing needs an unweighted hypergraph");

  BalanceState state;
  state.n_ = h.num_vertices();
  state.gamma_ = gamma;
  state.unit_total_ = static_cast<Units>(state.n_) * static_cast<Units>(state.n_);
  state.collapsed_ = CollapsedGraph<Units>(state.n_);

  std::map<std::vector<Vertex>, std::uint32_t> key_to_group;
  for (const auto& e : h.edges()) key_to_group.emplace(e.vertices, 0);
  std::uint32_t next = 0;
  for (auto& [key, id] : key_to_group) {
    id = next++;
    detail::BalanceGroup g;
    g.vertices = key;
    g.slots = clique_slots(key);
    g.slot_total.assign(g.slots.size(), 0);
    state.groups_.push_back(std::move(g));
  }

  const std::size_t m = h.num_edges();
  state.copy_group_.resize(m);
  state.copy_local_.resize(m);
  state.offsets_.reserve(m + 1);
  state.offsets_.push_back(0);
  for (std::size_t c = 0; c < m; ++c) {
    const std::uint32_t gid = key_to_group.at(h.edge(c).vertices);
    auto& g = state.groups_[gid];
    state.copy_group_[c] = gid;
    state.copy_local_[c] = static_cast<std::uint32_t>(g.copies.size());
    g.copies.push_back(c);
    state.offsets_.push_back(state.offsets_.back() + g.slots.size());
  }
  for (auto& g : state.groups_) g.holders.assign(g.slots.size(), detail::CopyBitset(g.copies.size()));

  state.weights_.resize(state.offsets_.back());
  for (std::size_t c = 0; c < m; ++c) {
    auto& g = state.groups_[state.copy_group_[c]];
    // slots = C(r, 2) <= C(n, 2) < n^2 / 2, so every slot starts with >= 2 units.
    const auto init = initial_slot_weights(g.slots.size(), state.unit_total_);
    for (std::size_t s = 0; s < g.slots.size(); ++s) {
      state.weights_[state.offsets_[c] + s] = init[s];
      g.slot_total[s] += init[s];
      g.holders[s].set(state.copy_local_[c]);
      state.collapsed_.add(g.slots[s].first, g.slots[s].second, init[s]);
    }
  }

  state.strengths_ = edge_strengths(state.collapsed_);
  if (m > 0) {
    Units lo = std::numeric_limits<Units>::max();
    Units hi = 0;
    for (const auto& g : state.groups_) {
      for (auto [u, v] : g.slots) {
        lo = std::min(lo, state.strengths_.strength(u, v));
        hi = std::max(hi, state.strengths_.strength(u, v));
      }
    }
    state.thresholds_.push_back(lo);
    while (state.thresholds_.back() <= hi) {
      state.thresholds_.push_back(state.thresholds_.back() * gamma);
    }
  }
  state.recompute_strengths();
  return state;
}

std::optional<int> BalanceState::interval_index(Units strength) const {
  if (thresholds_.empty() || strength < thresholds_.front() || strength > thresholds_.back()) {
    return std::nullopt;
  }
  if (strength == thresholds_.front()) return 0;
  for (std::size_t j = 1; j < thresholds_.size(); ++j) {
    if (strength <= thresholds_[j]) return static_cast<int>(j);
  }
  return std::nullopt;
}

void BalanceState::recompute_strengths() {
  strengths_ = edge_strengths(collapsed_);
  pair_ind_.assign(n_ * n_, -1);
  for (Vertex u = 1; u <= n_; ++u) {
    for (Vertex v = u + 1; v <= n_; ++v) {
      auto ind = interval_index(strengths_.strength(u, v));
      const int value = ind ? *ind : -1;
      pair_ind_[(u - 1) * n_ + (v - 1)] = value;
      pair_ind_[(v - 1) * n_ + (u - 1)] = value;
    }
  }
}

const std::vector<Vertex>& BalanceState::copy_vertices(std::size_t copy) const {
  return groups_[copy_group_[copy]].vertices;
}

const std::vector<Slot>& BalanceState::copy_slots(std::size_t copy) const {
  return groups_[copy_group_[copy]].slots;
}

Units BalanceState::kappa(std::size_t copy) const {
  Units best = std::numeric_limits<Units>::max();
  for (auto [u, v] : copy_slots(copy)) best = std::min(best, strengths_.strength(u, v));
  return best;
}

Units BalanceState::kappa_max(std::size_t copy) const {
  Units best = 0;
  const auto& slots = copy_slots(copy);
  auto w = slot_weights(copy);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (w[s] > 0) best = std::max(best, strengths_.strength(slots[s].first, slots[s].second));
  }
  return best;
}

Units BalanceState::weight_above(Units threshold) const {
  Units total = 0;
  for (auto [u, v] : collapsed_.positive_pairs()) {
    if (strengths_.strength(u, v) > threshold) total += collapsed_.weight(u, v);
  }
  return total;
}

Units BalanceState::total_units() const {
  Units total = 0;
  for (Units w : weights_) total += w;
  return total;
}

std::optional<BadCopy> BalanceState::find_max_bad() const {
  bool found = false;
  int best_ind = -1;
  std::size_t best_group = 0;
  std::size_t best_local = 0;

  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    const auto& g = groups_[gi];
    Units kappa = std::numeric_limits<Units>::max();
    int max_ind = -1;
    for (std::size_t s = 0; s < g.slots.size(); ++s) {
      auto [u, v] = g.slots[s];
      const int ind = pair_ind_[(u - 1) * n_ + (v - 1)];
      if (ind < 0) {
        throw InvariantViolation("slot strength left the initial interval [K0, K_ell]");
      }
      kappa = std::min(kappa, strengths_.strength(u, v));
      if (g.slot_total[s] > 0) max_ind = std::max(max_ind, ind);
    }
    if (max_ind < 2 || !(kappa < thresholds_[static_cast<std::size_t>(max_ind - 1)])) continue;
    if (found && max_ind <= best_ind) continue;

    // Only slots of the maximal interval matter: any copy holding weight in
    // one of them has ind(e) == max_ind.
    std::size_t local = detail::CopyBitset::npos;
    for (std::size_t s = 0; s < g.slots.size(); ++s) {
      auto [u, v] = g.slots[s];
      if (g.slot_total[s] > 0 && pair_ind_[(u - 1) * n_ + (v - 1)] == max_ind) {
        local = std::min(local, g.holders[s].find_first());
      }
    }
    found = true;
    best_ind = max_ind;
    best_group = gi;
    best_local = local;
  }
  if (!found) return std::nullopt;

  const auto& g = groups_[best_group];
  const std::size_t copy = g.copies[best_local];
  auto w = slot_weights(copy);
  std::size_t slot_min = 0;
  std::size_t slot_max = g.slots.size();
  for (std::size_t s = 0; s < g.slots.size(); ++s) {
    auto [u, v] = g.slots[s];
    const Units k = strengths_.strength(u, v);
    if (k < strengths_.strength(g.slots[slot_min].first, g.slots[slot_min].second)) slot_min = s;
    if (w[s] > 0 && (slot_max == g.slots.size() ||
                     k > strengths_.strength(g.slots[slot_max].first, g.slots[slot_max].second))) {
      slot_max = s;
    }
  }
  return BadCopy{copy, slot_min, slot_max, best_ind};
}

void BalanceState::transfer(const BadCopy& bad) {
  auto& g = groups_[copy_group_[bad.copy]];
  const std::size_t local = copy_local_[bad.copy];
  Units* w = weights_.data() + offsets_[bad.copy];
  if (bad.slot_min == bad.slot_max || bad.slot_max >= g.slots.size() ||
      bad.slot_min >= g.slots.size() || w[bad.slot_max] < 1) {
    throw InvariantViolation("transfer needs a positive source slot distinct from the target");
  }
  w[bad.slot_max] -= 1;
  w[bad.slot_min] += 1;
  g.slot_total[bad.slot_max] -= 1;
  g.slot_total[bad.slot_min] += 1;
  if (w[bad.slot_max] == 0) g.holders[bad.slot_max].reset(local);
  if (w[bad.slot_min] == 1) g.holders[bad.slot_min].set(local);
  collapsed_.add(g.slots[bad.slot_max].first, g.slots[bad.slot_max].second, -1);
  collapsed_.add(g.slots[bad.slot_min].first, g.slots[bad.slot_min].second, 1);
  recompute_strengths();
}

BalancedAssignment BalanceState::snapshot(std::uint64_t iterations) const {
  BalancedAssignment out;
  out.n = n_;
  out.gamma = gamma_;
  out.unit_total = unit_total_;
  out.copies.reserve(num_copies());
  for (std::size_t c = 0; c < num_copies(); ++c) out.copies.push_back(copy_vertices(c));
  out.offsets = offsets_;
  out.weights = weights_;
  out.strengths = strengths_;
  out.iterations = iterations;
  out.k0 = k0();
  out.ell = thresholds_.empty() ? 0 : ell();
  return out;
}

// ---------------------------------------------------------------------------

BalanceState init_weights(const WeightedHypergraph& h, int gamma) {
  return BalanceState::init(h, gamma);
}

std::optional<BadCopy> find_max_bad(const BalanceState& state) { return state.find_max_bad(); }

void transfer_step(BalanceState& state, const BadCopy& bad) { state.transfer(bad); }

BalancedAssignment run_balance(const WeightedHypergraph& h, int gamma,
                               std::optional<std::uint64_t> iteration_cap,
                               const BalanceObserver& observer) {
  BalanceState state = BalanceState::init(h, gamma);
  const std::uint64_t bound = static_cast<std::uint64_t>(state.num_copies()) *
                              static_cast<std::uint64_t>(std::max(state.ell(), 0)) *
                              static_cast<std::uint64_t>(state.unit_total());
  const std::uint64_t cap = iteration_cap.value_or(2 * bound);
  if (observer) observer(state, IterationRecord{0, std::nullopt});

  std::uint64_t iterations = 0;
  while (auto bad = state.find_max_bad()) {
    if (iterations >= cap) {
      throw BalanceCapExceeded("balancing exceeded " + std::to_string(cap) + " iterations");
    }
    state.transfer(*bad);
    ++iterations;
    if (observer) observer(state, IterationRecord{iterations, bad});
  }
  return state.snapshot(iterations);
}

BalanceReport is_balanced(const BalancedAssignment& assignment, int gamma) {
  const Rational delta = assignment.delta();
  CollapsedGraph<Rational> graph(assignment.n);
  std::vector<std::vector<Slot>> slots;
  slots.reserve(assignment.num_copies());
  for (std::size_t c = 0; c < assignment.num_copies(); ++c) {
    slots.push_back(clique_slots(assignment.copies[c]));
    auto w = assignment.slot_weights(c);
    for (std::size_t s = 0; s < slots.back().size(); ++s) {
      if (w[s] != 0) graph.add(slots.back()[s].first, slots.back()[s].second, to_rational(w[s]) * delta);
    }
  }
  const StrengthTable<Rational> table = edge_strengths(graph);

  BalanceReport report;
  for (std::size_t c = 0; c < assignment.num_copies(); ++c) {
    auto w = assignment.slot_weights(c);
    Rational sum = 0;
    bool have_kappa = false;
    Rational kappa = 0;
    Rational kappa_max = 0;
    for (std::size_t s = 0; s < slots[c].size(); ++s) {
      const Rational weight = to_rational(w[s]) * delta;
      sum += weight;
      const Rational& k = table.strength(slots[c][s].first, slots[c][s].second);
      if (!have_kappa || k < kappa) kappa = k;
      have_kappa = true;
      if (weight > 0 && k > kappa_max) kappa_max = k;
    }
    if (sum != 1) {
      report.violations.push_back({c, 1, sum, kappa, kappa_max});
    } else if (kappa_max > kappa * gamma) {
      report.violations.push_back({c, 2, sum, kappa, kappa_max});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

std::string format_trace_line(const BalanceState& state, const IterationRecord& record) {
  std::ostringstream out;
  out << record.iteration << ' ';
  if (record.bad) {
    const auto& vertices = state.copy_vertices(record.bad->copy);
    for (std::size_t i = 0; i < vertices.size(); ++i) out << (i ? "," : "") << vertices[i];
    const auto& slots = state.copy_slots(record.bad->copy);
    out << ' ' << record.bad->ind << ' ' << slots[record.bad->slot_min].first << '-'
        << slots[record.bad->slot_min].second << ' ' << slots[record.bad->slot_max].first << '-'
        << slots[record.bad->slot_max].second;
  } else {
    out << "- - - -";
  }
  std::vector<std::size_t> hist(static_cast<std::size_t>(std::max(state.ell(), 0)) + 1, 0);
  std::size_t outside = 0;
  for (auto [u, v] : state.collapsed().positive_pairs()) {
    if (auto ind = state.interval_index(state.strengths().strength(u, v))) {
      ++hist[static_cast<std::size_t>(*ind)];
    } else {
      ++outside;
    }
  }
  out << ' ';
  for (std::size_t j = 0; j < hist.size(); ++j) out << (j ? "," : "") << hist[j];
  if (outside) out << " outside=" << outside;
  return out.str();
}

}  // namespace hypersparse
