#include "hypersparse/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "hypersparse/rng.hpp"

namespace hypersparse {

Rational SamplingPlan::sum_p() const {
  Rational total = 0;
  for (std::size_t i = 0; i < p.size(); ++i) total += p[i] * Rational(mpz_class(multiplicity[i]));
  return total;
}

std::uint64_t SamplingPlan::num_copies() const {
  std::uint64_t total = 0;
  for (auto k : multiplicity) total += k;
  return total;
}

Rational SamplingPlan::size_bound() const {
  return rho * gamma * static_cast<long>(n > 0 ? n - 1 : 0);
}

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must be in (0,1]");
}

Rational theoretical_rho(std::size_t n, int d, int gamma, double epsilon) {
  require_epsilon(epsilon);
  if (d < 0) throw std::invalid_argument("d must be a nonnegative integer");
  const double rho = 8.0 * (d + 6) * gamma * gamma * std::log(static_cast<double>(n)) /
                     (0.38 * epsilon * epsilon);
  return rational_rounded(rho, 9);
}

namespace {

Rational choose_rho(std::size_t n, int d, int gamma, double epsilon,
                    const std::optional<Rational>& rho_override) {
  if (rho_override) {
    if (*rho_override <= 0) throw std::invalid_argument("rho override must be positive");
    return *rho_override;
  }
  return theoretical_rho(n, d, gamma, epsilon);
}

Rational probability(const Rational& rho, const Rational& kappa) {
  if (kappa <= rho) return Rational(1);
  return rho / kappa;
}

// kappa from the starting weights; only used when every p_e is 1 anyway.
SamplingPlan trivial_plan(const WeightedHypergraph& h,
                          const std::vector<std::uint64_t>& multiplicity, const Rational& rho) {
  const std::size_t n = h.num_vertices();
  const Units unit_total = static_cast<Units>(n) * static_cast<Units>(n);
  std::map<std::vector<Vertex>, std::uint64_t> copies_of;
  for (std::size_t i = 0; i < h.num_edges(); ++i) copies_of[h.edge(i).vertices] += multiplicity[i];
  CollapsedGraph<Units> graph(n);
  for (const auto& [vertices, count] : copies_of) {
    auto slots = clique_slots(vertices);
    auto init = initial_slot_weights(slots.size(), unit_total);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      graph.add(slots[s].first, slots[s].second, init[s] * static_cast<Units>(count));
    }
  }
  const auto table = edge_strengths(graph);
  std::map<std::vector<Vertex>, Rational> kappa_of;
  for (const auto& [vertices, count] : copies_of) {
    Units best = std::numeric_limits<Units>::max();
    for (auto [u, v] : clique_slots(vertices)) best = std::min(best, table.strength(u, v));
    kappa_of[vertices] = to_rational(best) / to_rational(unit_total);
  }
  SamplingPlan plan;
  plan.n = n;
  plan.rho = rho;
  plan.multiplicity = multiplicity;
  for (const auto& e : h.edges()) {
    plan.kappa.push_back(kappa_of.at(e.vertices));
    plan.p.push_back(probability(rho, plan.kappa.back()));
  }
  return plan;
}

// Plans multiplicity[i] unit copies of each edge of `h`, balancing unless that
// provably cannot change any p_e.
SparsifierResult plan_copies(const WeightedHypergraph& h,
                             const std::vector<std::uint64_t>& multiplicity,
                             const SparsifyParams& params, double epsilon) {
  const Rational rho =
      choose_rho(h.num_vertices(), params.d, params.gamma, epsilon, params.rho_override);
  std::uint64_t total = 0;
  for (auto k : multiplicity) total += k;

  SparsifierResult result;
  result.seed = params.seed;
  result.m_in = h.num_edges();
  if (params.skip_trivial_balance && rho >= Rational(mpz_class(total))) {
    result.plan = trivial_plan(h, multiplicity, rho);
  } else {
    if (total > params.copy_cap) {
      throw CapExceeded("balancing needs " + std::to_string(total) + " copies, cap is " +
                        std::to_string(params.copy_cap) +
                        "; use the pipeline for large weight ratios");
    }
    WeightedHypergraph copies(h.num_vertices());
    for (std::size_t i = 0; i < h.num_edges(); ++i) {
      for (std::uint64_t k = 0; k < multiplicity[i]; ++k) {
        copies.add_edge(HyperEdge{h.edge(i).vertices, Rational(1)});
      }
    }
    const auto assignment = run_balance(copies, params.gamma);
    const SamplingPlan per_copy = make_plan(assignment, epsilon, params.d, params.rho_override);
    // Copies of one edge share a vertex set, hence kappa and p.
    SamplingPlan plan;
    plan.n = per_copy.n;
    plan.rho = per_copy.rho;
    plan.multiplicity = multiplicity;
    std::size_t c = 0;
    for (std::size_t i = 0; i < h.num_edges(); ++i) {
      plan.kappa.push_back(per_copy.kappa[c]);
      plan.p.push_back(per_copy.p[c]);
      c += multiplicity[i];
    }
    result.plan = std::move(plan);
    result.balanced = true;
    result.balance_iterations = assignment.iterations;
  }
  result.plan.gamma = params.gamma;
  result.plan.d = params.d;
  result.plan.epsilon = rational_from_decimal(epsilon);
  result.plan.rho_overridden = params.rho_override.has_value();
  return result;
}

}  // namespace

SamplingPlan make_plan(const BalancedAssignment& assignment, double epsilon, int d,
                       const std::optional<Rational>& rho_override) {
  SamplingPlan plan;
  plan.n = assignment.n;
  plan.gamma = assignment.gamma;
  plan.d = d;
  plan.epsilon = rational_from_decimal(epsilon);
  plan.rho = choose_rho(assignment.n, d, assignment.gamma, epsilon, rho_override);
  plan.rho_overridden = rho_override.has_value();
  const Rational delta = assignment.delta();
  plan.kappa.reserve(assignment.num_copies());
  plan.p.reserve(assignment.num_copies());
  plan.multiplicity.assign(assignment.num_copies(), 1);
  for (std::size_t c = 0; c < assignment.num_copies(); ++c) {
    plan.kappa.push_back(to_rational(assignment.kappa(c)) * delta);
    plan.p.push_back(probability(plan.rho, plan.kappa.back()));
  }
  return plan;
}

SparsifierResult sample_sparsifier(const WeightedHypergraph& h, const SamplingPlan& plan,
                                   std::uint64_t seed) {
  if (plan.num_entries() != h.num_edges() || plan.multiplicity.size() != h.num_edges()) {
    throw std::invalid_argument("plan does not cover every edge");
  }
  SparsifierResult result;
  result.sparsifier = WeightedHypergraph(h.num_vertices());
  result.plan = plan;
  result.seed = seed;
  result.m_in = h.num_edges();
  Rng rng(seed);
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const std::uint64_t copies = plan.multiplicity[i];
    std::uint64_t kept = 0;
    if (plan.p[i] == 1) {
      rng.discard(copies);
      kept = copies;
    } else {
      for (std::uint64_t k = 0; k < copies; ++k) {
        if (Rational(rng.uniform01()) < plan.p[i]) ++kept;
      }
    }
    if (kept == 0) continue;
    Rational weight = h.edge(i).weight / plan.p[i];
    if (copies != 1) {
      Rational fraction{mpz_class(kept), mpz_class(copies)};
      fraction.canonicalize();
      weight *= fraction;
    }
    result.sparsifier.add_edge(HyperEdge{h.edge(i).vertices, std::move(weight)});
    result.source.push_back(i);
  }
  return result;
}

WeightedReduction reduction_counts(const WeightedHypergraph& h, double epsilon) {
  require_epsilon(epsilon);
  WeightedReduction out;
  out.copies = WeightedHypergraph(h.num_vertices());
  out.scale = 1;
  if (h.num_edges() == 0) return out;
  Rational w_min = h.edge(0).weight;
  for (const auto& e : h.edges()) w_min = std::min(w_min, e.weight);
  out.scale = Rational(3) / rational_from_decimal(epsilon) / w_min;
  out.multiplicity.reserve(h.num_edges());
  for (const auto& e : h.edges()) {
    const mpz_class count = floor_rational(e.weight * out.scale).get_num();
    if (!count.fits_ulong_p()) throw CapExceeded("weighted reduction copy count overflows");
    out.multiplicity.push_back(count.get_ui());
  }
  return out;
}

WeightedReduction reduce_weighted(const WeightedHypergraph& h, double epsilon,
                                  std::size_t copy_cap) {
  WeightedReduction out = reduction_counts(h, epsilon);
  std::uint64_t total = 0;
  for (auto k : out.multiplicity) {
    total += k;
    if (total > copy_cap) {
      throw CapExceeded("weighted reduction needs more than " + std::to_string(copy_cap) +
                        " copies; use the pipeline for large weight ratios");
    }
  }
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    for (std::uint64_t k = 0; k < out.multiplicity[i]; ++k) {
      out.copies.add_edge(HyperEdge{h.edge(i).vertices, Rational(1)});
      out.source.push_back(i);
    }
  }
  return out;
}

SparsifierResult plan_unweighted(const WeightedHypergraph& h, const SparsifyParams& params) {
  require_epsilon(params.epsilon);
  if (!h.is_unweighted()) throw std::invalid_argument("hypergraph is not unweighted");
  return plan_copies(h, std::vector<std::uint64_t>(h.num_edges(), 1), params, params.epsilon);
}

namespace {

SparsifierResult sample_planned(const WeightedHypergraph& h, const SparsifierResult& planned,
                                std::uint64_t seed) {
  SparsifierResult result = sample_sparsifier(h, planned.plan, seed);
  result.balanced = planned.balanced;
  result.balance_iterations = planned.balance_iterations;
  return result;
}

}  // namespace

SparsifierResult sparsify_unweighted(const WeightedHypergraph& h, const SparsifyParams& params) {
  return sample_planned(h, plan_unweighted(h, params), params.seed);
}

SparsifierResult sparsify_weighted(const WeightedHypergraph& h, const SparsifyParams& params) {
  require_epsilon(params.epsilon);
  const WeightedReduction counts = reduction_counts(h, params.epsilon);
  const auto planned = plan_copies(h, counts.multiplicity, params, params.epsilon / 6.0);
  return sample_planned(h, planned, params.seed);
}

SparsifierMeta meta_of(const SparsifierResult& result, double epsilon) {
  SparsifierMeta meta;
  meta.epsilon = rational_from_decimal(epsilon);
  meta.gamma = result.plan.gamma;
  meta.d = result.plan.d;
  meta.rho = result.plan.rho;
  meta.seed = result.seed;
  meta.n = result.sparsifier.num_vertices();
  meta.m_in = result.m_in;
  meta.m_out = result.m_out();
  meta.sum_p = result.plan.sum_p();
  return meta;
}

void write_meta(std::ostream& out, const SparsifierMeta& meta) {
  out << "epsilon=" << format_rational(meta.epsilon) << '\n'
      << "gamma=" << meta.gamma << '\n'
      << "d=" << meta.d << '\n'
      << "rho=" << format_rational(meta.rho) << '\n'
      << "seed=" << meta.seed << '\n'
      << "n=" << meta.n << '\n'
      << "m_in=" << meta.m_in << '\n'
      << "m_out=" << meta.m_out << '\n'
      << "sum_p=" << format_rational(meta.sum_p) << '\n';
}

}  // namespace hypersparse
