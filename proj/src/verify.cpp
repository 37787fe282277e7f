#include "hypersparse/verify.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>

#include "hypersparse/rng.hpp"

namespace hypersparse {
namespace {

using MaskWeights = std::vector<std::pair<std::uint64_t, Rational>>;

MaskWeights group_by_mask(const WeightedHypergraph& h) {
  std::map<std::uint64_t, Rational> grouped;
  for (const auto& e : h.edges()) {
    std::uint64_t mask = 0;
    for (Vertex v : e.vertices) mask |= std::uint64_t{1} << (v - 1);
    grouped[mask] += e.weight;
  }
  return {grouped.begin(), grouped.end()};
}

Rational crossing_weight(const MaskWeights& edges, std::uint64_t side, std::uint64_t full) {
  Rational total = 0;
  const std::uint64_t other = full & ~side;
  for (const auto& [mask, w] : edges) {
    if ((mask & side) != 0 && (mask & other) != 0) total += w;
  }
  return total;
}

class ReportBuilder {
 public:
  ReportBuilder(QualityReport& report, std::size_t record_cap)
      : report_(report), record_cap_(record_cap) {
    report_.max_rel_error = 0;
  }

  void add(std::uint64_t cut_id, Rational true_w, Rational hat_w) {
    CutRecord record{cut_id, std::move(true_w), std::move(hat_w), std::nullopt};
    if (record.true_weight == 0) {
      if (record.hat_weight == 0) record.rel_error = Rational(0);
    } else {
      record.rel_error = abs(record.hat_weight - record.true_weight) / record.true_weight;
    }
    if (!record.rel_error) {
      report_.max_infinite = true;
    } else {
      if (*record.rel_error > report_.max_rel_error) report_.max_rel_error = *record.rel_error;
      sum_ += record.rel_error->get_d();
    }
    ++report_.cuts_evaluated;
    if (report_.records.size() < record_cap_) report_.records.push_back(std::move(record));
  }

  void finish(const Rational& target) {
    report_.epsilon_target = target;
    if (report_.max_infinite) {
      report_.mean_rel_error = std::numeric_limits<double>::infinity();
    } else if (report_.cuts_evaluated > 0) {
      report_.mean_rel_error = sum_ / static_cast<double>(report_.cuts_evaluated);
    }
    report_.pass = !report_.max_infinite && report_.max_rel_error <= target;
  }

 private:
  QualityReport& report_;
  std::size_t record_cap_;
  double sum_ = 0;
};

}  // namespace

QualityReport all_cuts_report(const WeightedHypergraph& h, const WeightedHypergraph& hat,
                              const Rational& epsilon_target, const ReportOptions& options) {
  if (h.num_vertices() != hat.num_vertices()) {
    throw std::invalid_argument("hypergraphs have different vertex counts");
  }
  const std::size_t n = h.num_vertices();
  QualityReport report;
  report.n = n;
  report.m_in = h.num_edges();
  report.m_out = hat.num_edges();
  ReportBuilder builder(report, options.record_cap);

  const std::size_t limit = std::min<std::size_t>(options.exhaustive_limit, 63);
  if (n <= limit) {
    report.exhaustive = true;
    if (n >= 2) {
      const auto a = group_by_mask(h);
      const auto b = group_by_mask(hat);
      const std::uint64_t full = (std::uint64_t{1} << n) - 1;
      const std::uint64_t count = std::uint64_t{1} << (n - 1);
      for (std::uint64_t k = 0; k + 1 < count; ++k) {
        const std::uint64_t side = 2 * k + 1;
        builder.add(side, crossing_weight(a, side, full), crossing_weight(b, side, full));
      }
    }
  } else {
    if (options.sample_count == 0) {
      throw std::invalid_argument("n exceeds the exhaustive limit; a cut sample count is required");
    }
    report.exhaustive = false;
    report.seed = options.sample_seed;
    Rng rng(options.sample_seed);
    std::vector<bool> in_s(n);
    for (std::uint64_t t = 0; t < options.sample_count; ++t) {
      std::size_t inside = 0;
      do {
        inside = 0;
        for (std::size_t v = 0; v < n; ++v) {
          in_s[v] = (rng.next_u64() >> 63) != 0;
          inside += in_s[v];
        }
      } while (inside == 0 || inside == n);
      if (!in_s[0]) in_s.flip();
      const Cut cut(in_s);
      builder.add(t, cut_weight(h, cut), cut_weight(hat, cut));
    }
  }
  builder.finish(epsilon_target);
  return report;
}

void write_report(std::ostream& out, const QualityReport& report) {
  out << "n=" << report.n << '\n'
      << "m_in=" << report.m_in << '\n'
      << "m_out=" << report.m_out << '\n'
      << "exhaustive=" << (report.exhaustive ? "true" : "false") << '\n'
      << "cuts=" << report.cuts_evaluated << '\n'
      << "max_rel_error=" << (report.max_infinite ? "inf" : format_rational(report.max_rel_error))
      << '\n'
      << "mean_rel_error=" << report.mean_rel_error << '\n'
      << "epsilon_target=" << format_rational(report.epsilon_target) << '\n'
      << "pass=" << (report.pass ? "true" : "false") << '\n'
      << "seed=" << report.seed << '\n';
  if (report.rho) out << "rho=" << format_rational(*report.rho) << '\n';
}

void write_report_csv(std::ostream& out, const QualityReport& report) {
  out << "cut_id,true_w,hat_w,rel_err\n";
  for (const auto& r : report.records) {
    out << r.cut_id << ',' << format_rational(r.true_weight) << ','
        << format_rational(r.hat_weight) << ','
        << (r.rel_error ? format_rational(*r.rel_error) : std::string("inf")) << '\n';
  }
}

bool check_same_component(const BalancedAssignment& assignment, const SamplingPlan& plan) {
  if (plan.num_entries() != assignment.num_copies()) {
    throw std::invalid_argument("plan does not match the assignment");
  }
  const std::size_t n = assignment.n;
  const Rational delta = assignment.delta();
  const auto& graph = assignment.strengths.graph();
  const auto pairs = graph.positive_pairs();
  Rational threshold = plan.rho;
  while (true) {
    std::vector<std::size_t> heavy;
    for (std::size_t c = 0; c < plan.num_entries(); ++c) {
      if (plan.kappa[c] >= threshold) heavy.push_back(c);
    }
    if (heavy.empty()) return true;

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto [u, v] : pairs) {
      if (to_rational(assignment.strengths.strength(u, v)) * delta >= threshold) {
        parent[find(u - 1)] = find(v - 1);
      }
    }
    for (std::size_t c : heavy) {
      const auto& vertices = assignment.copies[c];
      const std::size_t root = find(vertices.front() - 1);
      for (Vertex v : vertices) {
        if (find(v - 1) != root) return false;
      }
    }
    threshold *= 2;
  }
}

bool expected_size_check(const SamplingPlan& plan) { return plan.sum_p() <= plan.size_bound(); }

ConcentrationResult concentration_trial(const WeightedHypergraph& h, const SparsifyParams& params,
                                        std::size_t trials, std::uint64_t seed) {
  ConcentrationResult out;
  if (trials == 0) return out;
  const SparsifierResult planned = plan_unweighted(h, params);
  const Rational target = rational_from_decimal(params.epsilon) * 2;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = mix_seed(seed, t);
    const SparsifierResult sample = sample_sparsifier(h, planned.plan, trial_seed);
    QualityReport report = all_cuts_report(h, sample.sparsifier, target);
    report.seed = trial_seed;
    report.rho = planned.plan.rho;
    if (!report.pass) ++out.failure_count;
    out.reports.push_back(std::move(report));
  }
  return out;
}

}  // namespace hypersparse
