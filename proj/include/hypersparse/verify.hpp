#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hypersparse/balance.hpp"
#include "hypersparse/hypergraph.hpp"
#include "hypersparse/rational.hpp"
#include "hypersparse/sparsify.hpp"

namespace hypersparse {

inline constexpr std::size_t kExhaustiveCutLimit = 20;

/// One cut (S, V \ S), identified by the bitmask of S with vertex 1 in S.
struct CutRecord {
  std::uint64_t cut_id = 0;
  Rational true_weight;
  Rational hat_weight;
  std::optional<Rational> rel_error;  // empty: infinite (zero true weight, nonzero estimate)
};

struct QualityReport {
  std::size_t n = 0;
  std::size_t m_in = 0;
  std::size_t m_out = 0;
  bool exhaustive = true;
  std::uint64_t cuts_evaluated = 0;
  std::vector<CutRecord> records;  // first record_cap cuts only
  Rational max_rel_error;
  bool max_infinite = false;
  double mean_rel_error = 0;
  Rational epsilon_target;
  bool pass = true;
  std::uint64_t seed = 0;
  std::optional<Rational> rho;
};

struct ReportOptions {
  std::size_t exhaustive_limit = kExhaustiveCutLimit;
  /// Random cuts to draw when n exceeds the limit (required then).
  std::uint64_t sample_count = 0;
  std::uint64_t sample_seed = 0;
  std::size_t record_cap = 0;
};

/// |w_hat(S) - w(S)| / w(S) over every cut when n <= exhaustive_limit (cuts
/// with 1 in S), else over sampled cuts. 0/0 counts as 0.
QualityReport all_cuts_report(const WeightedHypergraph& h, const WeightedHypergraph& hat,
                              const Rational& epsilon_target, const ReportOptions& options = {});

void write_report(std::ostream& out, const QualityReport& report);
/// Columns cut_id,true_w,hat_w,rel_err; infinite errors print as "inf".
void write_report_csv(std::ostream& out, const QualityReport& report);

/// For every i with E_i = {e : kappa_e >= rho 2^i} nonempty, every edge of E_i
/// lies in one connected component of the positive-weight pairs with strength
/// >= rho 2^i.
bool check_same_component(const BalancedAssignment& assignment, const SamplingPlan& plan);

/// sum_p <= rho gamma (n - 1), exact.
bool expected_size_check(const SamplingPlan& plan);

struct ConcentrationResult {
  std::size_t failure_count = 0;
  std::vector<QualityReport> reports;
};

/// Runs the unweighted sparsifier `trials` times with derived seeds (one
/// balancing run shared by all trials) and counts runs with an error above 2 eps.
ConcentrationResult concentration_trial(const WeightedHypergraph& h, const SparsifyParams& params,
                                        std::size_t trials, std::uint64_t seed);

}  // namespace hypersparse
