#include "hypersparse/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "hypersparse/balance.hpp"
#include "hypersparse/graph.hpp"
#include "hypersparse/hypergraph.hpp"
#include "hypersparse/pipeline.hpp"
#include "hypersparse/rational.hpp"
#include "hypersparse/rng.hpp"
#include "hypersparse/sparsify.hpp"
#include "hypersparse/verify.hpp"

namespace hypersparse {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string family;
  std::size_t n = 0;
  std::size_t r = 2;
  std::size_t m = 30;
  std::size_t max_rank = 4;
  bool weighted = false;
  std::uint64_t max_weight = 10;

  std::string input;
  std::string output;
  double epsilon = 0.5;
  int gamma = 2;
  int d = 1;
  std::uint64_t seed = 0;
  std::string rho_override;
  std::size_t edge_cap = kDefaultEdgeCap;

  std::uint64_t m_bound = 0;
  std::size_t buffer = 0;
  std::string buckets_file;
  std::string trace_file;
  std::uint64_t iteration_cap = 0;

  std::string a;
  std::string b;
  std::string target;
  std::size_t exhaustive_limit = kExhaustiveCutLimit;
  std::uint64_t samples = 0;
  std::string csv_file;
};

WeightedHypergraph read_hypergraph(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open " + path);
  return parse_hypergraph(file);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
}

void check_params(const Options& o) {
  require_epsilon(o.epsilon);
  if (o.gamma < 2) throw UsageError("gamma must be an integer >= 2");
  if (o.d < 0) throw UsageError("d must be a nonnegative integer");
}

SparsifyParams sparsify_params(const Options& o) {
  check_params(o);
  SparsifyParams p;
  p.epsilon = o.epsilon;
  p.gamma = o.gamma;
  p.d = o.d;
  p.seed = o.seed;
  p.copy_cap = o.edge_cap;
  if (!o.rho_override.empty()) p.rho_override = parse_rational(o.rho_override);
  return p;
}

void write_sparsifier(const Options& o, const WeightedHypergraph& h, const SparsifierMeta& meta,
                      const std::string& extra, std::ostream& out) {
  write_text(o.output, serialize_hypergraph(h), out);
  if (o.output.empty() || o.output == "-") return;
  std::ostringstream text;
  write_meta(text, meta);
  text << extra;
  write_text(o.output + ".meta", text.str(), out);
}

void add_sparsify_flags(CLI::App* sub, Options& o) {
  sub->add_option("-o,--output", o.output, "Output hypergraph file (default: stdout)");
  sub->add_option("-e,--epsilon", o.epsilon, "Target error in (0,1]")->required();
  sub->add_option("-g,--gamma", o.gamma, "Balance factor, integer >= 2")->capture_default_str();
  sub->add_option("-d", o.d, "Failure exponent d >= 0")->capture_default_str();
  sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  sub->add_option("--rho-override", o.rho_override,
                  "Use this rho instead of the theoretical one (no guarantee)");
  sub->add_option("--edge-cap", o.edge_cap, "Limit on materialized edge copies")
      ->capture_default_str();
}

int run_gen(const Options& o, std::ostream& out) {
  WeightedHypergraph h;
  if (o.family == "sunflower") {
    h = gen_sunflower(o.n);
  } else if (o.family == "footnote") {
    h = gen_footnote_graph(o.n);
  } else if (o.family == "example1") {
    h = gen_example(ExampleFamily::kExample1, o.n, o.r, o.edge_cap);
  } else if (o.family == "example2") {
    h = gen_example(ExampleFamily::kExample2, o.n, o.r, o.edge_cap);
  } else {
    RandomHypergraphParams p;
    p.n = o.n;
    p.m = o.m;
    p.max_rank = o.max_rank;
    p.weighted = o.weighted;
    p.max_weight = o.max_weight;
    p.seed = o.seed;
    if (p.m > o.edge_cap) throw CapExceeded("random generator edge count exceeds the cap");
    h = gen_random(p);
  }
  write_text(o.output, serialize_hypergraph(h), out);
  return kExitOk;
}

int run_sparsify(const Options& o, std::ostream& out) {
  const auto params = sparsify_params(o);
  const auto h = read_hypergraph(o.input);
  const auto result = h.is_unweighted() ? sparsify_unweighted(h, params)
                                        : sparsify_weighted(h, params);
  std::ostringstream extra;
  extra << "path=" << (h.is_unweighted() ? "unweighted" : "weighted") << '\n'
        << "balanced=" << (result.balanced ? "true" : "false") << '\n'
        << "balance_iterations=" << result.balance_iterations << '\n'
        << "rng=" << Rng::kAlgorithm << '\n';
  write_sparsifier(o, result.sparsifier, meta_of(result, o.epsilon), extra.str(), out);
  return kExitOk;
}

int run_pipeline(const Options& o, std::ostream& out, std::ostream& err) {
  const auto params = sparsify_params(o);
  const auto h = read_hypergraph(o.input);
  const auto result = fast_sparsify(h, params);
  std::ostringstream extra;
  extra << "alpha=" << format_rational(result.alpha) << '\n'
        << "buckets=" << result.buckets.size() << '\n'
        << "rng=" << Rng::kAlgorithm << '\n';
  write_sparsifier(o, result.sparsifier, meta_of(result, params), extra.str(), out);
  if (!o.buckets_file.empty()) {
    std::ostringstream text;
    for (const auto& r : result.buckets) {
      text << "parity=" << r.parity << " bucket=" << r.index << " edges_in=" << r.edges_in
           << " dropped=" << r.edges_dropped << " edges_out=" << r.edges_out
           << " weight_in=" << format_rational(r.weight_in)
           << " weight_out=" << format_rational(r.weight_out)
           << " supervertices=" << r.supervertices_before << "->" << r.supervertices_after
           << '\n';
    }
    write_text(o.buckets_file, text.str(), out);
  }
  if (auto problem = check_bucket_records(result.buckets, h.num_vertices())) {
    err << "error: " << *problem << '\n';
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int run_stream(const Options& o, std::istream& in, std::ostream& out) {
  check_params(o);
  StreamParams p;
  p.n = o.n;
  p.m_bound = o.m_bound;
  p.epsilon = o.epsilon;
  p.gamma = o.gamma;
  p.d = o.d;
  p.seed = o.seed;
  p.buffer_capacity = o.buffer;
  p.copy_cap = o.edge_cap;
  if (!o.rho_override.empty()) p.rho_override = parse_rational(o.rho_override);
  const auto result = stream_sparsify(in, o.weighted, p);

  SparsifierMeta meta;
  meta.epsilon = rational_from_decimal(o.epsilon);
  meta.gamma = o.gamma;
  meta.d = o.d;
  meta.rho = result.final_rho;
  meta.seed = o.seed;
  meta.n = o.n;
  meta.m_in = result.m_seen;
  meta.m_out = result.sparsifier.num_edges();
  meta.sum_p = result.final_sum_p;
  std::ostringstream extra;
  extra << "epsilon_inner=" << result.epsilon_inner << '\n'
        << "buffer_capacity=" << result.buffer_capacity << '\n'
        << "levels=" << result.levels_used << '\n'
        << "reductions=" << result.reductions << '\n'
        << "high_water=" << result.high_water << '\n'
        << "high_water_bound=" << result.high_water_bound() << '\n'
        << "rng=" << Rng::kAlgorithm << '\n';
  write_sparsifier(o, result.sparsifier, meta, extra.str(), out);
  return kExitOk;
}

int run_strengths(const Options& o, std::ostream& out) {
  const auto h = read_hypergraph(o.input);
  CollapsedGraph<Rational> g(h.num_vertices());
  for (const auto& e : h.edges()) {
    const auto slots = clique_slots(e.vertices);
    const Rational share = e.weight / static_cast<unsigned long>(slots.size());
    for (auto [u, v] : slots) g.add(u, v, share);
  }
  const auto table = edge_strengths(g);
  const auto pairs = table.positive_pairs();
  std::ostringstream text;
  text << "% clique expansion with each edge weight split evenly over its pairs\n"
       << "% weight column: pair strength\n"
       << pairs.size() << ' ' << h.num_vertices() << " 1\n";
  for (auto [u, v] : pairs) text << format_rational(table.strength(u, v)) << ' ' << u << ' ' << v << '\n';
  write_text(o.output, text.str(), out);
  return kExitOk;
}

int run_balance_cmd(const Options& o, std::ostream& out) {
  if (o.gamma < 2) throw UsageError("gamma must be an integer >= 2");
  const auto h = read_hypergraph(o.input);
  if (!h.is_unweighted()) throw UsageError("balance needs an unweighted hypergraph");
  std::ofstream trace;
  if (!o.trace_file.empty()) {
    trace.open(o.trace_file);
    if (!trace) throw UsageError("cannot write " + o.trace_file);
  }
  BalanceObserver observer;
  if (trace.is_open()) {
    observer = [&](const BalanceState& state, const IterationRecord& record) {
      trace << format_trace_line(state, record) << '\n';
    };
  }
  std::optional<std::uint64_t> cap;
  if (o.iteration_cap > 0) cap = o.iteration_cap;
  const auto assignment = run_balance(h, o.gamma, cap, observer);
  const auto report = is_balanced(assignment, o.gamma);

  const auto& g = assignment.strengths.graph();
  const auto pairs = g.positive_pairs();
  const Rational delta = assignment.delta();
  std::ostringstream text;
  text << "% gamma=" << o.gamma << " iterations=" << assignment.iterations
       << " k0=" << format_rational(to_rational(assignment.k0) * delta) << " ell=" << assignment.ell
       << '\n'
       << "% balanced=" << (report.ok ? "true" : "false")
       << " violations=" << report.violations.size() << '\n';
  for (std::size_t c = 0; c < assignment.num_copies(); ++c) {
    text << "% copy " << c << " kappa=" << format_rational(to_rational(assignment.kappa(c)) * delta)
         << " kappa_max=" << format_rational(to_rational(assignment.kappa_max(c)) * delta)
         << " units=";
    auto w = assignment.slot_weights(c);
    for (std::size_t s = 0; s < w.size(); ++s) text << (s ? "," : "") << w[s];
    text << '\n';
  }
  for (const auto& v : report.violations) {
    text << "% violation copy=" << v.copy << " condition=" << v.condition << '\n';
  }
  text << "% weight column: collapsed pair weight\n"
       << pairs.size() << ' ' << assignment.n << " 1\n";
  for (auto [u, v] : pairs) text << format_rational(to_rational(g.weight(u, v)) * delta) << ' ' << u << ' ' << v << '\n';
  write_text(o.output, text.str(), out);
  return report.ok ? kExitOk : kExitVerifyFailed;
}

int run_verify(const Options& o, std::ostream& out) {
  const auto a = read_hypergraph(o.a);
  const auto b = read_hypergraph(o.b);
  Rational target;
  try {
    target = parse_rational(o.target);
  } catch (const std::invalid_argument&) {
    throw UsageError("malformed epsilon target '" + o.target + "'");
  }
  if (target < 0) throw UsageError("epsilon target must be nonnegative");
  ReportOptions options;
  options.exhaustive_limit = o.exhaustive_limit;
  options.sample_count = o.samples;
  options.sample_seed = o.seed;
  options.record_cap = o.csv_file.empty() ? 0 : std::numeric_limits<std::size_t>::max();
  const auto report = all_cuts_report(a, b, target, options);
  std::ostringstream text;
  write_report(text, report);
  write_text(o.output, text.str(), out);
  if (!o.csv_file.empty()) {
    std::ostringstream csv;
    write_report_csv(csv, report);
    write_text(o.csv_file, csv.str(), out);
  }
  return report.pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
             std::ostream& err) {
  Options o;
  CLI::App app{"Cut sparsifiers for weighted hypergraphs", "hypersparse"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a named or random hypergraph");
  gen->add_option("family", o.family, "sunflower | footnote | example1 | example2 | random")
      ->required()
      ->check(CLI::IsMember({"sunflower", "footnote", "example1", "example2", "random"}));
  gen->add_option("--n", o.n, "Size parameter (vertices, or half the vertices)")->required();
  gen->add_option("--r", o.r, "Edge size parameter of example1/example2")->capture_default_str();
  gen->add_option("--m", o.m, "Edge count (random)")->capture_default_str();
  gen->add_option("--max-rank", o.max_rank, "Largest edge size (random)")->capture_default_str();
  gen->add_flag("--weighted", o.weighted, "Random weights on a 1/1000 grid (random)");
  gen->add_option("--max-weight", o.max_weight, "Largest weight (random)")->capture_default_str();
  gen->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  gen->add_option("--edge-cap", o.edge_cap, "Refuse to emit more edges than this")
      ->capture_default_str();
  gen->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* sparsify = app.add_subcommand("sparsify", "Sparsify a hypergraph with bounded weight ratio");
  sparsify->add_option("-i,--input", o.input, "Input hypergraph file")->required();
  add_sparsify_flags(sparsify, o);

  auto* pipeline = app.add_subcommand("pipeline", "Sparsify a hypergraph with any weight ratio");
  pipeline->add_option("-i,--input", o.input, "Input hypergraph file")->required();
  add_sparsify_flags(pipeline, o);
  pipeline->add_option("--buckets", o.buckets_file, "Write per-bucket accounting to this file");

  auto* stream = app.add_subcommand("stream", "Sparsify edge lines read from standard input");
  stream->add_option("--n", o.n, "Vertex count")->required();
  stream->add_option("--m-bound", o.m_bound, "Upper bound on the stream length")->required();
  stream->add_flag("--weighted", o.weighted, "Edge lines start with a weight");
  stream->add_option("--buffer", o.buffer, "Raw edges buffered before a reduction (0: automatic)")
      ->capture_default_str();
  add_sparsify_flags(stream, o);

  auto* strengths = app.add_subcommand("strengths", "Dump edge strengths of the clique expansion");
  strengths->add_option("-i,--input", o.input, "Input hypergraph file")->required();
  strengths->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* balance = app.add_subcommand("balance", "Compute and check a balanced weight assignment");
  balance->add_option("-i,--input", o.input, "Input unweighted hypergraph file")->required();
  balance->add_option("-o,--output", o.output, "Output file (default: stdout)");
  balance->add_option("-g,--gamma", o.gamma, "Balance factor, integer >= 2")->capture_default_str();
  balance->add_option("--trace", o.trace_file, "Write one line per iteration to this file");
  balance->add_option("--iteration-cap", o.iteration_cap,
                      "Stop with an error after this many iterations (0: twice the bound)")
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Compare every cut of two hypergraphs");
  verify->add_option("-a", o.a, "Reference hypergraph file")->required();
  verify->add_option("-b", o.b, "Sparsifier file")->required();
  verify->add_option("-e,--epsilon", o.target, "Largest allowed relative cut error")->required();
  verify->add_option("--exhaustive-limit", o.exhaustive_limit,
                     "Enumerate all cuts up to this many vertices")
      ->capture_default_str();
  verify->add_option("--samples", o.samples, "Random cuts to check above the limit");
  verify->add_option("--seed", o.seed, "Seed for sampled cuts")->capture_default_str();
  verify->add_option("--csv", o.csv_file, "Write per-cut records to this file");
  verify->add_option("-o,--output", o.output, "Report file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(o, out);
    if (sparsify->parsed()) return run_sparsify(o, out);
    if (pipeline->parsed()) return run_pipeline(o, out, err);
    if (stream->parsed()) return run_stream(o, in, out);
    if (strengths->parsed()) return run_strengths(o, out);
    if (balance->parsed()) return run_balance_cmd(o, out);
    if (verify->parsed()) return run_verify(o, out);
  } catch (const InvariantViolation& e) {
    err << "error: internal invariant violated: " << e.what() << '\n';
    return kExitVerifyFailed;
  } catch (const BalanceCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hypersparse
