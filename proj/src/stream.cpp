#include <algorithm>
#include <cmath>
#include <istream>
#include <stdexcept>

#include "hypersparse/pipeline.hpp"
#include "hypersparse/rng.hpp"

namespace hypersparse {

double stream_log_ratio(std::size_t n, std::uint64_t m_bound) {
  if (n == 0) throw std::invalid_argument("stream needs n >= 1");
  const double ratio = std::log2(static_cast<double>(m_bound) / static_cast<double>(n));
  return std::max(1.0, ratio);
}

double stream_epsilon_inner(std::size_t n, std::uint64_t m_bound, double epsilon) {
  return epsilon / (2.0 * stream_log_ratio(n, m_bound));
}

StreamSparsifier::StreamSparsifier(const StreamParams& params) : params_(params) {
  require_epsilon(params.epsilon);
  if (params.n < 2) throw std::invalid_argument("stream needs n >= 2");
  if (params.m_bound < params.n) throw std::invalid_argument("m_bound must be at least n");
  epsilon_inner_ = stream_epsilon_inner(params.n, params.m_bound, params.epsilon);
  capacity_ = params.buffer_capacity;
  if (capacity_ == 0) {
    Rational rho = params.rho_override ? *params.rho_override
                                       : theoretical_rho(params.n, params.d, params.gamma,
                                                         epsilon_inner_);
    const Rational f = rho * params.gamma * static_cast<long>(params.n - 1);
    const mpz_class ceil = -floor_rational(-f).get_num();
    capacity_ = ceil.fits_ulong_p() ? static_cast<std::size_t>(ceil.get_ui()) : SIZE_MAX;
    capacity_ = std::max(capacity_, params.n);
  }
  if (capacity_ < params.n) throw std::invalid_argument("buffer capacity must be at least n");
  f_measured_ = capacity_;
}

std::size_t StreamSparsifier::stored() const {
  std::size_t total = buffer_.size();
  for (const auto& level : levels_) {
    if (level) total += level->num_edges();
  }
  return total;
}

void StreamSparsifier::note_stored(std::size_t extra) {
  high_water_ = std::max(high_water_, stored() + extra);
}

WeightedHypergraph StreamSparsifier::reduce(const WeightedHypergraph& h) {
  SparsifyParams call;
  call.epsilon = epsilon_inner_;
  call.gamma = params_.gamma;
  call.d = params_.d;
  call.seed = mix_seed(params_.seed, reductions_++);
  call.rho_override = params_.rho_override;
  call.copy_cap = params_.copy_cap;
  PipelineResult out = fast_sparsify(h, call);
  f_measured_ = std::max(f_measured_, out.sparsifier.num_edges());
  last_rho_ = out.rho_max;
  last_sum_p_ = out.sum_p;
  return std::move(out.sparsifier);
}

void StreamSparsifier::insert(HyperEdge edge) {
  if (seen_ == params_.m_bound) throw std::length_error("stream exceeds m_bound");
  for (Vertex v : edge.vertices) {
    if (v < 1 || v > params_.n) {
      throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range [1," +
                                  std::to_string(params_.n) + "]");
    }
  }
  buffer_.push_back(make_edge(std::move(edge.vertices), std::move(edge.weight)));
  ++seen_;
  note_stored();
  if (buffer_.size() >= capacity_) flush();
}

void StreamSparsifier::flush() {
  WeightedHypergraph block(params_.n, std::move(buffer_));
  buffer_.clear();
  WeightedHypergraph carry = reduce(block);
  std::size_t j = 0;
  while (j < levels_.size() && levels_[j]) {
    note_stored(carry.num_edges());
    WeightedHypergraph merged = std::move(*levels_[j]);
    levels_[j].reset();
    for (const auto& e : carry.edges()) merged.add_edge(e);
    carry = reduce(merged);
    ++j;
  }
  if (j == levels_.size()) levels_.emplace_back();
  levels_[j] = std::move(carry);
  note_stored();
}

StreamResult StreamSparsifier::finish() {
  WeightedHypergraph all(params_.n, std::move(buffer_));
  buffer_.clear();
  std::size_t levels_used = 0;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    if (!levels_[j]) continue;
    levels_used = j + 1;
    for (const auto& e : levels_[j]->edges()) all.add_edge(e);
    levels_[j].reset();
  }

  StreamResult result;
  result.sparsifier = all.num_edges() == 0 ? WeightedHypergraph(params_.n) : reduce(all);
  result.m_seen = seen_;
  result.epsilon_inner = epsilon_inner_;
  result.log_ratio = stream_log_ratio(params_.n, params_.m_bound);
  result.buffer_capacity = capacity_;
  result.high_water = high_water_;
  result.f_measured = f_measured_;
  result.levels_used = levels_used;
  result.reductions = reductions_;
  result.final_rho = last_rho_;
  result.final_sum_p = last_sum_p_;
  if (static_cast<double>(result.high_water) > result.high_water_bound()) {
    throw InvariantViolation("stream stored " + std::to_string(result.high_water) +
                             " edges, above the bound " +
                             std::to_string(result.high_water_bound()));
  }
  return result;
}

StreamResult stream_sparsify(const std::vector<HyperEdge>& edges, const StreamParams& params) {
  StreamSparsifier stream(params);
  for (const auto& e : edges) stream.insert(e);
  return stream.finish();
}

StreamResult stream_sparsify(std::istream& in, bool weighted, const StreamParams& params) {
  StreamSparsifier stream(params);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '%') continue;
    stream.insert(parse_edge_line(line, params.n, weighted, line_number));
  }
  return stream.finish();
}

}  // namespace hypersparse
