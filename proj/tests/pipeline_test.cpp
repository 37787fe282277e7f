#include <gtest/gtest.h>

#include <sstream>

#include "hypersparse/pipeline.hpp"
#include "hypersparse/rng.hpp"
#include "instances.hpp"
#include "oracles.hpp"

namespace hs = hypersparse;
using hs::Rational;
using hs::Vertex;

namespace {

hs::SparsifyParams params(double eps, std::uint64_t seed = 0) {
  hs::SparsifyParams p;
  p.epsilon = eps;
  p.seed = seed;
  return p;
}

hs::WeightedHypergraph random_weighted(std::uint64_t seed, std::size_t n, std::size_t m,
                                       std::uint64_t max_weight) {
  hs::RandomHypergraphParams p;
  p.n = n;
  p.m = m;
  p.max_rank = 4;
  p.weighted = true;
  p.max_weight = max_weight;
  p.seed = seed;
  return hs::gen_random(p);
}

Rational power(const Rational& base, int k) {
  Rational out = 1;
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}

}  // namespace

TEST(Buckets, Boundaries) {
  const Rational alpha = hs::pipeline_alpha(10, 0.5);
  EXPECT_EQ(alpha, Rational(8000));
  EXPECT_EQ(hs::pipeline_alpha(4, 1.0), Rational(160));

  hs::WeightedHypergraph equal(4);
  equal.add_edge({1, 2}, 3);
  equal.add_edge({2, 3}, 3);
  const auto one = hs::bucket_by_weight(equal, 0.5);
  ASSERT_EQ(one.buckets.size(), 1u);
  EXPECT_EQ(one.buckets.at(1), (std::vector<std::size_t>{0, 1}));

  hs::WeightedHypergraph two(10);
  two.add_edge({1, 2}, 1);
  two.add_edge({2, 3}, alpha + 1);
  two.add_edge({3, 4}, alpha);
  two.add_edge({4, 5}, alpha - Rational(1, 1000));
  const auto b = hs::bucket_by_weight(two, 0.5);
  EXPECT_EQ(b.w0, Rational(1));
  EXPECT_EQ(b.buckets.at(1), (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(b.buckets.at(2), (std::vector<std::size_t>{1, 2}));

  EXPECT_THROW(hs::bucket_by_weight(hs::WeightedHypergraph(3), 0.5), std::invalid_argument);
}

TEST(Buckets, PartitionWithRatioBelowAlpha) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    hs::Rng rng(seed);
    hs::WeightedHypergraph h(6);
    for (int i = 0; i < 15; ++i) {
      Rational w(static_cast<long>(rng.uniform_int(1, 1000)));
      w *= power(Rational(37), static_cast<int>(rng.uniform_int(0, 8)));
      h.add_edge(instances::pick(rng, {1, 2, 3, 4, 5, 6}, 2), w);
    }
    const auto b = hs::bucket_by_weight(h, 1.0);
    std::vector<int> seen(h.num_edges(), 0);
    for (const auto& [index, members] : b.buckets) {
      EXPECT_GE(index, 1u);
      Rational lo = h.edge(members.front()).weight;
      Rational hi = lo;
      for (std::size_t i : members) {
        ++seen[i];
        lo = std::min(lo, h.edge(i).weight);
        hi = std::max(hi, h.edge(i).weight);
        EXPECT_GE(h.edge(i).weight, b.w0 * power(b.alpha, static_cast<int>(index) - 1));
        EXPECT_LT(h.edge(i).weight, b.w0 * power(b.alpha, static_cast<int>(index)));
      }
      EXPECT_LT(hi, lo * b.alpha);
    }
    for (int count : seen) EXPECT_EQ(count, 1);
  }
}

TEST(Contraction, Examples) {
  hs::WeightedHypergraph layer(4);
  layer.add_edge({1, 3}, 5);
  layer.add_edge({1, 2}, 2);

  const auto identity = hs::contract_components(hs::WeightedHypergraph(4), layer);
  EXPECT_EQ(identity.contracted, layer);
  EXPECT_EQ(identity.dropped, 0u);

  hs::WeightedHypergraph higher(4);
  higher.add_edge({1, 2}, 100);
  higher.add_edge({3, 4}, 100);
  const auto c = hs::contract_components(higher, layer);
  EXPECT_EQ(c.map.num_super, 2u);
  EXPECT_EQ(c.map.super, (std::vector<Vertex>{1, 1, 2, 2}));
  ASSERT_EQ(c.contracted.num_edges(), 1u);
  EXPECT_EQ(c.contracted.edge(0).vertices, (std::vector<Vertex>{1, 2}));
  EXPECT_EQ(c.contracted.edge(0).weight, Rational(5));
  EXPECT_EQ(c.dropped, 1u);
  EXPECT_EQ(c.source, (std::vector<std::size_t>{0}));
}

TEST(Contraction, IsolatedVerticesStaySupervertices) {
  hs::WeightedHypergraph higher(5);
  higher.add_edge({2, 4}, 1);
  const auto c = hs::contract_components(higher, hs::WeightedHypergraph(5));
  EXPECT_EQ(c.map.super, (std::vector<Vertex>{1, 2, 3, 2, 4}));
}

TEST(Contraction, CutsMatchComponentRespectingCuts) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    hs::Rng rng(seed);
    const std::size_t n = rng.uniform_int(4, 9);
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{1});
    hs::WeightedHypergraph higher(n);
    hs::WeightedHypergraph layer(n);
    for (std::size_t i = rng.uniform_int(0, n - 2); i > 0; --i) {
      higher.add_edge(instances::pick(rng, all, rng.uniform_int(2, 3)), 1000);
    }
    for (std::size_t i = 0; i < 2 * n; ++i) {
      Rational w(static_cast<long>(rng.uniform_int(1, 9)), 2);
      w.canonicalize();
      layer.add_edge(instances::pick(rng, all, rng.uniform_int(2, 4)), w);
    }
    const auto c = hs::contract_components(higher, layer);
    const std::size_t k = c.map.num_super;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
      std::uint64_t side = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if ((mask >> (c.map.super[v] - 1)) & 1u) side |= std::uint64_t{1} << v;
      }
      EXPECT_EQ(oracle::cut_weight(c.contracted, mask), oracle::cut_weight(layer, side)) << seed;
    }
  }
}

TEST(Parity, HeavyBucketSwallowsLighterEvenBucket) {
  // alpha = 160 at n = 4, eps = 1
  const Rational alpha = hs::pipeline_alpha(4, 1.0);
  hs::WeightedHypergraph h(4);
  h.add_edge({1, 2}, 1);
  h.add_edge({1, 3}, 200);
  h.add_edge({2, 4}, 300);
  h.add_edge({3, 4}, 250);
  h.add_edge({1, 2, 3, 4}, power(alpha, 3) * 2);
  const auto buckets = hs::bucket_by_weight(h, 1.0);
  EXPECT_EQ(buckets.buckets.at(2).size(), 3u);
  EXPECT_EQ(buckets.buckets.at(4).size(), 1u);

  const auto even = hs::sparsify_parity(h, buckets, 0, params(1.0));
  ASSERT_EQ(even.buckets.size(), 2u);
  EXPECT_EQ(even.buckets[0].index, 4u);
  EXPECT_EQ(even.buckets[1].index, 2u);
  EXPECT_EQ(even.buckets[1].edges_dropped, 3u);
  EXPECT_EQ(even.buckets[1].edges_out, 0u);
  EXPECT_EQ(even.buckets[1].supervertices_before, 1u);
  EXPECT_FALSE(hs::check_bucket_records(even.buckets, 4));

  const auto full = hs::fast_sparsify(h, params(1.0));
  const auto err = oracle::max_rel_error(h, full.sparsifier);
  ASSERT_TRUE(err);
  EXPECT_LE(*err, Rational(1));
  EXPECT_FALSE(hs::check_bucket_records(full.buckets, 4));
}

TEST(Parity, SingleBucketMatchesWeightedPath) {
  const auto h = random_weighted(3, 8, 20, 100);
  const auto buckets = hs::bucket_by_weight(h, 0.5);
  ASSERT_EQ(buckets.buckets.size(), 1u);
  const auto odd = hs::sparsify_parity(h, buckets, 1, params(0.5, 4));
  const auto err = oracle::max_rel_error(h, odd.sparsifier);
  ASSERT_TRUE(err);
  EXPECT_LE(*err, Rational(1, 2));
  const auto even = hs::sparsify_parity(h, buckets, 0, params(0.5, 4));
  EXPECT_EQ(even.sparsifier.num_edges(), 0u);
  EXPECT_TRUE(even.buckets.empty());
}

TEST(FastSparsify, SingleEdge) {
  hs::WeightedHypergraph h(3);
  h.add_edge({1, 2, 3}, Rational(7, 3));
  const auto r = hs::fast_sparsify(h, params(0.5));
  EXPECT_EQ(r.sparsifier, h);
  EXPECT_EQ(r.source, (std::vector<std::size_t>{0}));
}

TEST(FastSparsify, EmptyInput) {
  const auto r = hs::fast_sparsify(hs::WeightedHypergraph(5), params(0.5));
  EXPECT_EQ(r.m_out(), 0u);
}

TEST(FastSparsify, HugeRatioStaysAccurate) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    hs::Rng rng(seed);
    auto h = random_weighted(seed, 10, 20, 10);
    const auto heavy = random_weighted(100 + seed, 10, 10, 10);
    for (const auto& e : heavy.edges()) h.add_edge(hs::HyperEdge{e.vertices, e.weight * Rational(1000000000)});
    const auto r = hs::fast_sparsify(h, params(0.5, seed));
    const auto err = oracle::max_rel_error(h, r.sparsifier);
    ASSERT_TRUE(err);
    EXPECT_LE(*err, Rational(1, 2));
    EXPECT_FALSE(hs::check_bucket_records(r.buckets, 10));
    for (std::size_t i = 1; i < r.source.size(); ++i) EXPECT_LE(r.source[i - 1], r.source[i]);
  }
}

TEST(FastSparsify, LowRatioMatchesDirectPathQuality) {
  const auto h = random_weighted(21, 9, 25, 50);
  const auto direct = hs::sparsify_weighted(h, params(0.5, 1));
  const auto piped = hs::fast_sparsify(h, params(0.5, 1));
  const auto a = oracle::max_rel_error(h, direct.sparsifier);
  const auto b = oracle::max_rel_error(h, piped.sparsifier);
  ASSERT_TRUE(a && b);
  EXPECT_LE(*a, Rational(1, 2));
  EXPECT_LE(*b, Rational(1, 2));
}

TEST(BucketRecords, DetectBrokenAccounting) {
  hs::BucketRecord r;
  r.parity = 0;
  r.index = 2;
  r.weight_in = 1;
  r.weight_out = 4;
  r.supervertices_before = 3;
  r.supervertices_after = 2;
  r.component_sizes = {2};
  const auto heavy = hs::check_bucket_records({r}, 5);
  ASSERT_TRUE(heavy);
  EXPECT_NE(heavy->find("3x"), std::string::npos);

  r.weight_out = 3;
  EXPECT_FALSE(hs::check_bucket_records({r}, 5));
  r.component_sizes = {3};
  EXPECT_TRUE(hs::check_bucket_records({r}, 5));
}

TEST(Stream, EpsilonInner) {
  EXPECT_DOUBLE_EQ(hs::stream_log_ratio(10, 10), 1.0);
  EXPECT_DOUBLE_EQ(hs::stream_log_ratio(10, 15), 1.0);
  EXPECT_DOUBLE_EQ(hs::stream_log_ratio(10, 80), 3.0);
  EXPECT_DOUBLE_EQ(hs::stream_epsilon_inner(10, 10, 0.5), 0.25);
  EXPECT_DOUBLE_EQ(hs::stream_epsilon_inner(10, 80, 0.6), 0.1);
}

TEST(Stream, ShortStreamEqualsOneShot) {
  const auto h = random_weighted(5, 8, 12, 20);
  hs::StreamParams sp;
  sp.n = 8;
  sp.m_bound = 16;
  sp.epsilon = 0.5;
  sp.seed = 3;
  sp.buffer_capacity = 50;
  const auto streamed = hs::stream_sparsify(h.edges(), sp);
  EXPECT_EQ(streamed.levels_used, 0u);
  EXPECT_EQ(streamed.reductions, 1u);
  auto p = params(streamed.epsilon_inner, hs::mix_seed(3, 0));
  const auto once = hs::fast_sparsify(h, p);
  EXPECT_EQ(streamed.sparsifier, once.sparsifier);
}

TEST(Stream, BoundaryBoundEqualsN) {
  hs::StreamParams sp;
  sp.n = 6;
  sp.m_bound = 6;
  sp.epsilon = 0.5;
  hs::StreamSparsifier s(sp);
  EXPECT_DOUBLE_EQ(s.epsilon_inner(), 0.25);
  for (int i = 0; i < 6; ++i) s.insert(hs::make_edge({1, static_cast<Vertex>(2 + i % 5)}, 1));
  EXPECT_THROW(s.insert(hs::make_edge({1, 2}, 1)), std::length_error);
  const auto r = s.finish();
  EXPECT_EQ(r.m_seen, 6u);
}

TEST(Stream, RejectsBadConfiguration) {
  hs::StreamParams sp;
  sp.n = 6;
  sp.m_bound = 5;
  EXPECT_THROW(hs::StreamSparsifier{sp}, std::invalid_argument);
  sp.m_bound = 60;
  sp.buffer_capacity = 5;
  EXPECT_THROW(hs::StreamSparsifier{sp}, std::invalid_argument);
  sp.buffer_capacity = 0;
  sp.epsilon = 2;
  EXPECT_THROW(hs::StreamSparsifier{sp}, std::invalid_argument);
  sp.epsilon = 0.5;
  hs::StreamSparsifier s(sp);
  EXPECT_THROW(s.insert(hs::make_edge({1, 7}, 1)), std::invalid_argument);
}

TEST(Stream, RandomStreamWithinEpsilonAndMemoryBound) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    hs::RandomHypergraphParams rp;
    rp.n = 10;
    rp.m = 200;
    rp.weighted = seed % 2 == 1;
    rp.seed = seed;
    const auto h = hs::gen_random(rp);
    hs::StreamParams sp;
    sp.n = 10;
    sp.m_bound = 200;
    sp.epsilon = 0.5;
    sp.seed = seed;
    sp.buffer_capacity = 30;
    const auto r = hs::stream_sparsify(h.edges(), sp);
    EXPECT_GT(r.levels_used, 1u);
    EXPECT_LE(static_cast<double>(r.high_water), r.high_water_bound());
    const auto err = oracle::max_rel_error(h, r.sparsifier);
    ASSERT_TRUE(err);
    EXPECT_LE(*err, Rational(1, 2));
  }
}

TEST(Stream, ReadsEdgeLines) {
  std::istringstream in("% comment\n1 2 3\n2 4\n\n3 1 4\n");
  hs::StreamParams sp;
  sp.n = 4;
  sp.m_bound = 8;
  const auto r = hs::stream_sparsify(in, false, sp);
  EXPECT_EQ(r.m_seen, 3u);
  EXPECT_EQ(r.sparsifier.num_edges(), 3u);

  std::istringstream bad("1 2\n1 9\n");
  try {
    hs::stream_sparsify(bad, false, sp);
    FAIL();
  } catch (const hs::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}
