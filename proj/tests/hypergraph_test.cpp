#include <gtest/gtest.h>

#include <sstream>

#include "hypersparse/hypergraph.hpp"
#include "hypersparse/rational.hpp"
#include "instances.hpp"
#include "oracles.hpp"

namespace hs = hypersparse;
using hs::Rational;

namespace {

Rational q(const char* text) { return hs::parse_rational(text); }

std::string parse_error(const std::string& text) {
  try {
    hs::parse_hypergraph(text);
  } catch (const hs::ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Rational, ParsesDecimalsFractionsAndExponents) {
  EXPECT_EQ(q("12"), Rational(12));
  EXPECT_EQ(q("-3.25"), Rational(-13, 4));
  EXPECT_EQ(q("1e-3"), Rational(1, 1000));
  EXPECT_EQ(q("2.5E+4"), Rational(25000));
  EXPECT_EQ(q("7/9"), Rational(7, 9));
  EXPECT_EQ(q("0.015625"), Rational(1, 64));
  EXPECT_EQ(q("010"), Rational(10));
  EXPECT_THROW(q("abc"), std::invalid_argument);
  EXPECT_THROW(q("1/0"), std::invalid_argument);
  EXPECT_THROW(q(""), std::invalid_argument);
}

TEST(Rational, FormatRoundTrips) {
  for (const char* text : {"7", "2.5", "1/3", "-0.125", "123456789/1000"}) {
    const Rational x = q(text);
    EXPECT_EQ(q(hs::format_rational(x).c_str()), x) << text;
  }
  EXPECT_EQ(hs::format_rational(Rational(5, 2)), "2.5");
  EXPECT_EQ(hs::format_rational(Rational(1, 3)), "1/3");
  EXPECT_EQ(hs::rational_from_decimal(0.1), Rational(1, 10));
}

TEST(Parse, WeightedHeader) {
  const auto h = hs::parse_hypergraph("2 3 1\n1.0 1 2 3\n2.5 1 3\n");
  ASSERT_EQ(h.num_vertices(), 3u);
  ASSERT_EQ(h.num_edges(), 2u);
  EXPECT_EQ(h.edge(0).vertices, (std::vector<hs::Vertex>{1, 2, 3}));
  EXPECT_EQ(h.edge(0).weight, Rational(1));
  EXPECT_EQ(h.edge(1).vertices, (std::vector<hs::Vertex>{1, 3}));
  EXPECT_EQ(h.edge(1).weight, Rational(5, 2));
}

TEST(Parse, DeduplicatesAndSorts) {
  const auto h = hs::parse_hypergraph("1 4 1\n1 4 4 2\n");
  ASSERT_EQ(h.num_edges(), 1u);
  EXPECT_EQ(h.edge(0).vertices, (std::vector<hs::Vertex>{2, 4}));
  EXPECT_EQ(h.edge(0).weight, Rational(1));
}

TEST(Parse, VertexOutOfRange) {
  try {
    hs::parse_hypergraph("1 3 1\n1 2 5\n");
    FAIL() << "expected a parse error";
  } catch (const hs::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.detail(), "vertex id 5 out of range [1,3]");
  }
}

TEST(Parse, ErrorsCarryLineNumbers) {
  EXPECT_NE(parse_error("").find("line 1"), std::string::npos);
  EXPECT_NE(parse_error("1 3\n1 2\n").find("line 1"), std::string::npos);
  EXPECT_NE(parse_error("1 3 2\n1 2\n").find("line 1"), std::string::npos);
  EXPECT_NE(parse_error("1 3 1\n1 2 2\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("1 3 1\n0 1 2\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("1 3 1\n-1 1 2\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("2 3 1\n1 1 2\n").find("line"), std::string::npos);
  EXPECT_NE(parse_error("1 3 0\n1 x\n").find("line 2"), std::string::npos);
}

TEST(Parse, CommentsAndUnweightedFormat) {
  const auto h = hs::parse_hypergraph("% header next\n2 4 0\n% an edge\n1 2 3\n4 3");
  ASSERT_EQ(h.num_edges(), 2u);
  EXPECT_TRUE(h.is_unweighted());
  EXPECT_EQ(h.edge(1).vertices, (std::vector<hs::Vertex>{3, 4}));
}

TEST(Serialize, SingleEdgeAndEmpty) {
  hs::WeightedHypergraph h(3);
  h.add_edge({1, 2, 3}, 1);
  EXPECT_EQ(hs::serialize_hypergraph(h), "1 3 1\n1 1 2 3\n");
  EXPECT_EQ(hs::serialize_hypergraph(hs::WeightedHypergraph(5)), "0 5 1\n");
}

TEST(Serialize, RoundTripsEveryCorpusInstance) {
  for (const auto& item : instances::full_corpus()) {
    const auto text = hs::serialize_hypergraph(item.h);
    EXPECT_EQ(hs::parse_hypergraph(text), item.h) << item.name;
  }
}

TEST(Generators, SunflowerTwo) {
  const auto h = hs::gen_sunflower(2);
  EXPECT_EQ(h.num_vertices(), 4u);
  ASSERT_EQ(h.num_edges(), 2u);
  EXPECT_EQ(h.edge(0).vertices, (std::vector<hs::Vertex>{1, 3, 4}));
  EXPECT_EQ(h.edge(1).vertices, (std::vector<hs::Vertex>{2, 3, 4}));
  EXPECT_TRUE(h.is_unweighted());
  const auto one = hs::gen_sunflower(1);
  EXPECT_EQ(one.num_vertices(), 2u);
  EXPECT_EQ(one.edge(0).vertices, (std::vector<hs::Vertex>{1, 2}));
  EXPECT_THROW(hs::gen_sunflower(0), std::invalid_argument);
}

TEST(Generators, SunflowerPetalCutsWeighOne) {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto h = hs::gen_sunflower(n);
    EXPECT_EQ(h.total_weight(), Rational(static_cast<long>(n)));
    for (hs::Vertex i = 1; i <= n; ++i) {
      EXPECT_EQ(hs::cut_weight(h, hs::Cut::from_side(2 * n, {i})), Rational(1));
    }
  }
}

TEST(Generators, FootnoteGraph) {
  const auto three = hs::gen_footnote_graph(3);
  ASSERT_EQ(three.num_edges(), 4u);
  EXPECT_EQ(three.edge(0).vertices, (std::vector<hs::Vertex>{1, 2, 3}));
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(three.edge(i).weight, Rational(1, 9));
  EXPECT_THROW(hs::gen_footnote_graph(2), std::invalid_argument);

  const auto ten = hs::gen_footnote_graph(10);
  EXPECT_EQ(hs::cut_weight(ten, hs::Cut::from_side(10, {1, 2, 3, 4, 5})), Rational(5, 4));
  EXPECT_EQ(oracle::cut_weight(ten, 0b11111), Rational(5, 4));
  Rational lowest = 100;
  Rational highest = 0;
  for (std::uint64_t side = 1; side + 1 < (1u << 10); ++side) {
    const Rational w = oracle::cut_weight(ten, side);
    lowest = std::min(lowest, w);
    highest = std::max(highest, w);
  }
  EXPECT_EQ(lowest, Rational(109, 100));
  EXPECT_EQ(highest, Rational(5, 4));
  EXPECT_LE(highest, Rational(3, 2));
}

TEST(Generators, ExampleCounts) {
  const auto e1 = hs::gen_example(hs::ExampleFamily::kExample1, 3, 2);
  EXPECT_EQ(e1.num_edges(), 9u);
  for (const auto& e : e1.edges()) EXPECT_EQ(e.vertices.size(), 2u);

  for (auto [n, r] : {std::pair{4, 1}, {6, 1}, {8, 2}}) {
    const auto e2 = hs::gen_example(hs::ExampleFamily::kExample2, n, r);
    EXPECT_EQ(e2.num_edges(), 2 + 2 * hs::binomial(n, 2 * r));
    EXPECT_EQ(e2.num_vertices(), 2u * n);
  }
  const auto e2 = hs::gen_example(hs::ExampleFamily::kExample2, 8, 2);
  EXPECT_EQ(e2.edge(0).vertices, (std::vector<hs::Vertex>{1, 2, 3, 9}));
  EXPECT_EQ(e2.edge(1).vertices, (std::vector<hs::Vertex>{1, 2, 9, 10}));

  EXPECT_THROW(hs::gen_example(hs::ExampleFamily::kExample2, 6, 2), std::invalid_argument);
  EXPECT_THROW(hs::gen_example(hs::ExampleFamily::kExample2, 8, 2, 100), hs::CapExceeded);
  EXPECT_THROW(hs::gen_example(hs::ExampleFamily::kExample1, 20, 8), hs::CapExceeded);
}

TEST(Generators, RandomIsDeterministicAndBounded) {
  hs::RandomHypergraphParams p;
  p.n = 6;
  p.m = 10;
  p.max_rank = 4;
  p.seed = 7;
  const auto a = hs::gen_random(p);
  EXPECT_EQ(a, hs::gen_random(p));
  EXPECT_EQ(a.num_edges(), 10u);
  EXPECT_TRUE(a.is_unweighted());
  for (const auto& e : a.edges()) {
    EXPECT_GE(e.vertices.size(), 2u);
    EXPECT_LE(e.vertices.size(), 4u);
  }
  p.weighted = true;
  p.max_weight = 1000;
  const auto w = hs::gen_random(p);
  for (const auto& e : w.edges()) {
    EXPECT_GE(e.weight, Rational(1));
    EXPECT_LE(e.weight, Rational(1000));
  }
  p.seed = 8;
  EXPECT_NE(hs::gen_random(p), w);
}

TEST(Cut, RejectsEmptySides) {
  EXPECT_THROW(hs::Cut(std::vector<bool>{false, false}), std::invalid_argument);
  EXPECT_THROW(hs::Cut(std::vector<bool>{true, true}), std::invalid_argument);
}

TEST(Cut, LoneEdgeInsideSideDoesNotCross) {
  hs::WeightedHypergraph h(5);
  h.add_edge({1, 2, 3}, 4);
  EXPECT_EQ(hs::cut_weight(h, hs::Cut::from_side(5, {1, 2, 3})), Rational(0));
  EXPECT_EQ(hs::cut_weight(h, hs::Cut::from_side(5, {1, 2})), Rational(4));
}

TEST(Cut, MatchesOracleAndComplementOnCorpus) {
  for (const auto& item : instances::full_corpus()) {
    const std::size_t n = item.h.num_vertices();
    if (n > 12) continue;
    for (std::uint64_t side = 1; side + 1 < (std::uint64_t{1} << n); side += 7) {
      std::vector<bool> in(n);
      for (std::size_t v = 0; v < n; ++v) in[v] = (side >> v) & 1u;
      const hs::Cut cut(in);
      const Rational w = hs::cut_weight(item.h, cut);
      EXPECT_EQ(w, oracle::cut_weight(item.h, side)) << item.name;
      EXPECT_EQ(w, hs::cut_weight(item.h, cut.complement())) << item.name;
    }
  }
}

TEST(Hypergraph, RejectsInvalidEdges) {
  hs::WeightedHypergraph h(3);
  EXPECT_THROW(h.add_edge({1, 1}, 1), std::invalid_argument);
  EXPECT_THROW(h.add_edge({1, 4}, 1), std::invalid_argument);
  EXPECT_THROW(h.add_edge({1, 2}, 0), std::invalid_argument);
  EXPECT_THROW(h.add_edge({1, 2}, -1), std::invalid_argument);
}
