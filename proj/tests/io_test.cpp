// Copyright 2026 The widthapx Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <string>

#include "test_util.hpp"
#include "widthapx/clique_width.hpp"
#include "widthapx/errors.hpp"
#include "widthapx/families.hpp"
#include "widthapx/graph.hpp"
#include "widthapx/tree_decomposition.hpp"

namespace widthapx {
namespace {

TEST(GraphIo, ParsesSmallGraphs) {
  const Graph k2 = Graph::parse("p graph 2 1\ne 1 2\n");
  EXPECT_EQ(k2.n(), 2);
  EXPECT_EQ(k2.m(), 1);
  EXPECT_TRUE(k2.has_edge(0, 1));
  const Graph tri = Graph::parse("c triangle\np graph 3 3\ne 1 2\ne 2 3\ne 1 3\n");
  EXPECT_EQ(tri.m(), 3);
  EXPECT_EQ(tri.max_degree(), 2);
}

TEST(GraphIo, RejectsBadInput) {
  EXPECT_THROW(Graph::parse("p graph 2 1\ne 1 1\n"), std::exception);
  EXPECT_THROW(Graph::parse("p graph 2 2\ne 1 2\ne 2 1\n"), std::exception);
  EXPECT_THROW(Graph::parse("p graph 2 1\ne 1 3\n"), std::exception);
  EXPECT_THROW(Graph::parse("e 1 2\n"), ParseError);
  EXPECT_THROW(Graph::parse("p graph 2 1\nx 1 2\n"), ParseError);
}

TEST(GraphIo, AttributesRoundTrip) {
  Graph g(3);
  g.add_edge(0, 1, 4);
  g.add_edge(1, 2, 1);
  g.set_capacity(1, 2);
  g.set_cost(2, 5);
  const Graph back = Graph::parse(g.render());
  EXPECT_EQ(back, g);
  EXPECT_EQ(back.capacity(1), 2u);
  EXPECT_EQ(back.capacity(0), 0u);
  EXPECT_EQ(back.cost(2), 5u);
  EXPECT_EQ(back.cost(0), 1u);
  EXPECT_EQ(back.total_weight(), 5u);
}

TEST(GraphOps, InducedAndRelabel) {
  const Graph p4 = testing::path(4);
  std::vector<int> ids;
  const Graph sub = induced_subgraph(p4, {1, 1, 0, 1}, &ids);
  EXPECT_EQ(sub.n(), 3);
  EXPECT_EQ(sub.m(), 1);
  EXPECT_EQ(ids, (std::vector<int>{0, 1, 3}));
  const Graph r = relabel(p4, {3, 2, 1, 0});
  EXPECT_TRUE(r.has_edge(3, 2));
  EXPECT_TRUE(r.has_edge(1, 0));
  EXPECT_FALSE(r.has_edge(3, 0));
}

CwExpression k2_expression() {
  CwExpression e(2);
  const int a = e.add_introduce(0, 0);
  const int b = e.add_introduce(1, 1);
  e.set_root(e.add_join(e.add_union(a, b), 0, 1));
  return e;
}

TEST(CliqueWidth, K2Expression) {
  const CwExpression e = k2_expression();
  e.validate();
  EXPECT_EQ(e.width(), 2);
  EXPECT_EQ(e.vertex_count(), 2);
  EXPECT_TRUE(validate_cw_against_graph(e, testing::complete(2)).ok);
  const CwValidationReport bad = validate_cw_against_graph(e, Graph(2));
  EXPECT_FALSE(bad.ok);
  ASSERT_EQ(bad.extra.size(), 1u);
  EXPECT_EQ(bad.extra[0], std::make_pair(0, 1));
  EXPECT_EQ(CwExpression::parse(e.render()), e);
}

TEST(CliqueWidth, RejoinIsRejected) {
  CwExpression e = k2_expression();
  e.set_root(e.add_join(e.root(), 0, 1));
  EXPECT_THROW(e.validate(), ValidationError);
  EXPECT_THROW(CwExpression::parse("cwd 2 4\n1 i 1 1\n2 i 2 2\n3 u 1 2\n4 j 3 1 1\nroot 4\n"),
               std::exception);
}

TEST(CliqueWidth, LabelSizesAndClasses) {
  const CwExpression e = k2_expression();
  const auto sizes = e.label_sizes();
  EXPECT_EQ(sizes[e.root()], (std::vector<int>{1, 1}));
  const auto classes = e.label_classes(e.root());
  EXPECT_EQ(classes[0], (std::vector<int>{0}));
  EXPECT_EQ(classes[1], (std::vector<int>{1}));
}

TEST(TreeDecomposition, PaceP4) {
  const TreeDecomposition td =
      TreeDecomposition::parse("s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n");
  td.validate_against(testing::path(4));
  EXPECT_EQ(td.width(), 1);
  const TreeDecomposition wide =
      TreeDecomposition::parse("s td 3 3 4\nb 1 1 2 3\nb 2 2 3 4\nb 3 3 4\n1 2\n2 3\n");
  wide.validate_against(testing::path(4));
  EXPECT_EQ(wide.width(), 2);
  EXPECT_EQ(TreeDecomposition::parse(td.render()), td);
}

TEST(TreeDecomposition, AxiomViolations) {
  // Vertex 1 in two bags that are not connected through bags holding it.
  EXPECT_THROW(
      TreeDecomposition::parse("s td 3 2 3\nb 1 1 2\nb 2 2 3\nb 3 1 3\n1 2\n2 3\n").validate(),
      ValidationError);
  EXPECT_THROW(TreeDecomposition::parse("s td 1 2 3\nb 1 1 2\n"), ValidationError);
  TreeDecomposition short_td(3);
  short_td.add_bag({0, 1});
  short_td.add_bag({1, 2});
  short_td.add_tree_edge(0, 1);
  EXPECT_NO_THROW(short_td.validate_against(testing::path(3)));
  EXPECT_THROW(short_td.validate_against(testing::complete(3)), ValidationError);
}

TEST(MakeNice, SingleBag) {
  TreeDecomposition td(2);
  td.add_bag({0, 1});
  const NiceDecomposition nice = make_nice(td);
  const Graph k2 = testing::path(2);
  nice.validate(&k2);
  EXPECT_EQ(nice.width(), 1);
  EXPECT_TRUE(nice.node(nice.root()).bag.empty());
  int introduces = 0;
  for (int i = 0; i < nice.size(); ++i) introduces += nice.node(i).kind == NiceKind::kIntroduce;
  EXPECT_EQ(introduces, 2);
}

TEST(MakeNice, PreservesCoverage) {
  const Graph p4 = testing::path(4);
  const TreeDecomposition td =
      TreeDecomposition::parse("s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n");
  const NiceDecomposition nice = make_nice(td);
  nice.validate(&p4);
  nice.to_tree_decomposition().validate_against(p4);
}

TEST(MakeNice, BranchingDecompositionsValidate) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const Graph g = testing::random_graph(3 + t % 10, 0.4, rng);
    const NiceDecomposition nice = testing::nice_of(g);
    nice.validate(&g);
    EXPECT_EQ(nice.width(), elimination_td(g).width());
  }
}

TEST(Families, CertificatesMatchTheirGraphs) {
  const FamilyInstance k4 = generate_family(FamilyKind::kClique, 4, 1);
  EXPECT_EQ(k4.graph.m(), 6);
  ASSERT_TRUE(k4.cw);
  EXPECT_EQ(k4.cw->width(), 2);
  EXPECT_TRUE(validate_cw_against_graph(*k4.cw, k4.graph).ok);

  const FamilyInstance p4 = generate_family(FamilyKind::kPath, 4, 1);
  ASSERT_TRUE(p4.td);
  EXPECT_EQ(p4.td->width(), 1);
  p4.td->validate_against(p4.graph);

  const FamilyInstance c50 = generate_family(FamilyKind::kCograph, 50, 7);
  ASSERT_TRUE(c50.cw);
  EXPECT_EQ(c50.cw->width(), 2);
  EXPECT_TRUE(validate_cw_against_graph(*c50.cw, c50.graph).ok);
}

TEST(Families, GeneratorsAreSelfConsistent) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const FamilyInstance c = generate_family(FamilyKind::kCograph, 5 + seed % 40, seed);
    ASSERT_TRUE(validate_cw_against_graph(*c.cw, c.graph).ok) << seed;
  }
  for (FamilyKind kind : {FamilyKind::kClique, FamilyKind::kPath, FamilyKind::kCycle,
                          FamilyKind::kStar, FamilyKind::kGnp}) {
    for (int n : {3, 7, 12}) {
      const FamilyInstance f = generate_family(kind, n, 3);
      ASSERT_TRUE(f.cw && f.td) << to_string(kind);
      EXPECT_TRUE(validate_cw_against_graph(*f.cw, f.graph).ok) << to_string(kind);
      f.td->validate_against(f.graph);
    }
  }
  FamilyOptions o;
  o.k = 3;
  o.keep_prob = 0.6;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const FamilyInstance t = generate_family(FamilyKind::kKTree, 30, seed, o);
    ASSERT_TRUE(t.td);
    EXPECT_LE(t.td->width(), 3);
    t.td->validate_against(t.graph);
  }
}

TEST(Families, SameSeedSameGraph) {
  EXPECT_EQ(generate_family(FamilyKind::kGnp, 20, 5).graph,
            generate_family(FamilyKind::kGnp, 20, 5).graph);
  EXPECT_EQ(parse_family_kind("ktree"), FamilyKind::kKTree);
}

TEST(Families, OrderingExpressionFitsAnyGraph) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const Graph g = testing::random_graph(1 + t % 14, 0.35, rng);
    const CwExpression e = ordering_cw(g);
    e.validate();
    EXPECT_TRUE(validate_cw_against_graph(e, g).ok);
  }
}

}  // namespace
}  // namespace widthapx
