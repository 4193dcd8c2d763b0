// Copyright 2026 The PGQP Authors
//
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

#include <filesystem>

#include "bench/campaign.hpp"
#include "bench/synthetic.hpp"
#include "common/error.hpp"
#include "common/text.hpp"
#include "fixtures.hpp"
#include "match/oracle.hpp"
#include "test_util.hpp"

namespace pgqp {
namespace {

using testing::random_graph;
using testing::read_data;

Graph five_node_template() {
  return parse_graph("v 1 T0\nv 2 T1\nv 3 T2\nv 4 T3\nv 5 T4\nu 1 2 t0\nu 2 3 t1\nu 3 4 t0\nu 2 5 t2\nu 4 5 t1\n");
}

TEST(SyntheticTest, PureRandomGraph) {
  SyntheticParams p;
  p.vertices = 500;
  p.edges = 1500;
  p.vertex_labels = 20;
  p.edge_labels = 7;
  p.seed = 3;
  auto g = generate_synthetic(p, Graph{});
  EXPECT_EQ(g.vertex_count(), 500u);
  EXPECT_EQ(g.edge_count(), 1500u);
  for (VertexIndex i = 0; i < g.vertex_count(); ++i) {
    EXPECT_EQ(g.vid(i), i + 1);
    EXPECT_EQ(g.label_of(i)[0], 'v');
  }
  for (const auto& e : g.edges()) EXPECT_NE(e.src, e.dst);
  EXPECT_TRUE(structurally_equal(g, generate_synthetic(p, Graph{})));
  p.seed = 4;
  EXPECT_FALSE(structurally_equal(g, generate_synthetic(p, Graph{})));
}

TEST(SyntheticTest, DisjointAlphabetGivesExactEmbeddingCount) {
  SyntheticParams p;
  p.vertices = 1000;
  p.edges = 2500;
  p.vertex_labels = 30;
  p.edge_labels = 5;
  p.embed_count = 20;
  p.seed = 8;
  auto templ = five_node_template();
  auto g = generate_synthetic(p, templ);
  EXPECT_EQ(g.vertex_count(), 1000u);
  EXPECT_EQ(g.edge_count(), 2500u);
  auto answers = oracle_match(g, template_query(templ));
  EXPECT_EQ(answers.size(), 20u);
  std::set<VertexId> used;
  for (const auto& [key, a] : answers)
    for (const auto& [q, b] : a.bindings) EXPECT_TRUE(used.insert(b.vid).second);
}

TEST(SyntheticTest, SharedAlphabetGivesAtLeastEmbeddingCount) {
  SyntheticParams p;
  p.vertices = 300;
  p.edges = 1200;
  p.vertex_labels = 2;
  p.edge_labels = 1;
  p.embed_count = 10;
  p.seed = 2;
  auto templ = parse_graph("v 1 v0\nv 2 v1\nv 3 v0\nu 1 2 e0\nu 2 3 e0\n");
  auto g = generate_synthetic(p, templ);
  EXPECT_GE(oracle_match(g, template_query(templ)).size(), 10u);
}

TEST(SyntheticTest, WindowBoundsRandomEdges) {
  SyntheticParams p;
  p.vertices = 2000;
  p.edges = 6000;
  p.vertex_labels = 4;
  p.edge_labels = 2;
  p.window = 25;
  auto g = generate_synthetic(p, Graph{});
  for (const auto& e : g.edges()) {
    auto d = e.src > e.dst ? e.src - e.dst : e.dst - e.src;
    EXPECT_LE(d, 25u);
  }
}

TEST(SyntheticTest, InfeasibleParameters) {
  auto templ = five_node_template();
  SyntheticParams p;
  p.vertices = 9;
  p.edges = 100;
  p.embed_count = 2;
  EXPECT_THROW(generate_synthetic(p, templ), ArgumentError);
  p.vertices = 100;
  p.edges = 9;
  EXPECT_THROW(generate_synthetic(p, templ), ArgumentError);
  p.edges = 100;
  p.vertex_labels = 0;
  EXPECT_THROW(generate_synthetic(p, templ), ArgumentError);
  p.vertex_labels = 1;
  p.vertices = 1;
  p.embed_count = 0;
  EXPECT_THROW(generate_synthetic(p, templ), ArgumentError);
}

struct Matrix {
  testing::Setup base;
  std::vector<std::unique_ptr<MemoryPartitionStore>> stores;
  CampaignSpec spec;
};

Matrix small_matrix(std::size_t queries, std::size_t schemes) {
  Matrix m;
  m.base = testing::random_setup(random_graph(120, 300, 4, 2, 17), 4, 17);
  for (std::size_t s = 0; s < schemes; ++s) {
    auto a = partition_builtin(m.base.graph, 4, 1);
    if (s > 0) {
      std::mt19937_64 rng(s);
      std::string lines;
      for (std::size_t i = 0; i < m.base.graph.vertex_count(); ++i) lines += std::to_string(rng() % 4) + "\n";
      a = import_assignment(m.base.graph, lines, 4, "s" + std::to_string(s));
    }
    m.stores.push_back(std::make_unique<MemoryPartitionStore>(extend_with_cutset(m.base.graph, a),
                                                              "scheme" + std::to_string(s)));
    m.spec.schemes.push_back({"scheme" + std::to_string(s), m.stores.back().get()});
  }
  for (std::size_t q = 0; q < queries; ++q)
    m.spec.queries.push_back({"q" + std::to_string(q), testing::sampled_query(m.base.graph, 3 + q % 3, 1, 40 + q)});
  m.spec.random_seeds = 5;
  return m;
}

TEST(CampaignTest, FiftyFourRows) {
  auto m = small_matrix(3, 6);
  auto r = run_campaign(m.spec, m.base.catalog);
  EXPECT_FALSE(r.error);
  EXPECT_EQ(r.rows.size(), 54u);
  EXPECT_EQ(r.runs.size(), 3u * 6u * (1 + 1 + 5));
  auto tsv = r.rows_tsv();
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 55);
  for (const auto& row : r.rows) EXPECT_EQ(row.runs, row.heuristic == Heuristic::random_sn ? 5u : 1u);
}

TEST(CampaignTest, SingleCellAggregateIsItsRatio) {
  auto m = small_matrix(1, 1);
  m.spec.heuristics = {Heuristic::max_sn};
  auto r = run_campaign(m.spec, m.base.catalog);
  ASSERT_EQ(r.rows.size(), 1u);
  ASSERT_TRUE(r.rows[0].ratio);
  const auto& h = r.measures.at(Heuristic::max_sn);
  EXPECT_EQ(h.overall, *r.rows[0].ratio);
  EXPECT_EQ(h.per_query.at("q0"), *r.rows[0].ratio);
  EXPECT_EQ(h.per_scheme.at("scheme0"), *r.rows[0].ratio);
}

TEST(CampaignTest, DeterministicAcrossThreads) {
  auto m = small_matrix(2, 3);
  auto a = run_campaign(m.spec, m.base.catalog);
  auto b = run_campaign(m.spec, m.base.catalog);
  m.spec.threads = 4;
  auto c = run_campaign(m.spec, m.base.catalog);
  EXPECT_EQ(a.rows_tsv(), b.rows_tsv());
  EXPECT_EQ(a.rows_tsv(), c.rows_tsv());
  EXPECT_EQ(a.summary(), c.summary());
}

// Aggregates recomputed from the printed rows.
TEST(CampaignTest, AggregatesMatchRows) {
  auto m = small_matrix(3, 3);
  auto r = run_campaign(m.spec, m.base.catalog);
  auto lines = text::split(r.rows_tsv(), '\n');
  std::map<std::string, std::map<std::string, std::vector<double>>> per_query, per_scheme;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto c = text::split(lines[i], '\t');
    if (c[6] == "-") continue;
    double ratio = *text::parse_number(c[6]);
    per_query[std::string(c[2])][std::string(c[0])].push_back(ratio);
    per_scheme[std::string(c[2])][std::string(c[1])].push_back(ratio);
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (auto x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  for (const auto& [h, m2] : r.measures) {
    auto name = std::string(text::heuristic_name(h));
    double overall = 0;
    for (const auto& [q, v] : per_query[name]) {
      EXPECT_NEAR(m2.per_query.at(q), mean(v), 1e-12);
      overall += mean(v);
    }
    EXPECT_NEAR(m2.overall, overall / static_cast<double>(per_query[name].size()), 1e-12);
    for (const auto& [s, v] : per_scheme[name]) EXPECT_NEAR(m2.per_scheme.at(s), mean(v), 1e-12);
  }
}

TEST(CampaignTest, FailureKeepsPartialReport) {
  auto m = small_matrix(2, 1);
  m.spec.heuristics = {Heuristic::max_sn};
  QueryGraph split;
  split.add_node(1, Predicate::wildcard());
  split.add_node(2, Predicate::wildcard());
  Query bad;
  bad.disjuncts.push_back(split);
  m.spec.queries.push_back({"bad", bad});
  auto r = run_campaign(m.spec, m.base.catalog);
  ASSERT_TRUE(r.error);
  EXPECT_EQ(r.rows.size(), 2u);
  EXPECT_NE(r.summary().find("# aborted"), std::string::npos);
}

TEST(CampaignTest, LoadsJsonConfig) {
  auto dir = testing::scratch_dir("campaign");
  namespace fs = std::filesystem;
  fs::copy_file(testing::data_path("fig1.graph"), dir + "/g.graph");
  fs::copy_file(testing::data_path("fig1.parts"), dir + "/movie.parts");
  fs::copy_file(testing::data_path("fig2.query"), dir + "/q.query");
  text::write_file(dir + "/c.json", R"({"graph": "g.graph",
    "schemes": [{"name": "movie", "assignment": "movie.parts", "k": 2},
                {"name": "greedy", "builtin": {"k": 2, "seed": 3}}],
    "queries": [{"name": "film", "path": "q.query"}],
    "heuristics": ["max-sn", "random-sn"], "random_seeds": 3})");
  auto c = load_campaign(dir + "/c.json");
  ASSERT_EQ(c.spec.schemes.size(), 2u);
  EXPECT_EQ(c.spec.random_seeds, 3u);
  auto r = run_campaign(c.spec, *c.catalog);
  EXPECT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.rows[0].answers, 2u);
  EXPECT_EQ(r.scheme_cc.at("movie"), 4u);
  text::write_file(dir + "/bad.json", "{\"graph\": 3}");
  EXPECT_THROW(load_campaign(dir + "/bad.json"), ParseError);
}

}  // namespace
}  // namespace pgqp
