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

#include <random>

#include "common/error.hpp"
#include "fixtures.hpp"
#include "match/expander.hpp"
#include "match/oracle.hpp"
#include "test_util.hpp"

namespace pgqp {
namespace {

using testing::movie_setup;
using testing::random_graph;
using testing::read_data;
using testing::sampled_query;

// Tries every injective assignment of query nodes to vertices.
std::set<std::string> brute_force(const Graph& g, const Query& q) {
  std::set<std::string> out;
  for (const auto& qg : q.disjuncts) {
    const auto n = qg.nodes().size();
    std::vector<VertexIndex> pick(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == n) {
        for (const auto& qe : qg.edges()) {
          bool found = false;
          for (const auto& e : g.edges()) {
            if (!qe.pred.matches(g.labels().name(e.label))) continue;
            auto s = pick[qe.src], d = pick[qe.dst];
            bool fwd = e.src == s && e.dst == d, back = e.src == d && e.dst == s;
            if (qe.dir == EdgeDir::directed ? (e.dir == EdgeDir::directed && fwd) : (fwd || back)) found = true;
          }
          if (!found) return;
        }
        std::vector<std::pair<QNodeId, VertexId>> kv;
        for (std::size_t j = 0; j < n; ++j) kv.emplace_back(qg.nodes()[j].id, g.vid(pick[j]));
        std::sort(kv.begin(), kv.end());
        std::string key;
        for (const auto& [qid, vid] : kv) key += (key.empty() ? "" : " ") + std::to_string(qid) + "=" + std::to_string(vid);
        out.insert(key);
        return;
      }
      for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        if (std::find(pick.begin(), pick.begin() + i, v) != pick.begin() + i) continue;
        if (!qg.nodes()[i].pred.matches(g.label_of(v))) continue;
        pick[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
  }
  return out;
}

TEST(OracleTest, MovieQueryAnswers) {
  auto g = parse_graph(read_data("fig1.graph"));
  auto answers = oracle_match(g, parse_query(read_data("fig2.query")));
  EXPECT_EQ(testing::keys(answers), (std::set<std::string>{"1=5 2=1 3=6 4=8", "1=5 2=3 3=6 4=8"}));
}

TEST(OracleTest, AgreesWithBruteForce) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto g = random_graph(9, 16, 3, 2, seed, 0.4);
    for (std::size_t nodes = 1; nodes <= 4; ++nodes) {
      auto q = sampled_query(g, nodes, 2, seed * 10 + nodes);
      if (q.disjuncts.empty()) continue;
      EXPECT_EQ(testing::keys(oracle_match(g, q)), brute_force(g, q)) << render_query(q);
    }
  }
}

TEST(OracleTest, DirectedEdgesRespectOrientation) {
  auto g = parse_graph("v 1 A\nv 2 B\nd 1 2 r\n");
  EXPECT_EQ(oracle_match(g, parse_query("qv 1 A\nqv 2 B\nqe 1 2 d r\n")).size(), 1u);
  EXPECT_TRUE(oracle_match(g, parse_query("qv 1 A\nqv 2 B\nqe 2 1 d r\n")).empty());
  EXPECT_EQ(oracle_match(g, parse_query("qv 1 A\nqv 2 B\nqe 2 1 u r\n")).size(), 1u);
  auto u = parse_graph("v 1 A\nv 2 B\nu 1 2 r\n");
  EXPECT_TRUE(oracle_match(u, parse_query("qv 1 A\nqv 2 B\nqe 1 2 d r\n")).empty());
}

TEST(AnswerTest, KeyAndLine) {
  Answer a;
  a.bindings = {{1, Binding{5, 1, "x"}}, {2, Binding{6, 2, "y"}}};
  EXPECT_EQ(a.key(), "1=5 2=6");
  EXPECT_EQ(a.line(), "1=5@1 2=6@2");
}

TEST(AnswerTest, ImaRecordRoundTrip) {
  auto q = parse_query(read_data("fig2.query"));
  const auto& qg = q.disjuncts[0];
  Continuation c;
  c.partial = empty_partial(qg, 0);
  c.partial.bind(0, Binding{5, 1, "Beyond All Boundaries"});
  c.partial.bind(2, Binding{6, 2, "2011"});
  c.partial.matched = 0b010;
  c.target = 2;
  c.entry_node = 2;
  c.entry = 6;
  c.entry_label = "2011";
  auto line = ima_record(7, c, qg);
  EXPECT_EQ(line.rfind("{\"ref\":7,", 0), 0u);
  auto back = parse_ima_record(line, q.disjuncts);
  EXPECT_EQ(back.ref, 7u);
  EXPECT_EQ(back.cont.partial, c.partial);
  EXPECT_EQ(back.cont.target, 2u);
  EXPECT_EQ(back.cont.entry, 6u);
  EXPECT_EQ(back.cont.entry_label, "2011");
  EXPECT_THROW(parse_ima_record("{\"ref\":1}", q.disjuncts), ParseError);
  EXPECT_THROW(parse_ima_record("not json", q.disjuncts), ParseError);
}

TEST(AnswerTest, NextStepPrefersTreeEdges) {
  auto g = parse_graph(read_data("fig1.graph"));
  auto q = parse_query(read_data("fig2.query"));
  const auto& qg = q.disjuncts[0];
  auto plan = generate_plan(qg, build_catalog(g));
  auto p = empty_partial(qg, 0);
  p.bind(0, Binding{5, 1, "Beyond All Boundaries"});
  auto s = next_step(p, plan, qg);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->node, 0u);
  EXPECT_EQ(s->pid, 1u);
  p.bind(2, Binding{6, 2, "2011"});
  p.matched |= 0b010;
  p.bind(1, Binding{1, 1, "Tom Hanks"});
  p.matched |= 0b001;
  s = next_step(p, plan, qg);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->node, 2u);
  EXPECT_EQ(s->pid, 2u);
  p.bind(3, Binding{8, 2, "Year"});
  p.matched |= 0b100;
  EXPECT_FALSE(next_step(p, plan, qg));
}

// Walk-through on the two movie partitions: the first partition binds the
// film, its year and both actors, then hands off to the second partition for
// the "is Year" edge.
TEST(ExpanderTest, MovieQueryAcrossPartitions) {
  auto s = movie_setup();
  auto q = parse_query(read_data("fig2.query"));
  const auto& qg = q.disjuncts[0];
  auto plan = generate_plan(qg, s.catalog);
  auto p1 = s.store->load(1);
  auto p2 = s.store->load(2);

  Expander e1(*p1, qg, plan);
  auto starts = e1.start_vertices();
  ASSERT_EQ(starts.size(), 1u);
  EXPECT_EQ(p1->graph().vid(starts[0]), 5u);
  ExpandOutput out1;
  e1.expand(e1.start_at(starts[0]), out1);
  EXPECT_TRUE(out1.answers.empty());
  ASSERT_EQ(out1.continuations.size(), 2u);
  for (const auto& c : out1.continuations) {
    EXPECT_EQ(c.target, 2u);
    EXPECT_EQ(c.entry, 6u);
    EXPECT_EQ(c.entry_label, "2011");
    EXPECT_EQ(c.partial.bindings[2].pid, 2u);
  }
  EXPECT_TRUE(e1.counters().balanced());
  EXPECT_EQ(e1.counters().continuations, 2u);

  Expander e2(*p2, qg, plan);
  EXPECT_TRUE(e2.start_vertices().empty());
  ExpandOutput out2;
  for (const auto& c : out1.continuations) {
    e2.check_entry(c);
    e2.expand(c.partial, out2);
  }
  ASSERT_EQ(out2.answers.size(), 2u);
  std::set<std::string> lines;
  for (const auto& a : out2.answers) lines.insert(a.line());
  EXPECT_EQ(lines, (std::set<std::string>{"1=5@1 2=1@1 3=6@2 4=8@2", "1=5@1 2=3@1 3=6@2 4=8@2"}));
  EXPECT_TRUE(e2.counters().balanced());
  EXPECT_THROW(e1.check_entry(out1.continuations[0]), InvariantError);
}

TEST(ExpanderTest, OneStepAdvancesSingleEdge) {
  auto s = movie_setup();
  auto q = parse_query("qv 1 \"Beyond All Boundaries\"\nqv 3 ?\nqv 4 Year\nqe 1 3 u \"In year\"\nqe 3 4 u is\n");
  const auto& qg = q.disjuncts[0];
  auto plan = generate_plan(qg, s.catalog);
  auto p1 = s.store->load(1);
  Expander e(*p1, qg, plan);
  ExpandOutput out;
  e.step(e.start_at(e.start_vertices().at(0)), out);
  ASSERT_EQ(out.continuations.size(), 1u);
  const auto& c = out.continuations[0];
  EXPECT_EQ(c.target, 2u);
  EXPECT_EQ(c.partial.bound, 0b011u);
  EXPECT_EQ(c.partial.bindings[0], (Binding{5, 1, "Beyond All Boundaries"}));
  EXPECT_EQ(c.partial.bindings[1], (Binding{6, 2, "2011"}));
  EXPECT_EQ(c.partial.matched_count(), 1u);
}

TEST(ExpanderTest, NoMatchingEdgeFails) {
  auto s = movie_setup();
  auto q = parse_query("qv 1 Drama\nqv 2 ?\nqe 1 2 u produced\n");
  auto plan = generate_plan(q.disjuncts[0], s.catalog);
  auto p2 = s.store->load(2);
  Expander e(*p2, q.disjuncts[0], plan);
  ExpandOutput out;
  for (auto v : e.start_vertices()) e.step(e.start_at(v), out);
  EXPECT_TRUE(out.answers.empty());
  EXPECT_TRUE(out.continuations.empty());
  EXPECT_EQ(e.counters().failures, 1u);
  EXPECT_TRUE(e.counters().balanced());
}

// Chasing continuations partition by partition must reproduce the oracle,
// and the counters must balance in every partition.
TEST(ExpanderTest, ChasingContinuationsMatchesOracle) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto s = testing::random_setup(random_graph(60, 140, 4, 2, seed, 0.3), 2 + seed % 4, seed);
    auto q = sampled_query(s.graph, 2 + seed % 5, seed % 3, seed);
    const auto& qg = q.disjuncts[0];
    auto plan = generate_plan(qg, s.catalog);
    std::set<std::string> found;
    std::vector<Continuation> pending;
    std::vector<std::unique_ptr<Expander>> ex;
    std::vector<std::shared_ptr<const ExtendedPartition>> parts;
    for (PartitionId pid = 1; pid <= s.store->k(); ++pid) {
      parts.push_back(s.store->load(pid));
      ex.push_back(std::make_unique<Expander>(*parts.back(), qg, plan));
    }
    for (auto& e : ex) {
      ExpandOutput out;
      for (auto v : e->start_vertices()) e->expand(e->start_at(v), out);
      for (auto& a : out.answers) found.insert(a.key());
      for (auto& c : out.continuations) pending.push_back(c);
    }
    while (!pending.empty()) {
      auto c = pending.back();
      pending.pop_back();
      auto& e = *ex[c.target - 1];
      e.check_entry(c);
      ExpandOutput out;
      e.expand(c.partial, out);
      for (auto& a : out.answers) found.insert(a.key());
      for (auto& next : out.continuations) {
        EXPECT_GT(next.partial.matched_count(), c.partial.matched_count());
        pending.push_back(next);
      }
    }
    for (auto& e : ex) EXPECT_TRUE(e->counters().balanced());
    EXPECT_EQ(found, testing::keys(oracle_match(s.graph, q))) << render_query(q);
  }
}

}  // namespace
}  // namespace pgqp
