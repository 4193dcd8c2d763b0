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


#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pgqp/pgqp.h"

namespace {

namespace fs = std::filesystem;

constexpr int kFailure = 1;
constexpr int kMismatch = 3;

struct Failure {
  int code;
};

void check(pgqp_status st, const std::string& what) {
  if (st == PGQP_OK) return;
  std::cerr << "pgqp: " << what << ": " << pgqp_last_error() << "\n";
  throw Failure{kFailure};
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& o) noexcept : p(o.p) { o.p = nullptr; }
  Handle& operator=(Handle&& o) noexcept {
    std::swap(p, o.p);
    return *this;
  }
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

using Graph = Handle<pgqp_graph, pgqp_graph_free>;
using Catalog = Handle<pgqp_catalog, pgqp_catalog_free>;
using Parts = Handle<pgqp_partitions, pgqp_partitions_free>;
using Query = Handle<pgqp_query, pgqp_query_free>;
using Result = Handle<pgqp_result, pgqp_result_free>;

struct Text {
  char* p = nullptr;
  ~Text() { pgqp_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? p : ""; }
};

void write_text(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  f << body;
  if (!f) {
    std::cerr << "pgqp: cannot write " << path << "\n";
    throw Failure{kFailure};
  }
}

Graph load_graph(const std::string& path) {
  Graph g;
  check(pgqp_graph_load(path.c_str(), g.out()), "loading graph " + path);
  return g;
}

Catalog catalog_from(const std::string& catalog_path, const std::string& graph_path) {
  Catalog c;
  if (!catalog_path.empty()) {
    check(pgqp_catalog_load(catalog_path.c_str(), c.out()), "loading catalog " + catalog_path);
  } else {
    auto g = load_graph(graph_path);
    check(pgqp_catalog_build(g.get(), c.out()), "building catalog");
  }
  return c;
}

struct PartitionArgs {
  std::string graph, assignment, name, out;
  std::uint32_t builtin = 0, k = 0;
  std::uint64_t seed = 1;
  std::string choose;
  std::vector<std::string> schemes;
};

int cmd_partition(const PartitionArgs& a) {
  if (!a.choose.empty()) {
    pgqp_scheme_choice mode;
    check(pgqp_parse_scheme_choice(a.choose.c_str(), &mode), "--choose");
    std::vector<Parts> opened;
    std::vector<const pgqp_partitions*> ptrs;
    for (const auto& dir : a.schemes) {
      Parts p;
      check(pgqp_partitions_open(dir.c_str(), p.out()), "opening " + dir);
      std::cout << dir << "\ttotal_cc\t" << pgqp_partitions_total_cc(p.get()) << "\n";
      ptrs.push_back(p.get());
      opened.push_back(std::move(p));
    }
    std::size_t index = 0;
    check(pgqp_choose_scheme(ptrs.data(), ptrs.size(), mode, a.seed, &index), "choosing scheme");
    std::cout << "chosen\t" << a.schemes[index] << "\n";
    return 0;
  }
  auto g = load_graph(a.graph);
  Parts p;
  if (a.builtin > 0)
    check(pgqp_partition_builtin(g.get(), a.builtin, a.seed, p.out()), "partitioning");
  else
    check(pgqp_partition_import(g.get(), a.assignment.c_str(), a.k, a.name.empty() ? nullptr : a.name.c_str(),
                                p.out()),
          "importing " + a.assignment);
  check(pgqp_partitions_write(p.get(), a.out.c_str()), "writing " + a.out);
  Text metrics;
  check(pgqp_partitions_metrics(p.get(), metrics.out()), "metrics");
  std::cout << metrics.str() << "total_cc\t" << pgqp_partitions_total_cc(p.get()) << "\n";
  return 0;
}

int cmd_catalog(const std::string& graph, const std::string& out) {
  auto g = load_graph(graph);
  Catalog c;
  check(pgqp_catalog_build(g.get(), c.out()), "building catalog");
  Text t;
  check(pgqp_catalog_serialize(c.get(), t.out()), "serializing catalog");
  if (out.empty())
    std::cout << t.str();
  else
    write_text(out, t.str());
  return 0;
}

int cmd_plan(const std::string& query, const std::string& catalog, const std::string& graph) {
  auto c = catalog_from(catalog, graph);
  Query q;
  check(pgqp_query_load(query.c_str(), q.out()), "loading query " + query);
  Text t;
  check(pgqp_plan_dump(q.get(), c.get(), t.out()), "planning");
  std::cout << t.str();
  return 0;
}

struct RunArgs {
  std::string parts, query, catalog, graph, mode = "opat", heuristic = "max-sn", run_dir;
  std::optional<std::uint32_t> p, m;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> limit;
  bool in_memory = false, verify = false, quiet = false;
};

std::string default_run_dir(const std::string& mode) {
  const char* root = std::getenv("PGQP_RUN_ROOT");
  auto stamp = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::system_clock::now().time_since_epoch())
                   .count();
  return (fs::path(root && *root ? root : "runs") / ("run-" + mode + "-" + std::to_string(stamp))).string();
}

int cmd_run(const RunArgs& a) {
  pgqp_run_options o;
  pgqp_run_options_init(&o);
  check(pgqp_parse_mode(a.mode.c_str(), &o.mode), "--mode");
  check(pgqp_parse_heuristic(a.heuristic.c_str(), &o.heuristic), "--heuristic");
  if (a.p && o.mode != PGQP_MODE_TRADITIONAL) {
    std::cerr << "pgqp: --p applies to --mode trad only\n";
    return 2;
  }
  if (a.m && o.mode != PGQP_MODE_MAPREDUCE) {
    std::cerr << "pgqp: --m applies to --mode mr only\n";
    return 2;
  }
  if (a.verify && a.graph.empty()) {
    std::cerr << "pgqp: --verify needs --graph\n";
    return 2;
  }
  o.workers = a.p ? *a.p : a.m ? *a.m : 0;
  if (o.mode == PGQP_MODE_OPAT) o.workers = 1;
  o.seed = a.seed;
  if (a.limit) {
    o.has_limit = 1;
    o.limit = *a.limit;
  }
  std::string run_dir;
  o.in_memory = a.in_memory ? 1 : 0;
  if (!a.in_memory) {
    run_dir = a.run_dir.empty() ? default_run_dir(a.mode) : a.run_dir;
    o.run_dir = run_dir.c_str();
  }

  Parts p;
  check(pgqp_partitions_open(a.parts.c_str(), p.out()), "opening " + a.parts);
  Query q;
  check(pgqp_query_load(a.query.c_str(), q.out()), "loading query " + a.query);
  auto c = catalog_from(a.catalog, a.graph);
  Result r;
  check(pgqp_run(p.get(), q.get(), c.get(), &o, r.out()), "running query");

  if (!a.quiet) {
    Text lines;
    check(pgqp_result_answers(r.get(), lines.out()), "answers");
    std::cout << lines.str();
  }
  double ratio = 0;
  std::cerr << "answers " << pgqp_result_answer_count(r.get()) << " loads " << pgqp_result_loads(r.get())
            << " l_ideal " << pgqp_result_l_ideal(r.get()) << " ratio ";
  if (pgqp_result_ratio(r.get(), &ratio))
    std::cerr << ratio;
  else
    std::cerr << "-";
  std::cerr << (pgqp_result_complete(r.get()) ? "" : " (stopped at limit)") << "\n";
  if (!run_dir.empty()) std::cerr << "run directory " << run_dir << "\n";

  if (a.verify) {
    auto g = load_graph(a.graph);
    Text want, got;
    check(pgqp_oracle(g.get(), q.get(), want.out()), "oracle");
    check(pgqp_result_keys(r.get(), got.out()), "answers");
    bool limited = !pgqp_result_complete(r.get());
    bool ok = want.str() == got.str();
    if (limited) {
      // Every returned answer must still be a true answer.
      ok = true;
      std::string w = want.str(), line;
      std::istringstream in(got.str());
      while (std::getline(in, line)) ok = ok && w.find(line + "\n") != std::string::npos;
    }
    std::cerr << "verify " << (ok ? "ok" : "MISMATCH") << "\n";
    if (!ok) return kMismatch;
  }
  return 0;
}

int cmd_campaign(const std::string& config, const std::string& out) {
  Text rows, summary;
  auto st = pgqp_campaign(config.c_str(), rows.out(), summary.out());
  if (!out.empty() && rows.p) {
    fs::create_directories(out);
    write_text((fs::path(out) / "report.tsv").string(), rows.str());
    write_text((fs::path(out) / "summary.txt").string(), summary.str());
  }
  std::cout << summary.str();
  check(st, "campaign");
  return 0;
}

struct GenArgs {
  pgqp_synthetic_params params{};
  std::string templ, out, query_out;
};

int cmd_gen(GenArgs a) {
  Graph t;
  if (!a.templ.empty()) t = load_graph(a.templ);
  Graph g;
  check(pgqp_generate(&a.params, t.get(), g.out()), "generating graph");
  check(pgqp_graph_save(g.get(), a.out.c_str()), "writing " + a.out);
  if (!a.query_out.empty()) {
    if (!t.get()) {
      std::cerr << "pgqp: --query-out needs --template\n";
      return 2;
    }
    Text q;
    check(pgqp_template_query(t.get(), q.out()), "template query");
    write_text(a.query_out, q.str());
  }
  std::uint64_t nv = 0, ne = 0;
  check(pgqp_graph_counts(g.get(), &nv, &ne), "counting");
  std::cerr << "vertices " << nv << " edges " << ne << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partitioned graph query processor"};
  app.require_subcommand(1);

  PartitionArgs pa;
  auto* part = app.add_subcommand("partition", "Split a graph into extended partitions, or pick among schemes");
  part->add_option("--graph", pa.graph, "Graph file");
  auto* builtin = part->add_option("--builtin", pa.builtin, "Use the built-in partitioner with K parts");
  auto* assign = part->add_option("--assignment", pa.assignment, "Assignment file (one 0-based part per line)");
  part->add_option("--k", pa.k, "Number of parts in the assignment file");
  part->add_option("--name", pa.name, "Scheme name");
  part->add_option("--seed", pa.seed, "Seed");
  part->add_option("--out", pa.out, "Output partition directory");
  auto* choose = part->add_option("--choose", pa.choose, "min-cc, max-cc or random-cc over --scheme dirs");
  part->add_option("--scheme", pa.schemes, "Partition directory to choose from")->expected(1, -1);
  builtin->excludes(assign);
  choose->excludes(builtin)->excludes(assign);

  std::string cat_graph, cat_out;
  auto* cat = app.add_subcommand("catalog", "Build the catalog of a graph");
  cat->add_option("--graph", cat_graph, "Graph file")->required();
  cat->add_option("--out", cat_out, "Output file (default stdout)");

  std::string plan_query, plan_catalog, plan_graph;
  auto* plan = app.add_subcommand("plan", "Print the query plan");
  plan->add_option("--query", plan_query, "Query file")->required();
  auto* plan_cat = plan->add_option("--catalog", plan_catalog, "Catalog file");
  auto* plan_g = plan->add_option("--graph", plan_graph, "Graph file (catalog built on the fly)");
  plan_cat->excludes(plan_g);

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Evaluate a query over a partition directory");
  run->add_option("--parts", ra.parts, "Partition directory")->required();
  run->add_option("--query", ra.query, "Query file")->required();
  auto* run_cat = run->add_option("--catalog", ra.catalog, "Catalog file");
  run->add_option("--graph", ra.graph, "Graph file (catalog and --verify)");
  run->add_option("--mode", ra.mode, "opat, trad or mr");
  run->add_option("--heuristic", ra.heuristic, "max-sn, min-sn or random-sn");
  run->add_option("--p", ra.p, "Partitions per iteration for trad (0 = all eligible)");
  run->add_option("--m", ra.m, "Mapper slots for mr (0 = all eligible)");
  run->add_option("--seed", ra.seed, "Seed");
  run->add_option("--limit", ra.limit, "Stop after this many answers");
  run->add_option("--run-dir", ra.run_dir, "Bookkeeping directory (default $PGQP_RUN_ROOT/run-...)");
  run->add_flag("--in-memory", ra.in_memory, "Keep bookkeeping in memory");
  run->add_flag("--verify", ra.verify, "Compare with the whole-graph matcher");
  run->add_flag("--quiet", ra.quiet, "Do not print answers");
  (void)run_cat;

  std::string camp_config, camp_out;
  auto* camp = app.add_subcommand("campaign", "Run a heuristic comparison campaign");
  camp->add_option("--config", camp_config, "Campaign JSON")->required();
  camp->add_option("--out", camp_out, "Directory for report.tsv and summary.txt");

  GenArgs ga;
  ga.params.vertex_labels = 1;
  ga.params.edge_labels = 1;
  ga.params.seed = 1;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic graph with planted copies of a template");
  gen->add_option("--vertices", ga.params.vertices, "Vertex count")->required();
  gen->add_option("--edges", ga.params.edges, "Edge count")->required();
  gen->add_option("--vertex-labels", ga.params.vertex_labels, "Random vertex label alphabet size");
  gen->add_option("--edge-labels", ga.params.edge_labels, "Random edge label alphabet size");
  gen->add_option("--embed", ga.params.embed_count, "Planted copies of the template");
  gen->add_option("--template", ga.templ, "Template graph file");
  gen->add_option("--seed", ga.params.seed, "Seed");
  gen->add_option("--window", ga.params.window, "Max id distance of random edges (0 = any)");
  gen->add_option("--out", ga.out, "Output graph file")->required();
  gen->add_option("--query-out", ga.query_out, "Write the template as a query");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*part) {
      if (pa.choose.empty()) {
        if (pa.graph.empty() || pa.out.empty() || (pa.builtin == 0 && (pa.assignment.empty() || pa.k == 0))) {
          std::cerr << "pgqp: partition needs --graph, --out and either --builtin K or --assignment with --k\n";
          return 2;
        }
      } else if (pa.schemes.empty()) {
        std::cerr << "pgqp: --choose needs at least one --scheme\n";
        return 2;
      }
      return cmd_partition(pa);
    }
    if (*cat) return cmd_catalog(cat_graph, cat_out);
    if (*plan) {
      if (plan_catalog.empty() && plan_graph.empty()) {
        std::cerr << "pgqp: plan needs --catalog or --graph\n";
        return 2;
      }
      return cmd_plan(plan_query, plan_catalog, plan_graph);
    }
    if (*run) {
      if (ra.catalog.empty() && ra.graph.empty()) {
        std::cerr << "pgqp: run needs --catalog or --graph\n";
        return 2;
      }
      return cmd_run(ra);
    }
    if (*camp) return cmd_campaign(camp_config, camp_out);
    if (*gen) return cmd_gen(ga);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "pgqp: " << e.what() << "\n";
    return kFailure;
  }
  return 0;
}
