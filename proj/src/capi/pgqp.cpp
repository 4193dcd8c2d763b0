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


#include "pgqp/pgqp.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <set>
#include <string>

#include "bench/campaign.hpp"
#include "bench/synthetic.hpp"
#include "common/error.hpp"
#include "common/text.hpp"
#include "engine/engine.hpp"
#include "graph/catalog.hpp"
#include "match/oracle.hpp"
#include "partition/partition.hpp"
#include "partition/store.hpp"

struct pgqp_graph {
  pgqp::Graph g;
};

struct pgqp_catalog {
  pgqp::Catalog c;
};

struct pgqp_partitions {
  std::unique_ptr<pgqp::PartitionStore> store;
};

struct pgqp_query {
  pgqp::Query q;
};

struct pgqp_result {
  pgqp::RunResult r;
};

namespace {

thread_local std::string last_error;

template <class F>
pgqp_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return PGQP_OK;
  } catch (const pgqp::ParseError& e) {
    last_error = e.what();
    return PGQP_ERR_PARSE;
  } catch (const pgqp::ReferenceError& e) {
    last_error = e.what();
    return PGQP_ERR_REFERENCE;
  } catch (const pgqp::ValidationError& e) {
    last_error = e.what();
    return PGQP_ERR_VALIDATION;
  } catch (const pgqp::ArgumentError& e) {
    last_error = e.what();
    return PGQP_ERR_ARGUMENT;
  } catch (const pgqp::InvariantError& e) {
    last_error = e.what();
    return PGQP_ERR_INVARIANT;
  } catch (const pgqp::IoError& e) {
    last_error = e.what();
    return PGQP_ERR_IO;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PGQP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PGQP_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw pgqp::ArgumentError(std::string(what) + " is null");
}

char* dup(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pgqp_partitions* wrap_memory(const pgqp::Graph& g, const pgqp::PartitionAssignment& a) {
  auto p = std::make_unique<pgqp_partitions>();
  p->store = std::make_unique<pgqp::MemoryPartitionStore>(pgqp::extend_with_cutset(g, a), a.scheme_name);
  return p.release();
}

std::uint64_t total_cc(const pgqp::PartitionStore& s) {
  std::uint64_t n = 0;
  for (const auto& sum : s.summaries()) n += sum.components;
  return n;
}

pgqp::ExecMode to_mode(pgqp_mode m) {
  switch (m) {
    case PGQP_MODE_OPAT: return pgqp::ExecMode::opat;
    case PGQP_MODE_TRADITIONAL: return pgqp::ExecMode::traditional;
    case PGQP_MODE_MAPREDUCE: return pgqp::ExecMode::mapreduce;
  }
  throw pgqp::ArgumentError("unknown mode");
}

pgqp::Heuristic to_heuristic(pgqp_heuristic h) {
  switch (h) {
    case PGQP_MAX_SN: return pgqp::Heuristic::max_sn;
    case PGQP_MIN_SN: return pgqp::Heuristic::min_sn;
    case PGQP_RANDOM_SN: return pgqp::Heuristic::random_sn;
  }
  throw pgqp::ArgumentError("unknown heuristic");
}

pgqp::SchemeChoice to_choice(pgqp_scheme_choice c) {
  switch (c) {
    case PGQP_MIN_CC: return pgqp::SchemeChoice::min_cc;
    case PGQP_MAX_CC: return pgqp::SchemeChoice::max_cc;
    case PGQP_RANDOM_CC: return pgqp::SchemeChoice::random_cc;
  }
  throw pgqp::ArgumentError("unknown scheme choice");
}

}  // namespace

extern "C" {

const char* pgqp_last_error(void) { return last_error.c_str(); }
const char* pgqp_version(void) { return "0.1.0"; }
void pgqp_string_free(char* s) { std::free(s); }

pgqp_status pgqp_parse_mode(const char* name, pgqp_mode* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    switch (pgqp::text::parse_mode(name)) {
      case pgqp::ExecMode::opat: *out = PGQP_MODE_OPAT; break;
      case pgqp::ExecMode::traditional: *out = PGQP_MODE_TRADITIONAL; break;
      case pgqp::ExecMode::mapreduce: *out = PGQP_MODE_MAPREDUCE; break;
    }
  });
}

pgqp_status pgqp_parse_heuristic(const char* name, pgqp_heuristic* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    switch (pgqp::text::parse_heuristic(name)) {
      case pgqp::Heuristic::max_sn: *out = PGQP_MAX_SN; break;
      case pgqp::Heuristic::min_sn: *out = PGQP_MIN_SN; break;
      case pgqp::Heuristic::random_sn: *out = PGQP_RANDOM_SN; break;
    }
  });
}

pgqp_status pgqp_parse_scheme_choice(const char* name, pgqp_scheme_choice* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    switch (pgqp::text::parse_scheme_choice(name)) {
      case pgqp::SchemeChoice::min_cc: *out = PGQP_MIN_CC; break;
      case pgqp::SchemeChoice::max_cc: *out = PGQP_MAX_CC; break;
      case pgqp::SchemeChoice::random_cc: *out = PGQP_RANDOM_CC; break;
    }
  });
}

pgqp_status pgqp_graph_load(const char* path, pgqp_graph** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto g = std::make_unique<pgqp_graph>();
    g->g = pgqp::load_graph(path);
    *out = g.release();
  });
}

pgqp_status pgqp_graph_parse(const char* text, pgqp_graph** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    auto g = std::make_unique<pgqp_graph>();
    g->g = pgqp::parse_graph(text);
    *out = g.release();
  });
}

pgqp_status pgqp_graph_save(const pgqp_graph* g, const char* path) {
  return guarded([&] {
    need(g, "graph");
    need(path, "path");
    pgqp::text::write_file(path, pgqp::serialize_graph(g->g));
  });
}

pgqp_status pgqp_graph_counts(const pgqp_graph* g, uint64_t* vertices, uint64_t* edges) {
  return guarded([&] {
    need(g, "graph");
    if (vertices) *vertices = g->g.vertex_count();
    if (edges) *edges = g->g.edge_count();
  });
}

uint64_t pgqp_graph_resident_bytes(const pgqp_graph* g) { return g ? g->g.resident_bytes() : 0; }
void pgqp_graph_free(pgqp_graph* g) { delete g; }

pgqp_status pgqp_generate(const pgqp_synthetic_params* params, const pgqp_graph* templ, pgqp_graph** out) {
  return guarded([&] {
    need(params, "params");
    need(out, "out");
    pgqp::SyntheticParams p;
    p.vertices = params->vertices;
    p.edges = params->edges;
    p.vertex_labels = params->vertex_labels;
    p.edge_labels = params->edge_labels;
    p.embed_count = params->embed_count;
    p.seed = params->seed;
    p.window = params->window;
    pgqp::Graph empty;
    auto g = std::make_unique<pgqp_graph>();
    g->g = pgqp::generate_synthetic(p, templ ? templ->g : empty);
    *out = g.release();
  });
}

pgqp_status pgqp_template_query(const pgqp_graph* templ, char** out) {
  return guarded([&] {
    need(templ, "template");
    need(out, "out");
    *out = dup(pgqp::render_query(pgqp::template_query(templ->g)));
  });
}

pgqp_status pgqp_catalog_build(const pgqp_graph* g, pgqp_catalog** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    auto c = std::make_unique<pgqp_catalog>();
    c->c = pgqp::build_catalog(g->g);
    *out = c.release();
  });
}

pgqp_status pgqp_catalog_load(const char* path, pgqp_catalog** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto c = std::make_unique<pgqp_catalog>();
    c->c = pgqp::parse_catalog(pgqp::text::read_file(path));
    *out = c.release();
  });
}

pgqp_status pgqp_catalog_serialize(const pgqp_catalog* c, char** out) {
  return guarded([&] {
    need(c, "catalog");
    need(out, "out");
    *out = dup(pgqp::serialize_catalog(c->c));
  });
}

void pgqp_catalog_free(pgqp_catalog* c) { delete c; }

pgqp_status pgqp_partition_builtin(const pgqp_graph* g, uint32_t k, uint64_t seed, pgqp_partitions** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = wrap_memory(g->g, pgqp::partition_builtin(g->g, k, seed));
  });
}

pgqp_status pgqp_partition_import(const pgqp_graph* g, const char* assignment_path, uint32_t k,
                                  const char* scheme_name, pgqp_partitions** out) {
  return guarded([&] {
    need(g, "graph");
    need(assignment_path, "assignment path");
    need(out, "out");
    auto a = pgqp::import_assignment(g->g, pgqp::text::read_file(assignment_path), k,
                                     scheme_name ? scheme_name : "imported");
    *out = wrap_memory(g->g, a);
  });
}

pgqp_status pgqp_partitions_open(const char* dir, pgqp_partitions** out) {
  return guarded([&] {
    need(dir, "dir");
    need(out, "out");
    auto p = std::make_unique<pgqp_partitions>();
    p->store = std::make_unique<pgqp::DirectoryPartitionStore>(dir);
    *out = p.release();
  });
}

pgqp_status pgqp_partitions_write(const pgqp_partitions* p, const char* dir) {
  return guarded([&] {
    need(p, "partitions");
    need(dir, "dir");
    std::vector<pgqp::ExtendedPartition> parts;
    for (pgqp::PartitionId pid = 1; pid <= p->store->k(); ++pid) parts.push_back(*p->store->load(pid));
    pgqp::write_partition_dir(dir, parts, p->store->scheme_name());
  });
}

uint32_t pgqp_partitions_k(const pgqp_partitions* p) { return p ? p->store->k() : 0; }

pgqp_status pgqp_partitions_metrics(const pgqp_partitions* p, char** out) {
  return guarded([&] {
    need(p, "partitions");
    need(out, "out");
    std::string s = "pid\tlocal_vertices\tboundary_vertices\tlocal_edges\tcut_edges\tcc\n";
    for (const auto& sum : p->store->summaries())
      s += std::to_string(sum.pid) + "\t" + std::to_string(sum.local_vertices) + "\t" +
           std::to_string(sum.boundary_vertices) + "\t" + std::to_string(sum.local_edges) + "\t" +
           std::to_string(sum.cut_edges) + "\t" + std::to_string(sum.components) + "\n";
    *out = dup(s);
  });
}

uint64_t pgqp_partitions_total_cc(const pgqp_partitions* p) { return p ? total_cc(*p->store) : 0; }

pgqp_status pgqp_choose_scheme(const pgqp_partitions* const* schemes, size_t n, pgqp_scheme_choice mode,
                               uint64_t seed, size_t* index) {
  return guarded([&] {
    need(schemes, "schemes");
    need(index, "index");
    std::vector<pgqp::SchemeMetrics> metrics;
    for (size_t i = 0; i < n; ++i) {
      need(schemes[i], "scheme");
      pgqp::SchemeMetrics m;
      m.scheme_name = schemes[i]->store->scheme_name();
      for (const auto& sum : schemes[i]->store->summaries()) {
        m.pids.push_back(sum.pid);
        m.cc_count.push_back(sum.components);
        m.local_vertices.push_back(sum.local_vertices);
        m.boundary_vertices.push_back(sum.boundary_vertices);
        m.local_edges.push_back(sum.local_edges);
        m.cut_edges.push_back(sum.cut_edges);
        m.total_cc += sum.components;
      }
      metrics.push_back(std::move(m));
    }
    *index = pgqp::choose_scheme(metrics, to_choice(mode), seed);
  });
}

void pgqp_partitions_free(pgqp_partitions* p) { delete p; }

pgqp_status pgqp_query_load(const char* path, pgqp_query** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto q = std::make_unique<pgqp_query>();
    q->q = pgqp::load_query(path);
    *out = q.release();
  });
}

pgqp_status pgqp_query_parse(const char* text, pgqp_query** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    auto q = std::make_unique<pgqp_query>();
    q->q = pgqp::parse_query(text);
    *out = q.release();
  });
}

pgqp_status pgqp_plan_dump(const pgqp_query* q, const pgqp_catalog* c, char** out) {
  return guarded([&] {
    need(q, "query");
    need(c, "catalog");
    need(out, "out");
    std::string s;
    for (const auto& plan : pgqp::plan_query(q->q, c->c)) s += pgqp::dump_plan(plan, q->q.disjuncts[plan.disjunct]);
    *out = dup(s);
  });
}

void pgqp_query_free(pgqp_query* q) { delete q; }

void pgqp_run_options_init(pgqp_run_options* o) {
  if (!o) return;
  o->mode = PGQP_MODE_OPAT;
  o->heuristic = PGQP_MAX_SN;
  o->workers = 1;
  o->seed = 1;
  o->has_limit = 0;
  o->limit = 0;
  o->run_dir = nullptr;
  o->in_memory = 1;
}

pgqp_status pgqp_run(const pgqp_partitions* p, const pgqp_query* q, const pgqp_catalog* c, const pgqp_run_options* o,
                     pgqp_result** out) {
  return guarded([&] {
    need(p, "partitions");
    need(q, "query");
    need(c, "catalog");
    need(o, "options");
    need(out, "out");
    pgqp::RunOptions opts;
    opts.mode = to_mode(o->mode);
    opts.heuristic = to_heuristic(o->heuristic);
    opts.workers = o->workers;
    opts.seed = o->seed;
    if (o->has_limit) opts.limit = o->limit;
    if (o->run_dir) opts.run_dir = o->run_dir;
    opts.in_memory = o->in_memory != 0;
    auto r = std::make_unique<pgqp_result>();
    r->r = pgqp::run_query(*p->store, q->q, c->c, opts);
    *out = r.release();
  });
}

size_t pgqp_result_answer_count(const pgqp_result* r) { return r ? r->r.answers.size() : 0; }

pgqp_status pgqp_result_answers(const pgqp_result* r, char** out) {
  return guarded([&] {
    need(r, "result");
    need(out, "out");
    std::string s;
    for (const auto& a : r->r.answers) s += a.line() + "\n";
    *out = dup(s);
  });
}

pgqp_status pgqp_result_keys(const pgqp_result* r, char** out) {
  return guarded([&] {
    need(r, "result");
    need(out, "out");
    std::set<std::string> keys;
    for (const auto& a : r->r.answers) keys.insert(a.key());
    std::string s;
    for (const auto& k : keys) s += k + "\n";
    *out = dup(s);
  });
}

pgqp_status pgqp_result_runlog(const pgqp_result* r, char** out) {
  return guarded([&] {
    need(r, "result");
    need(out, "out");
    *out = dup(r->r.log.to_tsv());
  });
}

pgqp_status pgqp_result_iterations(const pgqp_result* r, char** out) {
  return guarded([&] {
    need(r, "result");
    need(out, "out");
    *out = dup(r->r.log.iterations_tsv());
  });
}

uint64_t pgqp_result_loads(const pgqp_result* r) { return r ? r->r.log.al() : 0; }
uint32_t pgqp_result_l_ideal(const pgqp_result* r) { return r ? r->r.log.l_ideal : 0; }
int pgqp_result_complete(const pgqp_result* r) { return r && r->r.log.complete ? 1 : 0; }

int pgqp_result_ratio(const pgqp_result* r, double* ratio) {
  if (!r) return 0;
  auto v = r->r.log.ratio();
  if (!v) return 0;
  if (ratio) *ratio = *v;
  return 1;
}

void pgqp_result_peak_bytes(const pgqp_result* r, uint64_t* partition, uint64_t* bookkeeping) {
  if (partition) *partition = r ? r->r.log.peak_partition_bytes : 0;
  if (bookkeeping) *bookkeeping = r ? r->r.log.peak_bookkeeping_bytes : 0;
}

void pgqp_result_free(pgqp_result* r) { delete r; }

pgqp_status pgqp_oracle(const pgqp_graph* g, const pgqp_query* q, char** out) {
  return guarded([&] {
    need(g, "graph");
    need(q, "query");
    need(out, "out");
    std::string s;
    for (const auto& [key, a] : pgqp::oracle_match(g->g, q->q)) s += key + "\n";
    *out = dup(s);
  });
}

pgqp_status pgqp_campaign(const char* config_path, char** rows_tsv, char** summary) {
  pgqp::CampaignReport report;
  auto st = guarded([&] {
    need(config_path, "config path");
    need(rows_tsv, "rows_tsv");
    need(summary, "summary");
    *rows_tsv = nullptr;
    *summary = nullptr;
    auto c = pgqp::load_campaign(config_path);
    report = pgqp::run_campaign(c.spec, *c.catalog);
    *rows_tsv = dup(report.rows_tsv());
    *summary = dup(report.summary());
    if (report.error) throw pgqp::Error(*report.error);
  });
  return st;
}

}  // extern "C"
