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


#include "bench/campaign.hpp"

#include <filesystem>
#include <mutex>

#include "common/error.hpp"
#include "common/text.hpp"
#include "engine/driver.hpp"
#include "json.hpp"

namespace pgqp {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string opt_number(const std::optional<double>& v) { return v ? text::format_number(*v) : "-"; }

struct Cell {
  std::size_t q, s, h;
};

}  // namespace

std::map<Heuristic, HeuristicMeasures> aggregate_rows(const std::vector<CampaignRow>& rows) {
  struct Sum {
    double total = 0.0;
    std::size_t n = 0;
  };
  std::map<Heuristic, std::map<std::string, Sum>> by_query, by_scheme;
  for (const auto& r : rows) {
    if (!r.ratio) continue;
    auto& q = by_query[r.heuristic][r.query];
    q.total += *r.ratio;
    ++q.n;
    auto& s = by_scheme[r.heuristic][r.scheme];
    s.total += *r.ratio;
    ++s.n;
  }
  std::map<Heuristic, HeuristicMeasures> out;
  for (const auto& [h, queries] : by_query) {
    auto& m = out[h];
    double total = 0.0;
    for (const auto& [name, sum] : queries) {
      m.per_query[name] = sum.total / static_cast<double>(sum.n);
      total += m.per_query[name];
    }
    m.overall = total / static_cast<double>(queries.size());
    for (const auto& [name, sum] : by_scheme[h]) m.per_scheme[name] = sum.total / static_cast<double>(sum.n);
  }
  return out;
}

std::string CampaignReport::rows_tsv() const {
  std::string out = "query\tscheme\theuristic\truns\tal\tl_ideal\tratio\titerations\tanswers\n";
  for (const auto& r : rows)
    out += text::tsv_escape(r.query) + "\t" + text::tsv_escape(r.scheme) + "\t" +
           std::string(text::heuristic_name(r.heuristic)) + "\t" + std::to_string(r.runs) + "\t" +
           text::format_number(r.al) + "\t" + std::to_string(r.l_ideal) + "\t" + opt_number(r.ratio) + "\t" +
           text::format_number(r.iterations) + "\t" + std::to_string(r.answers) + "\n";
  return out;
}

std::string CampaignReport::summary() const {
  std::vector<Heuristic> hs;
  for (const auto& [h, m] : measures) hs.push_back(h);
  std::string out = "# campaign: " + std::to_string(rows.size()) + " rows, random-sn averaged over " +
                    std::to_string(random_seeds) + " seeds\n";
  if (error) out += "# aborted: " + *error + "\n";
  std::string head;
  for (auto h : hs) head += "\t" + std::string(text::heuristic_name(h));
  out += "# load ratio per query\nquery" + head + "\n";
  std::map<std::string, bool> queries, schemes;
  for (const auto& [h, m] : measures) {
    for (const auto& [q, v] : m.per_query) queries[q] = true;
    for (const auto& [s, v] : m.per_scheme) schemes[s] = true;
  }
  auto cell = [](const std::map<std::string, double>& m, const std::string& key) {
    auto it = m.find(key);
    return it == m.end() ? std::string("-") : text::format_number(it->second);
  };
  for (const auto& [q, unused] : queries) {
    out += text::tsv_escape(q);
    for (auto h : hs) out += "\t" + cell(measures.at(h).per_query, q);
    out += "\n";
  }
  out += "# load ratio per scheme\nscheme\ttotal_cc" + head + "\n";
  for (const auto& [s, unused] : schemes) {
    auto cc = scheme_cc.find(s);
    out += text::tsv_escape(s) + "\t" + (cc == scheme_cc.end() ? std::string("-") : std::to_string(cc->second));
    for (auto h : hs) out += "\t" + cell(measures.at(h).per_scheme, s);
    out += "\n";
  }
  out += "# overall\nmeasure" + head + "\nmean";
  for (auto h : hs) out += "\t" + text::format_number(measures.at(h).overall);
  out += "\n";
  return out;
}

CampaignReport run_campaign(const CampaignSpec& spec, const Catalog& catalog) {
  CampaignReport report;
  report.random_seeds = spec.random_seeds;
  for (const auto& s : spec.schemes) {
    if (!s.store) throw ArgumentError("scheme " + s.name + " has no partitions");
    std::uint64_t cc = 0;
    for (const auto& sum : s.store->summaries()) cc += sum.components;
    report.scheme_cc[s.name] = cc;
  }
  if (spec.random_seeds == 0) throw ArgumentError("random_seeds must be positive");

  std::vector<Cell> cells;
  for (std::size_t q = 0; q < spec.queries.size(); ++q)
    for (std::size_t s = 0; s < spec.schemes.size(); ++s)
      for (std::size_t h = 0; h < spec.heuristics.size(); ++h) cells.push_back({q, s, h});

  std::vector<std::vector<CampaignRun>> cell_runs(cells.size());
  std::vector<std::optional<std::string>> cell_error(cells.size());
  auto run_cell = [&](std::size_t i) {
    const auto& c = cells[i];
    const auto& q = spec.queries[c.q];
    const auto& sch = spec.schemes[c.s];
    auto h = spec.heuristics[c.h];
    std::uint32_t n = h == Heuristic::random_sn ? spec.random_seeds : 1;
    try {
      for (std::uint32_t k = 0; k < n; ++k) {
        RunOptions o;
        o.mode = spec.mode;
        o.heuristic = h;
        o.workers = spec.workers;
        o.seed = spec.seed + k;
        o.limit = spec.limit;
        auto r = run_query(*sch.store, q.query, catalog, o);
        CampaignRun run;
        run.query = q.name;
        run.scheme = sch.name;
        run.heuristic = h;
        run.seed = o.seed;
        run.al = r.log.al();
        run.l_ideal = r.log.l_ideal;
        run.ratio = r.log.ratio();
        if (run.ratio && (*run.ratio <= 0.0 || *run.ratio > 1.0))
          throw InvariantError("load ratio out of range for " + q.name + " on " + sch.name);
        run.iterations = r.log.iterations.size();
        run.answers = r.log.answers;
        cell_runs[i].push_back(std::move(run));
      }
    } catch (const std::exception& e) {
      cell_error[i] = q.name + " on " + sch.name + " with " + std::string(text::heuristic_name(h)) + ": " + e.what();
    }
  };

  const std::size_t threads = spec.mode == ExecMode::opat ? std::max<std::uint32_t>(1, spec.threads) : 1;
  if (threads <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      run_cell(i);
      if (cell_error[i]) break;
    }
  } else {
    std::mutex mu;
    std::size_t next = 0;
    run_parallel(std::min(threads, cells.size()), [&](std::size_t) {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard lock(mu);
          if (next >= cells.size()) return;
          i = next++;
        }
        run_cell(i);
      }
    });
  }

  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cell_error[i]) {
      report.error = cell_error[i];
      break;
    }
    const auto& runs = cell_runs[i];
    CampaignRow row;
    row.query = spec.queries[cells[i].q].name;
    row.scheme = spec.schemes[cells[i].s].name;
    row.heuristic = spec.heuristics[cells[i].h];
    row.runs = static_cast<std::uint32_t>(runs.size());
    double ratio_sum = 0.0;
    std::size_t defined = 0;
    for (const auto& r : runs) {
      row.al += static_cast<double>(r.al);
      row.iterations += static_cast<double>(r.iterations);
      row.l_ideal = r.l_ideal;
      row.answers = std::max(row.answers, r.answers);
      if (r.ratio) {
        ratio_sum += *r.ratio;
        ++defined;
      }
    }
    row.al /= static_cast<double>(runs.size());
    row.iterations /= static_cast<double>(runs.size());
    if (defined) row.ratio = ratio_sum / static_cast<double>(defined);
    report.rows.push_back(std::move(row));
    report.runs.insert(report.runs.end(), runs.begin(), runs.end());
  }
  report.measures = aggregate_rows(report.rows);
  return report;
}

LoadedCampaign load_campaign(const std::string& config_path) {
  json j;
  try {
    j = json::parse(text::read_file(config_path));
  } catch (const json::exception& e) {
    throw ParseError(std::string("campaign config: ") + e.what(), 0);
  }
  auto base = fs::path(config_path).parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? p : (base / p).string(); };
  LoadedCampaign out;
  try {
    auto g = load_graph(resolve(j.at("graph").get<std::string>()));
    out.catalog = std::make_unique<Catalog>(build_catalog(g));
    for (const auto& s : j.at("schemes")) {
      auto name = s.at("name").get<std::string>();
      if (s.contains("dir")) {
        out.stores.push_back(std::make_unique<DirectoryPartitionStore>(resolve(s.at("dir").get<std::string>())));
      } else {
        PartitionAssignment a;
        if (s.contains("builtin")) {
          const auto& b = s.at("builtin");
          a = partition_builtin(g, b.at("k").get<std::uint32_t>(), b.value("seed", std::uint64_t{1}));
        } else {
          a = import_assignment(g, text::read_file(resolve(s.at("assignment").get<std::string>())),
                                s.at("k").get<std::uint32_t>(), name);
        }
        out.stores.push_back(std::make_unique<MemoryPartitionStore>(extend_with_cutset(g, a), name));
      }
      out.spec.schemes.push_back({name, out.stores.back().get()});
    }
    for (const auto& q : j.at("queries"))
      out.spec.queries.push_back({q.at("name").get<std::string>(), load_query(resolve(q.at("path").get<std::string>()))});
    if (j.contains("heuristics")) {
      out.spec.heuristics.clear();
      for (const auto& h : j.at("heuristics")) out.spec.heuristics.push_back(text::parse_heuristic(h.get<std::string>()));
    }
    out.spec.random_seeds = j.value("random_seeds", out.spec.random_seeds);
    out.spec.seed = j.value("seed", out.spec.seed);
    out.spec.workers = j.value("workers", out.spec.workers);
    out.spec.threads = j.value("threads", out.spec.threads);
    if (j.contains("mode")) out.spec.mode = text::parse_mode(j.at("mode").get<std::string>());
    if (j.contains("limit") && !j.at("limit").is_null()) out.spec.limit = j.at("limit").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("campaign config: ") + e.what(), 0);
  }
  return out;
}

}  // namespace pgqp
