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


#include "partition/store.hpp"

#include <filesystem>

#include "common/error.hpp"
#include "common/text.hpp"
#include "json.hpp"

namespace pgqp {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

PartitionSummary summarize(const ExtendedPartition& p) {
  PartitionSummary s;
  s.pid = p.pid();
  s.local_vertices = p.local_vertex_count();
  s.boundary_vertices = p.boundary_vertex_count();
  s.local_edges = p.local_edge_count();
  s.cut_edges = p.cut_edge_count();
  s.components = local_component_count(p);
  const auto& g = p.graph();
  std::vector<std::uint64_t> per_label(g.labels().size(), 0);
  for (VertexIndex i = 0; i < g.vertex_count(); ++i)
    if (p.is_local(i)) ++per_label[g.vertex(i).label];
  for (LabelId id = 0; id < per_label.size(); ++id)
    if (per_label[id]) s.labels.emplace(g.labels().name(id), per_label[id]);
  return s;
}

const PartitionSummary& PartitionStore::summary(PartitionId pid) const {
  check_pid(pid);
  return summaries()[pid - 1];
}

void PartitionStore::check_pid(PartitionId pid) const {
  if (pid == 0 || pid > summaries().size()) throw ReferenceError("unknown partition " + std::to_string(pid));
}

MemoryPartitionStore::MemoryPartitionStore(std::vector<ExtendedPartition> parts, std::string scheme_name)
    : scheme_(std::move(scheme_name)) {
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.pid() < b.pid(); });
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].pid() != i + 1) throw ValidationError("partition ids must be 1..k without gaps");
    summaries_.push_back(summarize(parts[i]));
    parts_.push_back(std::make_shared<const ExtendedPartition>(std::move(parts[i])));
  }
}

std::shared_ptr<const ExtendedPartition> MemoryPartitionStore::load(PartitionId pid) const {
  check_pid(pid);
  count_load();
  return parts_[pid - 1];
}

std::string manifest_json(std::span<const PartitionSummary> summaries, const std::string& scheme_name) {
  json m;
  m["scheme"] = scheme_name;
  m["k"] = summaries.size();
  json list = json::array();
  for (const auto& s : summaries) {
    json p;
    p["pid"] = s.pid;
    p["file"] = "part_" + std::to_string(s.pid) + ".txt";
    p["local_vertices"] = s.local_vertices;
    p["boundary_vertices"] = s.boundary_vertices;
    p["local_edges"] = s.local_edges;
    p["cut_edges"] = s.cut_edges;
    p["components"] = s.components;
    json labels = json::object();
    for (const auto& [name, n] : s.labels) labels[name] = n;
    p["labels"] = std::move(labels);
    list.push_back(std::move(p));
  }
  m["partitions"] = std::move(list);
  return m.dump(2) + "\n";
}

DirectoryPartitionStore::DirectoryPartitionStore(std::string dir) : dir_(std::move(dir)) {
  json m;
  try {
    m = json::parse(text::read_file((fs::path(dir_) / "manifest.json").string()));
    scheme_ = m.at("scheme").get<std::string>();
    auto k = m.at("k").get<std::size_t>();
    const auto& list = m.at("partitions");
    if (list.size() != k) throw ValidationError("manifest lists " + std::to_string(list.size()) + " partitions, k=" +
                                                std::to_string(k));
    for (std::size_t i = 0; i < k; ++i) {
      const auto& p = list[i];
      PartitionSummary s;
      s.pid = p.at("pid").get<PartitionId>();
      if (s.pid != i + 1) throw ValidationError("manifest partitions must be listed as 1..k");
      s.local_vertices = p.at("local_vertices").get<std::uint64_t>();
      s.boundary_vertices = p.at("boundary_vertices").get<std::uint64_t>();
      s.local_edges = p.at("local_edges").get<std::uint64_t>();
      s.cut_edges = p.at("cut_edges").get<std::uint64_t>();
      s.components = p.at("components").get<std::uint64_t>();
      for (const auto& [name, n] : p.at("labels").items()) s.labels.emplace(name, n.get<std::uint64_t>());
      files_.push_back((fs::path(dir_) / p.at("file").get<std::string>()).string());
      summaries_.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw ParseError(dir_ + "/manifest.json: " + e.what(), 0);
  }
}

std::shared_ptr<const ExtendedPartition> DirectoryPartitionStore::load(PartitionId pid) const {
  check_pid(pid);
  count_load();
  auto part = std::make_shared<const ExtendedPartition>(parse_partition(text::read_file(files_[pid - 1])));
  if (part->pid() != pid)
    throw ValidationError(files_[pid - 1] + ": header names partition " + std::to_string(part->pid()));
  return part;
}

void write_partition_dir(const std::string& dir, std::span<const ExtendedPartition> parts,
                         const std::string& scheme_name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  std::vector<PartitionSummary> summaries;
  for (const auto& p : parts) {
    text::write_file((fs::path(dir) / ("part_" + std::to_string(p.pid()) + ".txt")).string(), serialize_partition(p));
    summaries.push_back(summarize(p));
  }
  text::write_file((fs::path(dir) / "manifest.json").string(), manifest_json(summaries, scheme_name));
}

}  // namespace pgqp
