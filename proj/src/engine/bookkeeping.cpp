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


#include "engine/bookkeeping.hpp"

#include <algorithm>
#include <filesystem>

#include "common/error.hpp"
#include "common/text.hpp"

namespace pgqp {

void SniTable::add(SniEntry e) {
  if (e.vid.has_value() != e.ref.has_value()) throw InvariantError("SNI entry needs both vid and IMA ref, or neither");
  by_pid_[e.pid].push_back(std::move(e));
  ++size_;
}

std::vector<SniEntry> SniTable::take(PartitionId pid) {
  auto it = by_pid_.find(pid);
  if (it == by_pid_.end()) return {};
  auto out = std::move(it->second);
  by_pid_.erase(it);
  size_ -= out.size();
  return out;
}

std::vector<std::pair<PartitionId, std::uint64_t>> SniTable::weights() const {
  std::vector<std::pair<PartitionId, std::uint64_t>> out;
  for (const auto& [pid, list] : by_pid_) {
    std::uint64_t w = 0;
    for (const auto& e : list) w += e.weight();
    out.emplace_back(pid, w);
  }
  return out;
}

void SniTable::clear() {
  by_pid_.clear();
  size_ = 0;
}

std::string SniTable::tsv_header(bool with_iteration) {
  return std::string(with_iteration ? "iteration\t" : "") + "pid\tqnode\tlabel\tvid\tima_ref\tcount\n";
}

std::string SniTable::to_tsv(std::optional<std::uint32_t> iteration) const {
  std::string out;
  for (const auto& [pid, list] : by_pid_) {
    for (const auto& e : list) {
      if (iteration) out += std::to_string(*iteration) + "\t";
      out += std::to_string(pid) + "\t" + std::to_string(e.disjunct) + "." + std::to_string(e.qnode) + "\t" +
             text::tsv_escape(e.label) + "\t" + (e.vid ? std::to_string(*e.vid) : "NULL") + "\t" +
             (e.ref ? std::to_string(*e.ref) : "NULL") + "\t" + std::to_string(e.count) + "\n";
    }
  }
  return out;
}

ImaRef ImaStore::append(const Continuation& c, const QueryGraph& qg) {
  ImaRef ref = next_ref_++;
  store(ref, c, qg);
  return ref;
}

void MemoryImaStore::store(ImaRef ref, const Continuation& c, const QueryGraph&) { records_.emplace(ref, c); }

std::vector<Continuation> MemoryImaStore::take(PartitionId pid, const std::vector<ImaRef>& refs) {
  std::vector<Continuation> out;
  out.reserve(refs.size());
  for (auto ref : refs) {
    auto it = records_.find(ref);
    if (it == records_.end()) throw InvariantError("SNI names missing IMA record " + std::to_string(ref));
    if (it->second.target != pid) throw InvariantError("IMA record " + std::to_string(ref) + " belongs elsewhere");
    out.push_back(std::move(it->second));
    records_.erase(it);
  }
  return out;
}

FileImaStore::FileImaStore(std::string dir, const std::vector<QueryGraph>& disjuncts)
    : dir_(std::move(dir)), disjuncts_(disjuncts) {
  namespace fs = std::filesystem;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    auto name = entry.path().filename().string();
    if (name.starts_with("ima_") && name.ends_with(".jsonl")) fs::remove(entry.path());
  }
}

std::string FileImaStore::path(PartitionId pid) const {
  return (std::filesystem::path(dir_) / ("ima_" + std::to_string(pid) + ".jsonl")).string();
}

void FileImaStore::store(ImaRef ref, const Continuation& c, const QueryGraph& qg) {
  auto it = files_.find(c.target);
  if (it == files_.end()) {
    it = files_.emplace(c.target, std::ofstream(path(c.target), std::ios::app | std::ios::binary)).first;
    if (!it->second) throw IoError("cannot open " + path(c.target));
  }
  it->second << ima_record(ref, c, qg) << '\n';
  if (!it->second) throw IoError("write failed: " + path(c.target));
}

std::vector<Continuation> FileImaStore::take(PartitionId pid, const std::vector<ImaRef>& refs) {
  if (refs.empty()) return {};
  if (auto it = files_.find(pid); it != files_.end()) it->second.flush();
  std::unordered_map<ImaRef, std::size_t> slot;
  for (std::size_t i = 0; i < refs.size(); ++i) slot.emplace(refs[i], i);
  std::vector<std::optional<Continuation>> found(refs.size());
  auto content = text::read_file(path(pid));
  text::LineReader lines(content);
  std::string_view line;
  constexpr std::string_view prefix = "{\"ref\":";
  while (lines.next(line)) {
    if (!line.starts_with(prefix)) throw ParseError(path(pid) + ": malformed IMA line", lines.line_number());
    auto rest = line.substr(prefix.size());
    auto ref = text::parse_uint(rest.substr(0, rest.find(',')));
    if (!ref) throw ParseError(path(pid) + ": malformed IMA ref", lines.line_number());
    auto s = slot.find(*ref);
    if (s == slot.end()) continue;
    auto rec = parse_ima_record(line, disjuncts_);
    if (rec.cont.target != pid) throw InvariantError("IMA record " + std::to_string(*ref) + " belongs elsewhere");
    found[s->second] = std::move(rec.cont);
  }
  std::vector<Continuation> out;
  out.reserve(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (!found[i]) throw InvariantError("SNI names missing IMA record " + std::to_string(refs[i]));
    out.push_back(std::move(*found[i]));
  }
  return out;
}

FaaStore::FaaStore(std::optional<std::string> path) {
  if (path) {
    file_.emplace(*path, std::ios::trunc | std::ios::binary);
    if (!*file_) throw IoError("cannot open " + *path);
  }
}

bool FaaStore::add(Answer a) {
  auto key = a.key();
  if (!keys_.insert(std::move(key)).second) return false;
  if (file_) *file_ << a.line() << '\n';
  answers_.push_back(std::move(a));
  return true;
}

void FaaStore::flush() {
  if (file_) {
    file_->flush();
    if (!*file_) throw IoError("write failed for FAA file");
  }
}

std::optional<double> RunLog::ratio() const {
  if (al() == 0 || !complete) return std::nullopt;
  return static_cast<double>(l_ideal) / static_cast<double>(al());
}

std::string RunLog::to_tsv() const {
  auto join = [](const std::vector<PartitionId>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
  };
  std::string out;
  out += "mode\t" + std::string(text::mode_name(mode)) + "\n";
  out += "heuristic\t" + std::string(text::heuristic_name(heuristic)) + "\n";
  out += "workers\t" + std::to_string(workers) + "\n";
  out += "seed\t" + std::to_string(seed) + "\n";
  out += "limit\t" + (limit ? std::to_string(*limit) : std::string("-")) + "\n";
  out += "load_sequence\t" + join(load_sequence) + "\n";
  out += "al\t" + std::to_string(al()) + "\n";
  out += "l_ideal\t" + std::to_string(l_ideal) + "\n";
  out += "required_partitions\t" + std::to_string(required_partitions) + "\n";
  auto r = ratio();
  out += "ratio\t" + (r ? text::format_number(*r) : std::string("-")) + "\n";
  out += "iterations\t" + std::to_string(iterations.size()) + "\n";
  out += "answers\t" + std::to_string(answers) + "\n";
  out += "complete\t" + std::string(complete ? "1" : "0") + "\n";
  out += "seeds\t" + std::to_string(counters.seeds) + "\n";
  out += "continuations\t" + std::to_string(counters.continuations) + "\n";
  out += "failures\t" + std::to_string(counters.failures) + "\n";
  return out;
}

std::string RunLog::iterations_tsv() const {
  std::string out = "i\trequired\tchosen\twall_ms\n";
  for (const auto& it : iterations) {
    std::string chosen;
    for (std::size_t i = 0; i < it.chosen.size(); ++i) chosen += (i ? " " : "") + std::to_string(it.chosen[i]);
    out += std::to_string(it.index) + "\t" + std::to_string(it.required) + "\t" + chosen + "\t" +
           text::format_number(it.wall_ms) + "\n";
  }
  return out;
}

std::vector<PartitionId> choose_top(const std::vector<std::pair<PartitionId, std::uint64_t>>& weights, Heuristic h,
                                    std::size_t count, std::mt19937_64& rng) {
  auto order = weights;
  std::shuffle(order.begin(), order.end(), rng);
  if (h == Heuristic::max_sn)
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  else if (h == Heuristic::min_sn)
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  std::vector<PartitionId> out;
  for (std::size_t i = 0; i < order.size() && i < count; ++i) out.push_back(order[i].first);
  return out;
}

PartitionId choose_next(const SniTable& sni, Heuristic h, std::mt19937_64& rng) {
  if (sni.empty()) throw InvariantError("choose_next on an empty SNI table");
  return choose_top(sni.weights(), h, 1, rng).front();
}

}  // namespace pgqp
