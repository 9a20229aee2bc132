// Copyright 2026 The cdrisk Authors.
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

#include "cdrisk/comm_graph.h"

#include <algorithm>

namespace cdrisk {

void EdgeStats::add(Direction direction, TimeBucket bucket, std::uint64_t duration_s) {
  CallCounter& c =
      slots_[static_cast<std::size_t>(direction)][static_cast<std::size_t>(bucket)];
  ++c.calls;
  c.duration_s += duration_s;
}

std::uint64_t EdgeStats::total_calls() const {
  std::uint64_t total = 0;
  for (const auto& row : slots_) {
    for (const auto& c : row) total += c.calls;
  }
  return total;
}

std::uint64_t EdgeStats::total_duration_s() const {
  std::uint64_t total = 0;
  for (const auto& row : slots_) {
    for (const auto& c : row) total += c.duration_s;
  }
  return total;
}

EdgeStats EdgeStats::flipped() const {
  EdgeStats out;
  out.slots_[0] = slots_[1];
  out.slots_[1] = slots_[0];
  return out;
}

EdgeStats& EdgeStats::operator+=(const EdgeStats& other) {
  for (std::size_t d = 0; d < 2; ++d) {
    for (std::size_t b = 0; b < 3; ++b) slots_[d][b] += other.slots_[d][b];
  }
  return *this;
}

EdgeKey canonical_edge(const UserId& a, const UserId& b) {
  return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

CommGraph CommGraph::build(std::span<const CallRecord> records) {
  CommGraph g;
  for (const CallRecord& r : records) g.add_record(r);
  return g;
}

void CommGraph::add_record(const CallRecord& record) {
  nodes_.insert(record.caller);
  nodes_.insert(record.callee);
  clients_.insert(record.caller);
  const bool caller_is_first = record.caller < record.callee;
  EdgeKey key = caller_is_first ? EdgeKey{record.caller, record.callee}
                                : EdgeKey{record.callee, record.caller};
  const Direction relative =
      caller_is_first ? record.direction : flip(record.direction);
  auto [it, inserted] = edges_.try_emplace(std::move(key));
  it->second.add(relative, classify_time(record.timestamp),
                 static_cast<std::uint64_t>(record.duration_s));
  if (inserted) {
    adjacency_[record.caller].insert(record.callee);
    adjacency_[record.callee].insert(record.caller);
  }
}

CommGraph& CommGraph::merge(const CommGraph& other) {
  nodes_.insert(other.nodes_.begin(), other.nodes_.end());
  clients_.insert(other.clients_.begin(), other.clients_.end());
  for (const auto& [key, stats] : other.edges_) {
    auto [it, inserted] = edges_.try_emplace(key);
    it->second += stats;
    if (inserted) {
      adjacency_[key.first].insert(key.second);
      adjacency_[key.second].insert(key.first);
    }
  }
  return *this;
}

std::vector<UserId> CommGraph::neighbors(const UserId& u) const {
  auto it = adjacency_.find(u);
  if (it == adjacency_.end()) return {};
  std::vector<UserId> out(it->second.begin(), it->second.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t CommGraph::degree(const UserId& u) const {
  auto it = adjacency_.find(u);
  return it == adjacency_.end() ? 0 : it->second.size();
}

std::optional<EdgeStats> CommGraph::stats_from(const UserId& u, const UserId& v) const {
  auto it = edges_.find(canonical_edge(u, v));
  if (it == edges_.end()) return std::nullopt;
  return u < v ? it->second : it->second.flipped();
}

bool operator==(const CommGraph& a, const CommGraph& b) {
  // Adjacency is derived from the edge map.
  return a.nodes_ == b.nodes_ && a.clients_ == b.clients_ && a.edges_ == b.edges_;
}

CommGraph merge(CommGraph a, const CommGraph& b) {
  a.merge(b);
  return a;
}

void write_edge_list(std::ostream& out, const CommGraph& graph) {
  std::vector<const std::pair<const EdgeKey, EdgeStats>*> rows;
  rows.reserve(graph.edge_count());
  for (const auto& entry : graph.edges()) rows.push_back(&entry);
  std::sort(rows.begin(), rows.end(),
            [](const auto* a, const auto* b) { return a->first < b->first; });
  out << "user_a,user_b,calls_total,duration_total_s\n";
  for (const auto* row : rows) {
    out << row->first.first.str() << ',' << row->first.second.str() << ','
        << row->second.total_calls() << ',' << row->second.total_duration_s() << '\n';
  }
}

}  // namespace cdrisk
