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

#ifndef CDRISK_COMM_GRAPH_H_
#define CDRISK_COMM_GRAPH_H_

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cdrisk/time_bucket.h"
#include "cdrisk/types.h"

namespace cdrisk {

struct CallCounter {
  std::uint64_t calls = 0;
  std::uint64_t duration_s = 0;

  CallCounter& operator+=(const CallCounter& o) {
    calls += o.calls;
    duration_s += o.duration_s;
    return *this;
  }
  friend bool operator==(const CallCounter&, const CallCounter&) = default;
};

// Per-edge aggregates: 2 directions x 3 buckets x {calls, duration}. The
// direction is relative to whichever endpoint the stats are viewed from; in
// CommGraph storage that is the canonical (lexicographically smaller) one.
class EdgeStats {
 public:
  void add(Direction direction, TimeBucket bucket, std::uint64_t duration_s);

  const CallCounter& at(Direction direction, TimeBucket bucket) const {
    return slots_[static_cast<std::size_t>(direction)][static_cast<std::size_t>(bucket)];
  }
  std::uint64_t total_calls() const;
  std::uint64_t total_duration_s() const;

  // Same edge seen from the other endpoint: incoming and outgoing swap.
  EdgeStats flipped() const;

  EdgeStats& operator+=(const EdgeStats& other);
  friend bool operator==(const EdgeStats&, const EdgeStats&) = default;

 private:
  std::array<std::array<CallCounter, 3>, 2> slots_{};
};

// Canonical unordered pair: first < second.
using EdgeKey = std::pair<UserId, UserId>;
EdgeKey canonical_edge(const UserId& a, const UserId& b);

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& key) const noexcept {
    const std::size_t h1 = std::hash<UserId>{}(key.first);
    const std::size_t h2 = std::hash<UserId>{}(key.second);
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};

// Undirected client communication graph. Building is shardable: graphs merge
// by counter-wise addition with the empty graph as identity, so any partition
// of the records built separately and merged in any order equals one pass.
class CommGraph {
 public:
  static CommGraph build(std::span<const CallRecord> records);

  void add_record(const CallRecord& record);
  CommGraph& merge(const CommGraph& other);

  // Every user appearing in any record.
  const std::unordered_set<UserId>& nodes() const { return nodes_; }
  // Users appearing as the logged party (`caller`) of at least one record.
  const std::unordered_set<UserId>& clients() const { return clients_; }
  bool is_client(const UserId& u) const { return clients_.contains(u); }

  const std::unordered_map<EdgeKey, EdgeStats, EdgeKeyHash>& edges() const {
    return edges_;
  }
  std::size_t edge_count() const { return edges_.size(); }

  // Sorted; empty for unknown or isolated users.
  std::vector<UserId> neighbors(const UserId& u) const;
  std::size_t degree(const UserId& u) const;

  // Stats of edge {u, v} with directions relative to `u`, nullopt if absent.
  std::optional<EdgeStats> stats_from(const UserId& u, const UserId& v) const;

  friend bool operator==(const CommGraph& a, const CommGraph& b);

 private:
  std::unordered_set<UserId> nodes_;
  std::unordered_set<UserId> clients_;
  std::unordered_map<EdgeKey, EdgeStats, EdgeKeyHash> edges_;
  std::unordered_map<UserId, std::unordered_set<UserId>> adjacency_;
};

CommGraph merge(CommGraph a, const CommGraph& b);

// Debug dump: `user_a,user_b,calls_total,duration_total_s`, canonical order,
// rows sorted by edge key.
void write_edge_list(std::ostream& out, const CommGraph& graph);

}  // namespace cdrisk

#endif  // CDRISK_COMM_GRAPH_H_
