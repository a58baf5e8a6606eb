// Copyright 2026 The marketsim Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace marketsim {

using NodeIndex = std::uint32_t;

/// Lengths are stored as integer millimetres so that route and odometer sums
/// are exact.
using Millimeters = std::int64_t;

inline constexpr Millimeters kUnreachable = std::numeric_limits<Millimeters>::max();

struct RoadEdge {
  NodeIndex from = 0;
  NodeIndex to = 0;
  Millimeters length = 0;
};

// Directed road graph with a single constant travel speed. All-pairs shortest
// distances and next hops are computed once in the constructor; the object is
// immutable afterwards and safe to share between threads.
class RoadNetwork {
 public:
  RoadNetwork(std::vector<std::string> node_names, std::vector<RoadEdge> edges,
              double speed_mps);

  [[nodiscard]] std::size_t node_count() const { return names_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] double speed() const { return speed_; }
  [[nodiscard]] const std::vector<RoadEdge>& edges() const { return edges_; }

  [[nodiscard]] const std::string& name(NodeIndex node) const { return names_.at(node); }
  [[nodiscard]] std::optional<NodeIndex> find(std::string_view name) const;
  /// Throws Errc::unknown_node.
  [[nodiscard]] NodeIndex index(std::string_view name) const;

  /// kUnreachable when no directed path exists.
  [[nodiscard]] Millimeters distance(NodeIndex from, NodeIndex to) const {
    return dist_[static_cast<std::size_t>(from) * names_.size() + to];
  }
  [[nodiscard]] bool reachable(NodeIndex from, NodeIndex to) const {
    return distance(from, to) != kUnreachable;
  }
  /// Seconds to drive `length` at the network speed.
  [[nodiscard]] double travel_time(Millimeters length) const {
    return static_cast<double>(length) / 1000.0 / speed_;
  }
  [[nodiscard]] double travel_time(NodeIndex from, NodeIndex to) const {
    return travel_time(distance(from, to));
  }
  /// First node after `from` on the shortest path to `to`; `to` itself when
  /// the two coincide.
  [[nodiscard]] NodeIndex next_hop(NodeIndex from, NodeIndex to) const {
    return next_[static_cast<std::size_t>(from) * names_.size() + to];
  }
  /// Length of the direct edge from -> to (shortest if parallel edges exist).
  [[nodiscard]] Millimeters edge_length(NodeIndex from, NodeIndex to) const;

 private:
  void compute_all_pairs();

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeIndex> by_name_;
  std::vector<RoadEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;  // edge indices by tail node
  double speed_;
  std::vector<Millimeters> dist_;
  std::vector<NodeIndex> next_;
};

struct ShortestPath {
  double distance_m = 0.0;
  double duration_s = 0.0;
  std::vector<NodeIndex> path;
};

/// Throws Errc::unknown_node for indices outside the graph and
/// Errc::unreachable when no path exists.
ShortestPath shortest_path(const RoadNetwork& net, NodeIndex from, NodeIndex to);

/// Network CSV: a `#nodes` section of node ids followed by an `#edges`
/// section of `from,to,length_m` rows.
RoadNetwork load_network(const std::filesystem::path& path, double speed_mps);
RoadNetwork parse_network(std::string_view text, double speed_mps);

/// Bidirectional 4-neighbour grid with row-major node ids "0".."rows*cols-1".
RoadNetwork make_grid(int rows, int cols, double edge_length_m, double speed_mps);

}  // namespace marketsim
