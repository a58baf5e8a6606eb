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

#include "marketsim/network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>
#include <utility>

#include "marketsim/error.hpp"

namespace marketsim {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Millimeters to_millimeters(double meters) {
  return static_cast<Millimeters>(std::llround(meters * 1000.0));
}

}  // namespace

RoadNetwork::RoadNetwork(std::vector<std::string> node_names, std::vector<RoadEdge> edges,
                         double speed_mps)
    : names_(std::move(node_names)), edges_(std::move(edges)), speed_(speed_mps) {
  if (!(speed_ > 0.0) || !std::isfinite(speed_)) {
    throw Error(Errc::validation_error, "network speed must be positive");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!by_name_.emplace(names_[i], static_cast<NodeIndex>(i)).second) {
      throw Error(Errc::validation_error, "duplicate node id '" + names_[i] + "'");
    }
  }
  out_.resize(names_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (edge.from >= names_.size() || edge.to >= names_.size()) {
      throw Error(Errc::dangling_edge_endpoint, "edge " + std::to_string(e));
    }
    if (edge.length <= 0) {
      throw Error(Errc::validation_error, "edge " + std::to_string(e) + " has non-positive length");
    }
    out_[edge.from].push_back(e);
  }
  compute_all_pairs();
}

void RoadNetwork::compute_all_pairs() {
  const std::size_t n = names_.size();
  dist_.assign(n * n, kUnreachable);
  next_.assign(n * n, 0);
  using Entry = std::pair<Millimeters, NodeIndex>;
  std::vector<Millimeters> dist(n);
  std::vector<NodeIndex> first(n);
  for (NodeIndex source = 0; source < n; ++source) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    dist[source] = 0;
    first[source] = source;
    frontier.emplace(0, source);
    while (!frontier.empty()) {
      auto [d, u] = frontier.top();
      frontier.pop();
      if (d != dist[u]) continue;
      for (std::size_t e : out_[u]) {
        const auto& edge = edges_[e];
        const Millimeters candidate = d + edge.length;
        if (candidate < dist[edge.to]) {
          dist[edge.to] = candidate;
          first[edge.to] = (u == source) ? edge.to : first[u];
          frontier.emplace(candidate, edge.to);
        }
      }
    }
    for (NodeIndex t = 0; t < n; ++t) {
      dist_[source * n + t] = dist[t];
      next_[source * n + t] = dist[t] == kUnreachable ? source : first[t];
    }
  }
}

std::optional<NodeIndex> RoadNetwork::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

NodeIndex RoadNetwork::index(std::string_view name) const {
  if (auto found = find(name)) return *found;
  throw Error(Errc::unknown_node, std::string(name));
}

Millimeters RoadNetwork::edge_length(NodeIndex from, NodeIndex to) const {
  Millimeters best = kUnreachable;
  for (std::size_t e : out_.at(from)) {
    if (edges_[e].to == to) best = std::min(best, edges_[e].length);
  }
  return best;
}

ShortestPath shortest_path(const RoadNetwork& net, NodeIndex from, NodeIndex to) {
  if (from >= net.node_count() || to >= net.node_count()) {
    throw Error(Errc::unknown_node, std::to_string(std::max(from, to)));
  }
  if (!net.reachable(from, to)) {
    throw Error(Errc::unreachable, net.name(from) + " -> " + net.name(to));
  }
  ShortestPath result;
  const Millimeters d = net.distance(from, to);
  result.distance_m = static_cast<double>(d) / 1000.0;
  result.duration_s = net.travel_time(d);
  result.path.push_back(from);
  for (NodeIndex at = from; at != to;) {
    at = net.next_hop(at, to);
    result.path.push_back(at);
  }
  return result;
}

RoadNetwork parse_network(std::string_view text, double speed_mps) {
  enum class Section { none, nodes, edges } section = Section::none;
  std::vector<std::string> names;
  std::unordered_map<std::string, NodeIndex> index;
  struct RawEdge {
    std::string from, to;
    double length;
    std::size_t line;
  };
  std::vector<RawEdge> raw;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line == "#nodes") { section = Section::nodes; continue; }
    if (line == "#edges") { section = Section::edges; continue; }
    const auto fields = split_commas(line);
    if (section == Section::nodes) {
      if (fields.size() != 1 || fields[0].empty()) {
        throw Error(Errc::malformed_row, "line " + std::to_string(line_no));
      }
      std::string name(fields[0]);
      if (!index.emplace(name, static_cast<NodeIndex>(names.size())).second) {
        throw Error(Errc::malformed_row, "line " + std::to_string(line_no) + ": duplicate node");
      }
      names.push_back(std::move(name));
    } else if (section == Section::edges) {
      double length = 0.0;
      if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
        throw Error(Errc::malformed_row, "line " + std::to_string(line_no));
      }
      auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), length);
      if (ec != std::errc() || ptr != fields[2].data() + fields[2].size() || !(length > 0.0) ||
          !std::isfinite(length) || to_millimeters(length) <= 0) {
        throw Error(Errc::malformed_row, "line " + std::to_string(line_no) + ": bad length");
      }
      raw.push_back({std::string(fields[0]), std::string(fields[1]), length, line_no});
    } else {
      throw Error(Errc::malformed_row, "line " + std::to_string(line_no) + ": outside any section");
    }
  }

  std::vector<RoadEdge> edges;
  edges.reserve(raw.size());
  for (const auto& r : raw) {
    auto from = index.find(r.from);
    auto to = index.find(r.to);
    if (from == index.end() || to == index.end()) {
      throw Error(Errc::dangling_edge_endpoint,
                  r.from + "," + r.to + " (line " + std::to_string(r.line) + ")");
    }
    edges.push_back({from->second, to->second, to_millimeters(r.length)});
  }
  return RoadNetwork(std::move(names), std::move(edges), speed_mps);
}

RoadNetwork load_network(const std::filesystem::path& path, double speed_mps) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::missing_file, path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_network(buffer.str(), speed_mps);
}

RoadNetwork make_grid(int rows, int cols, double edge_length_m, double speed_mps) {
  if (rows < 1 || cols < 1) {
    throw Error(Errc::invalid_dimension,
                "grid " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  if (!(edge_length_m > 0.0)) throw Error(Errc::invalid_dimension, "edge length must be positive");
  const auto n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  const Millimeters len = to_millimeters(edge_length_m);
  std::vector<RoadEdge> edges;
  auto at = [cols](int r, int c) { return static_cast<NodeIndex>(r * cols + c); };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) {
        edges.push_back({at(r, c), at(r, c + 1), len});
        edges.push_back({at(r, c + 1), at(r, c), len});
      }
      if (r + 1 < rows) {
        edges.push_back({at(r, c), at(r + 1, c), len});
        edges.push_back({at(r + 1, c), at(r, c), len});
      }
    }
  }
  return RoadNetwork(std::move(names), std::move(edges), speed_mps);
}

}  // namespace marketsim
