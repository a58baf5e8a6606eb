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

#include <algorithm>
#include <functional>
#include <limits>

#include "doctest.h"
#include "marketsim/error.hpp"
#include "marketsim/network.hpp"
#include "marketsim/rng.hpp"

using namespace marketsim;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return Errc::io_error;
}

// Exhaustive simple-path enumeration; returns the shortest length or -1.
Millimeters enumerate_paths(const RoadNetwork& net, NodeIndex s, NodeIndex t) {
  Millimeters best = -1;
  std::vector<bool> seen(net.node_count(), false);
  std::function<void(NodeIndex, Millimeters)> dfs = [&](NodeIndex at, Millimeters len) {
    if (at == t) {
      if (best < 0 || len < best) best = len;
      return;
    }
    seen[at] = true;
    for (const auto& e : net.edges()) {
      if (e.from == at && !seen[e.to]) dfs(e.to, len + e.length);
    }
    seen[at] = false;
  };
  dfs(s, 0);
  return best;
}

}  // namespace

TEST_CASE("network csv parsing") {
  const auto net = parse_network("#nodes\nA\nB\n#edges\nA,B,100\n", 10.0);
  CHECK(net.node_count() == 2);
  CHECK(net.edge_count() == 1);
  CHECK(net.distance(net.index("A"), net.index("B")) == 100000);
  CHECK_FALSE(net.reachable(net.index("B"), net.index("A")));

  CHECK(code_of([] { parse_network("#nodes\nA\n#edges\nA,Z,100\n", 10.0); }) ==
        Errc::dangling_edge_endpoint);
  CHECK(code_of([] { parse_network("#nodes\nA\nB\n#edges\nA,B\n", 10.0); }) == Errc::malformed_row);
  CHECK(code_of([] { parse_network("#nodes\nA\nB\n#edges\nA,B,-5\n", 10.0); }) == Errc::malformed_row);
  CHECK(code_of([] { load_network("/nonexistent/net.csv", 10.0); }) == Errc::missing_file);

  const auto empty = parse_network("#nodes\nA\nB\n#edges\n", 10.0);
  CHECK(empty.edge_count() == 0);
  CHECK(code_of([&] { shortest_path(empty, 0, 1); }) == Errc::unreachable);
}

TEST_CASE("grid construction") {
  const auto one = make_grid(1, 1, 100, 10);
  CHECK(one.node_count() == 1);
  CHECK(one.edge_count() == 0);
  const auto two = make_grid(2, 2, 100, 10);
  CHECK(two.node_count() == 4);
  CHECK(two.edge_count() == 8);
  for (int r = 1; r <= 4; ++r) {
    for (int c = 1; c <= 4; ++c) {
      CHECK(make_grid(r, c, 50, 5).edge_count() ==
            static_cast<std::size_t>(2 * (r * (c - 1) + c * (r - 1))));
    }
  }
  CHECK(code_of([] { make_grid(0, 3, 100, 10); }) == Errc::invalid_dimension);
  CHECK(code_of([] { make_grid(2, 2, 0, 10); }) == Errc::invalid_dimension);
}

TEST_CASE("shortest path on a line") {
  const auto net = parse_network("#nodes\nA\nB\nC\n#edges\nA,B,100\nB,C,100\n", 10.0);
  const auto p = shortest_path(net, net.index("A"), net.index("C"));
  CHECK(p.distance_m == doctest::Approx(200.0));
  CHECK(p.duration_s == doctest::Approx(20.0));
  CHECK(p.path == std::vector<NodeIndex>{0, 1, 2});
  const auto self = shortest_path(net, 1, 1);
  CHECK(self.distance_m == 0.0);
  CHECK(self.path == std::vector<NodeIndex>{1});
  CHECK(code_of([&] { shortest_path(net, 0, 7); }) == Errc::unknown_node);
  CHECK(code_of([&] { static_cast<void>(net.index("Q")); }) == Errc::unknown_node);
}

TEST_CASE("triangle inequality and duration identity on grids") {
  for (int n = 2; n <= 5; ++n) {
    const auto net = make_grid(n, n, 137.5, 7.0);
    const auto N = static_cast<NodeIndex>(net.node_count());
    for (NodeIndex a = 0; a < N; ++a) {
      for (NodeIndex b = 0; b < N; ++b) {
        CHECK(net.travel_time(a, b) * 7.0 == doctest::Approx(net.distance(a, b) / 1000.0));
        for (NodeIndex c = 0; c < N; ++c) {
          CHECK(net.distance(a, c) <= net.distance(a, b) + net.distance(b, c));
        }
      }
    }
  }
}

TEST_CASE("shortest paths match exhaustive enumeration on small random graphs") {
  Rng rng(7, "network-test");
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<NodeIndex>(2 + rng.below(5));
    std::vector<std::string> names;
    for (NodeIndex k = 0; k < n; ++k) names.push_back("n" + std::to_string(k));
    std::vector<RoadEdge> edges;
    for (NodeIndex a = 0; a < n; ++a) {
      for (NodeIndex b = 0; b < n; ++b) {
        if (a != b && rng.below(3) == 0) edges.push_back({a, b, static_cast<Millimeters>(1 + rng.below(5000))});
      }
    }
    const RoadNetwork net(names, edges, 3.0);
    for (NodeIndex a = 0; a < n; ++a) {
      for (NodeIndex b = 0; b < n; ++b) {
        const Millimeters oracle = enumerate_paths(net, a, b);
        if (oracle < 0) {
          CHECK_FALSE(net.reachable(a, b));
          continue;
        }
        CHECK(net.distance(a, b) == oracle);
        const auto p = shortest_path(net, a, b);
        CHECK(p.path.front() == a);
        CHECK(p.path.back() == b);
        Millimeters walked = 0;
        for (std::size_t k = 1; k < p.path.size(); ++k) walked += net.edge_length(p.path[k - 1], p.path[k]);
        CHECK(walked == oracle);
      }
    }
  }
}
