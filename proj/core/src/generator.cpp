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

#include "marketsim/generator.hpp"

#include <algorithm>
#include <cmath>

#include "marketsim/error.hpp"

namespace marketsim {

std::vector<Request> generate_demand(const RoadNetwork& net, int count, double duration_s, int platforms,
                                     std::uint64_t seed) {
  if (count < 0 || platforms <= 0 || !(duration_s > 0.0)) {
    throw Error(Errc::validation_error, "demand needs count >= 0, platforms > 0 and duration > 0");
  }
  if (net.node_count() < 2) throw Error(Errc::invalid_dimension, "network needs two nodes");
  Rng rng(seed, streams::kDemand);
  std::vector<Request> out;
  std::vector<double> times;
  for (int k = 0; k < count; ++k) {
    // Whole seconds keep request files exact in text form.
    times.push_back(std::floor(rng.uniform() * duration_s));
  }
  std::sort(times.begin(), times.end());
  for (int k = 0; k < count; ++k) {
    NodeIndex o = 0, d = 0;
    do {
      o = static_cast<NodeIndex>(rng.below(net.node_count()));
      d = static_cast<NodeIndex>(rng.below(net.node_count()));
    } while (o == d || !net.reachable(o, d));
    out.push_back(make_request(net, k + 1, o, d, times[static_cast<std::size_t>(k)], 0));
  }
  std::vector<std::size_t> order(out.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  Rng split(seed, streams::kDemandSplit);
  split.shuffle(order);
  for (std::size_t k = 0; k < order.size(); ++k) {
    Request& r = out[order[k]];
    r.platform = static_cast<PlatformId>(k % static_cast<std::size_t>(platforms));
    r.owner = r.platform;
  }
  return out;
}

Scenario generate_scenario(const GeneratorOptions& o) {
  if (o.platforms <= 0 || o.fleet < 0) throw Error(Errc::validation_error, "bad platform or fleet size");
  Scenario s;
  s.name = "generated-" + std::to_string(o.seed);
  s.network = std::make_shared<const RoadNetwork>(make_grid(o.grid_rows, o.grid_cols, o.edge_length_m, o.speed_mps));
  s.requests = generate_demand(*s.network, o.requests, o.duration_s, o.platforms, o.seed);
  for (int p = 0; p < o.platforms; ++p) {
    const int share = o.fleet / o.platforms + (p < o.fleet % o.platforms ? 1 : 0);
    s.platforms.push_back({static_cast<PlatformId>(p), share, {}});
  }
  s.structure = o.structure;
  s.seed = o.seed;
  s.horizon_s = o.duration_s;
  s.objective = o.objective;
  return s;
}

}  // namespace marketsim
