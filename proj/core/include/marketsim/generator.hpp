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

#include "marketsim/engine.hpp"

namespace marketsim {

struct GeneratorOptions {
  int grid_rows = 10;
  int grid_cols = 10;
  double edge_length_m = 200.0;
  double speed_mps = 10.0;
  int requests = 40;
  int platforms = 2;
  int fleet = 12;  // total vehicles, split evenly (remainder to low ids)
  double duration_s = 1200.0;
  std::uint64_t seed = 1;
  Objective objective = Objective::min_vmt_penalty;
  MarketStructure structure;
};

/// Uniform request times over [0, duration) and uniform distinct OD nodes
/// from the "demand" substream. Platform ids are assigned round-robin after a
/// shuffle on the "demand-split" substream, so every platform receives an
/// equal share (up to one).
std::vector<Request> generate_demand(const RoadNetwork& net, int count, double duration_s,
                                     int platforms, std::uint64_t seed);

/// Grid network, generated demand, evenly split fleets with random placement.
Scenario generate_scenario(const GeneratorOptions& options);

}  // namespace marketsim
