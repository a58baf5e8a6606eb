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

#include <functional>
#include <memory>

#include "doctest.h"
#include "marketsim/engine.hpp"
#include "marketsim/error.hpp"

namespace marketsim::testing {

inline Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return Errc::io_error;
}

inline Vehicle vehicle_at(VehicleId id, PlatformId platform, NodeIndex node) {
  Vehicle v;
  v.id = id;
  v.platform = platform;
  v.position = node;
  return v;
}

inline std::shared_ptr<const RoadNetwork> grid(int rows, int cols, double edge = 100.0, double speed = 10.0) {
  return std::make_shared<const RoadNetwork>(make_grid(rows, cols, edge, speed));
}

}  // namespace marketsim::testing
