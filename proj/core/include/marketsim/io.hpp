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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "marketsim/cooperative.hpp"
#include "marketsim/engine.hpp"
#include "marketsim/market.hpp"

namespace marketsim {

/// Reads and validates a scenario JSON file. Relative paths inside it are
/// resolved against the file's directory. Throws Errc::parse_error,
/// Errc::validation_error, Errc::unknown_key and Errc::missing_file.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir);

/// Requests CSV with header `id,request_time_s,origin_node,dest_node,platform`.
std::vector<Request> load_requests(const std::filesystem::path& path, const RoadNetwork& net);
std::vector<Request> parse_requests(std::string_view text, const RoadNetwork& net);
std::string format_requests(std::span<const Request> requests, const RoadNetwork& net);

enum class ResultFormat { json, csv };

std::string metrics_to_json(const EpisodeMetrics& metrics);
std::string metrics_to_json(std::span<const EpisodeMetrics> metrics);
EpisodeMetrics metrics_from_json(std::string_view text);
std::vector<EpisodeMetrics> metrics_list_from_json(std::string_view text);
/// One row per metrics entry; per-platform columns for the union of platforms.
std::string metrics_to_csv(std::span<const EpisodeMetrics> metrics);

/// Throws Errc::io_error when the file cannot be written.
void write_results(std::span<const EpisodeMetrics> metrics, const std::filesystem::path& path,
                   ResultFormat format);
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

/// `{"players": [1, 2], "v": {"1": 10.0, "2": 20.0, "1,2": 36.0}}`
CoalitionGame parse_game(std::string_view json_text);

/// Game file with optional per-player `costs` and `revenues` arrays (aligned
/// with `players`) from which contribution weights are derived.
struct GameFile {
  CoalitionGame game;
  std::optional<std::vector<double>> costs;
  std::optional<std::vector<double>> revenues;
};
GameFile parse_game_file(std::string_view json_text);
std::string format_game(const CoalitionGame& game);

/// `epoch,request,seller,buyer,info_price`
std::string format_trade_log(std::span<const TradeRecord> trades);

/// Scenario JSON emitted by the generator and by tests.
struct ScenarioFileSpec {
  std::string name = "scenario";
  int grid_rows = 10;
  int grid_cols = 10;
  double edge_length_m = 200.0;
  double speed_mps = 10.0;
  std::string requests_file = "requests.csv";
  std::vector<PlatformSpec> platforms;
  MarketStructure structure;
  std::uint64_t seed = 1;
  double horizon_s = 0.0;
  Objective objective = Objective::min_vmt_penalty;
};
std::string format_scenario(const ScenarioFileSpec& spec);

}  // namespace marketsim
