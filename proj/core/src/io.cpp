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

#include "marketsim/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "marketsim/error.hpp"

namespace marketsim {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fixed4(double v) {
  std::string s = fmt::format("{:.4f}", v);
  return s == "-0.0000" ? "0.0000" : s;
}

// Rejects any key outside `allowed`.
void only_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!obj.is_object()) throw Error(Errc::validation_error, std::string(where) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(Errc::unknown_key, std::string(where) + "." + key);
    }
  }
}

template <class T>
T field(const json& obj, std::string_view key, std::string_view where) {
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) throw Error(Errc::validation_error, std::string(where) + "." + std::string(key) + " missing");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(Errc::validation_error, std::string(where) + "." + std::string(key) + " has the wrong type");
  }
}

template <class T>
void maybe(const json& obj, std::string_view key, std::string_view where, T& target) {
  if (obj.contains(std::string(key))) target = field<T>(obj, key, where);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, fmt::format("byte {}: {}", e.byte, e.what()));
  }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

PricingScheme parse_pricing(const json& j) {
  only_keys(j, {"ded_base", "ded_per_mile", "ded_per_min", "ded_min_fare", "shr_base", "shr_per_mile",
                "shr_per_min", "shr_min_fare", "pay_per_mile", "pay_per_min"},
            "pricing");
  PricingScheme p;
  maybe(j, "ded_base", "pricing", p.ded_base);
  maybe(j, "ded_per_mile", "pricing", p.ded_per_mile);
  maybe(j, "ded_per_min", "pricing", p.ded_per_min);
  maybe(j, "ded_min_fare", "pricing", p.ded_min_fare);
  maybe(j, "shr_base", "pricing", p.shr_base);
  maybe(j, "shr_per_mile", "pricing", p.shr_per_mile);
  maybe(j, "shr_per_min", "pricing", p.shr_per_min);
  maybe(j, "shr_min_fare", "pricing", p.shr_min_fare);
  maybe(j, "pay_per_mile", "pricing", p.pay_per_mile);
  maybe(j, "pay_per_min", "pricing", p.pay_per_min);
  p.validate();
  return p;
}

Constraints parse_constraints(const json& j) {
  only_keys(j, {"detour_factor", "max_wait_s", "max_pickup_s", "penalty", "gamma", "interval_s"},
            "constraints");
  Constraints c;
  maybe(j, "detour_factor", "constraints", c.detour_factor);
  maybe(j, "max_wait_s", "constraints", c.max_wait_s);
  maybe(j, "max_pickup_s", "constraints", c.max_pickup_s);
  maybe(j, "penalty", "constraints", c.penalty);
  maybe(j, "gamma", "constraints", c.gamma);
  maybe(j, "interval_s", "constraints", c.interval_s);
  return c;
}

std::shared_ptr<const RoadNetwork> parse_network_spec(const json& j, const std::filesystem::path& base) {
  only_keys(j, {"grid", "csv", "speed_mps"}, "network");
  if (j.contains("grid") == j.contains("csv")) {
    throw Error(Errc::validation_error, "network needs exactly one of grid or csv");
  }
  if (j.contains("grid")) {
    if (j.contains("speed_mps")) throw Error(Errc::validation_error, "network.speed_mps belongs in grid");
    const json& g = j.at("grid");
    only_keys(g, {"rows", "cols", "edge_length_m", "speed_mps"}, "network.grid");
    double length = 200.0, speed = 10.0;
    maybe(g, "edge_length_m", "network.grid", length);
    maybe(g, "speed_mps", "network.grid", speed);
    return std::make_shared<const RoadNetwork>(make_grid(field<int>(g, "rows", "network.grid"),
                                                         field<int>(g, "cols", "network.grid"), length, speed));
  }
  const auto path = base / field<std::string>(j, "csv", "network");
  return std::make_shared<const RoadNetwork>(load_network(path, field<double>(j, "speed_mps", "network")));
}

NodeIndex node_from_json(const json& v, const RoadNetwork& net) {
  std::string name;
  if (v.is_string()) {
    name = v.get<std::string>();
  } else if (v.is_number_integer()) {
    name = std::to_string(v.get<long long>());
  } else {
    throw Error(Errc::validation_error, "placement must be a node id");
  }
  const auto idx = net.find(name);
  if (!idx) throw Error(Errc::validation_error, "placement node '" + name + "' not in network");
  return *idx;
}

Money money_from(const json& j, std::string_view key) {
  return Money::from_dollars(field<double>(j, key, "metrics"));
}

ordered_json platform_json(const PlatformMetrics& p) {
  return {{"id", p.id},
          {"profit", p.profit.dollars()},
          {"revenue", p.revenue.dollars()},
          {"driver_cost", p.driver_cost.dollars()},
          {"info_paid", p.info_paid.dollars()},
          {"info_received", p.info_received.dollars()},
          {"auction_paid", p.auction_paid.dollars()},
          {"trips", p.trips},
          {"served", p.served},
          {"requests", p.requests},
          {"contributing_vehicle_count", p.contributing_vehicle_count},
          {"contributed_request_value", p.contributed_request_value.dollars()}};
}

ordered_json metrics_json(const EpisodeMetrics& m) {
  ordered_json j;
  j["scenario"] = m.scenario;
  j["structure"] = m.structure;
  j["seed"] = m.seed;
  j["total_vmt"] = m.total_vmt;
  j["pct_unsatisfied"] = m.pct_unsatisfied;
  j["avg_wait"] = m.avg_wait;
  j["total_trips"] = m.total_trips;
  j["requests"] = m.requests;
  j["served"] = m.served;
  j["expired"] = m.expired;
  j["trades"] = m.trades;
  j["auction_payments"] = m.auction_payments.dollars();
  j["broker_balance"] = m.broker_balance.dollars();
  j["per_platform"] = ordered_json::array();
  for (const auto& p : m.per_platform) j["per_platform"].push_back(platform_json(p));
  if (m.cooperative) {
    const auto& c = *m.cooperative;
    ordered_json coop;
    coop["players"] = c.players;
    ordered_json values = ordered_json::object();
    for (const auto& [key, v] : c.coalition_values) values[key] = v;
    coop["coalition_values"] = values;
    coop["weights"] = c.weights;
    coop["theta_profit_is_one"] = c.theta_profit_is_one;
    coop["allocations"] = ordered_json::array();
    for (const auto& a : c.allocations) {
      coop["allocations"].push_back(
          {{"method", a.method}, {"result", a.result}, {"x", a.x}, {"spread", a.spread}});
    }
    j["cooperative"] = coop;
  }
  return j;
}

EpisodeMetrics metrics_from(const json& j) {
  EpisodeMetrics m;
  m.scenario = field<std::string>(j, "scenario", "metrics");
  m.structure = field<std::string>(j, "structure", "metrics");
  m.seed = field<std::uint64_t>(j, "seed", "metrics");
  m.total_vmt = field<double>(j, "total_vmt", "metrics");
  m.pct_unsatisfied = field<double>(j, "pct_unsatisfied", "metrics");
  m.avg_wait = field<double>(j, "avg_wait", "metrics");
  m.total_trips = field<std::int64_t>(j, "total_trips", "metrics");
  m.requests = field<std::int64_t>(j, "requests", "metrics");
  m.served = field<std::int64_t>(j, "served", "metrics");
  m.expired = field<std::int64_t>(j, "expired", "metrics");
  m.trades = field<std::int64_t>(j, "trades", "metrics");
  m.auction_payments = money_from(j, "auction_payments");
  m.broker_balance = money_from(j, "broker_balance");
  for (const auto& p : j.at("per_platform")) {
    PlatformMetrics pm;
    pm.id = field<PlatformId>(p, "id", "per_platform");
    pm.profit = money_from(p, "profit");
    pm.revenue = money_from(p, "revenue");
    pm.driver_cost = money_from(p, "driver_cost");
    pm.info_paid = money_from(p, "info_paid");
    pm.info_received = money_from(p, "info_received");
    pm.auction_paid = money_from(p, "auction_paid");
    pm.trips = field<std::int64_t>(p, "trips", "per_platform");
    pm.served = field<std::int64_t>(p, "served", "per_platform");
    pm.requests = field<std::int64_t>(p, "requests", "per_platform");
    pm.contributing_vehicle_count = field<std::int64_t>(p, "contributing_vehicle_count", "per_platform");
    pm.contributed_request_value = money_from(p, "contributed_request_value");
    m.per_platform.push_back(pm);
  }
  if (j.contains("cooperative")) {
    const json& c = j.at("cooperative");
    CooperativeSummary s;
    s.players = c.at("players").get<std::vector<PlatformId>>();
    // Keys come back in sorted order from the unordered json object; restore
    // the coalition order (by mask) using the player list.
    std::map<std::string, double> values;
    for (const auto& [key, v] : c.at("coalition_values").items()) values[key] = v.get<double>();
    const auto game = CoalitionGame::from_function(s.players, [](CoalitionMask) { return 0.0; });
    for (CoalitionMask mask = 1; mask <= game.grand(); ++mask) {
      const auto key = game.key(mask);
      s.coalition_values.emplace_back(key, values.at(key));
    }
    s.weights = c.at("weights").get<std::vector<double>>();
    s.theta_profit_is_one = c.at("theta_profit_is_one").get<bool>();
    for (const auto& a : c.at("allocations")) {
      s.allocations.push_back({a.at("method").get<std::string>(), a.at("result").get<std::string>(),
                               a.at("x").get<std::vector<double>>(), a.at("spread").get<double>()});
    }
    m.cooperative = std::move(s);
  }
  return m;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir) {
  const json j = parse_json(json_text);
  only_keys(j, {"name", "network", "requests", "platforms", "structure", "constraints", "pricing", "seed",
                "horizon_s", "objective"},
            "scenario");
  Scenario s;
  maybe(j, "name", "scenario", s.name);
  if (!j.contains("network")) throw Error(Errc::validation_error, "scenario.network missing");
  s.network = parse_network_spec(j.at("network"), base_dir);
  if (j.contains("constraints")) s.limits = parse_constraints(j.at("constraints"));
  if (j.contains("pricing")) s.pricing = parse_pricing(j.at("pricing"));
  maybe(j, "seed", "scenario", s.seed);
  if (j.contains("structure")) s.structure = MarketStructure::parse(field<std::string>(j, "structure", "scenario"));
  if (j.contains("objective")) s.objective = parse_objective(field<std::string>(j, "objective", "scenario"));

  if (!j.contains("platforms") || !j.at("platforms").is_array()) {
    throw Error(Errc::validation_error, "scenario.platforms must be an array");
  }
  for (const auto& p : j.at("platforms")) {
    only_keys(p, {"id", "vehicles", "placements"}, "platforms[]");
    PlatformSpec spec;
    spec.id = field<PlatformId>(p, "id", "platforms[]");
    spec.vehicles = field<int>(p, "vehicles", "platforms[]");
    if (p.contains("placements")) {
      for (const auto& node : p.at("placements")) spec.placements.push_back(node_from_json(node, *s.network));
    }
    s.platforms.push_back(std::move(spec));
  }
  if (j.contains("requests")) {
    s.requests = load_requests(base_dir / field<std::string>(j, "requests", "scenario"), *s.network);
  }
  double latest = 0.0;
  for (const auto& r : s.requests) latest = std::max(latest, r.request_time);
  s.horizon_s = latest;
  maybe(j, "horizon_s", "scenario", s.horizon_s);
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text(path), path.parent_path());
}

std::vector<Request> parse_requests(std::string_view text, const RoadNetwork& net) {
  std::vector<Request> out;
  std::size_t line_no = 0;
  bool header = false;
  std::set<RequestId> ids;
  for (std::string_view rest = text; !rest.empty();) {
    const auto nl = rest.find('\n');
    std::string_view line = trim(rest.substr(0, nl));
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "id,request_time_s,origin_node,dest_node,platform") {
        throw Error(Errc::malformed_row, fmt::format("line {}: unexpected requests header", line_no));
      }
      header = true;
      continue;
    }
    const auto cells = split(line, ',');
    RequestId id = 0;
    double t = 0.0;
    PlatformId platform = 0;
    if (cells.size() != 5 || !parse_number(cells[0], id) || !parse_number(cells[1], t) ||
        !parse_number(cells[4], platform)) {
      throw Error(Errc::malformed_row, fmt::format("line {}: '{}'", line_no, line));
    }
    const auto origin = net.find(trim(cells[2]));
    const auto dest = net.find(trim(cells[3]));
    if (!origin || !dest) {
      throw Error(Errc::validation_error, fmt::format("line {}: node not in network", line_no));
    }
    if (!ids.insert(id).second) throw Error(Errc::validation_error, fmt::format("line {}: duplicate id", line_no));
    try {
      out.push_back(make_request(net, id, *origin, *dest, t, platform));
    } catch (const Error& e) {
      throw Error(Errc::validation_error, fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  if (!header) throw Error(Errc::malformed_row, "requests file has no header");
  return out;
}

std::vector<Request> load_requests(const std::filesystem::path& path, const RoadNetwork& net) {
  return parse_requests(read_text(path), net);
}

std::string format_requests(std::span<const Request> requests, const RoadNetwork& net) {
  std::string out = "id,request_time_s,origin_node,dest_node,platform\n";
  for (const auto& r : requests) {
    out += fmt::format("{},{},{},{},{}\n", r.id, r.request_time, net.name(r.origin), net.name(r.destination),
                       r.platform);
  }
  return out;
}

std::string metrics_to_json(const EpisodeMetrics& metrics) { return metrics_json(metrics).dump(2) + "\n"; }

std::string metrics_to_json(std::span<const EpisodeMetrics> metrics) {
  ordered_json arr = ordered_json::array();
  for (const auto& m : metrics) arr.push_back(metrics_json(m));
  return arr.dump(2) + "\n";
}

EpisodeMetrics metrics_from_json(std::string_view text) {
  try {
    return metrics_from(parse_json(text));
  } catch (const json::exception& e) {
    throw Error(Errc::validation_error, e.what());
  }
}

std::vector<EpisodeMetrics> metrics_list_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_array()) return {metrics_from(j)};
  std::vector<EpisodeMetrics> out;
  try {
    for (const auto& item : j) out.push_back(metrics_from(item));
  } catch (const json::exception& e) {
    throw Error(Errc::validation_error, e.what());
  }
  return out;
}

std::string metrics_to_csv(std::span<const EpisodeMetrics> metrics) {
  std::set<PlatformId> platforms;
  for (const auto& m : metrics) {
    for (const auto& p : m.per_platform) platforms.insert(p.id);
  }
  std::string out = "scenario,structure,seed,total_vmt,pct_unsatisfied,avg_wait,total_trips,trades,"
                    "auction_payments,broker_balance";
  for (PlatformId p : platforms) {
    out += fmt::format(",p{0}_profit,p{0}_revenue,p{0}_driver_cost,p{0}_info_paid,p{0}_info_received,"
                       "p{0}_trips,p{0}_contributing_vehicles,p{0}_contributed_request_value",
                       p);
  }
  out += '\n';
  for (const auto& m : metrics) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}", m.scenario, m.structure, m.seed, fixed4(m.total_vmt),
                       fixed4(m.pct_unsatisfied), fixed4(m.avg_wait), m.total_trips, m.trades,
                       m.auction_payments.to_string(), m.broker_balance.to_string());
    for (PlatformId id : platforms) {
      auto it = std::find_if(m.per_platform.begin(), m.per_platform.end(),
                             [id](const PlatformMetrics& p) { return p.id == id; });
      if (it == m.per_platform.end()) {
        out += ",,,,,,,,";
        continue;
      }
      out += fmt::format(",{},{},{},{},{},{},{},{}", it->profit.to_string(), it->revenue.to_string(),
                         it->driver_cost.to_string(), it->info_paid.to_string(), it->info_received.to_string(),
                         it->trips, it->contributing_vehicle_count, it->contributed_request_value.to_string());
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(Errc::io_error, "cannot open " + path.string() + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw Error(Errc::io_error, "cannot write " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::missing_file, path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_results(std::span<const EpisodeMetrics> metrics, const std::filesystem::path& path,
                   ResultFormat format) {
  write_text(path, format == ResultFormat::json
                       ? (metrics.size() == 1 ? metrics_to_json(metrics.front()) : metrics_to_json(metrics))
                       : metrics_to_csv(metrics));
}

CoalitionGame parse_game(std::string_view json_text) { return parse_game_file(json_text).game; }

GameFile parse_game_file(std::string_view json_text) {
  const json j = parse_json(json_text);
  only_keys(j, {"players", "v", "costs", "revenues"}, "game");
  std::vector<PlatformId> players;
  try {
    players = j.at("players").get<std::vector<PlatformId>>();
  } catch (const json::exception&) {
    throw Error(Errc::validation_error, "game.players must be a list of platform ids");
  }
  if (players.empty()) throw Error(Errc::empty_coalition, "game has no players");
  if (players.size() > kMaxPlayers) throw Error(Errc::too_large, "too many players");
  if (!j.contains("v") || !j.at("v").is_object()) throw Error(Errc::validation_error, "game.v missing");
  const json& v = j.at("v");
  const auto keyed = CoalitionGame::from_function(players, [](CoalitionMask) { return 0.0; });
  std::set<std::string> known;
  std::vector<double> values;
  for (CoalitionMask mask = 1; mask <= keyed.grand(); ++mask) {
    const auto key = keyed.key(mask);
    known.insert(key);
    if (!v.contains(key)) throw Error(Errc::validation_error, "game.v lacks coalition '" + key + "'");
    if (!v.at(key).is_number()) throw Error(Errc::validation_error, "game.v['" + key + "'] not a number");
    values.push_back(v.at(key).get<double>());
  }
  for (const auto& [key, _] : v.items()) {
    if (!known.count(key)) throw Error(Errc::unknown_key, "game.v." + key);
  }
  auto per_player = [&](const char* name) -> std::optional<std::vector<double>> {
    if (!j.contains(name)) return std::nullopt;
    std::vector<double> out;
    try {
      out = j.at(name).get<std::vector<double>>();
    } catch (const json::exception&) {
      throw Error(Errc::validation_error, std::string("game.") + name + " must be a list of numbers");
    }
    if (out.size() != players.size()) {
      throw Error(Errc::dimension_mismatch, std::string("game.") + name + " must have one entry per player");
    }
    return out;
  };
  auto costs = per_player("costs");
  auto revenues = per_player("revenues");
  if (costs.has_value() != revenues.has_value()) {
    throw Error(Errc::validation_error, "game.costs and game.revenues must be given together");
  }
  return GameFile{CoalitionGame(std::move(players), std::move(values)), std::move(costs), std::move(revenues)};
}

std::string format_game(const CoalitionGame& game) {
  ordered_json j;
  j["players"] = game.players();
  ordered_json v = ordered_json::object();
  for (CoalitionMask mask = 1; mask <= game.grand(); ++mask) v[game.key(mask)] = game.value(mask);
  j["v"] = v;
  return j.dump(2) + "\n";
}

std::string format_trade_log(std::span<const TradeRecord> trades) {
  std::string out = "epoch,request,seller,buyer,info_price\n";
  for (const auto& t : trades) {
    out += fmt::format("{},{},{},{},{}\n", t.epoch, t.request, t.seller, t.buyer, t.info_price.to_string());
  }
  return out;
}

std::string format_scenario(const ScenarioFileSpec& spec) {
  ordered_json j;
  j["name"] = spec.name;
  j["network"] = {{"grid",
                   {{"rows", spec.grid_rows},
                    {"cols", spec.grid_cols},
                    {"edge_length_m", spec.edge_length_m},
                    {"speed_mps", spec.speed_mps}}}};
  j["requests"] = spec.requests_file;
  j["platforms"] = ordered_json::array();
  for (const auto& p : spec.platforms) {
    ordered_json pj{{"id", p.id}, {"vehicles", p.vehicles}};
    if (!p.placements.empty()) {
      pj["placements"] = ordered_json::array();
      for (NodeIndex n : p.placements) pj["placements"].push_back(n);
    }
    j["platforms"].push_back(pj);
  }
  j["structure"] = spec.structure.label();
  j["seed"] = spec.seed;
  j["horizon_s"] = spec.horizon_s;
  j["objective"] = std::string(to_string(spec.objective));
  return j.dump(2) + "\n";
}

}  // namespace marketsim
