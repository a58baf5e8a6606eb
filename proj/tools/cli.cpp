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

#include "cli.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>

#include "CLI11.hpp"
#include "json.hpp"
#include "marketsim/auction.hpp"
#include "marketsim/cooperative.hpp"
#include "marketsim/engine.hpp"
#include "marketsim/error.hpp"
#include "marketsim/generator.hpp"
#include "marketsim/io.hpp"

namespace marketsim::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

const std::vector<std::string> kDefaultStructures{"single",  "segmented",   "bilateral",
                                                  "central", "marketplace", "cooperative"};

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(Errc::validation_error, "MARKETSIM_SEED is not an unsigned integer: '" + text + "'");
  }
  return value;
}

// Flag, then environment, then whatever the file or default already holds.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, const EnvLookup& env,
                           std::uint64_t fallback) {
  if (flag) return *flag;
  if (auto value = env("MARKETSIM_SEED")) return parse_seed(*value);
  return fallback;
}

ResultFormat format_for(const std::string& name, const fs::path& out, ResultFormat fallback) {
  if (name == "json") return ResultFormat::json;
  if (name == "csv") return ResultFormat::csv;
  if (out.extension() == ".csv") return ResultFormat::csv;
  if (out.extension() == ".json") return ResultFormat::json;
  return fallback;
}

void summarize(std::ostream& out, const EpisodeMetrics& m) {
  out << fmt::format("{:<16} vmt {:>10.4f} mi  unsatisfied {:>6.2f}%  wait {:>7.1f} s  trips {:>4}  trades {:>3}\n",
                     m.structure, m.total_vmt, 100.0 * m.pct_unsatisfied, m.avg_wait, m.total_trips,
                     m.trades);
}

struct SimulateArgs {
  std::string scenario;
  std::string out;
  std::string format;
  std::string trades;
  std::optional<std::uint64_t> seed;
};

struct CompareArgs {
  std::string scenario;
  std::vector<std::string> structures = kDefaultStructures;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
};

struct AllocateArgs {
  std::string game;
  std::string method;
  std::string out;
};

struct AuctionArgs {
  std::vector<double> bids;
  double gamma = 0.1;
};

struct GenerateArgs {
  GeneratorOptions options;
  std::string structure = "segmented";
  std::string objective = "min_vmt_penalty";
  std::string out;
  std::optional<std::uint64_t> seed;
};

Scenario load_with_seed(const std::string& path, const std::optional<std::uint64_t>& flag,
                        const EnvLookup& env) {
  Scenario s = load_scenario(path);
  s.seed = resolve_seed(flag, env, s.seed);
  return s;
}

void simulate(const SimulateArgs& a, const EnvLookup& env, std::ostream& out) {
  const Scenario s = load_with_seed(a.scenario, a.seed, env);
  const auto report = run(s);
  const EpisodeMetrics metrics[] = {report.metrics};
  const fs::path path(a.out);
  write_results(metrics, path, format_for(a.format, path, ResultFormat::json));
  if (!a.trades.empty()) write_text(a.trades, format_trade_log(report.trades));
  summarize(out, report.metrics);
}

void compare(const CompareArgs& a, const EnvLookup& env, std::ostream& out) {
  const Scenario base = load_with_seed(a.scenario, a.seed, env);
  std::vector<MarketStructure> structures;
  for (const auto& label : a.structures) structures.push_back(MarketStructure::parse(label));
  std::vector<EpisodeMetrics> rows;
  for (const auto& structure : structures) {
    Scenario s = base;
    s.structure = structure;
    rows.push_back(run(s).metrics);
    summarize(out, rows.back());
  }
  const fs::path path(a.out);
  write_results(rows, path, format_for(a.format, path, ResultFormat::csv));
}

ordered_json allocation_json(const std::string& method, const CoalitionGame& game,
                             const std::optional<Allocation>& allocation) {
  ordered_json j;
  j["method"] = method;
  j["result"] = allocation ? "ok" : "core_empty";
  j["players"] = game.players();
  if (allocation) {
    j["x"] = allocation->x;
    j["spread"] = allocation->spread;
  }
  return j;
}

void allocate(const AllocateArgs& a, std::ostream& out) {
  const GameFile file = parse_game_file(read_text(a.game));
  const CoalitionGame& game = file.game;
  ordered_json j;
  if (a.method == "shapley") {
    j = allocation_json(a.method, game, shapley(game));
  } else if (a.method == "epm") {
    j = allocation_json(a.method, game, epm_allocate(game).allocation);
  } else {
    if (!file.costs) {
      throw Error(Errc::validation_error, "contribution needs 'costs' and 'revenues' in the game file");
    }
    const auto weights = contribution_weights(*file.costs, *file.revenues, game.value(game.grand()));
    j = allocation_json(a.method, game, contribution_allocate(game, weights.w).allocation);
    j["weights"] = weights.w;
  }
  const std::string text = j.dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    write_text(a.out, text);
    out << fmt::format("{} allocation: {}\n", a.method, j["result"].get<std::string>());
  }
}

void auction(const AuctionArgs& a, std::ostream& out) {
  std::vector<Bid> bids;
  for (std::size_t k = 0; k < a.bids.size(); ++k) {
    bids.push_back({static_cast<PlatformId>(k), Money::from_dollars(a.bids[k])});
  }
  const auto outcome = run_single_item_auction(bids, a.gamma);
  if (!outcome) {
    out << "no sale\n";
    return;
  }
  out << fmt::format("winner {}\npayment {}\n", outcome->winner, outcome->payment.dollars());
}

void generate(GenerateArgs a, const EnvLookup& env, std::ostream& out) {
  a.options.seed = resolve_seed(a.seed, env, a.options.seed);
  a.options.structure = MarketStructure::parse(a.structure);
  a.options.objective = parse_objective(a.objective);
  const Scenario s = generate_scenario(a.options);
  const fs::path path(a.out);
  const fs::path requests = path.stem().string() + ".requests.csv";
  ScenarioFileSpec spec;
  spec.name = s.name;
  spec.grid_rows = a.options.grid_rows;
  spec.grid_cols = a.options.grid_cols;
  spec.edge_length_m = a.options.edge_length_m;
  spec.speed_mps = a.options.speed_mps;
  spec.requests_file = requests.string();
  spec.platforms = s.platforms;
  spec.structure = s.structure;
  spec.seed = s.seed;
  spec.horizon_s = s.horizon_s;
  spec.objective = s.objective;
  write_text(path.parent_path() / requests, format_requests(s.requests, *s.network));
  write_text(path, format_scenario(spec));
  out << fmt::format("wrote {} with {} requests\n", path.string(), s.requests.size());
}

}  // namespace

std::optional<std::string> system_env(const std::string& name) {
  if (const char* value = std::getenv(name.c_str())) return std::string(value);
  return std::nullopt;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  CLI::App app{"Multi-platform ride-sharing market simulator", "marketsim"};
  app.require_subcommand(1, 1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Run one episode and write its metrics");
  s->add_option("--scenario", sim.scenario, "Scenario JSON file")->required();
  s->add_option("--out", sim.out, "Metrics output file")->required();
  s->add_option("--format", sim.format, "json or csv (default from the extension)")
      ->check(CLI::IsMember({"json", "csv"}));
  s->add_option("--trades", sim.trades, "Optional trade log CSV");
  s->add_option("--seed", sim.seed, "Seed override");

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "Run a scenario under several market structures");
  c->add_option("--scenario", cmp.scenario, "Scenario JSON file")->required();
  c->add_option("--structures", cmp.structures, "Comma-separated structure labels")->delimiter(',');
  c->add_option("--out", cmp.out, "Comparison output file")->required();
  c->add_option("--format", cmp.format, "csv or json (default from the extension)")
      ->check(CLI::IsMember({"json", "csv"}));
  c->add_option("--seed", cmp.seed, "Seed override");

  AllocateArgs alloc;
  auto* a = app.add_subcommand("allocate", "Split a coalition game's value");
  a->add_option("--game", alloc.game, "Game JSON file")->required();
  a->add_option("--method", alloc.method, "shapley, epm or contribution")
      ->required()
      ->check(CLI::IsMember({"shapley", "epm", "contribution"}));
  a->add_option("--out", alloc.out, "Output JSON file (default: standard output)");

  AuctionArgs auc;
  auto* u = app.add_subcommand("auction", "Run one sealed-bid auction");
  u->add_option("--bids", auc.bids, "Comma-separated bids in dollars")->required()->delimiter(',');
  u->add_option("--gamma", auc.gamma, "Payment fraction of the second bid");

  GenerateArgs gen;
  auto* g = app.add_subcommand("gen-scenario", "Write a random grid scenario");
  g->add_option("--rows", gen.options.grid_rows, "Grid rows")->check(CLI::PositiveNumber);
  g->add_option("--cols", gen.options.grid_cols, "Grid columns")->check(CLI::PositiveNumber);
  g->add_option("--edge-length", gen.options.edge_length_m, "Edge length in meters")->check(CLI::PositiveNumber);
  g->add_option("--speed", gen.options.speed_mps, "Speed in meters per second")->check(CLI::PositiveNumber);
  g->add_option("--requests", gen.options.requests, "Number of requests")->check(CLI::NonNegativeNumber);
  g->add_option("--platforms", gen.options.platforms, "Number of platforms")->check(CLI::PositiveNumber);
  g->add_option("--fleet", gen.options.fleet, "Total vehicles")->check(CLI::NonNegativeNumber);
  g->add_option("--duration", gen.options.duration_s, "Demand window in seconds")->check(CLI::PositiveNumber);
  g->add_option("--structure", gen.structure, "Market structure label");
  g->add_option("--objective", gen.objective, "min_vmt_penalty, min_delay_penalty or max_profit");
  g->add_option("--seed", gen.seed, "Seed");
  g->add_option("--out", gen.out, "Scenario JSON path")->required();

  std::vector<const char*> argv;
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*s) simulate(sim, env, out);
    if (*c) compare(cmp, env, out);
    if (*a) allocate(alloc, out);
    if (*u) auction(auc, out);
    if (*g) generate(gen, env, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace marketsim::cli
