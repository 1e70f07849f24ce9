// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <thread>

#include "blockdag/bench.hpp"
#include "blockdag/codec.hpp"
#include "blockdag/smart_validator.hpp"

namespace {

using namespace blockdag;

constexpr int kExitOk = 0;
constexpr int kExitMalicious = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::size_t> parse_list(const std::string& flag, const std::string& text) {
  std::vector<std::size_t> out;
  std::string_view rest(text);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    auto item = rest.substr(0, comma);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
      throw UsageError(flag + ": expected a number or comma-separated list, got '" + text + "'");
    out.push_back(v);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

std::size_t single(const std::string& flag, const std::string& text) {
  auto v = parse_list(flag, text);
  if (v.size() != 1) throw UsageError(flag + " takes a single value unless it is the experiment's axis");
  return v.front();
}

int verify_only(const std::string& path, unsigned workers) {
  Block block;
  try {
    block = parse_block(read_file(path));
  } catch (const std::exception& e) {
    std::cerr << "blockdag: " << path << ": " << e.what() << "\n";
    return kExitData;
  }
  if (!block.has_shared_dag()) {
    std::cerr << "blockdag: " << path << ": block carries no shared DAG\n";
    return kExitData;
  }
  auto verdict = validate_dag(block, build_access_index(block), workers);
  std::cout << verdict_name(verdict) << "\n";
  return verdict == Verdict::honest ? kExitOk : kExitMalicious;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blockdag: DAG-based parallel block execution experiments"};
  app.set_help_flag("-h,--help", "Print this help and exit");

  int experiment = 0;
  std::string strategies = "serial,tree,adj-dag,ll-dag,smart-validate";
  std::string family = "wallet";
  std::string blocks = "1", txns = "200", dep_pct = "20";
  std::string workers_text;
  unsigned reps = 5;
  std::uint64_t seed = 1;
  long sim_work_us = 0;
  std::string out_path, verify_path, config_path, emit_path, tamper = "none";

  app.add_option("--experiment", experiment,
                 "1: vary --blocks, 2: vary --txns, 3: vary --dep-pct, 4: vary --workers (extension)")
      ->check(CLI::Range(1, 4));
  app.add_option("--strategies", strategies, "Comma-separated subset of serial,tree,adj-dag,ll-dag,smart-validate");
  app.add_option("--family", family, "wallet|intkey|voting|insurance|mixed");
  app.add_option("--blocks", blocks, "Blocks per run (list for experiment 1)");
  app.add_option("--txns", txns, "Transactions per block (list for experiment 2)");
  app.add_option("--dep-pct", dep_pct, "Dependency percentage 0-100 (list for experiment 3)");
  app.add_option("--workers", workers_text, "Worker threads (default: hardware parallelism; list for experiment 4)");
  app.add_option("--reps", reps, "Repetitions per row")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Workload RNG seed");
  app.add_option("--sim-work-us", sim_work_us, "Busy-work per transaction in microseconds")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", out_path, "Write CSV here instead of stdout");
  app.add_option("--verify-only", verify_path, "Validate the shared DAG in a .blk file; exit 0 honest, 2 malicious");
  app.add_option("--config", config_path,
                 "Workload defaults as key=value lines (family, txns_per_block, num_blocks, dependency_pct, seed); "
                 "explicit flags override them");
  app.add_option("--emit-block", emit_path, "Write the first generated block with its miner DAG as a .blk file");
  app.add_option("--tamper", tamper, "With --emit-block: none|drop-edge|add-edge")
      ->check(CLI::IsMember({"none", "drop-edge", "add-edge"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers_single =
        workers_text.empty() || experiment == 4 ? hw : static_cast<unsigned>(single("--workers", workers_text));
    if (workers_single == 0) throw UsageError("--workers must be positive");

    if (!verify_path.empty()) return verify_only(verify_path, workers_single);

    WorkloadSpec base;
    if (!config_path.empty()) {
      try {
        base = parse_workload_config(read_file(config_path));
      } catch (const std::exception& e) {
        std::cerr << "blockdag: " << config_path << ": " << e.what() << "\n";
        return kExitData;
      }
    }
    auto flag_given = [&](const char* name) { return app.count(name) > 0; };
    if (flag_given("--family") || config_path.empty()) {
      auto f = workload_family_from_name(family);
      if (!f) throw UsageError("--family: unknown family '" + family + "'");
      base.family = *f;
    }
    if (flag_given("--seed") || config_path.empty()) base.rng_seed = seed;

    ExperimentPlan plan;
    auto axis_flag = [&](Axis axis, const char* flag, const std::string& text, auto assign) {
      if (plan.axis == axis && experiment != 0) {
        plan.values = parse_list(flag, text);
      } else if (flag_given(flag) || config_path.empty()) {
        assign(single(flag, text));
      }
    };
    switch (experiment) {
      case 1: plan.axis = Axis::num_blocks; break;
      case 2: plan.axis = Axis::txns_per_block; break;
      case 3: plan.axis = Axis::dependency_pct; break;
      case 4: plan.axis = Axis::workers; break;
      default: break;
    }
    axis_flag(Axis::num_blocks, "--blocks", blocks, [&](std::size_t v) { base.num_blocks = v; });
    axis_flag(Axis::txns_per_block, "--txns", txns, [&](std::size_t v) { base.txns_per_block = v; });
    axis_flag(Axis::dependency_pct, "--dep-pct", dep_pct,
              [&](std::size_t v) { base.dependency_pct = static_cast<unsigned>(v); });
    if (experiment == 4) plan.values = workers_text.empty() ? std::vector<std::size_t>{hw} : parse_list("--workers", workers_text);
    if (base.dependency_pct > 100) throw UsageError("--dep-pct must be within 0-100");

    if (!emit_path.empty()) {
      auto block = generate_block(base);
      auto dag = build_dag(block, workers_single, DagVariant::matrix);
      auto shared = share_dag(block, dag);
      auto edges = dag.edges();
      if (tamper == "drop-edge") {
        if (edges.empty()) throw UsageError("--tamper drop-edge: the generated block has no edges");
        shared = drop_shared_edge(shared, edges.front());
      } else if (tamper == "add-edge") {
        bool done = false;
        for (TxnIndex j = 1; j < block.txn_count() && !done; ++j)
          for (TxnIndex i = 0; i < j && !done; ++i)
            if (!dag.has_edge(i, j)) {
              shared = add_shared_edge(shared, {i, j});
              done = true;
            }
        if (!done) throw UsageError("--tamper add-edge: the generated block is fully connected");
      }
      write_file(emit_path, serialize_block(shared));
      return kExitOk;
    }

    if (experiment == 0) throw UsageError("one of --experiment, --verify-only or --emit-block is required");

    std::string_view rest(strategies);
    while (!rest.empty()) {
      auto comma = rest.find(',');
      auto name = rest.substr(0, comma);
      auto s = strategy_from_name(name);
      if (!s) throw UsageError("--strategies: unknown strategy '" + std::string(name) + "'");
      plan.strategies.push_back(*s);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    plan.base = base;
    plan.repetitions = reps;
    plan.workers = workers_single;
    plan.sim_work = std::chrono::microseconds(sim_work_us);
    validate(plan);

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path, std::ios::trunc);
      if (!file) throw std::runtime_error("cannot write " + out_path);
    }
    std::ostream& out = out_path.empty() ? std::cout : file;
    auto rows = run_experiment(plan);
    out << kCsvHeader << "\n";
    for (const auto& row : rows) out << to_csv_line(row) << "\n";
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "blockdag: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const OracleDivergence& e) {
    std::cerr << "blockdag: oracle divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "blockdag: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "blockdag: " << e.what() << "\n";
    return 1;
  }
}
