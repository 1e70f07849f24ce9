// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "blockdag/workload.hpp"

namespace blockdag {

enum class Strategy : std::uint8_t { serial, tree, adj_dag, ll_dag, smart_validate };

std::string_view strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

enum class Axis : std::uint8_t { num_blocks, txns_per_block, dependency_pct, workers };

std::string_view axis_name(Axis a);

// One varying axis over `values`; everything else comes from `base`.
struct ExperimentPlan {
  Axis axis = Axis::txns_per_block;
  std::vector<std::size_t> values;
  WorkloadSpec base;
  std::vector<Strategy> strategies;
  unsigned repetitions = 5;
  unsigned workers = 1;
  std::chrono::microseconds sim_work{0};
};

void validate(const ExperimentPlan& plan);

struct CsvRow {
  Axis axis = Axis::txns_per_block;
  std::size_t value = 0;
  Strategy strategy = Strategy::serial;
  double mean_ms = 0.0;      // mean over repetitions of one pass over all blocks
  double tps = 0.0;          // all transactions / all wall time
  double cp1 = 0.0, cp2 = 0.0, cp3 = 0.0;  // means over the generated blocks
  double ds_build_ms = 0.0;  // mean per repetition; DAG, tree or validation
  std::string verdict;       // validator verdict, "n/a", or "error: ..."
};

// A parallel strategy produced a different final state than serial.
class OracleDivergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs every (axis value x strategy) combination and aggregates repetitions
// into one row each. Throws OracleDivergence on a digest mismatch; any other
// strategy failure is recorded in that row's verdict.
std::vector<CsvRow> run_experiment(const ExperimentPlan& plan);

inline constexpr std::string_view kCsvHeader = "axis,value,strategy,mean_ms,tps,cp1,cp2,cp3,ds_build_ms,verdict";

std::string to_csv_line(const CsvRow& row);

}  // namespace blockdag
