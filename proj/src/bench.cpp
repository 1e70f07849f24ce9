// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "blockdag/bench.hpp"

#include <cstdio>

#include "blockdag/codec.hpp"
#include "blockdag/dag.hpp"
#include "blockdag/families.hpp"
#include "blockdag/scheduler.hpp"
#include "blockdag/smart_validator.hpp"
#include "blockdag/tree_scheduler.hpp"

namespace blockdag {

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::serial: return "serial";
    case Strategy::tree: return "tree";
    case Strategy::adj_dag: return "adj-dag";
    case Strategy::ll_dag: return "ll-dag";
    case Strategy::smart_validate: return "smart-validate";
  }
  return "unknown";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  for (auto s : {Strategy::serial, Strategy::tree, Strategy::adj_dag, Strategy::ll_dag, Strategy::smart_validate})
    if (strategy_name(s) == name) return s;
  return std::nullopt;
}

std::string_view axis_name(Axis a) {
  switch (a) {
    case Axis::num_blocks: return "num_blocks";
    case Axis::txns_per_block: return "txns_per_block";
    case Axis::dependency_pct: return "dependency_pct";
    case Axis::workers: return "workers";
  }
  return "unknown";
}

void validate(const ExperimentPlan& plan) {
  if (plan.values.empty()) throw std::invalid_argument("plan needs at least one axis value");
  if (plan.strategies.empty()) throw std::invalid_argument("plan needs at least one strategy");
  if (plan.repetitions == 0) throw std::invalid_argument("repetitions must be positive");
  if (plan.workers == 0 && plan.axis != Axis::workers) throw std::invalid_argument("workers must be positive");
  for (auto v : plan.values)
    if (v == 0 && plan.axis != Axis::dependency_pct) throw std::invalid_argument("axis values must be positive");
  validate(plan.base);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct PreparedBlock {
  Block block;
  StateEntries genesis;
  Digest serial_digest{};
};

struct PassResult {
  double ds_ms = 0.0;
  double exec_ms = 0.0;
  ExecutionReport report;
};

PassResult run_strategy(Strategy strategy, const PreparedBlock& pb, const ExecutionOptions& opts,
                        const Processor& processor) {
  PassResult out;
  StateStore store(pb.genesis);
  switch (strategy) {
    case Strategy::serial: {
      out.report = execute_block_serial(pb.block, store, opts, processor);
      break;
    }
    case Strategy::tree: {
      auto t0 = Clock::now();
      auto tree = build_tree(pb.block);
      out.ds_ms = ms_since(t0);
      out.report = execute_block_tree(pb.block, tree, store, opts, processor);
      break;
    }
    case Strategy::adj_dag:
    case Strategy::ll_dag: {
      auto t0 = Clock::now();
      auto dag = build_dag(pb.block, opts.workers,
                           strategy == Strategy::adj_dag ? DagVariant::matrix : DagVariant::linked_list);
      out.ds_ms = ms_since(t0);
      out.report = execute_block_parallel(pb.block, dag, store, opts, processor);
      break;
    }
    case Strategy::smart_validate: {
      // Miner side, untimed: build, share and ship the DAG over the wire.
      auto miner_dag = build_dag(pb.block, opts.workers, DagVariant::matrix);
      auto received = parse_block(serialize_block(pb.block, &miner_dag));

      auto t0 = Clock::now();
      auto index = build_access_index(received);
      auto verdict = validate_dag(received, index, opts.workers);
      if (verdict != Verdict::honest) {
        out.ds_ms = ms_since(t0);
        out.report.validator_verdict = verdict;
        return out;
      }
      auto dag = dag_from_shared(received, DagVariant::matrix);
      out.ds_ms = ms_since(t0);
      out.report = execute_block_parallel(received, dag, store, opts, processor);
      out.report.validator_verdict = verdict;
      break;
    }
  }
  out.exec_ms = std::chrono::duration<double, std::milli>(out.report.wall_time).count();
  return out;
}

}  // namespace

std::vector<CsvRow> run_experiment(const ExperimentPlan& plan) {
  validate(plan);
  const auto processor = default_processor();
  std::vector<CsvRow> rows;

  for (auto value : plan.values) {
    WorkloadSpec spec = plan.base;
    unsigned workers = plan.workers;
    switch (plan.axis) {
      case Axis::num_blocks: spec.num_blocks = value; break;
      case Axis::txns_per_block: spec.txns_per_block = value; break;
      case Axis::dependency_pct: spec.dependency_pct = static_cast<unsigned>(value); break;
      case Axis::workers: workers = static_cast<unsigned>(value); break;
    }
    validate(spec);
    const ExecutionOptions opts{workers, plan.sim_work};

    std::vector<PreparedBlock> blocks;
    double cp1 = 0, cp2 = 0, cp3 = 0;
    for (auto& b : generate_blocks(spec)) {
      PreparedBlock pb{std::move(b), {}, {}};
      pb.genesis = genesis_state(pb.block);
      StateStore ref(pb.genesis);
      pb.serial_digest = execute_block_serial(pb.block, ref, processor).final_digest;
      auto m = conflict_metrics(pb.block);
      cp1 += m.cp1;
      cp2 += m.cp2;
      cp3 += static_cast<double>(m.cp3);
      blocks.push_back(std::move(pb));
    }
    const auto nb = static_cast<double>(blocks.size());

    for (auto strategy : plan.strategies) {
      CsvRow row;
      row.axis = plan.axis;
      row.value = value;
      row.strategy = strategy;
      row.cp1 = cp1 / nb;
      row.cp2 = cp2 / nb;
      row.cp3 = cp3 / nb;
      row.verdict = strategy == Strategy::smart_validate ? "honest" : "n/a";

      double total_ms = 0, ds_ms = 0;
      std::size_t txns = 0;
      try {
        for (unsigned rep = 0; rep < plan.repetitions; ++rep) {
          for (std::size_t k = 0; k < blocks.size(); ++k) {
            const auto& pb = blocks[k];
            auto pass = run_strategy(strategy, pb, opts, processor);
            total_ms += pass.ds_ms + pass.exec_ms;
            ds_ms += pass.ds_ms;
            txns += pb.block.txn_count();
            if (pass.report.validator_verdict && *pass.report.validator_verdict != Verdict::honest) {
              row.verdict = std::string(verdict_name(*pass.report.validator_verdict));
              continue;
            }
            if (!pass.report.ok()) throw std::runtime_error(*pass.report.failure);
            if (pass.report.final_digest != pb.serial_digest)
              throw OracleDivergence(std::string(strategy_name(strategy)) + " diverged from serial on block " +
                                     std::to_string(k) + " (" + std::string(axis_name(plan.axis)) + "=" +
                                     std::to_string(value) + ")");
          }
        }
      } catch (const OracleDivergence&) {
        throw;
      } catch (const std::exception& e) {
        row.verdict = std::string("error: ") + e.what();
      }
      row.mean_ms = total_ms / plan.repetitions;
      row.ds_build_ms = ds_ms / plan.repetitions;
      row.tps = total_ms > 0 ? static_cast<double>(txns) / (total_ms / 1000.0) : 0.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string to_csv_line(const CsvRow& row) {
  std::string verdict = row.verdict;
  for (auto& c : verdict)
    if (c == ',' || c == '\n') c = ';';
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%zu,%s,%.3f,%.1f,%.6f,%.6f,%.3f,%.3f,", std::string(axis_name(row.axis)).c_str(),
                row.value, std::string(strategy_name(row.strategy)).c_str(), row.mean_ms, row.tps, row.cp1, row.cp2,
                row.cp3, row.ds_build_ms);
  return buf + verdict;
}

}  // namespace blockdag
