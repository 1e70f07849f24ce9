// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "blockdag/scheduler.hpp"

#include <atomic>
#include <cassert>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace blockdag {

namespace {
using Clock = std::chrono::steady_clock;
}

Selection select_txn(DependencyDag& dag, ScheduleCursor& cursor) {
  const auto n = static_cast<TxnIndex>(dag.txn_count());
  if (dag.committed_count() == n) return {SelectStatus::all_done, 0};
  const TxnIndex start = cursor.pos < n ? cursor.pos : 0;

  auto try_range = [&](TxnIndex lo, TxnIndex hi) -> std::optional<TxnIndex> {
    for (TxnIndex i = lo; i < hi; ++i)
      if (dag.indegree(i) == 0 && dag.try_claim(i)) return i;
    return std::nullopt;
  };

  auto claimed = try_range(start, n);
  if (!claimed) claimed = try_range(0, start);
  if (claimed) {
    cursor.pos = *claimed;
    return {SelectStatus::claimed, *claimed};
  }
  if (dag.committed_count() == n) return {SelectStatus::all_done, 0};
  return {SelectStatus::none_available, 0};
}

void commit_txn(DependencyDag& dag, TxnIndex index) {
  assert(dag.indegree(index) == -1 && "commit of an unclaimed transaction");
  dag.for_each_successor(index, [&](TxnIndex j) { dag.decrement_indegree(j); });
  [[maybe_unused]] const bool first = dag.mark_committed(index);
  assert(first && "transaction committed twice");
}

void busy_wait(std::chrono::microseconds d) {
  if (d.count() <= 0) return;
  const auto until = Clock::now() + d;
  while (Clock::now() < until) {
  }
}

ExecutionReport execute_block_parallel(const Block& block, DependencyDag& dag, StateStore& store,
                                       const ExecutionOptions& options, const Processor& processor) {
  if (dag.txn_count() != block.txn_count()) throw std::invalid_argument("dag does not match block");
  if (options.workers == 0) throw std::invalid_argument("at least one worker required");
  dag.reset_schedule();

  ExecutionReport report;
  report.schedule.reserve(block.txn_count());
  std::mutex log_mutex;
  std::atomic<std::size_t> successes{0}, failures{0};
  std::atomic<bool> abort{false};
  std::exception_ptr first_error;

  auto worker = [&] {
    ScheduleCursor cursor;
    unsigned idle_scans = 0;
    while (!abort.load(std::memory_order_acquire)) {
      auto sel = select_txn(dag, cursor);
      if (sel.status == SelectStatus::all_done) return;
      if (sel.status == SelectStatus::none_available) {
        if (++idle_scans > 4) std::this_thread::yield();
        continue;
      }
      idle_scans = 0;
      try {
        busy_wait(options.sim_work);
        auto outcome = processor(block[sel.index], store);
        (outcome == TxnOutcome::success ? successes : failures).fetch_add(1, std::memory_order_relaxed);
      } catch (...) {
        std::lock_guard lock(log_mutex);
        if (!first_error) first_error = std::current_exception();
        abort.store(true, std::memory_order_release);
        return;
      }
      {
        // Logged before successors are released so commit order stays a
        // topological order.
        std::lock_guard lock(log_mutex);
        report.schedule.push_back(sel.index);
      }
      commit_txn(dag, sel.index);
    }
  };

  const auto t0 = Clock::now();
  {
    std::vector<std::jthread> threads;
    threads.reserve(options.workers);
    for (unsigned w = 0; w < options.workers; ++w) threads.emplace_back(worker);
  }
  report.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0);
  report.txn_successes = successes.load();
  report.txn_failures = failures.load();
  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      report.failure = e.what();
    } catch (...) {
      report.failure = "unknown worker failure";
    }
  }
  report.final_digest = state_digest(store);
  return report;
}

ExecutionReport execute_block_serial(const Block& block, StateStore& store, const ExecutionOptions& options,
                                     const Processor& processor) {
  ExecutionReport report;
  report.schedule.reserve(block.txn_count());
  const auto t0 = Clock::now();
  for (const auto& txn : block.transactions()) {
    try {
      busy_wait(options.sim_work);
      auto outcome = processor(txn, store);
      ++(outcome == TxnOutcome::success ? report.txn_successes : report.txn_failures);
    } catch (const std::exception& e) {
      report.failure = e.what();
      break;
    }
    report.schedule.push_back(txn.index);
  }
  report.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0);
  report.final_digest = state_digest(store);
  return report;
}

ExecutionReport execute_block_serial(const Block& block, StateStore& store, const Processor& processor) {
  return execute_block_serial(block, store, ExecutionOptions{}, processor);
}

std::vector<std::size_t> schedule_positions(std::span<const TxnIndex> schedule, std::size_t n) {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  if (schedule.size() != n) throw std::invalid_argument("schedule length differs from txn_count");
  std::vector<std::size_t> pos(n, kUnset);
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    auto i = schedule[k];
    if (i >= n || pos[i] != kUnset) throw std::invalid_argument("schedule is not a permutation");
    pos[i] = k;
  }
  return pos;
}

bool respects_dag(std::span<const TxnIndex> schedule, const DependencyDag& dag) {
  std::vector<std::size_t> pos;
  try {
    pos = schedule_positions(schedule, dag.txn_count());
  } catch (const std::invalid_argument&) {
    return false;
  }
  for (const auto& [i, j] : dag.edges())
    if (pos[i] >= pos[j]) return false;
  return true;
}

}  // namespace blockdag
