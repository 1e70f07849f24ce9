// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <chrono>
#include <cstdint>

#include "blockdag/dag.hpp"
#include "blockdag/families.hpp"
#include "blockdag/model.hpp"
#include "blockdag/state_store.hpp"

namespace blockdag {

// Per-worker hint: where the last successful claim happened.
struct ScheduleCursor {
  TxnIndex pos = 0;
};

enum class SelectStatus : std::uint8_t { claimed, none_available, all_done };

struct Selection {
  SelectStatus status = SelectStatus::none_available;
  TxnIndex index = 0;  // meaningful only when claimed

  friend bool operator==(const Selection&, const Selection&) = default;
};

// Scans [cursor.pos, n) then [0, cursor.pos) for a zero-indegree transaction
// and claims it with a 0 -> -1 compare-and-exchange.
Selection select_txn(DependencyDag& dag, ScheduleCursor& cursor);

// Releases every successor of a claimed, executed transaction and marks it
// committed. Double commit is asserted against in debug builds.
void commit_txn(DependencyDag& dag, TxnIndex index);

struct ExecutionOptions {
  unsigned workers = 1;
  // Busy-work added to every transaction, to make speedups measurable when
  // family logic is trivially cheap.
  std::chrono::microseconds sim_work{0};
};

// Spins the calling thread for `d`.
void busy_wait(std::chrono::microseconds d);

// Parallel execution over a DAG. The DAG's scheduling state is reset first,
// so the same DAG can be executed more than once.
ExecutionReport execute_block_parallel(const Block& block, DependencyDag& dag, StateStore& store,
                                       const ExecutionOptions& options, const Processor& processor);

// Index-order execution; the reference history.
ExecutionReport execute_block_serial(const Block& block, StateStore& store, const ExecutionOptions& options,
                                     const Processor& processor);

ExecutionReport execute_block_serial(const Block& block, StateStore& store, const Processor& processor);

// Position of each index in a schedule; throws if the schedule is not a
// permutation of 0..n-1.
std::vector<std::size_t> schedule_positions(std::span<const TxnIndex> schedule, std::size_t n);

// True iff the schedule is a permutation and orders every DAG edge.
bool respects_dag(std::span<const TxnIndex> schedule, const DependencyDag& dag);

}  // namespace blockdag
