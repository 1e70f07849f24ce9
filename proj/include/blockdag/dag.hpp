// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string_view>
#include <utility>
#include <vector>

#include "blockdag/model.hpp"

namespace blockdag {

enum class DagVariant : std::uint8_t { matrix, linked_list };

std::string_view variant_name(DagVariant v);

using Edge = std::pair<TxnIndex, TxnIndex>;

// Dependency graph over the transactions of one block. Every edge (i, j) has
// i < j, so the graph is acyclic by construction.
//
// The edge relation is either an n x n byte grid or a per-node lock-free
// successor list. Both support concurrent insert-if-absent; indegree
// counters are bumped only when an edge is actually new.
//
// Besides the edges the DAG owns the mutable scheduling state consumed by the
// parallel executor: a live indegree per transaction (-1 once claimed) and a
// committed flag. reset_schedule() restores both to the sealed state.
class DependencyDag {
 public:
  DependencyDag() : DependencyDag(0, DagVariant::matrix) {}
  DependencyDag(std::size_t txn_count, DagVariant variant);
  ~DependencyDag();

  DependencyDag(DependencyDag&&) noexcept;
  DependencyDag& operator=(DependencyDag&&) noexcept;
  DependencyDag(const DependencyDag&) = delete;
  DependencyDag& operator=(const DependencyDag&) = delete;

  std::size_t txn_count() const noexcept { return n_; }
  DagVariant variant() const noexcept { return variant_; }

  // Thread-safe. Returns true if the edge was new. Requires from < to < n.
  bool add_edge(TxnIndex from, TxnIndex to);
  // Thread-safe insert for an edge the caller knows is absent; skips the
  // duplicate scan.
  void add_new_edge(TxnIndex from, TxnIndex to);
  bool has_edge(TxnIndex from, TxnIndex to) const;

  // Records the construction-time indegrees; called once building is done.
  void seal();

  // Sorted ascending.
  std::vector<TxnIndex> successors(TxnIndex from) const;
  std::vector<std::vector<TxnIndex>> predecessor_lists() const;

  template <class F>
  void for_each_successor(TxnIndex from, F&& f) const {
    if (variant_ == DagVariant::matrix) {
      const auto* row = matrix_.get() + static_cast<std::size_t>(from) * n_;
      for (std::size_t j = from + 1; j < n_; ++j)
        if (row[j].load(std::memory_order_acquire)) f(static_cast<TxnIndex>(j));
    } else {
      for (auto* e = heads_[from].load(std::memory_order_acquire); e != nullptr; e = e->next) f(e->target);
    }
  }

  // Sorted lexicographically.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;
  // Row-major n*n grid of 0/1, identical for both variants.
  std::vector<std::uint8_t> adjacency_matrix() const;
  // Indegrees as sealed (or as currently counted, if not yet sealed).
  std::vector<std::uint32_t> sealed_indegrees() const;

  // Scheduling state.
  std::int32_t indegree(TxnIndex i) const { return indegree_[i].load(std::memory_order_acquire); }
  bool try_claim(TxnIndex i);
  void decrement_indegree(TxnIndex i) { indegree_[i].fetch_sub(1, std::memory_order_acq_rel); }
  // Returns false if i was already committed.
  bool mark_committed(TxnIndex i);
  bool is_committed(TxnIndex i) const { return committed_[i].load(std::memory_order_acquire) != 0; }
  std::size_t committed_count() const { return committed_count_.load(std::memory_order_acquire); }
  std::vector<std::int32_t> indegree_snapshot() const;
  void reset_schedule();

 private:
  struct EdgeNode {
    TxnIndex target;
    EdgeNode* next;
  };

  void release_lists() noexcept;

  std::size_t n_ = 0;
  DagVariant variant_ = DagVariant::matrix;
  std::unique_ptr<std::atomic<std::uint8_t>[]> matrix_;
  std::unique_ptr<std::atomic<EdgeNode*>[]> heads_;
  std::unique_ptr<std::atomic<std::int32_t>[]> indegree_;
  std::unique_ptr<std::atomic<std::uint8_t>[]> committed_;
  std::atomic<std::size_t> committed_count_{0};
  std::vector<std::uint32_t> sealed_;
};

// True iff the transactions overlap read-write, write-read or write-write.
// Requires a.index < b.index.
bool conflicts(const Transaction& a, const Transaction& b);

// Multi-threaded construction: `workers` threads claim transactions from a
// shared counter and scan every later transaction for conflicts.
DependencyDag build_dag(const Block& block, unsigned workers, DagVariant variant);

// Single-threaded reference: every pair i < j checked through hash-set
// membership, independent of conflicts().
DependencyDag brute_force_dag(const Block& block);

// DAG described by a block's declared_dependencies (the miner-shared DAG).
DependencyDag dag_from_shared(const Block& block, DagVariant variant);

// Embeds `dag` into a copy of `block` as its miner-shared DAG.
Block share_dag(const Block& block, const DependencyDag& dag);

}  // namespace blockdag
