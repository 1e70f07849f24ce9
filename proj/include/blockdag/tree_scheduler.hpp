// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "blockdag/dag.hpp"
#include "blockdag/families.hpp"
#include "blockdag/model.hpp"
#include "blockdag/scheduler.hpp"
#include "blockdag/state_store.hpp"

namespace blockdag {

struct AccessLists {
  std::vector<TxnIndex> reads;
  std::vector<TxnIndex> writes;

  friend bool operator==(const AccessLists&, const AccessLists&) = default;
};

// Address-keyed baseline scheduler structure: a byte-wise prefix tree whose
// address nodes carry the read and write lists of the transactions touching
// them. Built serially, in index order.
class PredecessorTree {
 public:
  struct Node {
    std::map<unsigned char, std::unique_ptr<Node>> children;
    std::unique_ptr<AccessLists> lists;  // set on nodes that terminate an address
  };

  PredecessorTree() = default;

  // Transactions must be inserted in index order, from a single thread.
  void insert(const Transaction& txn);

  const AccessLists* find(const Address& a) const;
  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t address_count() const noexcept { return address_count_; }
  std::size_t txn_count() const noexcept { return txn_reads_.size(); }

  // The address nodes each transaction reads / writes.
  std::span<const AccessLists* const> read_nodes(TxnIndex i) const { return txn_reads_[i]; }
  std::span<const AccessLists* const> write_nodes(TxnIndex i) const { return txn_writes_[i]; }

  // Every lower-index transaction that i must wait for, visited nearest first.
  // Stops early when f returns false.
  template <class F>
  void for_each_predecessor(TxnIndex i, F&& f) const;

  // All (i, j) pairs the tree treats as predecessor-dependent, sorted.
  std::vector<Edge> predecessor_pairs() const;

 private:
  AccessLists& lists_for(const Address& a);

  Node root_;
  std::size_t node_count_ = 1;
  std::size_t address_count_ = 0;
  std::vector<std::vector<const AccessLists*>> txn_reads_;
  std::vector<std::vector<const AccessLists*>> txn_writes_;
};

PredecessorTree build_tree(const Block& block);

enum class TxnStatus : std::uint8_t { unscheduled, running, done };

// Lowest-index unscheduled transaction whose conflicting predecessors are all
// done. Does not change status; callers mark the result running.
Selection tree_next_txn(const PredecessorTree& tree, std::span<const TxnStatus> status);

// Parallel execution where every scheduling decision goes through one lock
// around tree_next_txn.
ExecutionReport execute_block_tree(const Block& block, const PredecessorTree& tree, StateStore& store,
                                   const ExecutionOptions& options, const Processor& processor);

template <class F>
void PredecessorTree::for_each_predecessor(TxnIndex i, F&& f) const {
  // Lists are ascending; walking them backwards meets the most recent, and so
  // most likely unfinished, predecessors first.
  auto walk = [&](const std::vector<TxnIndex>& list) {
    auto it = std::lower_bound(list.begin(), list.end(), i);
    while (it != list.begin()) {
      --it;
      if (!f(*it)) return false;
    }
    return true;
  };
  for (const auto* node : txn_reads_[i])
    if (!walk(node->writes)) return;
  for (const auto* node : txn_writes_[i]) {
    if (!walk(node->writes)) return;
    if (!walk(node->reads)) return;
  }
}

}  // namespace blockdag
