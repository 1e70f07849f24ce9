// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "blockdag/tree_scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

namespace blockdag {

AccessLists& PredecessorTree::lists_for(const Address& a) {
  Node* node = &root_;
  for (unsigned char c : a.key()) {
    auto& child = node->children[c];
    if (!child) {
      child = std::make_unique<Node>();
      ++node_count_;
    }
    node = child.get();
  }
  if (!node->lists) {
    node->lists = std::make_unique<AccessLists>();
    ++address_count_;
  }
  return *node->lists;
}

void PredecessorTree::insert(const Transaction& txn) {
  if (txn.index != txn_reads_.size()) throw std::invalid_argument("tree insert out of index order");
  auto& reads = txn_reads_.emplace_back();
  auto& writes = txn_writes_.emplace_back();
  for (const auto& a : txn.read_set) {
    auto& lists = lists_for(a);
    lists.reads.push_back(txn.index);
    reads.push_back(&lists);
  }
  for (const auto& a : txn.write_set) {
    auto& lists = lists_for(a);
    lists.writes.push_back(txn.index);
    writes.push_back(&lists);
  }
}

const AccessLists* PredecessorTree::find(const Address& a) const {
  const Node* node = &root_;
  for (unsigned char c : a.key()) {
    auto it = node->children.find(c);
    if (it == node->children.end()) return nullptr;
    node = it->second.get();
  }
  return node->lists.get();
}

std::vector<Edge> PredecessorTree::predecessor_pairs() const {
  std::set<Edge> pairs;
  for (TxnIndex j = 0; j < txn_count(); ++j)
    for_each_predecessor(j, [&](TxnIndex i) {
      if (i != j) pairs.emplace(i, j);
      return true;
    });
  return {pairs.begin(), pairs.end()};
}

PredecessorTree build_tree(const Block& block) {
  PredecessorTree tree;
  for (const auto& t : block.transactions()) tree.insert(t);
  return tree;
}

Selection tree_next_txn(const PredecessorTree& tree, std::span<const TxnStatus> status) {
  bool any_open = false;
  for (TxnIndex j = 0; j < status.size(); ++j) {
    if (status[j] != TxnStatus::done) any_open = true;
    if (status[j] != TxnStatus::unscheduled) continue;
    bool ready = true;
    tree.for_each_predecessor(j, [&](TxnIndex i) {
      if (i != j && status[i] != TxnStatus::done) ready = false;
      return ready;
    });
    if (ready) return {SelectStatus::claimed, j};
  }
  return {any_open ? SelectStatus::none_available : SelectStatus::all_done, 0};
}

ExecutionReport execute_block_tree(const Block& block, const PredecessorTree& tree, StateStore& store,
                                   const ExecutionOptions& options, const Processor& processor) {
  if (tree.txn_count() != block.txn_count()) throw std::invalid_argument("tree does not match block");
  if (options.workers == 0) throw std::invalid_argument("at least one worker required");

  ExecutionReport report;
  report.schedule.reserve(block.txn_count());
  std::vector<TxnStatus> status(block.txn_count(), TxnStatus::unscheduled);
  std::mutex scheduler_lock;  // guards status and report
  std::atomic<bool> abort{false};

  auto worker = [&] {
    unsigned idle = 0;
    while (!abort.load(std::memory_order_acquire)) {
      Selection sel;
      {
        std::lock_guard lock(scheduler_lock);
        sel = tree_next_txn(tree, status);
        if (sel.status == SelectStatus::claimed) status[sel.index] = TxnStatus::running;
      }
      if (sel.status == SelectStatus::all_done) return;
      if (sel.status == SelectStatus::none_available) {
        if (++idle > 4) std::this_thread::yield();
        continue;
      }
      idle = 0;
      TxnOutcome outcome;
      try {
        busy_wait(options.sim_work);
        outcome = processor(block[sel.index], store);
      } catch (const std::exception& e) {
        std::lock_guard lock(scheduler_lock);
        if (!report.failure) report.failure = e.what();
        abort.store(true, std::memory_order_release);
        return;
      }
      std::lock_guard lock(scheduler_lock);
      ++(outcome == TxnOutcome::success ? report.txn_successes : report.txn_failures);
      report.schedule.push_back(sel.index);
      status[sel.index] = TxnStatus::done;
    }
  };

  const auto t0 = std::chrono::steady_clock::now();
  {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < options.workers; ++w) threads.emplace_back(worker);
  }
  report.wall_time =
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0);
  report.final_digest = state_digest(store);
  return report;
}

}  // namespace blockdag
