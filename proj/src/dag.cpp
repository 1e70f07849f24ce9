// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "blockdag/dag.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace blockdag {

std::string_view variant_name(DagVariant v) { return v == DagVariant::matrix ? "matrix" : "linked-list"; }

DependencyDag::DependencyDag(std::size_t txn_count, DagVariant variant)
    : n_(txn_count),
      variant_(variant),
      indegree_(std::make_unique<std::atomic<std::int32_t>[]>(txn_count)),
      committed_(std::make_unique<std::atomic<std::uint8_t>[]>(txn_count)) {
  // All nodes exist before any worker scans for edges.
  if (variant_ == DagVariant::matrix)
    matrix_ = std::make_unique<std::atomic<std::uint8_t>[]>(n_ * n_);
  else
    heads_ = std::make_unique<std::atomic<EdgeNode*>[]>(n_);
}

DependencyDag::~DependencyDag() { release_lists(); }

DependencyDag::DependencyDag(DependencyDag&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      variant_(other.variant_),
      matrix_(std::move(other.matrix_)),
      heads_(std::move(other.heads_)),
      indegree_(std::move(other.indegree_)),
      committed_(std::move(other.committed_)),
      committed_count_(other.committed_count_.load()),
      sealed_(std::move(other.sealed_)) {}

DependencyDag& DependencyDag::operator=(DependencyDag&& other) noexcept {
  if (this != &other) {
    release_lists();
    n_ = std::exchange(other.n_, 0);
    variant_ = other.variant_;
    matrix_ = std::move(other.matrix_);
    heads_ = std::move(other.heads_);
    indegree_ = std::move(other.indegree_);
    committed_ = std::move(other.committed_);
    committed_count_.store(other.committed_count_.load());
    sealed_ = std::move(other.sealed_);
  }
  return *this;
}

void DependencyDag::release_lists() noexcept {
  if (!heads_) return;
  for (std::size_t i = 0; i < n_; ++i) {
    auto* e = heads_[i].load(std::memory_order_relaxed);
    while (e != nullptr) {
      auto* next = e->next;
      delete e;
      e = next;
    }
  }
  heads_.reset();
}

bool DependencyDag::add_edge(TxnIndex from, TxnIndex to) {
  assert(from < to && to < n_);
  bool inserted = false;
  if (variant_ == DagVariant::matrix) {
    inserted = matrix_[static_cast<std::size_t>(from) * n_ + to].exchange(1, std::memory_order_acq_rel) == 0;
  } else {
    // Lock-free insert-if-absent on an append-only list: scan, then CAS at the
    // head; after a failed CAS only the newly prepended prefix needs a rescan.
    auto& head = heads_[from];
    EdgeNode* observed = head.load(std::memory_order_acquire);
    EdgeNode* scanned_to = nullptr;
    EdgeNode* node = nullptr;
    for (;;) {
      for (auto* e = observed; e != scanned_to; e = e->next) {
        if (e->target == to) {
          delete node;
          return false;
        }
      }
      if (node == nullptr) node = new EdgeNode{to, nullptr};
      node->next = observed;
      scanned_to = observed;
      if (head.compare_exchange_weak(observed, node, std::memory_order_acq_rel, std::memory_order_acquire)) break;
    }
    inserted = true;
  }
  if (inserted) indegree_[to].fetch_add(1, std::memory_order_acq_rel);
  return inserted;
}

void DependencyDag::add_new_edge(TxnIndex from, TxnIndex to) {
  assert(from < to && to < n_);
  if (variant_ == DagVariant::matrix) {
    matrix_[static_cast<std::size_t>(from) * n_ + to].store(1, std::memory_order_release);
  } else {
    auto& head = heads_[from];
    auto* node = new EdgeNode{to, head.load(std::memory_order_acquire)};
    while (!head.compare_exchange_weak(node->next, node, std::memory_order_acq_rel, std::memory_order_acquire)) {
    }
  }
  indegree_[to].fetch_add(1, std::memory_order_acq_rel);
}

bool DependencyDag::has_edge(TxnIndex from, TxnIndex to) const {
  if (from >= to || to >= n_) return false;
  if (variant_ == DagVariant::matrix)
    return matrix_[static_cast<std::size_t>(from) * n_ + to].load(std::memory_order_acquire) != 0;
  for (auto* e = heads_[from].load(std::memory_order_acquire); e != nullptr; e = e->next)
    if (e->target == to) return true;
  return false;
}

void DependencyDag::seal() {
  sealed_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) sealed_[i] = static_cast<std::uint32_t>(indegree_[i].load());
}

std::vector<TxnIndex> DependencyDag::successors(TxnIndex from) const {
  std::vector<TxnIndex> out;
  for_each_successor(from, [&](TxnIndex j) { out.push_back(j); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<TxnIndex>> DependencyDag::predecessor_lists() const {
  std::vector<std::vector<TxnIndex>> preds(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for_each_successor(static_cast<TxnIndex>(i), [&](TxnIndex j) { preds[j].push_back(static_cast<TxnIndex>(i)); });
  for (auto& p : preds) std::sort(p.begin(), p.end());
  return preds;
}

std::vector<Edge> DependencyDag::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (auto j : successors(static_cast<TxnIndex>(i))) out.emplace_back(static_cast<TxnIndex>(i), j);
  return out;
}

std::size_t DependencyDag::edge_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n_; ++i) for_each_successor(static_cast<TxnIndex>(i), [&](TxnIndex) { ++count; });
  return count;
}

std::vector<std::uint8_t> DependencyDag::adjacency_matrix() const {
  std::vector<std::uint8_t> grid(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for_each_successor(static_cast<TxnIndex>(i), [&](TxnIndex j) { grid[i * n_ + j] = 1; });
  return grid;
}

std::vector<std::uint32_t> DependencyDag::sealed_indegrees() const {
  if (sealed_.size() == n_) return sealed_;
  std::vector<std::uint32_t> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = static_cast<std::uint32_t>(std::max(0, indegree_[i].load()));
  return out;
}

bool DependencyDag::try_claim(TxnIndex i) {
  std::int32_t expected = 0;
  return indegree_[i].compare_exchange_strong(expected, -1, std::memory_order_acq_rel);
}

bool DependencyDag::mark_committed(TxnIndex i) {
  if (committed_[i].exchange(1, std::memory_order_acq_rel) != 0) return false;
  committed_count_.fetch_add(1, std::memory_order_acq_rel);
  return true;
}

std::vector<std::int32_t> DependencyDag::indegree_snapshot() const {
  std::vector<std::int32_t> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = indegree_[i].load();
  return out;
}

void DependencyDag::reset_schedule() {
  if (sealed_.size() != n_) seal();
  for (std::size_t i = 0; i < n_; ++i) {
    indegree_[i].store(static_cast<std::int32_t>(sealed_[i]));
    committed_[i].store(0);
  }
  committed_count_.store(0);
}

namespace {

template <class It>
bool sorted_intersect(It a, It a_end, It b, It b_end) {
  while (a != a_end && b != b_end) {
    if (*a < *b)
      ++a;
    else if (*b < *a)
      ++b;
    else
      return true;
  }
  return false;
}

bool intersects(const std::vector<Address>& x, const std::vector<Address>& y) {
  return sorted_intersect(x.begin(), x.end(), y.begin(), y.end());
}

// Runs fn on the calling thread plus workers-1 helpers.
template <class Fn>
void run_workers(unsigned workers, Fn&& fn) {
  std::vector<std::jthread> helpers;
  helpers.reserve(workers > 0 ? workers - 1 : 0);
  for (unsigned w = 1; w < workers; ++w) helpers.emplace_back(fn);
  fn();
}

}  // namespace

bool conflicts(const Transaction& a, const Transaction& b) {
  assert(a.index < b.index && "conflicts() requires a to precede b");
  return intersects(a.read_set, b.write_set) || intersects(a.write_set, b.read_set) ||
         intersects(a.write_set, b.write_set);
}

DependencyDag build_dag(const Block& block, unsigned workers, DagVariant variant) {
  if (workers == 0) throw std::invalid_argument("build_dag needs at least one worker");
  const auto n = block.txn_count();
  DependencyDag dag(n, variant);
  const auto txns = block.transactions();
  std::atomic<std::size_t> txn_counter{0};

  run_workers(workers, [&] {
    for (;;) {
      auto i = txn_counter.fetch_add(1, std::memory_order_acq_rel);
      if (i >= n) {
        txn_counter.fetch_sub(1, std::memory_order_acq_rel);
        return;
      }
      // Only this worker visits row i, once per pair.
      for (std::size_t j = i + 1; j < n; ++j)
        if (conflicts(txns[i], txns[j])) dag.add_new_edge(static_cast<TxnIndex>(i), static_cast<TxnIndex>(j));
    }
  });

  dag.seal();
  return dag;
}

DependencyDag brute_force_dag(const Block& block) {
  const auto n = block.txn_count();
  DependencyDag dag(n, DagVariant::matrix);
  std::vector<std::unordered_set<std::string>> reads(n), writes(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& a : block[i].read_set) reads[i].insert(a.key());
    for (const auto& a : block[i].write_set) writes[i].insert(a.key());
  }
  auto overlap = [](const std::unordered_set<std::string>& x, const std::unordered_set<std::string>& y) {
    for (const auto& k : x)
      if (y.contains(k)) return true;
    return false;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (overlap(reads[i], writes[j]) || overlap(writes[i], reads[j]) || overlap(writes[i], writes[j]))
        dag.add_edge(static_cast<TxnIndex>(i), static_cast<TxnIndex>(j));
  dag.seal();
  return dag;
}

DependencyDag dag_from_shared(const Block& block, DagVariant variant) {
  DependencyDag dag(block.txn_count(), variant);
  for (const auto& t : block.transactions())
    for (auto dep : t.declared_dependencies) dag.add_edge(dep, t.index);
  dag.seal();
  return dag;
}

Block share_dag(const Block& block, const DependencyDag& dag) {
  if (dag.txn_count() != block.txn_count()) throw std::invalid_argument("dag does not match block");
  return block.with_shared_dag(dag.predecessor_lists(), dag.sealed_indegrees());
}

}  // namespace blockdag
