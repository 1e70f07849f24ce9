// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "blockdag/smart_validator.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <memory>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace blockdag {

const AddressAccessIndex::Entry* AddressAccessIndex::find(const Address& a) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), a,
                             [](const Entry& e, const Address& key) { return e.address < key; });
  return it != entries_.end() && it->address == a ? &*it : nullptr;
}

AddressAccessIndex build_access_index(const Block& block) {
  std::unordered_map<Address, std::size_t, AddressHash> slot;
  std::vector<AddressAccessIndex::Entry> entries;
  auto entry_for = [&](const Address& a) -> AddressAccessIndex::Entry& {
    auto [it, fresh] = slot.try_emplace(a, entries.size());
    if (fresh) entries.push_back({a, {}, {}});
    return entries[it->second];
  };
  // Index order keeps every list ascending.
  for (const auto& t : block.transactions()) {
    for (const auto& a : t.read_set) entry_for(a).reads.push_back(t.index);
    for (const auto& a : t.write_set) entry_for(a).writes.push_back(t.index);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.address < y.address; });
  return AddressAccessIndex(std::move(entries), block.txn_count());
}

namespace {

// n x n bit grid. Writers use fetch_or so concurrent marks never get lost.
class PairBits {
 public:
  explicit PairBits(std::size_t n) : n_(n), words_(std::make_unique<std::atomic<std::uint64_t>[]>((n * n + 63) / 64)) {}

  std::size_t bit(TxnIndex lo, TxnIndex hi) const { return static_cast<std::size_t>(lo) * n_ + hi; }
  std::uint64_t word(std::size_t w) const { return words_[w].load(std::memory_order_relaxed); }
  // Sets the masked bits of word w; returns those that were clear before.
  std::uint64_t set_word(std::size_t w, std::uint64_t mask) {
    if ((words_[w].load(std::memory_order_relaxed) & mask) == mask) return 0;
    return mask & ~words_[w].fetch_or(mask, std::memory_order_acq_rel);
  }

  // Returns the previous value.
  bool test_and_set(TxnIndex lo, TxnIndex hi) {
    auto b = bit(lo, hi);
    return set_word(b / 64, std::uint64_t{1} << (b % 64)) == 0;
  }

 private:
  std::size_t n_;
  std::unique_ptr<std::atomic<std::uint64_t>[]> words_;
};

}  // namespace

ValidationResult validate_dag_detailed(const Block& block, const AddressAccessIndex& index, unsigned workers) {
  if (!block.has_shared_dag()) throw std::invalid_argument("block carries no shared DAG");
  if (workers == 0) throw std::invalid_argument("at least one worker required");
  if (index.txn_count() != block.txn_count()) throw std::invalid_argument("access index does not match block");

  const auto n = block.txn_count();
  const auto& shared_indegree = *block.shared_indegree();
  ValidationResult result;
  result.calculated_indegree.assign(n, 0);

  // Structural checks on the shared DAG; the lists double as the edge set.
  PairBits shared(n);
  for (const auto& t : block.transactions()) {
    if (t.declared_dependencies.size() != shared_indegree[t.index]) {
      result.verdict = Verdict::malicious_extra_edge;
      return result;
    }
    for (auto dep : t.declared_dependencies) {
      if (dep >= t.index || shared.test_and_set(dep, t.index)) {
        result.verdict = Verdict::malicious_extra_edge;
        return result;
      }
    }
  }

  PairBits edge_seen(n);
  std::atomic<bool> m_miner{false};
  std::atomic<std::size_t> adds_counter{0};
  const auto& entries = index.entries();
  // Per-worker indegree counts, summed after the barrier.
  std::vector<std::vector<std::uint32_t>> cal_deg(workers, std::vector<std::uint32_t>(n, 0));

  struct Access {
    TxnIndex txn;
    bool writes;
  };

  auto worker = [&](unsigned id) {
    auto& deg = cal_deg[id];
    std::vector<Access> accessors;
    while (!m_miner.load(std::memory_order_acquire)) {
      auto k = adds_counter.fetch_add(1, std::memory_order_acq_rel);
      if (k >= entries.size()) {
        adds_counter.fetch_sub(1, std::memory_order_acq_rel);
        return;
      }
      const auto& e = entries[k];
      // Merge into one ascending list; a txn that reads and writes counts as a writer.
      accessors.clear();
      for (std::size_t x = 0, y = 0; x < e.reads.size() || y < e.writes.size();) {
        if (y == e.writes.size() || (x < e.reads.size() && e.reads[x] < e.writes[y])) {
          accessors.push_back({e.reads[x++], false});
        } else {
          if (x < e.reads.size() && e.reads[x] == e.writes[y]) ++x;
          accessors.push_back({e.writes[y++], true});
        }
      }
      // Every (lower, higher) pair with a writer on either side conflicts
      // here. Row lo of the bit grids is contiguous in hi, so pairs are
      // checked and marked a word at a time.
      for (std::size_t x = 0; x < accessors.size(); ++x) {
        const auto lo = accessors[x];
        const auto row = edge_seen.bit(lo.txn, 0);
        std::size_t current = 0;
        std::uint64_t mask = 0;
        auto flush = [&] {
          if (mask == 0) return true;
          if ((shared.word(current) & mask) != mask) return false;
          for (auto fresh = edge_seen.set_word(current, mask); fresh != 0; fresh &= fresh - 1)
            ++deg[current * 64 + static_cast<std::size_t>(std::countr_zero(fresh)) - row];
          mask = 0;
          return true;
        };
        for (std::size_t y = x + 1; y < accessors.size(); ++y) {
          const auto hi = accessors[y];
          if (!lo.writes && !hi.writes) continue;
          const auto b = row + hi.txn;
          if (b / 64 != current) {
            if (!flush()) {
              m_miner.store(true, std::memory_order_release);
              return;
            }
            current = b / 64;
          }
          mask |= std::uint64_t{1} << (b % 64);
        }
        if (!flush()) {
          m_miner.store(true, std::memory_order_release);
          return;
        }
      }
    }
  };

  {
    std::vector<std::jthread> helpers;
    for (unsigned w = 1; w < workers; ++w) helpers.emplace_back(worker, w);
    worker(0);
  }  // barrier

  for (const auto& deg : cal_deg)
    for (std::size_t j = 0; j < n; ++j) result.calculated_indegree[j] += deg[j];
  if (m_miner.load()) {
    result.verdict = Verdict::malicious_missing_edge;
    return result;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (result.calculated_indegree[j] != shared_indegree[j]) {
      result.verdict = Verdict::malicious_extra_edge;
      return result;
    }
  }
  return result;
}

namespace {

std::vector<std::vector<TxnIndex>> shared_lists(const Block& block) {
  if (!block.has_shared_dag()) throw std::invalid_argument("block carries no shared DAG");
  std::vector<std::vector<TxnIndex>> lists;
  lists.reserve(block.txn_count());
  for (const auto& t : block.transactions()) lists.push_back(t.declared_dependencies);
  return lists;
}

}  // namespace

Block drop_shared_edge(const Block& block, Edge edge) {
  auto lists = shared_lists(block);
  auto indegree = *block.shared_indegree();
  auto& preds = lists.at(edge.second);
  auto it = std::find(preds.begin(), preds.end(), edge.first);
  if (it == preds.end()) throw std::invalid_argument("edge not present in shared DAG");
  preds.erase(it);
  --indegree[edge.second];
  return block.with_shared_dag(std::move(lists), std::move(indegree));
}

Block add_shared_edge(const Block& block, Edge edge) {
  if (edge.first >= edge.second) throw std::invalid_argument("edge must run from lower to higher index");
  auto lists = shared_lists(block);
  auto indegree = *block.shared_indegree();
  auto& preds = lists.at(edge.second);
  if (std::find(preds.begin(), preds.end(), edge.first) != preds.end())
    throw std::invalid_argument("edge already present in shared DAG");
  preds.insert(std::upper_bound(preds.begin(), preds.end(), edge.first), edge.first);
  ++indegree[edge.second];
  return block.with_shared_dag(std::move(lists), std::move(indegree));
}

Verdict validate_dag(const Block& block, const AddressAccessIndex& index, unsigned workers) {
  return validate_dag_detailed(block, index, workers).verdict;
}

}  // namespace blockdag
