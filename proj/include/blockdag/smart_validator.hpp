// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "blockdag/dag.hpp"
#include "blockdag/model.hpp"

namespace blockdag {

// Per-address read and write lists for every address a block touches. Lists
// are ascending by transaction index.
class AddressAccessIndex {
 public:
  struct Entry {
    Address address;
    std::vector<TxnIndex> reads;
    std::vector<TxnIndex> writes;
  };

  AddressAccessIndex() = default;
  explicit AddressAccessIndex(std::vector<Entry> entries, std::size_t txn_count)
      : entries_(std::move(entries)), txn_count_(txn_count) {}

  std::size_t adds_count() const noexcept { return entries_.size(); }
  std::size_t txn_count() const noexcept { return txn_count_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const Entry* find(const Address& a) const;

 private:
  std::vector<Entry> entries_;  // sorted by address
  std::size_t txn_count_ = 0;
};

AddressAccessIndex build_access_index(const Block& block);

struct ValidationResult {
  Verdict verdict = Verdict::honest;
  // Distinct verified edges counted per higher-index endpoint. Complete only
  // when no missing edge was found.
  std::vector<std::uint32_t> calculated_indegree;
};

// Checks a block's miner-shared DAG. Workers claim addresses and confirm that
// every read-write and write-write pair on an address is an edge of the
// shared DAG (missing-edge check), counting each distinct pair once toward
// the higher index. After a barrier the counts are compared with the shared
// indegree array (extra-edge check).
//
// A shared DAG whose indegree array disagrees with its dependency lists, or
// whose lists contain duplicates, is classified malicious_extra_edge.
// Throws std::invalid_argument if the block carries no shared DAG.
Verdict validate_dag(const Block& block, const AddressAccessIndex& index, unsigned workers);

ValidationResult validate_dag_detailed(const Block& block, const AddressAccessIndex& index, unsigned workers);

// Tampering helpers for adversarial runs: return a copy of a block whose
// shared DAG lacks (or additionally has) the edge, with the shared indegree
// kept consistent the way a careful malicious miner would.
Block drop_shared_edge(const Block& block, Edge edge);
Block add_shared_edge(const Block& block, Edge edge);

}  // namespace blockdag
