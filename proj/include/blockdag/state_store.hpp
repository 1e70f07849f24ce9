// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "blockdag/model.hpp"

namespace blockdag {

using StateEntries = std::map<Address, Bytes>;

// Read/write access to state as seen by a transaction processor. get()
// returns std::nullopt for an absent address.
class StateView {
 public:
  virtual ~StateView() = default;
  virtual std::optional<Bytes> get(const Address& key) = 0;
  virtual void put(const Address& key, Bytes value) = 0;
};

// Address -> value map. Entries are spread over lock-striped shards, so
// transactions touching disjoint addresses rarely share a lock and never
// take a store-wide one.
class StateStore final : public StateView {
 public:
  static constexpr std::size_t kShards = 64;

  StateStore() = default;
  explicit StateStore(const StateEntries& entries);

  StateStore(const StateStore&) = delete;
  StateStore& operator=(const StateStore&) = delete;

  std::optional<Bytes> get(const Address& key) override;
  void put(const Address& key, Bytes value) override;

  std::size_t size() const;
  // Ordered copy of every entry; not safe against concurrent writers.
  StateEntries snapshot() const;

 private:
  struct Shard {
    mutable std::mutex mutex;
    std::unordered_map<Address, Bytes, AddressHash> entries;
  };
  Shard& shard_for(const Address& key);

  std::array<Shard, kShards> shards_;
};

// SHA-256 over the key-ordered entry set, so insertion order never matters.
Digest state_digest(const StateStore& store);
Digest state_digest(const StateEntries& entries);

class AddressViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// View handed to a processor while it executes one transaction. Reading an
// address outside read_set ∪ write_set, or writing outside write_set, throws
// AddressViolation: processors must only touch what they declared.
class TxnStateView final : public StateView {
 public:
  TxnStateView(StateView& store, const Transaction& txn) : store_(store), txn_(txn) {}

  std::optional<Bytes> get(const Address& key) override;
  void put(const Address& key, Bytes value) override;

 private:
  StateView& store_;
  const Transaction& txn_;
};

}  // namespace blockdag
