// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blockdag {

using TxnIndex = std::uint32_t;
using Bytes = std::string;

// Opaque, non-empty state key. Families namespace their keys with a short
// prefix ("wal:", "ikv:", ...), which gives the predecessor tree shared paths.
class Address {
 public:
  Address() = delete;
  explicit Address(std::string key);

  const std::string& key() const noexcept { return key_; }
  std::size_t size() const noexcept { return key_.size(); }

  friend bool operator==(const Address&, const Address&) = default;
  friend auto operator<=>(const Address&, const Address&) = default;

 private:
  std::string key_;
};

struct AddressHash {
  std::size_t operator()(const Address& a) const noexcept { return std::hash<std::string>{}(a.key()); }
};

enum class Family : std::uint8_t { wallet = 0, intkey = 1, voting = 2, insurance = 3 };

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

struct Payload {
  Family family = Family::wallet;
  std::uint8_t opcode = 0;
  std::vector<Bytes> args;

  friend bool operator==(const Payload&, const Payload&) = default;
};

// A transaction within a block. read_set and write_set are kept sorted and
// free of duplicates so conflict checks can merge them linearly.
struct Transaction {
  TxnIndex index = 0;
  std::vector<Address> read_set;
  std::vector<Address> write_set;
  Payload payload;
  // Incoming edges of a miner-shared DAG; empty unless a DAG is shared.
  std::vector<TxnIndex> declared_dependencies;

  bool reads(const Address& a) const;
  bool writes(const Address& a) const;

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

// Read/write sets plus payload, before the transaction has a block position.
struct TxnDraft {
  std::vector<Address> read_set;
  std::vector<Address> write_set;
  Payload payload;
};

// Sorts and deduplicates an address list in place.
void normalize_addresses(std::vector<Address>& addresses);

// Ordered transaction list, optionally carrying a miner-shared DAG
// (per-transaction declared_dependencies plus the shared indegree array).
// Immutable once assembled.
class Block {
 public:
  Block() = default;

  // Validates transactions[i].index == i and that every declared dependency
  // points strictly backwards; throws std::invalid_argument otherwise.
  explicit Block(std::vector<Transaction> transactions,
                 std::optional<std::vector<std::uint32_t>> shared_indegree = std::nullopt);

  // Assigns indices by position and normalizes address sets.
  static Block assemble(std::vector<TxnDraft> drafts);

  std::span<const Transaction> transactions() const noexcept { return transactions_; }
  const Transaction& operator[](TxnIndex i) const { return transactions_[i]; }
  std::size_t txn_count() const noexcept { return transactions_.size(); }
  bool empty() const noexcept { return transactions_.empty(); }

  bool has_shared_dag() const noexcept { return shared_indegree_.has_value(); }
  const std::optional<std::vector<std::uint32_t>>& shared_indegree() const noexcept { return shared_indegree_; }

  // Copy of this block carrying the given shared DAG (predecessor lists, one
  // per transaction, and matching indegrees).
  Block with_shared_dag(std::vector<std::vector<TxnIndex>> predecessors,
                        std::vector<std::uint32_t> shared_indegree) const;
  Block without_shared_dag() const;

  friend bool operator==(const Block&, const Block&) = default;

 private:
  std::vector<Transaction> transactions_;
  std::optional<std::vector<std::uint32_t>> shared_indegree_;
};

enum class Verdict : std::uint8_t { honest, malicious_missing_edge, malicious_extra_edge };

std::string_view verdict_name(Verdict v);

enum class TxnOutcome : std::uint8_t { success, logical_failure };

using Digest = std::array<std::uint8_t, 32>;

std::string to_hex(std::span<const std::uint8_t> bytes);

struct ExecutionReport {
  std::vector<TxnIndex> schedule;  // commit order
  Digest final_digest{};
  std::chrono::nanoseconds wall_time{0};
  std::size_t txn_successes = 0;
  std::size_t txn_failures = 0;
  std::optional<Verdict> validator_verdict;
  // Set when a worker aborted; the rest of the report is partial.
  std::optional<std::string> failure;

  bool ok() const noexcept { return !failure.has_value(); }
};

// Largest block accepted by the codec and DAG builders. Defaults to 4096,
// overridable with BLOCKDAG_MAX_TXNS.
std::size_t max_block_txns();

}  // namespace blockdag
