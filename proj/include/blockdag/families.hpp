// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "blockdag/model.hpp"
#include "blockdag/state_store.hpp"

namespace blockdag {

// Fixed-width little-endian encoding used for integer arguments and values.
Bytes encode_u64(std::uint64_t v);
std::optional<std::uint64_t> decode_u64(std::string_view bytes);

// Name -> counter map, the value layout of the voting family's two lists.
using TallyMap = std::map<std::string, std::uint64_t>;
Bytes encode_tally_map(const TallyMap& m);
std::optional<TallyMap> decode_tally_map(std::string_view bytes);

namespace wallet {

enum class Op : std::uint8_t { create = 0, deposit = 1, withdraw = 2, transfer = 3 };

Address account_address(std::string_view account);

TxnDraft create(std::string_view account);
TxnDraft deposit(std::string_view account, std::uint64_t amount);
TxnDraft withdraw(std::string_view account, std::uint64_t amount);
TxnDraft transfer(std::string_view src, std::string_view dst, std::uint64_t amount);

std::optional<std::uint64_t> balance(StateView& state, std::string_view account);

TxnOutcome apply(const Payload& op, StateView& state);

}  // namespace wallet

namespace intkey {

enum class Op : std::uint8_t { set = 0, inc = 1, dec = 2 };

Address key_address(std::string_view key);

TxnDraft set(std::string_view key, std::uint64_t value);
TxnDraft inc(std::string_view key, std::uint64_t delta);
TxnDraft dec(std::string_view key, std::uint64_t delta);

std::optional<std::uint64_t> value(StateView& state, std::string_view key);

TxnOutcome apply(const Payload& op, StateView& state);

}  // namespace intkey

// Every voting transaction declares both global lists in its read and write
// sets, whatever voter or party it concerns. That is the family's documented
// design and it totally orders any block of voting transactions.
namespace voting {

enum class Op : std::uint8_t { create_party = 0, add_voter = 1, vote = 2 };

Address voters_address();
Address parties_address();

TxnDraft create_party(std::string_view party);
TxnDraft add_voter(std::string_view voter);
TxnDraft vote(std::string_view voter, std::string_view party);

std::optional<std::uint64_t> tally(StateView& state, std::string_view party);

TxnOutcome apply(const Payload& op, StateView& state);

}  // namespace voting

namespace insurance {

enum class Op : std::uint8_t { create_record = 0, update_record = 1, read_record = 2 };

struct Record {
  std::string name;
  std::string street;
  std::string city;

  friend bool operator==(const Record&, const Record&) = default;
};

Bytes encode_record(const Record& r);
std::optional<Record> decode_record(std::string_view bytes);

Address record_address(std::string_view id);

TxnDraft create_record(std::string_view id, const Record& fields);
TxnDraft update_record(std::string_view id, const Record& fields);
TxnDraft read_record(std::string_view id);

std::optional<Record> record(StateView& state, std::string_view id);

TxnOutcome apply(const Payload& op, StateView& state);

}  // namespace insurance

// Executes one transaction against state. Processors must be deterministic
// functions of (transaction, state).
using Processor = std::function<TxnOutcome(const Transaction&, StateView&)>;

// Dispatches on payload family through a TxnStateView, so touching an
// undeclared address throws AddressViolation.
TxnOutcome apply_transaction(const Transaction& txn, StateView& state);

Processor default_processor();

}  // namespace blockdag
