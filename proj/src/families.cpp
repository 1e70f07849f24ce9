// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "blockdag/families.hpp"

#include <limits>

namespace blockdag {

Bytes encode_u64(std::uint64_t v) {
  Bytes out(8, '\0');
  for (int i = 0; i < 8; ++i) out[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  return out;
}

std::optional<std::uint64_t> decode_u64(std::string_view bytes) {
  if (bytes.size() != 8) return std::nullopt;
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(bytes[i])) << (8 * i);
  return v;
}

namespace {

void put_u64(Bytes& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_string(Bytes& out, std::string_view s) {
  put_u64(out, s.size());
  out += s;
}

// Reads a length-prefixed string starting at pos; advances pos.
std::optional<std::string> take_string(std::string_view in, std::size_t& pos) {
  if (in.size() - pos < 8) return std::nullopt;
  auto len = decode_u64(in.substr(pos, 8));
  pos += 8;
  if (!len || *len > in.size() - pos) return std::nullopt;
  std::string s(in.substr(pos, *len));
  pos += *len;
  return s;
}

std::optional<std::uint64_t> arg_u64(const Payload& op, std::size_t i) {
  if (i >= op.args.size()) return std::nullopt;
  return decode_u64(op.args[i]);
}

Payload make_payload(Family f, std::uint8_t opcode, std::vector<Bytes> args) {
  return Payload{f, opcode, std::move(args)};
}

std::optional<std::uint64_t> read_counter(StateView& state, const Address& a) {
  auto raw = state.get(a);
  if (!raw) return std::nullopt;
  return decode_u64(*raw);
}

}  // namespace

Bytes encode_tally_map(const TallyMap& m) {
  Bytes out = encode_u64(m.size());
  for (const auto& [name, count] : m) {
    put_string(out, name);
    put_u64(out, count);
  }
  return out;
}

std::optional<TallyMap> decode_tally_map(std::string_view bytes) {
  if (bytes.size() < 8) return std::nullopt;
  auto count = decode_u64(bytes.substr(0, 8));
  std::size_t pos = 8;
  TallyMap m;
  for (std::uint64_t i = 0; i < *count; ++i) {
    auto name = take_string(bytes, pos);
    if (!name || bytes.size() - pos < 8) return std::nullopt;
    auto value = decode_u64(bytes.substr(pos, 8));
    pos += 8;
    m.emplace(std::move(*name), *value);
  }
  if (pos != bytes.size()) return std::nullopt;
  return m;
}

// ---------------------------------------------------------------------------
// SimpleWallet

namespace wallet {

Address account_address(std::string_view account) { return Address("wal:" + std::string(account)); }

namespace {
TxnDraft single_account(Op op, std::string_view account, std::vector<Bytes> args) {
  auto a = account_address(account);
  return TxnDraft{{a}, {a}, make_payload(Family::wallet, static_cast<std::uint8_t>(op), std::move(args))};
}
}  // namespace

TxnDraft create(std::string_view account) { return single_account(Op::create, account, {Bytes(account)}); }

TxnDraft deposit(std::string_view account, std::uint64_t amount) {
  return single_account(Op::deposit, account, {Bytes(account), encode_u64(amount)});
}

TxnDraft withdraw(std::string_view account, std::uint64_t amount) {
  return single_account(Op::withdraw, account, {Bytes(account), encode_u64(amount)});
}

TxnDraft transfer(std::string_view src, std::string_view dst, std::uint64_t amount) {
  auto s = account_address(src);
  auto d = account_address(dst);
  return TxnDraft{{s, d},
                  {s, d},
                  make_payload(Family::wallet, static_cast<std::uint8_t>(Op::transfer),
                               {Bytes(src), Bytes(dst), encode_u64(amount)})};
}

std::optional<std::uint64_t> balance(StateView& state, std::string_view account) {
  return read_counter(state, account_address(account));
}

TxnOutcome apply(const Payload& op, StateView& state) {
  if (op.args.empty() || op.args[0].empty()) return TxnOutcome::logical_failure;
  const auto acct = account_address(op.args[0]);
  switch (static_cast<Op>(op.opcode)) {
    case Op::create: {
      if (state.get(acct)) return TxnOutcome::logical_failure;
      state.put(acct, encode_u64(0));
      return TxnOutcome::success;
    }
    case Op::deposit: {
      auto amount = arg_u64(op, 1);
      auto bal = read_counter(state, acct);
      if (!amount || !bal) return TxnOutcome::logical_failure;
      if (*bal > std::numeric_limits<std::uint64_t>::max() - *amount) return TxnOutcome::logical_failure;
      state.put(acct, encode_u64(*bal + *amount));
      return TxnOutcome::success;
    }
    case Op::withdraw: {
      auto amount = arg_u64(op, 1);
      auto bal = read_counter(state, acct);
      if (!amount || !bal || *bal < *amount) return TxnOutcome::logical_failure;
      state.put(acct, encode_u64(*bal - *amount));
      return TxnOutcome::success;
    }
    case Op::transfer: {
      if (op.args.size() < 3 || op.args[1].empty()) return TxnOutcome::logical_failure;
      const auto dst = account_address(op.args[1]);
      auto amount = arg_u64(op, 2);
      auto src_bal = read_counter(state, acct);
      auto dst_bal = read_counter(state, dst);
      if (!amount || !src_bal || !dst_bal || *src_bal < *amount) return TxnOutcome::logical_failure;
      if (acct == dst) return TxnOutcome::success;
      if (*dst_bal > std::numeric_limits<std::uint64_t>::max() - *amount) return TxnOutcome::logical_failure;
      state.put(acct, encode_u64(*src_bal - *amount));
      state.put(dst, encode_u64(*dst_bal + *amount));
      return TxnOutcome::success;
    }
  }
  return TxnOutcome::logical_failure;
}

}  // namespace wallet

// ---------------------------------------------------------------------------
// Intkey

namespace intkey {

Address key_address(std::string_view key) { return Address("ikv:" + std::string(key)); }

namespace {
TxnDraft keyed(Op op, std::string_view key, std::uint64_t v) {
  auto a = key_address(key);
  return TxnDraft{{a}, {a}, make_payload(Family::intkey, static_cast<std::uint8_t>(op), {Bytes(key), encode_u64(v)})};
}
}  // namespace

TxnDraft set(std::string_view key, std::uint64_t v) { return keyed(Op::set, key, v); }
TxnDraft inc(std::string_view key, std::uint64_t delta) { return keyed(Op::inc, key, delta); }
TxnDraft dec(std::string_view key, std::uint64_t delta) { return keyed(Op::dec, key, delta); }

std::optional<std::uint64_t> value(StateView& state, std::string_view key) {
  return read_counter(state, key_address(key));
}

TxnOutcome apply(const Payload& op, StateView& state) {
  if (op.args.size() < 2 || op.args[0].empty()) return TxnOutcome::logical_failure;
  const auto key = key_address(op.args[0]);
  auto arg = arg_u64(op, 1);
  if (!arg) return TxnOutcome::logical_failure;
  switch (static_cast<Op>(op.opcode)) {
    case Op::set:
      state.put(key, encode_u64(*arg));
      return TxnOutcome::success;
    case Op::inc: {
      auto cur = read_counter(state, key);
      if (!cur || *cur > std::numeric_limits<std::uint64_t>::max() - *arg) return TxnOutcome::logical_failure;
      state.put(key, encode_u64(*cur + *arg));
      return TxnOutcome::success;
    }
    case Op::dec: {
      auto cur = read_counter(state, key);
      if (!cur || *cur < *arg) return TxnOutcome::logical_failure;
      state.put(key, encode_u64(*cur - *arg));
      return TxnOutcome::success;
    }
  }
  return TxnOutcome::logical_failure;
}

}  // namespace intkey

// ---------------------------------------------------------------------------
// Voting

namespace voting {

Address voters_address() { return Address("vot:voters"); }
Address parties_address() { return Address("vot:parties"); }

namespace {
TxnDraft coarse(Op op, std::vector<Bytes> args) {
  return TxnDraft{{voters_address(), parties_address()},
                  {voters_address(), parties_address()},
                  make_payload(Family::voting, static_cast<std::uint8_t>(op), std::move(args))};
}

TallyMap load_list(StateView& state, const Address& a, bool& ok) {
  auto raw = state.get(a);
  if (!raw) return {};
  auto m = decode_tally_map(*raw);
  if (!m) {
    ok = false;
    return {};
  }
  return std::move(*m);
}
}  // namespace

TxnDraft create_party(std::string_view party) { return coarse(Op::create_party, {Bytes(party)}); }
TxnDraft add_voter(std::string_view voter) { return coarse(Op::add_voter, {Bytes(voter)}); }
TxnDraft vote(std::string_view voter, std::string_view party) {
  return coarse(Op::vote, {Bytes(voter), Bytes(party)});
}

std::optional<std::uint64_t> tally(StateView& state, std::string_view party) {
  bool ok = true;
  auto parties = load_list(state, parties_address(), ok);
  auto it = parties.find(std::string(party));
  if (!ok || it == parties.end()) return std::nullopt;
  return it->second;
}

TxnOutcome apply(const Payload& op, StateView& state) {
  if (op.args.empty() || op.args[0].empty()) return TxnOutcome::logical_failure;
  bool ok = true;
  // The whole of both lists is loaded for every operation.
  auto voters = load_list(state, voters_address(), ok);
  auto parties = load_list(state, parties_address(), ok);
  if (!ok) return TxnOutcome::logical_failure;

  switch (static_cast<Op>(op.opcode)) {
    case Op::create_party:
      if (!parties.emplace(op.args[0], 0).second) return TxnOutcome::logical_failure;
      break;
    case Op::add_voter:
      if (!voters.emplace(op.args[0], 0).second) return TxnOutcome::logical_failure;
      break;
    case Op::vote: {
      if (op.args.size() < 2) return TxnOutcome::logical_failure;
      auto v = voters.find(op.args[0]);
      auto p = parties.find(op.args[1]);
      if (v == voters.end() || p == parties.end() || v->second != 0) return TxnOutcome::logical_failure;
      v->second = 1;
      ++p->second;
      break;
    }
    default:
      return TxnOutcome::logical_failure;
  }
  state.put(voters_address(), encode_tally_map(voters));
  state.put(parties_address(), encode_tally_map(parties));
  return TxnOutcome::success;
}

}  // namespace voting

// ---------------------------------------------------------------------------
// Insurance

namespace insurance {

Bytes encode_record(const Record& r) {
  Bytes out;
  put_string(out, r.name);
  put_string(out, r.street);
  put_string(out, r.city);
  return out;
}

std::optional<Record> decode_record(std::string_view bytes) {
  std::size_t pos = 0;
  auto name = take_string(bytes, pos);
  auto street = name ? take_string(bytes, pos) : std::nullopt;
  auto city = street ? take_string(bytes, pos) : std::nullopt;
  if (!city || pos != bytes.size()) return std::nullopt;
  return Record{std::move(*name), std::move(*street), std::move(*city)};
}

Address record_address(std::string_view id) { return Address("ins:" + std::string(id)); }

namespace {
TxnDraft writing(Op op, std::string_view id, const Record& r) {
  auto a = record_address(id);
  return TxnDraft{{a}, {a}, make_payload(Family::insurance, static_cast<std::uint8_t>(op),
                                         {Bytes(id), r.name, r.street, r.city})};
}
}  // namespace

TxnDraft create_record(std::string_view id, const Record& fields) { return writing(Op::create_record, id, fields); }
TxnDraft update_record(std::string_view id, const Record& fields) { return writing(Op::update_record, id, fields); }

TxnDraft read_record(std::string_view id) {
  return TxnDraft{{record_address(id)}, {},
                  make_payload(Family::insurance, static_cast<std::uint8_t>(Op::read_record), {Bytes(id)})};
}

std::optional<Record> record(StateView& state, std::string_view id) {
  auto raw = state.get(record_address(id));
  if (!raw) return std::nullopt;
  return decode_record(*raw);
}

TxnOutcome apply(const Payload& op, StateView& state) {
  if (op.args.empty() || op.args[0].empty()) return TxnOutcome::logical_failure;
  const auto a = record_address(op.args[0]);
  switch (static_cast<Op>(op.opcode)) {
    case Op::create_record:
    case Op::update_record: {
      if (op.args.size() < 4) return TxnOutcome::logical_failure;
      const bool exists = state.get(a).has_value();
      if (exists != (static_cast<Op>(op.opcode) == Op::update_record)) return TxnOutcome::logical_failure;
      state.put(a, encode_record(Record{op.args[1], op.args[2], op.args[3]}));
      return TxnOutcome::success;
    }
    case Op::read_record: {
      auto raw = state.get(a);
      return raw && decode_record(*raw) ? TxnOutcome::success : TxnOutcome::logical_failure;
    }
  }
  return TxnOutcome::logical_failure;
}

}  // namespace insurance

TxnOutcome apply_transaction(const Transaction& txn, StateView& state) {
  TxnStateView view(state, txn);
  switch (txn.payload.family) {
    case Family::wallet: return wallet::apply(txn.payload, view);
    case Family::intkey: return intkey::apply(txn.payload, view);
    case Family::voting: return voting::apply(txn.payload, view);
    case Family::insurance: return insurance::apply(txn.payload, view);
  }
  return TxnOutcome::logical_failure;
}

Processor default_processor() { return &apply_transaction; }

}  // namespace blockdag
