// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "blockdag/model.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace blockdag {

Address::Address(std::string key) : key_(std::move(key)) {
  if (key_.empty()) throw std::invalid_argument("address must be non-empty");
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::wallet: return "wallet";
    case Family::intkey: return "intkey";
    case Family::voting: return "voting";
    case Family::insurance: return "insurance";
  }
  return "unknown";
}

std::optional<Family> family_from_name(std::string_view name) {
  for (auto f : {Family::wallet, Family::intkey, Family::voting, Family::insurance})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

bool Transaction::reads(const Address& a) const {
  return std::binary_search(read_set.begin(), read_set.end(), a);
}

bool Transaction::writes(const Address& a) const {
  return std::binary_search(write_set.begin(), write_set.end(), a);
}

void normalize_addresses(std::vector<Address>& addresses) {
  std::sort(addresses.begin(), addresses.end());
  addresses.erase(std::unique(addresses.begin(), addresses.end()), addresses.end());
}

Block::Block(std::vector<Transaction> transactions, std::optional<std::vector<std::uint32_t>> shared_indegree)
    : transactions_(std::move(transactions)), shared_indegree_(std::move(shared_indegree)) {
  const auto n = transactions_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = transactions_[i];
    if (t.index != i) throw std::invalid_argument("transaction index does not match its block position");
    if (!std::is_sorted(t.read_set.begin(), t.read_set.end()) ||
        !std::is_sorted(t.write_set.begin(), t.write_set.end()))
      throw std::invalid_argument("address sets must be normalized");
    for (auto dep : t.declared_dependencies)
      if (dep >= t.index) throw std::invalid_argument("declared dependency must precede its transaction");
  }
  if (shared_indegree_) {
    if (shared_indegree_->size() != n) throw std::invalid_argument("shared indegree length differs from txn_count");
    for (auto d : *shared_indegree_)
      if (d >= n && n > 0) throw std::invalid_argument("shared indegree entry out of range");
  }
}

Block Block::assemble(std::vector<TxnDraft> drafts) {
  std::vector<Transaction> txns;
  txns.reserve(drafts.size());
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    Transaction t;
    t.index = static_cast<TxnIndex>(i);
    t.read_set = std::move(drafts[i].read_set);
    t.write_set = std::move(drafts[i].write_set);
    t.payload = std::move(drafts[i].payload);
    normalize_addresses(t.read_set);
    normalize_addresses(t.write_set);
    txns.push_back(std::move(t));
  }
  return Block(std::move(txns));
}

Block Block::with_shared_dag(std::vector<std::vector<TxnIndex>> predecessors,
                             std::vector<std::uint32_t> shared_indegree) const {
  if (predecessors.size() != transactions_.size())
    throw std::invalid_argument("one predecessor list per transaction required");
  auto txns = transactions_;
  for (std::size_t i = 0; i < txns.size(); ++i) txns[i].declared_dependencies = std::move(predecessors[i]);
  return Block(std::move(txns), std::move(shared_indegree));
}

Block Block::without_shared_dag() const {
  auto txns = transactions_;
  for (auto& t : txns) t.declared_dependencies.clear();
  return Block(std::move(txns));
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::honest: return "honest";
    case Verdict::malicious_missing_edge: return "malicious-missing-edge";
    case Verdict::malicious_extra_edge: return "malicious-extra-edge";
  }
  return "unknown";
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::size_t max_block_txns() {
  constexpr std::size_t kDefault = 4096;
  const char* env = std::getenv("BLOCKDAG_MAX_TXNS");
  if (env == nullptr || *env == '\0') return kDefault;
  std::size_t value = 0;
  std::string_view text(env);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) return kDefault;
  return value;
}

}  // namespace blockdag
