// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "blockdag/state_store.hpp"

#include <openssl/evp.h>

#include <memory>

namespace blockdag {

StateStore::StateStore(const StateEntries& entries) {
  for (const auto& [k, v] : entries) put(k, v);
}

StateStore::Shard& StateStore::shard_for(const Address& key) {
  return shards_[AddressHash{}(key) % kShards];
}

std::optional<Bytes> StateStore::get(const Address& key) {
  auto& shard = shard_for(key);
  std::lock_guard lock(shard.mutex);
  auto it = shard.entries.find(key);
  if (it == shard.entries.end()) return std::nullopt;
  return it->second;
}

void StateStore::put(const Address& key, Bytes value) {
  auto& shard = shard_for(key);
  std::lock_guard lock(shard.mutex);
  shard.entries.insert_or_assign(key, std::move(value));
}

std::size_t StateStore::size() const {
  std::size_t total = 0;
  for (const auto& shard : shards_) {
    std::lock_guard lock(shard.mutex);
    total += shard.entries.size();
  }
  return total;
}

StateEntries StateStore::snapshot() const {
  StateEntries out;
  for (const auto& shard : shards_) {
    std::lock_guard lock(shard.mutex);
    out.insert(shard.entries.begin(), shard.entries.end());
  }
  return out;
}

namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

void update_framed(EVP_MD_CTX* ctx, const std::string& field) {
  // Length-prefix every field so ("ab","c") and ("a","bc") hash differently.
  std::uint8_t len[8];
  auto n = static_cast<std::uint64_t>(field.size());
  for (int i = 0; i < 8; ++i) len[i] = static_cast<std::uint8_t>(n >> (8 * i));
  EVP_DigestUpdate(ctx, len, sizeof len);
  EVP_DigestUpdate(ctx, field.data(), field.size());
}

}  // namespace

Digest state_digest(const StateEntries& entries) {
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 unavailable");
  for (const auto& [k, v] : entries) {
    update_framed(ctx.get(), k.key());
    update_framed(ctx.get(), v);
  }
  Digest out{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), out.data(), &len);
  return out;
}

Digest state_digest(const StateStore& store) { return state_digest(store.snapshot()); }

std::optional<Bytes> TxnStateView::get(const Address& key) {
  if (!txn_.reads(key) && !txn_.writes(key))
    throw AddressViolation("txn " + std::to_string(txn_.index) + " read undeclared address " + key.key());
  return store_.get(key);
}

void TxnStateView::put(const Address& key, Bytes value) {
  if (!txn_.writes(key))
    throw AddressViolation("txn " + std::to_string(txn_.index) + " wrote undeclared address " + key.key());
  store_.put(key, std::move(value));
}

}  // namespace blockdag
