// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "blockdag/codec.hpp"

#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <iterator>

namespace blockdag {

std::string_view codec_error_name(CodecErrorKind k) {
  switch (k) {
    case CodecErrorKind::truncated: return "truncated";
    case CodecErrorKind::bad_checksum: return "bad-checksum";
    case CodecErrorKind::bad_version: return "bad-version";
    case CodecErrorKind::out_of_range: return "out-of-range";
    case CodecErrorKind::malformed: return "malformed";
    case CodecErrorKind::too_large: return "too-large";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kChecksumSize = 4;

std::uint32_t crc_of(std::string_view bytes) {
  auto crc = crc32(0L, Z_NULL, 0);
  return static_cast<std::uint32_t>(
      crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void bytes(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  Bytes take() { return std::move(out_); }
  std::string_view view() const { return out_; }

 private:
  Bytes out_;
};

class Reader {
 public:
  // `end` excludes the checksum trailer.
  Reader(std::string_view in, std::size_t end) : in_(in), end_(end) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(in_[pos_++])) << (8 * i);
    return v;
  }
  std::string bytes() {
    auto len = u32();
    need(len);
    std::string s(in_.substr(pos_, len));
    pos_ += len;
    return s;
  }
  // Rejects counts that could not fit in the remaining input.
  std::uint32_t count(std::size_t min_element_size) {
    auto c = u32();
    if (static_cast<std::uint64_t>(c) * min_element_size > end_ - pos_)
      throw CodecError(CodecErrorKind::truncated, "count exceeds remaining input");
    return c;
  }
  bool at_end() const { return pos_ == end_; }

 private:
  void need(std::size_t k) const {
    if (end_ - pos_ < k) throw CodecError(CodecErrorKind::truncated, "unexpected end of input");
  }

  std::string_view in_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

void write_addresses(Writer& w, const std::vector<Address>& addresses) {
  w.u32(static_cast<std::uint32_t>(addresses.size()));
  for (const auto& a : addresses) w.bytes(a.key());
}

std::vector<Address> read_addresses(Reader& r) {
  auto count = r.count(4);
  std::vector<Address> out;
  out.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    auto key = r.bytes();
    if (key.empty()) throw CodecError(CodecErrorKind::malformed, "empty address");
    out.emplace_back(std::move(key));
  }
  if (!std::is_sorted(out.begin(), out.end()) || std::adjacent_find(out.begin(), out.end()) != out.end())
    throw CodecError(CodecErrorKind::malformed, "address set not sorted and unique");
  return out;
}

}  // namespace

Bytes serialize_block(const Block& block, const DependencyDag* dag) {
  const auto n = block.txn_count();
  if (n > max_block_txns())
    throw CodecError(CodecErrorKind::too_large, "block has " + std::to_string(n) + " transactions");
  if (dag != nullptr && dag->txn_count() != n) throw std::invalid_argument("dag does not match block");

  std::vector<std::vector<TxnIndex>> deps;
  std::vector<std::uint32_t> indegree;
  const bool shared = dag != nullptr || block.has_shared_dag();
  if (dag != nullptr) {
    deps = dag->predecessor_lists();
    indegree = dag->sealed_indegrees();
  } else if (block.has_shared_dag()) {
    for (const auto& t : block.transactions()) deps.push_back(t.declared_dependencies);
    indegree = *block.shared_indegree();
  }

  Writer w;
  w.u8(kWireVersion);
  w.u8(shared ? kFlagSharedDag : 0);
  w.u32(static_cast<std::uint32_t>(n));
  for (const auto& t : block.transactions()) {
    w.u32(t.index);
    w.u8(static_cast<std::uint8_t>(t.payload.family));
    w.u8(t.payload.opcode);
    w.u32(static_cast<std::uint32_t>(t.payload.args.size()));
    for (const auto& arg : t.payload.args) w.bytes(arg);
    write_addresses(w, t.read_set);
    write_addresses(w, t.write_set);
    if (shared) {
      const auto& d = deps[t.index];
      w.u32(static_cast<std::uint32_t>(d.size()));
      for (auto p : d) w.u32(p);
    }
  }
  if (shared)
    for (auto d : indegree) w.u32(d);
  w.u32(crc_of(w.view()));
  return w.take();
}

Block parse_block(std::string_view bytes) {
  if (bytes.size() < 2 + 4 + kChecksumSize) throw CodecError(CodecErrorKind::truncated, "input shorter than header");
  const auto body_end = bytes.size() - kChecksumSize;
  Reader r(bytes, body_end);

  if (auto version = r.u8(); version != kWireVersion)
    throw CodecError(CodecErrorKind::bad_version, "unsupported version " + std::to_string(version));
  const auto flags = r.u8();
  if ((flags & ~kFlagSharedDag) != 0) throw CodecError(CodecErrorKind::malformed, "unknown flag bits");
  const bool shared = (flags & kFlagSharedDag) != 0;
  const auto n = r.u32();
  if (n > max_block_txns())
    throw CodecError(CodecErrorKind::too_large, "block declares " + std::to_string(n) + " transactions");

  std::vector<Transaction> txns;
  txns.reserve(std::min<std::size_t>(n, body_end / 18));
  for (std::uint32_t i = 0; i < n; ++i) {
    Transaction t;
    t.index = r.u32();
    if (t.index != i) throw CodecError(CodecErrorKind::out_of_range, "record index does not match position");
    const auto family = r.u8();
    if (family > static_cast<std::uint8_t>(Family::insurance))
      throw CodecError(CodecErrorKind::malformed, "unknown family tag " + std::to_string(family));
    t.payload.family = static_cast<Family>(family);
    t.payload.opcode = r.u8();
    const auto argc = r.count(4);
    for (std::uint32_t k = 0; k < argc; ++k) t.payload.args.push_back(r.bytes());
    t.read_set = read_addresses(r);
    t.write_set = read_addresses(r);
    if (shared) {
      const auto depc = r.count(4);
      for (std::uint32_t k = 0; k < depc; ++k) {
        auto dep = r.u32();
        if (dep >= t.index) throw CodecError(CodecErrorKind::out_of_range, "dependency does not precede its txn");
        t.declared_dependencies.push_back(dep);
      }
    }
    txns.push_back(std::move(t));
  }
  std::optional<std::vector<std::uint32_t>> indegree;
  if (shared) {
    indegree.emplace(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      (*indegree)[i] = r.u32();
      if ((*indegree)[i] >= n) throw CodecError(CodecErrorKind::out_of_range, "shared indegree entry out of range");
    }
  }
  if (!r.at_end()) throw CodecError(CodecErrorKind::malformed, "trailing bytes before checksum");

  std::uint32_t stored = 0;
  for (int i = 0; i < 4; ++i)
    stored |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes[body_end + i])) << (8 * i);
  if (stored != crc_of(bytes.substr(0, body_end))) throw CodecError(CodecErrorKind::bad_checksum, "crc32 mismatch");

  try {
    return Block(std::move(txns), std::move(indegree));
  } catch (const std::invalid_argument& e) {
    throw CodecError(CodecErrorKind::malformed, e.what());
  }
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

}  // namespace blockdag
