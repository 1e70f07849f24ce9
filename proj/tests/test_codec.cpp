// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>

#include <zlib.h>

#include "blockdag/codec.hpp"
#include "blockdag/workload.hpp"
#include "test_support.hpp"

using namespace blockdag;

namespace {

CodecErrorKind parse_error(std::string_view bytes) {
  try {
    parse_block(bytes);
  } catch (const CodecError& e) {
    return e.kind();
  }
  FAIL("parse unexpectedly succeeded");
  return CodecErrorKind::malformed;
}

void put_u32(Bytes& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

void seal_crc(Bytes& out) {
  put_u32(out, static_cast<std::uint32_t>(
                   crc32(0, reinterpret_cast<const Bytef*>(out.data()), static_cast<uInt>(out.size()))));
}

// Hand-encoded single-address write transaction with the given deps.
void put_txn(Bytes& out, std::uint32_t index, std::initializer_list<std::uint32_t> deps) {
  put_u32(out, index);
  out.push_back(static_cast<char>(Family::intkey));
  out.push_back(static_cast<char>(0xff));
  put_u32(out, 0);  // argc
  put_u32(out, 0);  // reads
  put_u32(out, 1);  // writes
  put_u32(out, 1);
  out.push_back('k');
  put_u32(out, static_cast<std::uint32_t>(deps.size()));
  for (auto d : deps) put_u32(out, d);
}

struct EnvGuard {
  explicit EnvGuard(const char* value) { ::setenv("BLOCKDAG_MAX_TXNS", value, 1); }
  ~EnvGuard() { ::unsetenv("BLOCKDAG_MAX_TXNS"); }
};

}  // namespace

TEST_CASE("round trip preserves blocks with and without a shared DAG") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    auto block = testing::random_family_block(rng, testing::draw(rng, 120), 2 + testing::draw(rng, 20));
    auto bytes = serialize_block(block);
    CHECK(static_cast<std::uint8_t>(bytes[1]) == 0);
    REQUIRE(parse_block(bytes) == block);

    auto dag = build_dag(block, 2, DagVariant::linked_list);
    auto shared_bytes = serialize_block(block, &dag);
    CHECK(static_cast<std::uint8_t>(shared_bytes[1]) == kFlagSharedDag);
    auto shared = parse_block(shared_bytes);
    REQUIRE(shared == share_dag(block, dag));
    REQUIRE(serialize_block(shared) == shared_bytes);
    REQUIRE(serialize_block(block, &dag) == shared_bytes);
  }
}

TEST_CASE("header layout") {
  auto block = generate_block({WorkloadFamily::wallet, 3, 1, 0, 1});
  auto bytes = serialize_block(block);
  CHECK(static_cast<std::uint8_t>(bytes[0]) == kWireVersion);
  CHECK(bytes.substr(2, 4) == std::string("\x03\x00\x00\x00", 4));
}

TEST_CASE("hand-encoded block parses") {
  Bytes bytes{static_cast<char>(kWireVersion), static_cast<char>(kFlagSharedDag)};
  put_u32(bytes, 2);
  put_txn(bytes, 0, {});
  put_txn(bytes, 1, {0});
  put_u32(bytes, 0);
  put_u32(bytes, 1);
  seal_crc(bytes);
  auto block = parse_block(bytes);
  REQUIRE(block.txn_count() == 2);
  CHECK(block[1].declared_dependencies == std::vector<TxnIndex>{0});
  CHECK(*block.shared_indegree() == std::vector<std::uint32_t>{0, 1});
  CHECK(block[0].write_set == std::vector<Address>{Address("k")});
}

TEST_CASE("forward dependency is out of range") {
  Bytes bytes{static_cast<char>(kWireVersion), static_cast<char>(kFlagSharedDag)};
  put_u32(bytes, 2);
  put_txn(bytes, 0, {1});
  put_txn(bytes, 1, {});
  put_u32(bytes, 0);
  put_u32(bytes, 1);
  seal_crc(bytes);
  CHECK(parse_error(bytes) == CodecErrorKind::out_of_range);
}

TEST_CASE("structural errors") {
  auto block = generate_block({WorkloadFamily::intkey, 20, 1, 50, 3});
  auto dag = build_dag(block, 1, DagVariant::matrix);
  auto bytes = serialize_block(block, &dag);

  SUBCASE("truncation at every length") {
    for (std::size_t len = 0; len < bytes.size(); ++len)
      REQUIRE(parse_error(std::string_view(bytes).substr(0, len)) == CodecErrorKind::truncated);
  }
  SUBCASE("bad version") {
    auto copy = bytes;
    copy[0] = 0x02;
    CHECK(parse_error(copy) == CodecErrorKind::bad_version);
  }
  SUBCASE("trailing bytes") {
    auto copy = bytes;
    copy.insert(copy.size() - 4, "zz");
    CHECK_THROWS_AS(parse_block(copy), CodecError);
  }
  SUBCASE("checksum") {
    auto copy = bytes;
    copy.back() ^= 0x01;
    CHECK(parse_error(copy) == CodecErrorKind::bad_checksum);
  }
}

TEST_CASE("every single-byte corruption is rejected") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    auto block = testing::random_family_block(rng, 1 + testing::draw(rng, 60), 8);
    auto dag = build_dag(block, 1, DagVariant::matrix);
    auto bytes = serialize_block(block, &dag);
    auto pos = testing::draw(rng, bytes.size());
    bytes[pos] = static_cast<char>(static_cast<std::uint8_t>(bytes[pos]) ^ (1 + testing::draw(rng, 255)));
    REQUIRE_THROWS_AS(parse_block(bytes), CodecError);
  }
}

TEST_CASE("oversized blocks") {
  auto block = generate_block({WorkloadFamily::intkey, 10, 1, 0, 1});
  auto bytes = serialize_block(block);
  EnvGuard guard("8");
  try {
    serialize_block(block);
    FAIL("expected too_large");
  } catch (const CodecError& e) {
    CHECK(e.kind() == CodecErrorKind::too_large);
  }
  CHECK(parse_error(bytes) == CodecErrorKind::too_large);
}

TEST_CASE("file helpers") {
  auto path = std::filesystem::temp_directory_path() / "blockdag_codec_test.blk";
  auto bytes = serialize_block(generate_block({WorkloadFamily::voting, 30, 1, 10, 2}));
  write_file(path, bytes);
  CHECK(read_file(path) == bytes);
  std::filesystem::remove(path);
  CHECK_THROWS(read_file(path));
}
