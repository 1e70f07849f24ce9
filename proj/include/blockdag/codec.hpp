// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string_view>

#include "blockdag/dag.hpp"
#include "blockdag/model.hpp"

namespace blockdag {

// Binary block format (.blk); the byte layout is documented in
// docs/block-format.md.
inline constexpr std::uint8_t kWireVersion = 0x01;
inline constexpr std::uint8_t kFlagSharedDag = 0x01;

enum class CodecErrorKind : std::uint8_t { truncated, bad_checksum, bad_version, out_of_range, malformed, too_large };

std::string_view codec_error_name(CodecErrorKind k);

class CodecError : public std::runtime_error {
 public:
  CodecError(CodecErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(codec_error_name(kind)) + ": " + what), kind_(kind) {}
  CodecErrorKind kind() const noexcept { return kind_; }

 private:
  CodecErrorKind kind_;
};

// With a dag, its predecessor lists and indegrees become the shared DAG
// section; without one, the block's own shared DAG (if any) is written.
// Throws CodecError(too_large) above max_block_txns().
Bytes serialize_block(const Block& block, const DependencyDag* dag = nullptr);

Block parse_block(std::string_view bytes);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace blockdag
