// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blockdag/dag.hpp"
#include "blockdag/model.hpp"
#include "blockdag/state_store.hpp"

namespace blockdag {

enum class WorkloadFamily : std::uint8_t { wallet, intkey, voting, insurance, mixed };

std::string_view workload_family_name(WorkloadFamily f);
std::optional<WorkloadFamily> workload_family_from_name(std::string_view name);

// dependency_pct is the percentage of transactions whose primary address is
// drawn from a small hot pool instead of being fresh. Each hot address is
// shared by 2 + floor(8 * pct / 100) transactions, so the pool shrinks
// relative to the hot set as pct grows; at 0 every txn gets its own address
// (voting excepted: its coarse address sets conflict regardless).
struct WorkloadSpec {
  WorkloadFamily family = WorkloadFamily::wallet;
  std::size_t txns_per_block = 200;
  std::size_t num_blocks = 1;
  unsigned dependency_pct = 20;
  std::uint64_t rng_seed = 1;

  friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

// Throws std::invalid_argument on zero transactions/blocks or pct > 100.
void validate(const WorkloadSpec& spec);

// Deterministic in (spec, ordinal).
Block generate_block(const WorkloadSpec& spec, std::size_t ordinal = 0);
std::vector<Block> generate_blocks(const WorkloadSpec& spec);

// Initial state under which the block's operations mostly succeed: every
// address a transaction touches before any creating op is pre-populated.
StateEntries genesis_state(const Block& block);

// Reads key=value lines ('#' starts a comment) into a spec. Known keys:
// family, txns_per_block, num_blocks, dependency_pct, seed.
WorkloadSpec parse_workload_config(std::string_view text, WorkloadSpec base = {});

struct ConflictMetrics {
  double cp1 = 0.0;      // fraction of txns with at least one dependency
  double cp2 = 0.0;      // |E| / (n(n-1)/2)
  std::size_t cp3 = 0;   // weakly connected components
};

ConflictMetrics conflict_metrics(const DependencyDag& dag);
ConflictMetrics conflict_metrics(const Block& block);

}  // namespace blockdag
