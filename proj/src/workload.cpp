// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "blockdag/workload.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "blockdag/families.hpp"

namespace blockdag {

std::string_view workload_family_name(WorkloadFamily f) {
  switch (f) {
    case WorkloadFamily::wallet: return "wallet";
    case WorkloadFamily::intkey: return "intkey";
    case WorkloadFamily::voting: return "voting";
    case WorkloadFamily::insurance: return "insurance";
    case WorkloadFamily::mixed: return "mixed";
  }
  return "unknown";
}

std::optional<WorkloadFamily> workload_family_from_name(std::string_view name) {
  for (auto f : {WorkloadFamily::wallet, WorkloadFamily::intkey, WorkloadFamily::voting, WorkloadFamily::insurance,
                 WorkloadFamily::mixed})
    if (workload_family_name(f) == name) return f;
  return std::nullopt;
}

void validate(const WorkloadSpec& spec) {
  if (spec.txns_per_block == 0) throw std::invalid_argument("txns_per_block must be positive");
  if (spec.num_blocks == 0) throw std::invalid_argument("num_blocks must be positive");
  if (spec.dependency_pct > 100) throw std::invalid_argument("dependency_pct must be within [0, 100]");
}

namespace {

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t ordinal) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(ordinal), static_cast<std::uint32_t>(ordinal >> 32)};
    engine_.seed(seq);
  }
  // Uniform-ish in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }
  // Index into cumulative weights.
  std::size_t weighted(std::initializer_list<unsigned> weights) {
    auto total = std::accumulate(weights.begin(), weights.end(), 0u);
    auto r = below(total);
    std::size_t k = 0;
    for (auto w : weights) {
      if (r < w) return k;
      r -= w;
      ++k;
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 engine_;
};

// Hot-pool assignment for one family's transactions within a block.
struct PoolPlan {
  std::vector<std::optional<std::size_t>> slot;  // per group position
  std::size_t pool_size = 1;
};

PoolPlan plan_pool(std::size_t group_size, unsigned pct, Rng& rng) {
  PoolPlan plan;
  plan.slot.assign(group_size, std::nullopt);
  const auto hot = (group_size * pct + 50) / 100;
  if (hot == 0) return plan;
  const std::size_t users_per_address = 2 + (8 * pct) / 100;
  plan.pool_size = std::max<std::size_t>(1, hot / users_per_address);
  std::vector<std::size_t> order(group_size);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  for (std::size_t k = 0; k < hot; ++k) plan.slot[order[k]] = k % plan.pool_size;
  return plan;
}

std::string hot_name(std::size_t slot) { return "h" + std::to_string(slot); }

std::string fresh_name(std::size_t ordinal, std::size_t index, std::string_view suffix = {}) {
  return "b" + std::to_string(ordinal) + "t" + std::to_string(index) + std::string(suffix);
}

insurance::Record make_record(Rng& rng) {
  static constexpr const char* kNames[] = {"ada", "grace", "linus", "barbara", "ken", "edsger"};
  static constexpr const char* kCities[] = {"hyderabad", "oslo", "lima", "kyoto"};
  return {kNames[rng.below(6)], std::to_string(1 + rng.below(999)) + " main st", kCities[rng.below(4)]};
}

}  // namespace

Block generate_block(const WorkloadSpec& spec, std::size_t ordinal) {
  validate(spec);
  Rng rng(spec.rng_seed, ordinal);
  const auto n = spec.txns_per_block;
  const unsigned pct = spec.dependency_pct;

  std::vector<Family> families(n);
  if (spec.family == WorkloadFamily::mixed) {
    std::vector<Family> order{Family::wallet, Family::intkey, Family::voting, Family::insurance};
    rng.shuffle(order);
    for (std::size_t i = 0; i < n; ++i) families[i] = order[i % order.size()];
  } else {
    std::fill(families.begin(), families.end(), static_cast<Family>(static_cast<std::uint8_t>(spec.family)));
  }

  // Group positions per family, then hot-pool plans.
  std::vector<std::size_t> group_pos(n);
  std::array<std::size_t, 4> group_size{};
  for (std::size_t i = 0; i < n; ++i) group_pos[i] = group_size[static_cast<std::size_t>(families[i])]++;
  std::array<PoolPlan, 4> plans;
  for (std::size_t f = 0; f < 4; ++f) plans[f] = plan_pool(group_size[f], pct, rng);

  // Voting ignores hotness; pct only scales its voter and party pools.
  const std::size_t voter_pool = std::max<std::size_t>(2, (group_size[2] * (100 - pct)) / 100 + 2);
  const std::size_t party_pool = 2 + (8 * (100 - pct)) / 100;

  std::set<std::size_t> written_slots;  // insurance slots that already have a writer
  std::vector<TxnDraft> drafts;
  drafts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto fam = families[i];
    const auto& plan = plans[static_cast<std::size_t>(fam)];
    const auto slot = plan.slot[group_pos[i]];
    const auto primary = slot ? hot_name(*slot) : fresh_name(ordinal, i);
    switch (fam) {
      case Family::wallet: {
        const auto amount = 1 + rng.below(200);
        switch (rng.weighted({1, 3, 3, 3})) {
          case 0: drafts.push_back(wallet::create(primary)); break;
          case 1: drafts.push_back(wallet::deposit(primary, amount)); break;
          case 2: drafts.push_back(wallet::withdraw(primary, amount)); break;
          default: {
            std::string dst = slot && plan.pool_size > 1
                                  ? hot_name((*slot + 1 + rng.below(plan.pool_size - 1)) % plan.pool_size)
                                  : fresh_name(ordinal, i, "d");
            drafts.push_back(wallet::transfer(primary, dst, amount));
          }
        }
        break;
      }
      case Family::intkey: {
        const auto v = 1 + rng.below(50);
        switch (rng.weighted({1, 3, 3})) {
          case 0: drafts.push_back(intkey::set(primary, v)); break;
          case 1: drafts.push_back(intkey::inc(primary, v)); break;
          default: drafts.push_back(intkey::dec(primary, v)); break;
        }
        break;
      }
      case Family::voting: {
        const auto voter = "v" + std::to_string(rng.below(voter_pool));
        const auto party = "p" + std::to_string(rng.below(party_pool));
        switch (rng.weighted({1, 2, 5})) {
          case 0: drafts.push_back(voting::create_party(party + "x" + std::to_string(i))); break;
          case 1: drafts.push_back(voting::add_voter(voter + "x" + std::to_string(i))); break;
          default: drafts.push_back(voting::vote(voter, party)); break;
        }
        break;
      }
      case Family::insurance: {
        std::size_t op;
        if (!slot) {
          op = rng.weighted({1, 2, 2});
        } else {
          // Each hot record gets a writer first, so every sharer conflicts.
          op = written_slots.insert(*slot).second ? 1 : 1 + rng.below(2);
        }
        switch (op) {
          case 0: drafts.push_back(insurance::create_record(primary, make_record(rng))); break;
          case 1: drafts.push_back(insurance::update_record(primary, make_record(rng))); break;
          default: drafts.push_back(insurance::read_record(primary)); break;
        }
        break;
      }
    }
  }
  return Block::assemble(std::move(drafts));
}

std::vector<Block> generate_blocks(const WorkloadSpec& spec) {
  validate(spec);
  std::vector<Block> blocks;
  blocks.reserve(spec.num_blocks);
  for (std::size_t k = 0; k < spec.num_blocks; ++k) blocks.push_back(generate_block(spec, k));
  return blocks;
}

StateEntries genesis_state(const Block& block) {
  StateEntries genesis;
  std::set<Address> seen;
  TallyMap voters, parties;
  std::set<std::string> added_voters, added_parties;

  for (const auto& t : block.transactions()) {
    const auto& p = t.payload;
    switch (p.family) {
      case Family::wallet:
      case Family::intkey:
      case Family::insurance: {
        const bool creates = (p.family == Family::wallet && p.opcode == static_cast<std::uint8_t>(wallet::Op::create)) ||
                             (p.family == Family::insurance &&
                              p.opcode == static_cast<std::uint8_t>(insurance::Op::create_record));
        std::vector<Address> touched = t.read_set;
        touched.insert(touched.end(), t.write_set.begin(), t.write_set.end());
        for (const auto& a : touched) {
          if (!seen.insert(a).second || creates) continue;
          if (p.family == Family::insurance)
            genesis.emplace(a, insurance::encode_record({"genesis", "1 main st", "oslo"}));
          else
            genesis.emplace(a, encode_u64(1000));
        }
        break;
      }
      case Family::voting: {
        if (p.args.empty()) break;
        if (p.opcode == static_cast<std::uint8_t>(voting::Op::add_voter)) added_voters.insert(p.args[0]);
        if (p.opcode == static_cast<std::uint8_t>(voting::Op::create_party)) added_parties.insert(p.args[0]);
        if (p.opcode == static_cast<std::uint8_t>(voting::Op::vote) && p.args.size() >= 2) {
          if (!added_voters.contains(p.args[0])) voters.emplace(p.args[0], 0);
          if (!added_parties.contains(p.args[1])) parties.emplace(p.args[1], 0);
        }
        break;
      }
    }
  }
  if (!voters.empty() || !parties.empty()) {
    genesis.emplace(voting::voters_address(), encode_tally_map(voters));
    genesis.emplace(voting::parties_address(), encode_tally_map(parties));
  }
  return genesis;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("config: bad number for " + std::string(key) + ": " + std::string(v));
  return out;
}

}  // namespace

WorkloadSpec parse_workload_config(std::string_view text, WorkloadSpec spec) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key == "family") {
      auto f = workload_family_from_name(value);
      if (!f) throw std::invalid_argument("config: unknown family " + std::string(value));
      spec.family = *f;
    } else if (key == "txns_per_block") {
      spec.txns_per_block = parse_number<std::size_t>(key, value);
    } else if (key == "num_blocks") {
      spec.num_blocks = parse_number<std::size_t>(key, value);
    } else if (key == "dependency_pct") {
      spec.dependency_pct = parse_number<unsigned>(key, value);
    } else if (key == "seed") {
      spec.rng_seed = parse_number<std::uint64_t>(key, value);
    } else {
      throw std::invalid_argument("config: unknown key " + std::string(key));
    }
  }
  validate(spec);
  return spec;
}

ConflictMetrics conflict_metrics(const DependencyDag& dag) {
  const auto n = dag.txn_count();
  ConflictMetrics m;
  if (n == 0) return m;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> touched(n, false);
  std::size_t edges = 0;
  std::size_t components = n;
  for (std::size_t i = 0; i < n; ++i) {
    dag.for_each_successor(static_cast<TxnIndex>(i), [&](TxnIndex j) {
      ++edges;
      touched[i] = touched[j] = true;
      auto a = find(i), b = find(j);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    });
  }
  m.cp1 = static_cast<double>(std::count(touched.begin(), touched.end(), true)) / static_cast<double>(n);
  m.cp2 = n < 2 ? 0.0 : static_cast<double>(edges) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
  m.cp3 = components;
  return m;
}

ConflictMetrics conflict_metrics(const Block& block) { return conflict_metrics(brute_force_dag(block)); }

}  // namespace blockdag
