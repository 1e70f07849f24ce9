// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails. `--criterion N` runs only N.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "blockdag/bench.hpp"
#include "blockdag/codec.hpp"
#include "blockdag/scheduler.hpp"
#include "blockdag/smart_validator.hpp"
#include "blockdag/tree_scheduler.hpp"
#include "blockdag/workload.hpp"
#include "test_support.hpp"

using namespace blockdag;

namespace {

// Tolerances.
constexpr double kSpeedupRatio = 0.8;     // adj-dag mean <= ratio * serial mean
constexpr double kValidateSlack = 2.0;    // validate mean <= slack * build mean
constexpr unsigned kConstrainedCores = 4;  // below this, timing criterion 6 only warns

constexpr WorkloadFamily kFamilies[] = {WorkloadFamily::wallet, WorkloadFamily::intkey, WorkloadFamily::voting,
                                        WorkloadFamily::insurance, WorkloadFamily::mixed};
constexpr unsigned kWorkerCounts[] = {1, 2, 4, 8};

struct Outcome {
  enum Kind { pass, fail, warn } kind = pass;
  std::string detail;
};

Outcome failed(std::string detail) { return {Outcome::fail, std::move(detail)}; }

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Block k of the serializability suite cycles through the family x n x pct grid.
WorkloadSpec grid_spec(std::size_t k) {
  static constexpr std::size_t kSizes[] = {10, 50, 200, 1000};
  static constexpr unsigned kPcts[] = {0, 20, 60, 100};
  WorkloadSpec spec;
  spec.family = kFamilies[k % 5];
  spec.txns_per_block = kSizes[(k / 5) % 4];
  spec.dependency_pct = kPcts[(k / 20) % 4];
  spec.rng_seed = 1000 + k;
  return spec;
}

// Runs the 500-block parallel-vs-serial suite. Returns the number of digest
// mismatches and of schedules that violate an edge.
struct SerializabilityTally {
  std::size_t runs = 0;
  std::size_t digest_mismatches = 0;
  std::size_t order_violations = 0;
  std::string first_problem;
};

SerializabilityTally run_serializability_suite() {
  SerializabilityTally tally;
  const auto processor = default_processor();
  auto note = [&](std::string what) {
    if (tally.first_problem.empty()) tally.first_problem = std::move(what);
  };
  for (std::size_t k = 0; k < 500; ++k) {
    const auto spec = grid_spec(k);
    const auto block = generate_block(spec);
    const auto genesis = genesis_state(block);
    StateStore ref(genesis);
    const auto serial = execute_block_serial(block, ref, processor);
    const auto oracle = brute_force_dag(block);
    const auto tree = build_tree(block);
    auto check = [&](const ExecutionReport& report, std::string_view strategy, unsigned w) {
      ++tally.runs;
      std::string where = std::string(strategy) + " block " + std::to_string(k) + " workers " + std::to_string(w);
      if (!report.ok() || report.final_digest != serial.final_digest) {
        ++tally.digest_mismatches;
        note(where + (report.ok() ? ": digest mismatch" : ": " + *report.failure));
      }
      if (report.schedule.size() != block.txn_count() || !respects_dag(report.schedule, oracle)) {
        ++tally.order_violations;
        note(where + ": schedule violates an edge");
      }
    };
    for (unsigned w : kWorkerCounts) {
      for (auto variant : {DagVariant::matrix, DagVariant::linked_list}) {
        auto dag = build_dag(block, w, variant);
        StateStore store(genesis);
        check(execute_block_parallel(block, dag, store, {w}, processor),
              variant == DagVariant::matrix ? "adj-dag" : "ll-dag", w);
      }
      StateStore store(genesis);
      check(execute_block_tree(block, tree, store, {w}, processor), "tree", w);
    }
  }
  return tally;
}

Outcome criterion_serializability() {
  auto t = run_serializability_suite();
  if (t.digest_mismatches) return failed(std::to_string(t.digest_mismatches) + " digest mismatches; " + t.first_problem);
  return {Outcome::pass, std::to_string(t.runs) + " parallel runs over 500 blocks match serial"};
}

Outcome criterion_topological() {
  auto t = run_serializability_suite();
  if (t.order_violations) return failed(std::to_string(t.order_violations) + " bad schedules; " + t.first_problem);
  return {Outcome::pass, std::to_string(t.runs) + " schedules respect every edge"};
}

Outcome criterion_dag_oracle() {
  std::mt19937_64 rng(2024);
  std::size_t comparisons = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = 1 + testing::draw(rng, 128);
    const auto block = testing::random_rw_block(rng, n, 2 + testing::draw(rng, 2 * n));
    const auto expected = testing::oracle_edges(block);
    if (testing::edge_set(brute_force_dag(block)) != expected)
      return failed("brute_force_dag disagrees with the set oracle on block " + std::to_string(trial));
    for (auto variant : {DagVariant::matrix, DagVariant::linked_list}) {
      for (unsigned w : kWorkerCounts) {
        ++comparisons;
        if (testing::edge_set(build_dag(block, w, variant)) != expected)
          return failed(std::string(variant_name(variant)) + " workers " + std::to_string(w) + " differs on block " +
                        std::to_string(trial));
      }
    }
  }
  return {Outcome::pass, std::to_string(comparisons) + " builds equal the oracle on 300 blocks"};
}

Outcome criterion_validator() {
  constexpr unsigned kValidatorWorkers[] = {1, 2, 8};
  std::mt19937_64 rng(77);
  std::size_t honest = 0, missing_tested = 0, missing_caught = 0, extra_tested = 0, extra_caught = 0;
  std::size_t worker_disagreements = 0;
  auto verdict_all = [&](const Block& b, const AddressAccessIndex& index) {
    Verdict first = validate_dag(b, index, kValidatorWorkers[0]);
    for (std::size_t k = 1; k < std::size(kValidatorWorkers); ++k)
      if (validate_dag(b, index, kValidatorWorkers[k]) != first) ++worker_disagreements;
    return first;
  };
  for (std::size_t k = 0; k < 200; ++k) {
    WorkloadSpec spec;
    spec.family = kFamilies[k % 5];
    spec.txns_per_block = 2 + testing::draw(rng, 300);
    spec.dependency_pct = static_cast<unsigned>(testing::draw(rng, 101));
    spec.rng_seed = 5000 + k;
    const auto plain = generate_block(spec);
    const auto dag = build_dag(plain, 2, DagVariant::matrix);
    const auto block = share_dag(plain, dag);
    const auto index = build_access_index(block);
    if (verdict_all(block, index) == Verdict::honest) ++honest;

    const auto edges = dag.edges();
    if (!edges.empty()) {
      ++missing_tested;
      const auto victim = edges[testing::draw(rng, edges.size())];
      if (verdict_all(drop_shared_edge(block, victim), index) == Verdict::malicious_missing_edge) ++missing_caught;
    }
    std::vector<Edge> absent;
    for (TxnIndex j = 1; j < plain.txn_count(); ++j)
      for (TxnIndex i = 0; i < j; ++i)
        if (!dag.has_edge(i, j)) absent.emplace_back(i, j);
    if (!absent.empty()) {
      ++extra_tested;
      const auto spurious = absent[testing::draw(rng, absent.size())];
      if (verdict_all(add_shared_edge(block, spurious), index) == Verdict::malicious_extra_edge) ++extra_caught;
    }
  }
  const std::string detail = "honest " + std::to_string(honest) + "/200, missing " + std::to_string(missing_caught) +
                             "/" + std::to_string(missing_tested) + ", extra " + std::to_string(extra_caught) + "/" +
                             std::to_string(extra_tested) + ", worker disagreements " +
                             std::to_string(worker_disagreements);
  const bool ok = honest == 200 && missing_caught == missing_tested && extra_caught == extra_tested &&
                  missing_tested > 0 && extra_tested > 0 && worker_disagreements == 0;
  return {ok ? Outcome::pass : Outcome::fail, detail};
}

Outcome criterion_speedup() {
  ExperimentPlan plan;
  plan.axis = Axis::txns_per_block;
  plan.values = {1000};
  plan.base = {WorkloadFamily::wallet, 1000, 1, 20, 1};
  plan.strategies = {Strategy::serial, Strategy::adj_dag};
  plan.repetitions = 5;
  plan.workers = 4;
  plan.sim_work = std::chrono::microseconds(100);
  const auto rows = run_experiment(plan);
  const double serial = rows[0].mean_ms, adj = rows[1].mean_ms;
  char buf[200];
  std::snprintf(buf, sizeof buf, "adj-dag %.1f ms vs serial %.1f ms (ratio %.3f, limit %.2f, %u hardware threads)", adj,
                serial, adj / serial, kSpeedupRatio, std::thread::hardware_concurrency());
  return {adj <= kSpeedupRatio * serial ? Outcome::pass : Outcome::fail, buf};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

Outcome criterion_validation_cost() {
  constexpr int kReps = 9;
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::string> misses;
  std::size_t configs = 0;
  for (auto fam : kFamilies) {
    for (std::size_t n : {200u, 1000u}) {
      for (unsigned pct : {0u, 50u, 100u}) {
        ++configs;
        const auto plain = generate_block({fam, n, 1, pct, 31});
        const auto shared = share_dag(plain, build_dag(plain, workers, DagVariant::matrix));
        std::vector<double> build_ms, validate_ms;
        for (int rep = 0; rep < kReps; ++rep) {
          auto t0 = Clock::now();
          auto dag = build_dag(plain, workers, DagVariant::matrix);
          build_ms.push_back(ms_since(t0));
          t0 = Clock::now();
          auto verdict = validate_dag(shared, build_access_index(shared), workers);
          validate_ms.push_back(ms_since(t0));
          if (verdict != Verdict::honest) return failed("honest block rejected");
        }
        const double mean_b = std::accumulate(build_ms.begin(), build_ms.end(), 0.0) / kReps;
        const double mean_v = std::accumulate(validate_ms.begin(), validate_ms.end(), 0.0) / kReps;
        if (mean_v > kValidateSlack * mean_b || median(validate_ms) >= median(build_ms)) {
          char buf[160];
          std::snprintf(buf, sizeof buf, "%s n=%zu pct=%u validate %.3f ms vs build %.3f ms",
                        std::string(workload_family_name(fam)).c_str(), n, pct, mean_v, mean_b);
          misses.emplace_back(buf);
        }
      }
    }
  }
  if (misses.empty()) return {Outcome::pass, std::to_string(configs) + " configurations validate faster than they build"};
  std::string detail = std::to_string(misses.size()) + "/" + std::to_string(configs) + " configurations miss:";
  for (const auto& m : misses) detail += " [" + m + "]";
  if (std::thread::hardware_concurrency() < kConstrainedCores)
    return {Outcome::warn, detail + " (constrained hardware, reported as warning)"};
  return failed(detail);
}

Outcome criterion_voting() {
  std::size_t blocks = 0;
  for (std::size_t n : {2u, 3u, 10u, 50u, 200u, 1000u}) {
    for (unsigned pct : {0u, 20u, 60u, 100u}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ++blocks;
        const auto m = conflict_metrics(generate_block({WorkloadFamily::voting, n, 1, pct, seed}));
        if (m.cp3 != 1)
          return failed("voting block n=" + std::to_string(n) + " pct=" + std::to_string(pct) + " has " +
                        std::to_string(m.cp3) + " components");
      }
    }
  }
  return {Outcome::pass, std::to_string(blocks) + " all-voting blocks form one component"};
}

Outcome criterion_codec() {
  std::mt19937_64 rng(88);
  std::size_t round_trips = 0, rejected = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    WorkloadSpec spec{kFamilies[k % 5], 1 + testing::draw(rng, 400), 1, static_cast<unsigned>(testing::draw(rng, 101)),
                      9000 + k};
    const auto plain = generate_block(spec);
    const auto dag = build_dag(plain, 1, DagVariant::linked_list);
    const Block block = k % 2 ? share_dag(plain, dag) : plain;
    const auto bytes = serialize_block(block);
    const auto parsed = parse_block(bytes);
    if (parsed == block && serialize_block(parsed) == bytes) ++round_trips;

    auto corrupt = bytes;
    const auto pos = testing::draw(rng, corrupt.size());
    corrupt[pos] = static_cast<char>(static_cast<std::uint8_t>(corrupt[pos]) ^ (1 + testing::draw(rng, 255)));
    try {
      parse_block(corrupt);
    } catch (const CodecError&) {
      ++rejected;
    }
  }
  const std::string detail =
      "round trips " + std::to_string(round_trips) + "/100, corruptions rejected " + std::to_string(rejected) + "/100";
  return {round_trips == 100 && rejected == 100 ? Outcome::pass : Outcome::fail, detail};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

constexpr Criterion kCriteria[] = {
    {1, "parallel execution equals serial", criterion_serializability},
    {2, "DAG builders equal the brute-force oracle", criterion_dag_oracle},
    {3, "validator adversarial suite", criterion_validator},
    {4, "schedules are topological", criterion_topological},
    {5, "adj-dag speedup over serial", criterion_speedup},
    {6, "validation cheaper than construction", criterion_validation_cost},
    {7, "voting blocks are fully connected", criterion_voting},
    {8, "codec round trip and corruption", criterion_codec},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 64;
    }
  }
  if (only < 0 || only > static_cast<int>(std::size(kCriteria))) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 64;
  }
  int failures = 0;
  for (const auto& c : kCriteria) {
    if (only && c.id != only) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = failed(std::string("exception: ") + e.what());
    }
    const char* tag = o.kind == Outcome::pass ? "PASS" : o.kind == Outcome::warn ? "WARN" : "FAIL";
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", tag, c.id, c.name, o.detail.c_str(), ms_since(t0) / 1000.0);
    std::fflush(stdout);
    if (o.kind == Outcome::fail) ++failures;
  }
  return failures ? 1 : 0;
}
