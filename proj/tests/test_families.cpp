// Copyright 2026 The blockdag Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <random>

#include "blockdag/dag.hpp"
#include "blockdag/families.hpp"
#include "blockdag/scheduler.hpp"
#include "test_support.hpp"

using namespace blockdag;

namespace {

std::vector<TxnOutcome> run_serially(const std::vector<TxnDraft>& drafts, StateStore& store) {
  auto block = Block::assemble(drafts);
  std::vector<TxnOutcome> out;
  for (const auto& t : block.transactions()) out.push_back(apply_transaction(t, store));
  return out;
}

}  // namespace

TEST_CASE("wallet arithmetic") {
  StateStore s;
  auto r = run_serially({wallet::create("A"), wallet::deposit("A", 100), wallet::withdraw("A", 30)}, s);
  CHECK(r == std::vector<TxnOutcome>(3, TxnOutcome::success));
  CHECK(wallet::balance(s, "A") == 70u);
}

TEST_CASE("wallet overdraft fails without changing state") {
  StateStore s;
  run_serially({wallet::create("A")}, s);
  auto before = state_digest(s);
  CHECK(run_serially({wallet::withdraw("A", 10)}, s).front() == TxnOutcome::logical_failure);
  CHECK(wallet::balance(s, "A") == 0u);
  CHECK(state_digest(s) == before);
}

TEST_CASE("wallet transfer") {
  StateStore s;
  run_serially({wallet::create("A"), wallet::create("B"), wallet::deposit("A", 50), wallet::deposit("B", 7)}, s);
  CHECK(run_serially({wallet::transfer("A", "B", 50)}, s).front() == TxnOutcome::success);
  CHECK(wallet::balance(s, "A") == 0u);
  CHECK(wallet::balance(s, "B") == 57u);
  CHECK(run_serially({wallet::transfer("A", "B", 1)}, s).front() == TxnOutcome::logical_failure);
}

TEST_CASE("wallet guards") {
  StateStore s;
  CHECK(run_serially({wallet::deposit("ghost", 1)}, s).front() == TxnOutcome::logical_failure);
  run_serially({wallet::create("A")}, s);
  CHECK(run_serially({wallet::create("A")}, s).front() == TxnOutcome::logical_failure);
  run_serially({wallet::deposit("A", std::numeric_limits<std::uint64_t>::max())}, s);
  CHECK(run_serially({wallet::deposit("A", 1)}, s).front() == TxnOutcome::logical_failure);
}

TEST_CASE("intkey arithmetic and guard") {
  StateStore s;
  auto r = run_serially({intkey::set("k", 5), intkey::inc("k", 2), intkey::dec("k", 3)}, s);
  CHECK(r == std::vector<TxnOutcome>(3, TxnOutcome::success));
  CHECK(intkey::value(s, "k") == 4u);
  CHECK(run_serially({intkey::inc("absent", 1)}, s).front() == TxnOutcome::logical_failure);
  CHECK(run_serially({intkey::dec("k", 5)}, s).front() == TxnOutcome::logical_failure);
}

TEST_CASE("intkey increments on different keys commute in parallel") {
  auto block = Block::assemble({intkey::inc("a", 1), intkey::inc("b", 1)});
  StateEntries genesis{{intkey::key_address("a"), encode_u64(10)}, {intkey::key_address("b"), encode_u64(20)}};
  StateStore serial_store(genesis), parallel_store(genesis);
  auto serial = execute_block_serial(block, serial_store, default_processor());
  auto dag = build_dag(block, 2, DagVariant::matrix);
  CHECK(dag.edge_count() == 0);
  auto parallel = execute_block_parallel(block, dag, parallel_store, {2}, default_processor());
  CHECK(parallel.txn_successes == 2);
  CHECK(parallel.final_digest == serial.final_digest);
}

TEST_CASE("voting semantics") {
  StateStore s;
  auto r = run_serially({voting::create_party("P"), voting::add_voter("V"), voting::vote("V", "P")}, s);
  CHECK(r == std::vector<TxnOutcome>(3, TxnOutcome::success));
  CHECK(voting::tally(s, "P") == 1u);
  CHECK(run_serially({voting::vote("V", "P")}, s).front() == TxnOutcome::logical_failure);
  CHECK(run_serially({voting::vote("stranger", "P")}, s).front() == TxnOutcome::logical_failure);
  CHECK(voting::tally(s, "P") == 1u);
}

TEST_CASE("any two voting transactions are DAG-connected") {
  auto block = Block::assemble({voting::create_party("P"), voting::add_voter("V"), voting::vote("W", "Q")});
  auto dag = build_dag(block, 1, DagVariant::matrix);
  CHECK(dag.has_edge(0, 1));
  CHECK(dag.has_edge(0, 2));
  CHECK(dag.has_edge(1, 2));
}

TEST_CASE("insurance semantics") {
  StateStore s;
  insurance::Record first{"ada", "1 main", "oslo"}, second{"ada", "2 side", "lima"};
  auto r = run_serially({insurance::create_record("r1", first), insurance::update_record("r1", second),
                         insurance::read_record("r1")},
                        s);
  CHECK(r == std::vector<TxnOutcome>(3, TxnOutcome::success));
  CHECK(insurance::record(s, "r1") == second);
  CHECK(run_serially({insurance::update_record("absent", first)}, s).front() == TxnOutcome::logical_failure);
  CHECK(run_serially({insurance::create_record("r1", first)}, s).front() == TxnOutcome::logical_failure);
}

TEST_CASE("insurance reads of one record share no edge") {
  auto block = Block::assemble({insurance::read_record("r"), insurance::read_record("r")});
  CHECK_FALSE(conflicts(block[0], block[1]));
  CHECK(build_dag(block, 1, DagVariant::matrix).edge_count() == 0);
}

TEST_CASE("malformed payloads fail logically") {
  StateStore s;
  Transaction t;
  t.payload = Payload{Family::wallet, 9, {"A"}};
  t.read_set = t.write_set = {wallet::account_address("A")};
  CHECK(apply_transaction(t, s) == TxnOutcome::logical_failure);
  t.payload = Payload{Family::intkey, 1, {}};
  CHECK(apply_transaction(t, s) == TxnOutcome::logical_failure);
}

TEST_CASE("family ops only touch declared addresses") {
  // apply_transaction runs through TxnStateView, which throws on any
  // undeclared access, so a clean run over dense random blocks is the check.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto block = testing::random_family_block(rng, 60, 6);
    StateStore s;
    for (const auto& t : block.transactions()) REQUIRE_NOTHROW(apply_transaction(t, s));
  }
}

TEST_CASE("family execution is deterministic") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    auto block = testing::random_family_block(rng, 50, 5);
    StateStore a, b;
    CHECK(execute_block_serial(block, a, default_processor()).final_digest ==
          execute_block_serial(block, b, default_processor()).final_digest);
  }
}

TEST_CASE("wallet transfers conserve the total balance") {
  std::mt19937_64 rng(8);
  std::vector<std::string> accounts{"a", "b", "c", "d"};
  StateStore s;
  std::vector<TxnDraft> setup;
  for (const auto& a : accounts) {
    setup.push_back(wallet::create(a));
    setup.push_back(wallet::deposit(a, 100));
  }
  run_serially(setup, s);
  auto total = [&] {
    std::uint64_t sum = 0;
    for (const auto& a : accounts) sum += *wallet::balance(s, a);
    return sum;
  };
  for (int k = 0; k < 500; ++k) {
    run_serially({wallet::transfer(accounts[rng() % 4], accounts[rng() % 4], rng() % 150)}, s);
    REQUIRE(total() == 400u);
  }
  run_serially({wallet::deposit("a", 5), wallet::withdraw("b", 3)}, s);
  CHECK(total() == 402u);
}
