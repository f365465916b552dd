#include <gtest/gtest.h>

#include <filesystem>

#include "random_walk.hpp"
#include "transition_model.hpp"

namespace {

std::string table_path() {
  return (std::filesystem::path(TRADELEDGER_SOURCE_DIR) / "data" / "transition_table.csv").string();
}

}  // namespace

TEST(TransitionTable, ImplementationAgreesToDepthSix) {
  const auto table = oracle::TransitionTable::load(table_path());
  EXPECT_GT(table.size(), 500u);
  const auto result = oracle::check_all(table, 6);
  EXPECT_GT(result.transitions, 3'000u);
  for (const auto& m : result.mismatches) ADD_FAILURE() << m;
}

TEST(TransitionTable, ShallowDepthStillCoversEveryAction) {
  const auto table = oracle::TransitionTable::load(table_path());
  const auto result = oracle::check_all(table, 1);
  EXPECT_TRUE(result.mismatches.empty());
  EXPECT_GT(result.transitions, 0u);
}

TEST(RandomWalk, SafetyHolds) {
  const auto stats = oracle::random_walks(20211015, 2'000, 40);
  for (const auto& v : stats.violations) ADD_FAILURE() << v;
  EXPECT_EQ(stats.sequences, 2'000u);
  EXPECT_GT(stats.unauthorized, 0u);
  EXPECT_GT(stats.views, 0u);
  EXPECT_GT(stats.completed_credits, 0u);
  EXPECT_GT(stats.received_orders, 0u);
}
