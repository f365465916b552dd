#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "tradeledger/gasmodel.hpp"
#include "tradeledger/receipt.hpp"

using namespace tradeledger;

namespace {

ChainConfig defaults() { return ChainConfig{}; }

WeiAmount eth(const char* text) { return WeiAmount::parse_eth(text); }

Receipt receipt_for(ContractKind contract, const std::string& fn, Gas gas, Seconds latency = 15) {
  Receipt r;
  r.contract = contract;
  r.function_name = fn;
  r.gas_used = gas;
  r.fee = fee_wei(gas, defaults());
  r.submit_time_s = 0;
  r.confirm_time_s = latency;
  return r;
}

}  // namespace

TEST(GasFor, TableRows) {
  const auto s = GasSchedule::defaults();
  EXPECT_EQ(s.gas_for("setSalesContract", 0), 106384u);
  EXPECT_EQ(s.gas_for("setSalesContract", 5000), 106384u);
  EXPECT_EQ(s.gas_for("orderExists", 12), 0u);
  EXPECT_EQ(s.gas_for("addOrder", 64), 176983u);
  EXPECT_EQ(s.gas_for("addOrder", 128), 216983u);
  EXPECT_THROW(s.gas_for("transfer", 0), Error);
}

TEST(GasFor, VariableSlopeIsGasPerChar) {
  const auto s = GasSchedule::defaults();
  for (std::size_t n = 0; n < 300; ++n) {
    EXPECT_EQ(s.gas_for("addOrder", n + 1) - s.gas_for("addOrder", n), 625u);
  }
}

TEST(Fee, ExactWei) {
  EXPECT_EQ(fee_wei(106384, defaults()).wei(), 106'384'000'000'000ULL);
  EXPECT_EQ(fee_wei(106384, defaults()).to_eth_string(), "0.000106384");
  EXPECT_EQ(fee_wei(0, defaults()).wei(), 0u);
  EXPECT_EQ(fee_wei(176983, defaults()).to_eth_string(), "0.000176983");
}

TEST(Fee, Linear) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Gas> gas(0, 50'000'000);
  for (int i = 0; i < 1000; ++i) {
    const auto a = gas(rng), b = gas(rng);
    EXPECT_EQ(fee_wei(a + b, defaults()), fee_wei(a, defaults()) + fee_wei(b, defaults()));
  }
}

TEST(Usd, Display) {
  const auto rate = defaults().eth_usd_rate_micro;
  // 0.000106384 * 550.75 = 0.058590988
  EXPECT_EQ(usd_micro(eth("0.000106384"), rate), 58591u);
  EXPECT_EQ(usd_display(usd_micro(eth("0.000106384"), rate)), "0.06");
  EXPECT_EQ(usd_display(0), "0.00");
  // 0.002466648 * 550.75 = 1.358506386
  EXPECT_EQ(usd_micro(eth("0.002466648"), rate), 1'358'506u);
  EXPECT_EQ(usd_display(1'358'506), "1.36");
  EXPECT_EQ(usd_micro_display(1'358'506), "1.358506");
}

TEST(Usd, HalfUpRounding) {
  EXPECT_EQ(usd_display(4'999), "0.00");
  EXPECT_EQ(usd_display(5'000), "0.01");
  EXPECT_EQ(usd_display(1'994'999), "1.99");
  EXPECT_EQ(usd_display(1'995'000), "2.00");
  // fee * rate = 5 * 10^17 is exactly half a micro-dollar.
  EXPECT_EQ(usd_micro(WeiAmount{500'000'000'000'000'000ULL}, 1), 1u);
  EXPECT_EQ(usd_micro(WeiAmount{499'999'999'999'999'999ULL}, 1), 0u);
}

TEST(Quote, Fields) {
  const auto q = quote(45242, defaults());
  EXPECT_EQ(q.gas, 45242u);
  EXPECT_EQ(q.fee_eth_display, "0.000045242");
  // 0.000045242 * 550.75 = 0.0249170315
  EXPECT_EQ(q.usd_micro, 24917u);
}

TEST(Schedule, ViewsAreFree) {
  const auto s = GasSchedule::defaults();
  int views = 0;
  for (const auto& e : s.entries()) {
    if (!e.view) continue;
    ++views;
    EXPECT_EQ(e.base_gas, 0u);
    EXPECT_FALSE(e.variable);
    EXPECT_EQ(usd_display(quote(s.gas_for(e.function, 100), defaults()).usd_micro), "0.00");
  }
  EXPECT_EQ(views, 4);
  EXPECT_EQ(s.entries().size(), 16u);
}

TEST(Schedule, DeployGas) {
  const auto s = GasSchedule::defaults();
  EXPECT_EQ(s.deploy_gas(ContractKind::Sales), 1385540u);
  EXPECT_EQ(s.deploy_gas(ContractKind::Financial), 440383u);
  EXPECT_EQ(s.deploy_gas(ContractKind::LetterOfCredit), 640725u);
}

TEST(Schedule, CsvRoundTripKeepsQuotes) {
  const auto s = GasSchedule::defaults();
  const auto back = GasSchedule::parse_csv(s.to_csv());
  EXPECT_EQ(back, s);
  for (const auto& e : s.entries()) {
    for (std::size_t n : {0u, 64u, 200u}) {
      const auto a = quote(s.gas_for(e.function, n), defaults());
      const auto b = quote(back.gas_for(e.function, n), defaults());
      EXPECT_EQ(a.fee_wei, b.fee_wei);
      EXPECT_EQ(a.usd_micro, b.usd_micro);
    }
  }
}

TEST(Schedule, ShippedFileMatchesDefaults) {
  const auto path = std::filesystem::path(TRADELEDGER_SOURCE_DIR) / "data" / "gas_schedule.csv";
  EXPECT_EQ(GasSchedule::load(path), GasSchedule::defaults());
}

TEST(Schedule, ParseErrors) {
  EXPECT_THROW(GasSchedule::parse_csv(""), Error);
  EXPECT_THROW(GasSchedule::parse_csv("nope\n"), Error);
  auto text = GasSchedule::defaults().to_csv();
  EXPECT_THROW(GasSchedule::parse_csv(text + "Sales,bogus,1,false,0,,false\n"), Error);
  EXPECT_THROW(GasSchedule::parse_csv(text + "Sales,addOrder,1,false\n"), Error);
  // Drop the gas-per-char row: must be > 0.
  const auto cut = text.find("*,GAS_PER_CHAR");
  try {
    GasSchedule::parse_csv(text.substr(0, cut));
    FAIL() << "expected InvalidSchedule";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidSchedule);
  }
}

TEST(ChainConfigFile, ParsesAndDefaults) {
  const auto c = parse_chain_config("# comment\ntps = 30\n\ngas_price_wei=2000000000\n");
  EXPECT_EQ(c.tps, 30u);
  EXPECT_EQ(c.gas_price_wei.wei(), 2'000'000'000u);
  EXPECT_EQ(c.block_interval_s, 15u);
  EXPECT_EQ(c.eth_usd_rate_micro, 550'750'000u);
  EXPECT_EQ(c.block_capacity(), 450u);
  EXPECT_EQ(parse_chain_config(format_chain_config(c)), c);
}

TEST(ChainConfigFile, Rejects) {
  for (const char* bad : {"colour=blue\n", "tps=0\n", "tps=abc\n", "tps\n", "tps=1\ntps=2\n", "block_interval_s=0\n"}) {
    try {
      parse_chain_config(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidConfig) << bad;
    }
  }
}

TEST(ChainConfigFile, ShippedFileIsDefault) {
  const auto path = std::filesystem::path(TRADELEDGER_SOURCE_DIR) / "data" / "chain.conf";
  EXPECT_EQ(load_chain_config(path), ChainConfig{});
}

TEST(CostReport, EmptyReceiptsGiveZeroRows) {
  const auto s = GasSchedule::defaults();
  const auto report = cost_report({}, FeeSource::GasColumn, s, defaults());
  ASSERT_EQ(report.rows.size(), 16u);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.calls, 0u);
    EXPECT_EQ(row.gas, 0u);
    EXPECT_EQ(row.fee.wei(), 0u);
  }
}

TEST(CostReport, RowOrderFollowsTable) {
  const auto s = GasSchedule::defaults();
  const auto report = cost_report({}, FeeSource::GasColumn, s, defaults());
  const char* order[] = {"setSalesContract", "addOrder", "createInvoice", "confirmInvoice", "confirmOrder",
                         "orderExists", "cancelOrder", "receiveOrder", "setFinancialAgreementParties",
                         "confirmAgreement", "initializeContract", "addDocument", "getNumberOfDocuments",
                         "getDocumentID", "IsDocumentValid", "validateDocument"};
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(report.rows[i].function, order[i]);
}

TEST(CostReport, SingleRowTotalIsThatRow) {
  const auto s = GasSchedule::defaults();
  const std::vector<Receipt> rs{receipt_for(ContractKind::Financial, "confirmAgreement", 44678)};
  const auto report = cost_report(rs, FeeSource::GasColumn, s, defaults());
  const auto totals = totals_by_contract(report, defaults());
  for (const auto& t : totals) {
    if (t.contract == ContractKind::Financial) {
      EXPECT_EQ(t.usd_micro, usd_micro(fee_wei(44678, defaults()), defaults().eth_usd_rate_micro));
    } else {
      EXPECT_EQ(t.usd_micro, 0u);
    }
  }
}

TEST(CostReport, TableModeUsesPrintedFee) {
  const auto s = GasSchedule::defaults();
  const std::vector<Receipt> rs{receipt_for(ContractKind::LetterOfCredit, "addDocument", 68518)};
  const auto gas_mode = cost_report(rs, FeeSource::GasColumn, s, defaults());
  const auto table_mode = cost_report(rs, FeeSource::TableFeeColumn, s, defaults());
  const auto row = [](const CostReport& r) {
    for (const auto& x : r.rows) {
      if (x.function == "addDocument") return x;
    }
    return CostRow{};
  };
  EXPECT_EQ(row(gas_mode).fee.to_eth_string(), "0.000068518");
  EXPECT_EQ(row(table_mode).fee.to_eth_string(), "0.000177");
  EXPECT_EQ(row(table_mode).gas, 68518u);
  EXPECT_EQ(row(table_mode).latency_s, 15u);
}

TEST(CostReport, UnknownFunctionThrows) {
  const std::vector<Receipt> rs{receipt_for(ContractKind::Sales, "selfDestruct", 1)};
  try {
    cost_report(rs, FeeSource::GasColumn, GasSchedule::defaults(), defaults());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownFunction);
  }
}

TEST(CostReport, DeploymentsIgnored) {
  Receipt deploy = receipt_for(ContractKind::Sales, std::string(kDeployFunction), 1385540);
  const std::vector<Receipt> rs{deploy};
  const auto report = cost_report(rs, FeeSource::GasColumn, GasSchedule::defaults(), defaults());
  for (const auto& row : report.rows) EXPECT_EQ(row.calls, 0u);
}

TEST(CostReport, TextAndTsvAgree) {
  const auto s = GasSchedule::defaults();
  std::vector<Receipt> rs;
  for (const auto& e : s.entries()) rs.push_back(receipt_for(e.contract, e.function, s.gas_for(e.function, 64)));
  const auto report = cost_report(rs, FeeSource::GasColumn, s, defaults());
  const auto text = render_cost_table_text(report, defaults());
  const auto tsv = render_cost_table_tsv(report, defaults());
  for (const auto& row : report.rows) {
    const auto fee = row.fee.to_eth_string();
    const auto usd = usd_display(row.usd_micro);
    EXPECT_NE(text.find(fee), std::string::npos) << row.function;
    EXPECT_NE(tsv.find(row.function + "\t" + std::to_string(row.gas) + "\t" + fee + "\t" + usd),
              std::string::npos)
        << row.function;
  }
  for (const auto& t : totals_by_contract(report, defaults())) {
    EXPECT_NE(text.find(usd_micro_display(t.usd_micro)), std::string::npos);
    EXPECT_NE(tsv.find(usd_micro_display(t.usd_micro)), std::string::npos);
  }
}
