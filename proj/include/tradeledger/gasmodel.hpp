#pragma once

// Transaction fee model: fee = (base_gas + payload_chars * gas_per_char) * gas_price,
// with all amounts held as exact integers (wei, micro-USD).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tradeledger/contracts.hpp"
#include "tradeledger/receipt.hpp"
#include "tradeledger/types.hpp"

namespace tradeledger {

struct ChainConfig {
  WeiAmount gas_price_wei{1'000'000'000};  // 1 gwei
  std::uint64_t tps = 15;
  Seconds block_interval_s = 15;
  std::uint64_t eth_usd_rate_micro = 550'750'000;  // 550.75 USD per ETH

  std::uint64_t block_capacity() const { return tps * block_interval_s; }

  // Throws Error{InvalidConfig} when tps or block_interval_s is zero.
  void validate() const;

  bool operator==(const ChainConfig&) const = default;
};

// Flat `key=value` lines; `#` starts a comment. Missing keys keep their
// defaults, unknown keys are rejected.
ChainConfig parse_chain_config(std::string_view text);
ChainConfig load_chain_config(const std::filesystem::path& path);
std::string format_chain_config(const ChainConfig& config);

struct ScheduleEntry {
  ContractKind contract = ContractKind::Sales;
  std::string function;
  Gas base_gas = 0;
  bool variable = false;
  std::uint64_t ref_payload_len = 0;
  std::optional<WeiAmount> table_fee;  // fee printed in the measured cost table
  bool view = false;

  bool operator==(const ScheduleEntry&) const = default;
};

class GasSchedule {
 public:
  static constexpr std::string_view kCsvHeader =
      "contract,function,base_gas,variable,ref_payload_len,table_fee_eth,view";
  static constexpr std::string_view kGasPerCharRow = "GAS_PER_CHAR";

  // The measured cost table: sixteen contract functions plus deployment gas
  // for the three contracts, gas_per_char = 625.
  static GasSchedule defaults();

  static GasSchedule parse_csv(std::string_view text);
  static GasSchedule load(const std::filesystem::path& path);
  std::string to_csv() const;

  // Throws Error{UnknownFunction}.
  Gas gas_for(std::string_view function, std::size_t payload_len) const;
  const ScheduleEntry& entry(std::string_view function) const;
  const ScheduleEntry& deployment(ContractKind kind) const;
  Gas deploy_gas(ContractKind kind) const { return deployment(kind).base_gas; }

  // Function entries in cost-table order (deployment rows excluded).
  std::span<const ScheduleEntry> entries() const { return entries_; }
  std::span<const ScheduleEntry> deployments() const { return deployments_; }
  std::uint64_t gas_per_char() const { return gas_per_char_; }

  void set_deploy_gas(ContractKind kind, Gas gas);
  void set_gas_per_char(std::uint64_t gas_per_char);

  // Every contract function has exactly one entry, every contract one
  // deployment row, gas_per_char > 0 and view entries are zero-cost.
  void validate() const;

  bool operator==(const GasSchedule&) const = default;

 private:
  std::vector<ScheduleEntry> entries_;
  std::vector<ScheduleEntry> deployments_;
  std::uint64_t gas_per_char_ = 625;
};

WeiAmount fee_wei(Gas gas, const ChainConfig& config);

// fee * rate / 10^18, rounded half-up to the micro-dollar.
std::uint64_t usd_micro(WeiAmount fee, std::uint64_t eth_usd_rate_micro);

// Micro-USD rounded half-up to cents, e.g. "0.06".
std::string usd_display(std::uint64_t micro_usd);
// Full micro-USD precision, e.g. "1.358506".
std::string usd_micro_display(std::uint64_t micro_usd);

struct FeeQuote {
  Gas gas = 0;
  WeiAmount fee_wei;
  std::string fee_eth_display;
  std::uint64_t usd_micro = 0;
};

FeeQuote quote(Gas gas, const ChainConfig& config);

// ---------------------------------------------------------------------------
// Cost report
// ---------------------------------------------------------------------------

enum class FeeSource {
  GasColumn,       // fee recomputed from metered gas
  TableFeeColumn,  // fee taken from the schedule's table_fee_eth column
};

std::string_view to_string(FeeSource source);
std::optional<FeeSource> fee_source_from_string(std::string_view text);  // "gas" | "table"

struct CostRow {
  ContractKind contract = ContractKind::Sales;
  std::string function;
  bool view = false;
  std::size_t calls = 0;
  Gas gas = 0;
  WeiAmount fee;
  std::uint64_t usd_micro = 0;
  std::optional<Seconds> latency_s;
};

struct CostReport {
  FeeSource fee_source = FeeSource::GasColumn;
  WeiAmount gas_price_wei;
  std::vector<CostRow> rows;
};

struct ContractTotal {
  ContractKind contract = ContractKind::Sales;
  Gas gas = 0;
  WeiAmount fee;
  std::uint64_t usd_micro = 0;
};

// One row per schedule function in cost-table order. A row describes the first
// receipt of that function; functions never called report zero. Deployment
// receipts are ignored. Throws Error{UnknownFunction} for receipts naming a
// function missing from the schedule.
CostReport cost_report(std::span<const Receipt> receipts, FeeSource fee_source,
                       const GasSchedule& schedule, const ChainConfig& config);

// Per-contract sums, converted to USD once from the summed fee.
std::vector<ContractTotal> totals_by_contract(const CostReport& report, const ChainConfig& config);

std::string render_cost_table_text(const CostReport& report, const ChainConfig& config);
std::string render_cost_table_tsv(const CostReport& report, const ChainConfig& config);

}  // namespace tradeledger
