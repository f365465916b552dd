#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tradeledger/contracts.hpp"
#include "tradeledger/error.hpp"
#include "tradeledger/types.hpp"

namespace tradeledger {

inline constexpr std::string_view kDeployFunction = "DEPLOY";

// Outcome of a mined transaction. Reverted transactions still carry the gas
// they consumed and the fee charged for it.
struct Receipt {
  TxId tx_id = 0;
  ContractKind contract = ContractKind::Sales;
  std::string function_name;
  Address sender;
  Address target;
  std::optional<ErrorCode> revert;
  Gas gas_used = 0;
  WeiAmount fee;
  std::uint64_t block_index = 0;
  Seconds submit_time_s = 0;
  Seconds confirm_time_s = 0;
  std::vector<std::string> events;

  bool confirmed() const { return !revert.has_value(); }
  bool is_deployment() const { return function_name == kDeployFunction; }
  Seconds latency() const { return confirm_time_s - submit_time_s; }

  bool operator==(const Receipt&) const = default;
};

}  // namespace tradeledger
