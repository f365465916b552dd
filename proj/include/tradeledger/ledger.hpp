#pragma once

#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tradeledger/contracts.hpp"
#include "tradeledger/gasmodel.hpp"
#include "tradeledger/receipt.hpp"
#include "tradeledger/types.hpp"

namespace tradeledger {

struct CallRequest {
  Address sender;
  Address target;
  std::string function;
  std::vector<Value> args;
  Seconds submit_time_s = 0;
};

struct Transaction {
  TxId tx_id = 0;
  Address sender;
  Address target;
  std::optional<ContractKind> deploy;  // set for contract deployments
  std::string function_name;
  std::vector<Value> args;
  std::size_t payload_len = 0;
  Seconds submit_time_s = 0;
};

struct Block {
  std::uint64_t index = 0;
  Seconds timestamp_s = 0;
  std::vector<TxId> tx_ids;

  bool operator==(const Block&) const = default;
};

// Single-chain simulator on an integer-second clock. Block k is sealed at
// k * block_interval_s (k >= 1) and takes, in FIFO order, up to
// tps * block_interval_s pending transactions submitted strictly before that
// instant. Not internally synchronized.
class Ledger {
 public:
  explicit Ledger(ChainConfig config = {}, GasSchedule schedule = GasSchedule::defaults());

  struct Deployment {
    Address contract;
    Receipt receipt;
  };

  // Registers a fresh contract and mines until its deployment is confirmed.
  Deployment deploy_contract(ContractKind kind, const Address& sender, Seconds time_s);

  // Registers a fresh contract and queues its deployment without mining.
  std::pair<Address, TxId> submit_deployment(ContractKind kind, const Address& sender, Seconds time_s);

  // Queues a contract call. Throws Error{UnknownContract | UnknownFunction |
  // ArityMismatch | TypeMismatch | InvalidTime}.
  TxId submit(CallRequest call);

  // Seals every block whose boundary is <= time_s and returns the receipts
  // they produced. Throws Error{InvalidTime} if time_s is in the past.
  std::vector<Receipt> advance_to(Seconds time_s);

  // Seals blocks until `tx_id` is mined; returns all receipts produced.
  std::vector<Receipt> mine_until_confirmed(TxId tx_id);

  // Throws Error{UnknownTx | Pending}.
  const Receipt& receipt_of(TxId tx_id) const;

  // Zero-gas read between blocks.
  CallOutcome view(const Address& target, std::string_view function, std::span<const Value> args) const;

  const ContractInstance& contract(const Address& address) const;
  bool has_contract(const Address& address) const { return contracts_.contains(address); }

  Seconds now() const { return now_; }
  Seconds next_boundary_after(Seconds time_s) const;
  std::size_t pending_count() const { return pending_.size(); }
  std::span<const Block> blocks() const { return blocks_; }
  std::span<const Receipt> receipts() const { return receipts_; }
  WeiAmount total_fees() const { return total_fees_; }
  WeiAmount fees_of(const Address& sender) const;

  const ChainConfig& config() const { return config_; }
  const GasSchedule& schedule() const { return schedule_; }

  // Canonical text rendering of all blocks and receipts.
  std::string dump() const;

 private:
  Address derive_contract_address(const Address& sender);
  void check_time(Seconds time_s) const;
  Receipt execute(const Transaction& tx, const Block& block);

  ChainConfig config_;
  GasSchedule schedule_;
  Seconds now_ = 0;
  Seconds last_submit_ = 0;
  TxId next_tx_id_ = 1;
  std::map<Address, ContractInstance> contracts_;
  std::map<Address, std::uint64_t> nonces_;
  std::deque<Transaction> pending_;
  std::vector<Block> blocks_;
  std::vector<Receipt> receipts_;
  std::unordered_map<TxId, std::size_t> receipt_index_;
  WeiAmount total_fees_;
  std::map<Address, WeiAmount> fees_by_sender_;
};

}  // namespace tradeledger
