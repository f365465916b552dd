#include "tradeledger/ledger.hpp"

#include <sstream>

#include "tradeledger/docstore.hpp"
#include "tradeledger/error.hpp"

namespace tradeledger {

Ledger::Ledger(ChainConfig config, GasSchedule schedule)
    : config_(std::move(config)), schedule_(std::move(schedule)) {
  config_.validate();
  schedule_.validate();
}

Seconds Ledger::next_boundary_after(Seconds time_s) const {
  return (time_s / config_.block_interval_s + 1) * config_.block_interval_s;
}

void Ledger::check_time(Seconds time_s) const {
  if (time_s < now_ || time_s < last_submit_) {
    throw Error(ErrorCode::InvalidTime, "submit time " + std::to_string(time_s) + " precedes ledger time " +
                                            std::to_string(std::max(now_, last_submit_)));
  }
}

Address Ledger::derive_contract_address(const Address& sender) {
  const auto nonce = nonces_[sender]++;
  std::string seed = "contract:";
  seed.append(reinterpret_cast<const char*>(sender.bytes().data()), Address::kSize);
  for (int shift = 56; shift >= 0; shift -= 8) seed.push_back(static_cast<char>((nonce >> shift) & 0xff));
  const auto digest = sha256(seed);
  Address::Bytes bytes{};
  std::copy_n(digest.bytes().begin() + (ContentHash::kSize - Address::kSize), Address::kSize, bytes.begin());
  return Address(bytes);
}

std::pair<Address, TxId> Ledger::submit_deployment(ContractKind kind, const Address& sender, Seconds time_s) {
  check_time(time_s);
  const auto address = derive_contract_address(sender);
  contracts_.emplace(address, make_contract(kind));
  Transaction tx;
  tx.tx_id = next_tx_id_++;
  tx.sender = sender;
  tx.target = address;
  tx.deploy = kind;
  tx.function_name = std::string(kDeployFunction);
  tx.submit_time_s = time_s;
  last_submit_ = time_s;
  pending_.push_back(std::move(tx));
  return {address, pending_.back().tx_id};
}

Ledger::Deployment Ledger::deploy_contract(ContractKind kind, const Address& sender, Seconds time_s) {
  const auto [address, tx_id] = submit_deployment(kind, sender, time_s);
  mine_until_confirmed(tx_id);
  return {address, receipt_of(tx_id)};
}

TxId Ledger::submit(CallRequest call) {
  check_time(call.submit_time_s);
  const auto it = contracts_.find(call.target);
  if (it == contracts_.end()) throw Error(ErrorCode::UnknownContract, call.target.to_hex());
  const auto* fn = find_function(kind_of(it->second), call.function);
  if (!fn) {
    throw Error(ErrorCode::UnknownFunction,
                call.function + " on " + std::string(to_string(kind_of(it->second))));
  }
  check_args(*fn, call.args);

  Transaction tx;
  tx.tx_id = next_tx_id_++;
  tx.sender = call.sender;
  tx.target = call.target;
  tx.function_name = std::move(call.function);
  tx.payload_len = payload_length(*fn, call.args);
  tx.args = std::move(call.args);
  tx.submit_time_s = call.submit_time_s;
  last_submit_ = tx.submit_time_s;
  pending_.push_back(std::move(tx));
  return pending_.back().tx_id;
}

Receipt Ledger::execute(const Transaction& tx, const Block& block) {
  Receipt r;
  r.tx_id = tx.tx_id;
  r.function_name = tx.function_name;
  r.sender = tx.sender;
  r.target = tx.target;
  r.block_index = block.index;
  r.submit_time_s = tx.submit_time_s;
  r.confirm_time_s = block.timestamp_s;

  if (tx.deploy) {
    r.contract = *tx.deploy;
    r.gas_used = schedule_.deploy_gas(*tx.deploy);
  } else {
    auto& contract = contracts_.at(tx.target);
    r.contract = kind_of(contract);
    const auto* fn = find_function(r.contract, tx.function_name);
    r.gas_used = schedule_.gas_for(tx.function_name, tx.payload_len);
    auto outcome = invoke(contract, tx.sender, *fn, tx.args);
    r.revert = outcome.revert;
    r.events = std::move(outcome.events);
  }
  r.fee = fee_wei(r.gas_used, config_);
  total_fees_ += r.fee;
  fees_by_sender_[tx.sender] += r.fee;
  return r;
}

std::vector<Receipt> Ledger::advance_to(Seconds time_s) {
  if (time_s < now_) {
    throw Error(ErrorCode::InvalidTime, "cannot move clock back from " + std::to_string(now_) + " to " +
                                            std::to_string(time_s));
  }
  std::vector<Receipt> produced;
  const auto capacity = config_.block_capacity();
  while (true) {
    Block block;
    block.index = blocks_.size() + 1;
    block.timestamp_s = block.index * config_.block_interval_s;
    if (block.timestamp_s > time_s) break;
    while (!pending_.empty() && block.tx_ids.size() < capacity &&
           pending_.front().submit_time_s < block.timestamp_s) {
      const Transaction tx = std::move(pending_.front());
      pending_.pop_front();
      block.tx_ids.push_back(tx.tx_id);
      receipt_index_.emplace(tx.tx_id, receipts_.size());
      receipts_.push_back(execute(tx, block));
      produced.push_back(receipts_.back());
    }
    blocks_.push_back(std::move(block));
  }
  now_ = time_s;
  return produced;
}

std::vector<Receipt> Ledger::mine_until_confirmed(TxId tx_id) {
  if (tx_id == 0 || tx_id >= next_tx_id_) throw Error(ErrorCode::UnknownTx, std::to_string(tx_id));
  std::vector<Receipt> produced;
  while (!receipt_index_.contains(tx_id)) {
    auto batch = advance_to(next_boundary_after(now_));
    produced.insert(produced.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
  }
  return produced;
}

const Receipt& Ledger::receipt_of(TxId tx_id) const {
  if (tx_id == 0 || tx_id >= next_tx_id_) throw Error(ErrorCode::UnknownTx, std::to_string(tx_id));
  const auto it = receipt_index_.find(tx_id);
  if (it == receipt_index_.end()) throw Error(ErrorCode::Pending, std::to_string(tx_id));
  return receipts_[it->second];
}

CallOutcome Ledger::view(const Address& target, std::string_view function, std::span<const Value> args) const {
  const auto& c = contract(target);
  const auto* fn = find_function(kind_of(c), function);
  if (!fn || !fn->view) {
    throw Error(ErrorCode::UnknownFunction,
                std::string(function) + " is not a view of " + std::string(to_string(kind_of(c))));
  }
  check_args(*fn, args);
  return invoke_view(c, *fn, args);
}

const ContractInstance& Ledger::contract(const Address& address) const {
  const auto it = contracts_.find(address);
  if (it == contracts_.end()) throw Error(ErrorCode::UnknownContract, address.to_hex());
  return it->second;
}

WeiAmount Ledger::fees_of(const Address& sender) const {
  const auto it = fees_by_sender_.find(sender);
  return it == fees_by_sender_.end() ? WeiAmount{0} : it->second;
}

std::string Ledger::dump() const {
  std::ostringstream out;
  for (const auto& b : blocks_) {
    out << "block " << b.index << " t=" << b.timestamp_s << " txs=";
    for (std::size_t i = 0; i < b.tx_ids.size(); ++i) out << (i ? "," : "") << b.tx_ids[i];
    out << "\n";
  }
  for (const auto& r : receipts_) {
    out << "receipt " << r.tx_id << " " << to_string(r.contract) << "." << r.function_name << " from "
        << r.sender.to_hex() << " to " << r.target.to_hex() << " status "
        << (r.revert ? "Reverted(" + std::string(to_string(*r.revert)) + ")" : std::string("Confirmed"))
        << " gas " << r.gas_used << " fee " << r.fee.wei() << " block " << r.block_index << " submit "
        << r.submit_time_s << " confirm " << r.confirm_time_s;
    for (const auto& e : r.events) out << " event " << e;
    out << "\n";
  }
  out << "total_fees " << total_fees_.wei() << "\n";
  return out.str();
}

}  // namespace tradeledger
