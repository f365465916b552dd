#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tradeledger/error.hpp"
#include "tradeledger/types.hpp"

namespace tradeledger {

enum class ContractKind { Sales, Financial, LetterOfCredit };

inline constexpr std::array<ContractKind, 3> kAllContractKinds{
    ContractKind::Sales, ContractKind::Financial, ContractKind::LetterOfCredit};

std::string_view to_string(ContractKind kind);
std::optional<ContractKind> contract_kind_from_string(std::string_view name);

// ---------------------------------------------------------------------------
// Call encoding
// ---------------------------------------------------------------------------

enum class ArgType { Address, Integer, String, Hash, StringList };

std::string_view to_string(ArgType type);

using Value = std::variant<std::monostate, bool, std::uint64_t, std::string, Address, ContentHash,
                           std::vector<std::string>>;

std::string render_value(const Value& value);

struct FunctionSpec {
  std::string_view name;
  ContractKind contract;
  std::span<const ArgType> params;
  bool view = false;
  // Index of the argument whose character length is the variable payload,
  // or -1 when the function has a fixed-size payload.
  int payload_arg = -1;
};

// All sixteen contract functions in cost-table order.
std::span<const FunctionSpec> functions();
const FunctionSpec* find_function(std::string_view name);
const FunctionSpec* find_function(ContractKind contract, std::string_view name);

// Throws Error{ArityMismatch | TypeMismatch}.
void check_args(const FunctionSpec& fn, std::span<const Value> args);

// Number of Unicode code points in a UTF-8 string; invalid bytes count as one
// character each.
std::size_t utf8_length(std::string_view text);

// Character count of the variable payload argument, 0 for fixed functions.
std::size_t payload_length(const FunctionSpec& fn, std::span<const Value> args);

inline constexpr std::string_view kSettlementReady = "SettlementReady";

// ---------------------------------------------------------------------------
// Sales contract: buyer places orders, seller confirms and invoices.
// ---------------------------------------------------------------------------

class SalesContract {
 public:
  enum class OrderStatus { Created, Confirmed, Received, Cancelled };
  enum class InvoiceStatus { Issued, Confirmed };

  struct Order {
    std::string description;
    OrderStatus status = OrderStatus::Created;
    bool operator==(const Order&) const = default;
  };

  struct Invoice {
    std::string order_id;
    std::uint64_t amount = 0;
    InvoiceStatus status = InvoiceStatus::Issued;
    bool operator==(const Invoice&) const = default;
  };

  Status set_parties(const Address& caller, const Address& buyer, const Address& seller);
  Status add_order(const Address& caller, const std::string& order_id, const std::string& description);
  Status confirm_order(const Address& caller, const std::string& order_id);
  Status cancel_order(const Address& caller, const std::string& order_id);
  Status receive_order(const Address& caller, const std::string& order_id);
  bool order_exists(const std::string& order_id) const;
  Status create_invoice(const Address& caller, const std::string& invoice_id,
                        const std::string& order_id, std::uint64_t amount);
  Status confirm_invoice(const Address& caller, const std::string& invoice_id);

  bool initialized() const { return initialized_; }
  const Address& buyer() const { return buyer_; }
  const Address& seller() const { return seller_; }
  const std::map<std::string, Order>& orders() const { return orders_; }
  const std::map<std::string, Invoice>& invoices() const { return invoices_; }

  bool operator==(const SalesContract&) const = default;

 private:
  Status check_order_transition(const Address& caller, const Address& required_role,
                                ErrorCode role_error, const std::string& order_id,
                                std::initializer_list<OrderStatus> allowed) const;

  bool initialized_ = false;
  Address buyer_;
  Address seller_;
  std::map<std::string, Order> orders_;
  std::map<std::string, Invoice> invoices_;
};

std::string_view to_string(SalesContract::OrderStatus status);
std::string_view to_string(SalesContract::InvoiceStatus status);

// ---------------------------------------------------------------------------
// Financial agreement: three parties, unanimous confirmation.
// ---------------------------------------------------------------------------

class FinancialAgreement {
 public:
  enum class AgreementStatus { Unset, Proposed, Confirmed };

  Status set_parties(const Address& caller, const Address& applicant, const Address& financier,
                     const Address& beneficiary);
  Status confirm(const Address& caller);

  AgreementStatus status() const { return status_; }
  const std::array<Address, 3>& parties() const { return parties_; }
  const std::set<Address>& confirmations() const { return confirmations_; }
  bool is_party(const Address& who) const;

  bool operator==(const FinancialAgreement&) const = default;

 private:
  AgreementStatus status_ = AgreementStatus::Unset;
  std::array<Address, 3> parties_{};
  std::set<Address> confirmations_;
};

std::string_view to_string(FinancialAgreement::AgreementStatus status);

// ---------------------------------------------------------------------------
// Letter of credit: beneficiary presents documents, issuing bank validates.
// DocumentsComplete is reached once every required document type has at
// least one validated document.
// ---------------------------------------------------------------------------

class LetterOfCredit {
 public:
  enum class CreditStatus { Unset, Issued, DocumentsComplete };

  struct TradeDocument {
    std::uint64_t doc_id = 0;
    ContentHash content_hash;
    std::string doc_type;
    bool valid = false;
    bool operator==(const TradeDocument&) const = default;
  };

  Status initialize(const Address& caller, const Address& applicant, const Address& beneficiary,
                    const Address& issuing_bank, std::uint64_t amount,
                    const std::vector<std::string>& required_doc_types);
  Result<std::uint64_t> add_document(const Address& caller, const ContentHash& content_hash,
                                     const std::string& doc_type);
  std::uint64_t document_count() const { return documents_.size(); }
  Result<ContentHash> document_id(std::uint64_t index) const;
  Result<bool> is_document_valid(std::uint64_t doc_id) const;
  // On success the value tells whether this validation completed the
  // required document set.
  Result<bool> validate_document(const Address& caller, std::uint64_t doc_id);

  CreditStatus status() const { return status_; }
  const Address& applicant() const { return applicant_; }
  const Address& beneficiary() const { return beneficiary_; }
  const Address& issuing_bank() const { return issuing_bank_; }
  std::uint64_t amount() const { return amount_; }
  const std::set<std::string>& required_doc_types() const { return required_; }
  const std::vector<TradeDocument>& documents() const { return documents_; }
  bool all_required_validated() const;

  bool operator==(const LetterOfCredit&) const = default;

 private:
  CreditStatus status_ = CreditStatus::Unset;
  Address applicant_;
  Address beneficiary_;
  Address issuing_bank_;
  std::uint64_t amount_ = 0;
  std::set<std::string> required_;
  std::vector<TradeDocument> documents_;
};

std::string_view to_string(LetterOfCredit::CreditStatus status);

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

using ContractInstance = std::variant<SalesContract, FinancialAgreement, LetterOfCredit>;

ContractInstance make_contract(ContractKind kind);
ContractKind kind_of(const ContractInstance& contract);

struct CallOutcome {
  std::optional<ErrorCode> revert;
  Value value;
  std::vector<std::string> events;

  bool ok() const { return !revert.has_value(); }
};

// Executes `fn` against `contract`. Arguments must already satisfy
// check_args; the function must belong to the contract's kind.
CallOutcome invoke(ContractInstance& contract, const Address& caller, const FunctionSpec& fn,
                   std::span<const Value> args);

// Read-only variant; `fn` must be a view.
CallOutcome invoke_view(const ContractInstance& contract, const FunctionSpec& fn,
                        std::span<const Value> args);

}  // namespace tradeledger
