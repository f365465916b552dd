#include "tradeledger/contracts.hpp"

#include <algorithm>

namespace tradeledger {

namespace {

constexpr ArgType kSetSales[] = {ArgType::Address, ArgType::Address};
constexpr ArgType kAddOrder[] = {ArgType::String, ArgType::String};
constexpr ArgType kOrderId[] = {ArgType::String};
constexpr ArgType kCreateInvoice[] = {ArgType::String, ArgType::String, ArgType::Integer};
constexpr ArgType kSetFinancial[] = {ArgType::Address, ArgType::Address, ArgType::Address};
constexpr ArgType kInitialize[] = {ArgType::Address, ArgType::Address, ArgType::Address, ArgType::Integer, ArgType::StringList};
constexpr ArgType kAddDocument[] = {ArgType::Hash, ArgType::String};
constexpr ArgType kIndex[] = {ArgType::Integer};

constexpr std::span<const ArgType> kEmpty{};

const FunctionSpec kFunctions[] = {
    {"setSalesContract", ContractKind::Sales, kSetSales},
    {"addOrder", ContractKind::Sales, kAddOrder, false, 1},
    {"createInvoice", ContractKind::Sales, kCreateInvoice},
    {"confirmInvoice", ContractKind::Sales, kOrderId},
    {"confirmOrder", ContractKind::Sales, kOrderId},
    {"orderExists", ContractKind::Sales, kOrderId, true},
    {"cancelOrder", ContractKind::Sales, kOrderId},
    {"receiveOrder", ContractKind::Sales, kOrderId},
    {"setFinancialAgreementParties", ContractKind::Financial, kSetFinancial},
    {"confirmAgreement", ContractKind::Financial, kEmpty},
    {"initializeContract", ContractKind::LetterOfCredit, kInitialize},
    {"addDocument", ContractKind::LetterOfCredit, kAddDocument},
    {"getNumberOfDocuments", ContractKind::LetterOfCredit, kEmpty, true},
    {"getDocumentID", ContractKind::LetterOfCredit, kIndex, true},
    {"IsDocumentValid", ContractKind::LetterOfCredit, kIndex, true},
    {"validateDocument", ContractKind::LetterOfCredit, kIndex},
};

bool matches(ArgType type, const Value& value) {
  switch (type) {
    case ArgType::Address: return std::holds_alternative<Address>(value);
    case ArgType::Integer: return std::holds_alternative<std::uint64_t>(value);
    case ArgType::String: return std::holds_alternative<std::string>(value);
    case ArgType::Hash: return std::holds_alternative<ContentHash>(value);
    case ArgType::StringList: return std::holds_alternative<std::vector<std::string>>(value);
  }
  return false;
}

template <typename T>
const T& arg(std::span<const Value> args, std::size_t i) {
  return std::get<T>(args[i]);
}

template <typename T>
CallOutcome from(const Result<T>& result) {
  CallOutcome out;
  if (!result) {
    out.revert = result.error();
  } else if constexpr (!std::is_same_v<T, Unit>) {
    out.value = result.value();
  }
  return out;
}

}  // namespace

std::string_view to_string(ContractKind kind) {
  switch (kind) {
    case ContractKind::Sales: return "Sales";
    case ContractKind::Financial: return "Financial";
    case ContractKind::LetterOfCredit: return "LetterOfCredit";
  }
  return "?";
}

std::optional<ContractKind> contract_kind_from_string(std::string_view name) {
  for (auto kind : kAllContractKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(ArgType type) {
  switch (type) {
    case ArgType::Address: return "address";
    case ArgType::Integer: return "integer";
    case ArgType::String: return "string";
    case ArgType::Hash: return "hash";
    case ArgType::StringList: return "string list";
  }
  return "?";
}

std::string render_value(const Value& value) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::uint64_t n) const { return std::to_string(n); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const tradeledger::Address& a) const { return a.to_hex(); }
    std::string operator()(const ContentHash& h) const { return h.to_hex(); }
    std::string operator()(const std::vector<std::string>& list) const {
      std::string out = "[";
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += ",";
        out += list[i];
      }
      return out + "]";
    }
  };
  return std::visit(Visitor{}, value);
}

std::span<const FunctionSpec> functions() { return kFunctions; }

const FunctionSpec* find_function(std::string_view name) {
  for (const auto& fn : kFunctions) {
    if (fn.name == name) return &fn;
  }
  return nullptr;
}

const FunctionSpec* find_function(ContractKind contract, std::string_view name) {
  const auto* fn = find_function(name);
  return fn && fn->contract == contract ? fn : nullptr;
}

void check_args(const FunctionSpec& fn, std::span<const Value> args) {
  if (args.size() != fn.params.size()) {
    throw Error(ErrorCode::ArityMismatch, std::string(fn.name) + " takes " +
                                              std::to_string(fn.params.size()) + " argument(s), got " +
                                              std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!matches(fn.params[i], args[i])) {
      throw Error(ErrorCode::TypeMismatch, std::string(fn.name) + " argument " + std::to_string(i + 1) +
                                               " must be " + std::string(to_string(fn.params[i])));
    }
  }
}

std::size_t utf8_length(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < text.size();) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t width = 1;
    if (lead >= 0xf0 && lead < 0xf8) {
      width = 4;
    } else if (lead >= 0xe0) {
      width = lead < 0xf0 ? 3 : 1;
    } else if (lead >= 0xc0) {
      width = 2;
    }
    if (width > 1) {
      bool valid = i + width <= text.size();
      for (std::size_t k = 1; valid && k < width; ++k) {
        valid = (static_cast<unsigned char>(text[i + k]) & 0xc0) == 0x80;
      }
      if (!valid) width = 1;
    }
    i += width;
    ++count;
  }
  return count;
}

std::size_t payload_length(const FunctionSpec& fn, std::span<const Value> args) {
  if (fn.payload_arg < 0) return 0;
  const auto index = static_cast<std::size_t>(fn.payload_arg);
  if (index >= args.size()) return 0;
  const auto* text = std::get_if<std::string>(&args[index]);
  return text ? utf8_length(*text) : 0;
}

// ---------------------------------------------------------------------------
// SalesContract
// ---------------------------------------------------------------------------

std::string_view to_string(SalesContract::OrderStatus status) {
  switch (status) {
    case SalesContract::OrderStatus::Created: return "Created";
    case SalesContract::OrderStatus::Confirmed: return "Confirmed";
    case SalesContract::OrderStatus::Received: return "Received";
    case SalesContract::OrderStatus::Cancelled: return "Cancelled";
  }
  return "?";
}

std::string_view to_string(SalesContract::InvoiceStatus status) {
  return status == SalesContract::InvoiceStatus::Issued ? "Issued" : "Confirmed";
}

Status SalesContract::set_parties(const Address&, const Address& buyer, const Address& seller) {
  if (initialized_) return ErrorCode::AlreadyInitialized;
  if (buyer == seller) return ErrorCode::SameParty;
  buyer_ = buyer;
  seller_ = seller;
  initialized_ = true;
  return Unit{};
}

Status SalesContract::add_order(const Address& caller, const std::string& order_id,
                                const std::string& description) {
  if (!initialized_) return ErrorCode::NotInitialized;
  if (caller != buyer_) return ErrorCode::NotBuyer;
  if (orders_.contains(order_id)) return ErrorCode::DuplicateOrder;
  orders_.emplace(order_id, Order{description, OrderStatus::Created});
  return Unit{};
}

Status SalesContract::check_order_transition(const Address& caller, const Address& required_role,
                                             ErrorCode role_error, const std::string& order_id,
                                             std::initializer_list<OrderStatus> allowed) const {
  if (!initialized_) return ErrorCode::NotInitialized;
  if (caller != required_role) return role_error;
  const auto it = orders_.find(order_id);
  if (it == orders_.end()) return ErrorCode::NoSuchOrder;
  if (std::find(allowed.begin(), allowed.end(), it->second.status) == allowed.end()) {
    return ErrorCode::BadState;
  }
  return Unit{};
}

Status SalesContract::confirm_order(const Address& caller, const std::string& order_id) {
  auto status = check_order_transition(caller, seller_, ErrorCode::NotSeller, order_id,
                                       {OrderStatus::Created});
  if (status) orders_.at(order_id).status = OrderStatus::Confirmed;
  return status;
}

Status SalesContract::cancel_order(const Address& caller, const std::string& order_id) {
  auto status = check_order_transition(caller, buyer_, ErrorCode::NotBuyer, order_id,
                                       {OrderStatus::Created, OrderStatus::Confirmed});
  if (status) orders_.at(order_id).status = OrderStatus::Cancelled;
  return status;
}

Status SalesContract::receive_order(const Address& caller, const std::string& order_id) {
  auto status = check_order_transition(caller, buyer_, ErrorCode::NotBuyer, order_id,
                                       {OrderStatus::Confirmed});
  if (status) orders_.at(order_id).status = OrderStatus::Received;
  return status;
}

bool SalesContract::order_exists(const std::string& order_id) const { return orders_.contains(order_id); }

Status SalesContract::create_invoice(const Address& caller, const std::string& invoice_id,
                                     const std::string& order_id, std::uint64_t amount) {
  if (!initialized_) return ErrorCode::NotInitialized;
  if (caller != seller_) return ErrorCode::NotSeller;
  if (amount == 0) return ErrorCode::ZeroAmount;
  if (invoices_.contains(invoice_id)) return ErrorCode::DuplicateInvoice;
  const auto it = orders_.find(order_id);
  if (it == orders_.end()) return ErrorCode::NoSuchOrder;
  if (it->second.status != OrderStatus::Confirmed && it->second.status != OrderStatus::Received) {
    return ErrorCode::BadState;
  }
  invoices_.emplace(invoice_id, Invoice{order_id, amount, InvoiceStatus::Issued});
  return Unit{};
}

Status SalesContract::confirm_invoice(const Address& caller, const std::string& invoice_id) {
  if (!initialized_) return ErrorCode::NotInitialized;
  if (caller != buyer_) return ErrorCode::NotBuyer;
  const auto it = invoices_.find(invoice_id);
  if (it == invoices_.end()) return ErrorCode::NoSuchInvoice;
  if (it->second.status != InvoiceStatus::Issued) return ErrorCode::BadState;
  it->second.status = InvoiceStatus::Confirmed;
  return Unit{};
}

// ---------------------------------------------------------------------------
// FinancialAgreement
// ---------------------------------------------------------------------------

std::string_view to_string(FinancialAgreement::AgreementStatus status) {
  switch (status) {
    case FinancialAgreement::AgreementStatus::Unset: return "Unset";
    case FinancialAgreement::AgreementStatus::Proposed: return "Proposed";
    case FinancialAgreement::AgreementStatus::Confirmed: return "Confirmed";
  }
  return "?";
}

Status FinancialAgreement::set_parties(const Address&, const Address& applicant,
                                       const Address& financier, const Address& beneficiary) {
  if (status_ != AgreementStatus::Unset) return ErrorCode::AlreadyInitialized;
  if (applicant == financier || applicant == beneficiary || financier == beneficiary) {
    return ErrorCode::DuplicateParty;
  }
  parties_ = {applicant, financier, beneficiary};
  confirmations_.clear();
  status_ = AgreementStatus::Proposed;
  return Unit{};
}

bool FinancialAgreement::is_party(const Address& who) const {
  return status_ != AgreementStatus::Unset &&
         std::find(parties_.begin(), parties_.end(), who) != parties_.end();
}

Status FinancialAgreement::confirm(const Address& caller) {
  if (status_ == AgreementStatus::Unset) return ErrorCode::NotInitialized;
  if (!is_party(caller)) return ErrorCode::NotParty;
  if (confirmations_.contains(caller)) return ErrorCode::AlreadyConfirmed;
  confirmations_.insert(caller);
  if (confirmations_.size() == parties_.size()) status_ = AgreementStatus::Confirmed;
  return Unit{};
}

// ---------------------------------------------------------------------------
// LetterOfCredit
// ---------------------------------------------------------------------------

std::string_view to_string(LetterOfCredit::CreditStatus status) {
  switch (status) {
    case LetterOfCredit::CreditStatus::Unset: return "Unset";
    case LetterOfCredit::CreditStatus::Issued: return "Issued";
    case LetterOfCredit::CreditStatus::DocumentsComplete: return "DocumentsComplete";
  }
  return "?";
}

Status LetterOfCredit::initialize(const Address&, const Address& applicant, const Address& beneficiary,
                                  const Address& issuing_bank, std::uint64_t amount,
                                  const std::vector<std::string>& required_doc_types) {
  if (status_ != CreditStatus::Unset) return ErrorCode::AlreadyInitialized;
  if (applicant == beneficiary || applicant == issuing_bank || beneficiary == issuing_bank) {
    return ErrorCode::DuplicateParty;
  }
  if (amount == 0) return ErrorCode::ZeroAmount;
  if (required_doc_types.empty()) return ErrorCode::NoRequiredDocs;
  applicant_ = applicant;
  beneficiary_ = beneficiary;
  issuing_bank_ = issuing_bank;
  amount_ = amount;
  required_ = {required_doc_types.begin(), required_doc_types.end()};
  status_ = CreditStatus::Issued;
  return Unit{};
}

Result<std::uint64_t> LetterOfCredit::add_document(const Address& caller, const ContentHash& content_hash,
                                                   const std::string& doc_type) {
  if (status_ == CreditStatus::Unset) return ErrorCode::NotInitialized;
  if (caller != beneficiary_) return ErrorCode::NotBeneficiary;
  if (status_ != CreditStatus::Issued) return ErrorCode::BadState;
  const std::uint64_t id = documents_.size();
  documents_.push_back(TradeDocument{id, content_hash, doc_type, false});
  return id;
}

Result<ContentHash> LetterOfCredit::document_id(std::uint64_t index) const {
  if (index >= documents_.size()) return ErrorCode::IndexOutOfRange;
  return documents_[index].content_hash;
}

Result<bool> LetterOfCredit::is_document_valid(std::uint64_t doc_id) const {
  if (doc_id >= documents_.size()) return ErrorCode::NoSuchDocument;
  return documents_[doc_id].valid;
}

bool LetterOfCredit::all_required_validated() const {
  return std::all_of(required_.begin(), required_.end(), [&](const std::string& type) {
    return std::any_of(documents_.begin(), documents_.end(),
                       [&](const TradeDocument& d) { return d.valid && d.doc_type == type; });
  });
}

Result<bool> LetterOfCredit::validate_document(const Address& caller, std::uint64_t doc_id) {
  if (status_ == CreditStatus::Unset) return ErrorCode::NotInitialized;
  if (caller != issuing_bank_) return ErrorCode::NotIssuingBank;
  if (doc_id >= documents_.size()) return ErrorCode::NoSuchDocument;
  if (documents_[doc_id].valid) return ErrorCode::AlreadyValid;
  documents_[doc_id].valid = true;
  if (status_ == CreditStatus::Issued && all_required_validated()) {
    status_ = CreditStatus::DocumentsComplete;
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

ContractInstance make_contract(ContractKind kind) {
  switch (kind) {
    case ContractKind::Sales: return SalesContract{};
    case ContractKind::Financial: return FinancialAgreement{};
    case ContractKind::LetterOfCredit: return LetterOfCredit{};
  }
  throw Error(ErrorCode::UnknownContract);
}

ContractKind kind_of(const ContractInstance& contract) {
  return static_cast<ContractKind>(contract.index());
}

namespace {

CallOutcome invoke_sales(SalesContract& c, const tradeledger::Address& caller, std::string_view name,
                         std::span<const Value> a) {
  using S = std::string;
  using A = tradeledger::Address;
  if (name == "setSalesContract") return from(c.set_parties(caller, arg<A>(a, 0), arg<A>(a, 1)));
  if (name == "addOrder") return from(c.add_order(caller, arg<S>(a, 0), arg<S>(a, 1)));
  if (name == "createInvoice") {
    return from(c.create_invoice(caller, arg<S>(a, 0), arg<S>(a, 1), arg<std::uint64_t>(a, 2)));
  }
  if (name == "confirmInvoice") return from(c.confirm_invoice(caller, arg<S>(a, 0)));
  if (name == "confirmOrder") return from(c.confirm_order(caller, arg<S>(a, 0)));
  if (name == "cancelOrder") return from(c.cancel_order(caller, arg<S>(a, 0)));
  if (name == "receiveOrder") return from(c.receive_order(caller, arg<S>(a, 0)));
  throw Error(ErrorCode::UnknownFunction, std::string(name));
}

CallOutcome invoke_financial(FinancialAgreement& c, const tradeledger::Address& caller,
                             std::string_view name, std::span<const Value> a) {
  using A = tradeledger::Address;
  if (name == "setFinancialAgreementParties") {
    return from(c.set_parties(caller, arg<A>(a, 0), arg<A>(a, 1), arg<A>(a, 2)));
  }
  if (name == "confirmAgreement") return from(c.confirm(caller));
  throw Error(ErrorCode::UnknownFunction, std::string(name));
}

CallOutcome invoke_credit(LetterOfCredit& c, const tradeledger::Address& caller, std::string_view name,
                          std::span<const Value> a) {
  using A = tradeledger::Address;
  if (name == "initializeContract") {
    return from(c.initialize(caller, arg<A>(a, 0), arg<A>(a, 1), arg<A>(a, 2), arg<std::uint64_t>(a, 3),
                             arg<std::vector<std::string>>(a, 4)));
  }
  if (name == "addDocument") return from(c.add_document(caller, arg<ContentHash>(a, 0), arg<std::string>(a, 1)));
  if (name == "validateDocument") {
    const auto result = c.validate_document(caller, arg<std::uint64_t>(a, 0));
    CallOutcome out;
    if (!result) {
      out.revert = result.error();
    } else if (result.value()) {
      out.events.emplace_back(kSettlementReady);
    }
    return out;
  }
  throw Error(ErrorCode::UnknownFunction, std::string(name));
}

}  // namespace

CallOutcome invoke_view(const ContractInstance& contract, const FunctionSpec& fn,
                        std::span<const Value> a) {
  if (!fn.view || fn.contract != kind_of(contract)) {
    throw Error(ErrorCode::UnknownFunction, std::string(fn.name) + " is not a view of " +
                                                std::string(to_string(kind_of(contract))));
  }
  if (const auto* sales = std::get_if<SalesContract>(&contract)) {
    CallOutcome out;
    out.value = sales->order_exists(arg<std::string>(a, 0));
    return out;
  }
  const auto& credit = std::get<LetterOfCredit>(contract);
  if (fn.name == "getNumberOfDocuments") {
    CallOutcome out;
    out.value = credit.document_count();
    return out;
  }
  if (fn.name == "getDocumentID") return from(credit.document_id(arg<std::uint64_t>(a, 0)));
  return from(credit.is_document_valid(arg<std::uint64_t>(a, 0)));
}

CallOutcome invoke(ContractInstance& contract, const tradeledger::Address& caller, const FunctionSpec& fn,
                   std::span<const Value> args) {
  if (fn.contract != kind_of(contract)) {
    throw Error(ErrorCode::UnknownFunction, std::string(fn.name) + " is not a function of " +
                                                std::string(to_string(kind_of(contract))));
  }
  if (fn.view) return invoke_view(contract, fn, args);
  return std::visit(
      [&](auto& c) -> CallOutcome {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, SalesContract>) {
          return invoke_sales(c, caller, fn.name, args);
        } else if constexpr (std::is_same_v<T, FinancialAgreement>) {
          return invoke_financial(c, caller, fn.name, args);
        } else {
          return invoke_credit(c, caller, fn.name, args);
        }
      },
      contract);
}

}  // namespace tradeledger
