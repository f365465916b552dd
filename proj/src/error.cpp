#include "tradeledger/error.hpp"

#include <array>
#include <utility>

namespace tradeledger {

namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 36> kNames{{
    {ErrorCode::UnknownContract, "UnknownContract"},
    {ErrorCode::UnknownTx, "UnknownTx"},
    {ErrorCode::Pending, "Pending"},
    {ErrorCode::InvalidTime, "InvalidTime"},
    {ErrorCode::UnknownFunction, "UnknownFunction"},
    {ErrorCode::InvalidConfig, "InvalidConfig"},
    {ErrorCode::InvalidSchedule, "InvalidSchedule"},
    {ErrorCode::AlreadyInitialized, "AlreadyInitialized"},
    {ErrorCode::NotInitialized, "NotInitialized"},
    {ErrorCode::SameParty, "SameParty"},
    {ErrorCode::DuplicateParty, "DuplicateParty"},
    {ErrorCode::NotBuyer, "NotBuyer"},
    {ErrorCode::NotSeller, "NotSeller"},
    {ErrorCode::NotParty, "NotParty"},
    {ErrorCode::NotBeneficiary, "NotBeneficiary"},
    {ErrorCode::NotIssuingBank, "NotIssuingBank"},
    {ErrorCode::DuplicateOrder, "DuplicateOrder"},
    {ErrorCode::NoSuchOrder, "NoSuchOrder"},
    {ErrorCode::DuplicateInvoice, "DuplicateInvoice"},
    {ErrorCode::NoSuchInvoice, "NoSuchInvoice"},
    {ErrorCode::BadState, "BadState"},
    {ErrorCode::ZeroAmount, "ZeroAmount"},
    {ErrorCode::AlreadyConfirmed, "AlreadyConfirmed"},
    {ErrorCode::NoRequiredDocs, "NoRequiredDocs"},
    {ErrorCode::NoSuchDocument, "NoSuchDocument"},
    {ErrorCode::AlreadyValid, "AlreadyValid"},
    {ErrorCode::IndexOutOfRange, "IndexOutOfRange"},
    {ErrorCode::ArityMismatch, "ArityMismatch"},
    {ErrorCode::TypeMismatch, "TypeMismatch"},
    {ErrorCode::NotFound, "NotFound"},
    {ErrorCode::EmptyBundle, "EmptyBundle"},
    {ErrorCode::StorageFailure, "StorageFailure"},
    {ErrorCode::SyntaxError, "SyntaxError"},
    {ErrorCode::UndeclaredActor, "UndeclaredActor"},
    {ErrorCode::UndeclaredContract, "UndeclaredContract"},
    {ErrorCode::UndeclaredVariable, "UndeclaredVariable"},
}};

}  // namespace

std::string_view to_string(ErrorCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "UnknownError";
}

std::optional<ErrorCode> error_code_from_string(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

}  // namespace tradeledger
