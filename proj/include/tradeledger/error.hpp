#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace tradeledger {

// Every failure the library reports, whether as a contract revert reason or
// as a thrown Error. Names are stable: they appear in receipts, reports,
// transition tables and `expect-revert` annotations.
enum class ErrorCode {
  // ledger
  UnknownContract,
  UnknownTx,
  Pending,
  InvalidTime,
  // gas model / configuration
  UnknownFunction,
  InvalidConfig,
  InvalidSchedule,
  // contract reverts
  AlreadyInitialized,
  NotInitialized,
  SameParty,
  DuplicateParty,
  NotBuyer,
  NotSeller,
  NotParty,
  NotBeneficiary,
  NotIssuingBank,
  DuplicateOrder,
  NoSuchOrder,
  DuplicateInvoice,
  NoSuchInvoice,
  BadState,
  ZeroAmount,
  AlreadyConfirmed,
  NoRequiredDocs,
  NoSuchDocument,
  AlreadyValid,
  IndexOutOfRange,
  // call encoding
  ArityMismatch,
  TypeMismatch,
  // docstore
  NotFound,
  EmptyBundle,
  StorageFailure,
  // scenario
  SyntaxError,
  UndeclaredActor,
  UndeclaredContract,
  UndeclaredVariable,
};

std::string_view to_string(ErrorCode code);
std::optional<ErrorCode> error_code_from_string(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}
  explicit Error(ErrorCode code) : std::runtime_error(std::string(to_string(code))), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Value-or-revert result for contract operations, where a failure is an
// ordinary outcome rather than an exceptional one.
template <typename T>
class Result {
 public:
  Result(T value) : data_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Result(ErrorCode code) : data_(code) {}       // NOLINT(google-explicit-constructor)

  bool ok() const { return std::holds_alternative<T>(data_); }
  explicit operator bool() const { return ok(); }

  const T& value() const {
    if (!ok()) throw Error(error());
    return std::get<T>(data_);
  }
  ErrorCode error() const { return std::get<ErrorCode>(data_); }

 private:
  std::variant<T, ErrorCode> data_;
};

struct Unit {
  bool operator==(const Unit&) const = default;
};

using Status = Result<Unit>;

}  // namespace tradeledger
