#pragma once

// Line-oriented scenario scripts:
//
//   # comment
//   actor <name> <0x-address>
//   deploy <Sales|Financial|LetterOfCredit> as <id>
//   <actor> > <id>.<function>(<arg>, ...) [expect-revert <ErrorName>]
//   attach <actor> <path> as <var>
//   advance <seconds>
//
// Arguments: "quoted strings", bare unsigned integers, actor names or 0x
// addresses, $var (hash of an attached file), ["string", "list"].

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tradeledger/docstore.hpp"
#include "tradeledger/error.hpp"
#include "tradeledger/gasmodel.hpp"
#include "tradeledger/ledger.hpp"

namespace tradeledger::scenario {

class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

struct ActorRef {
  std::string name;
  bool operator==(const ActorRef&) const = default;
};

struct VarRef {
  std::string name;
  bool operator==(const VarRef&) const = default;
};

struct StringList {
  std::vector<std::string> items;
  bool operator==(const StringList&) const = default;
};

using ArgExpr = std::variant<std::uint64_t, std::string, ActorRef, Address, VarRef, StringList>;

struct DeployStep {
  ContractKind kind = ContractKind::Sales;
  std::string id;
  bool operator==(const DeployStep&) const = default;
};

struct CallStep {
  std::string actor;
  std::string contract_id;
  std::string function;
  std::vector<ArgExpr> args;
  std::size_t payload_len = 0;
  std::optional<ErrorCode> expect_revert;
  bool operator==(const CallStep&) const = default;
};

struct AttachStep {
  std::string actor;
  std::string path;
  std::string var;
  bool operator==(const AttachStep&) const = default;
};

struct AdvanceStep {
  Seconds seconds = 0;
  bool operator==(const AdvanceStep&) const = default;
};

using StepAction = std::variant<DeployStep, CallStep, AttachStep, AdvanceStep>;

struct Step {
  std::size_t line = 0;  // source line, not part of equality
  StepAction action;

  bool operator==(const Step& other) const { return action == other.action; }
};

struct Actor {
  std::string name;
  Address address;
  bool operator==(const Actor&) const = default;
};

struct ScenarioScript {
  std::vector<Actor> actors;  // declaration order
  std::vector<Step> steps;

  const Actor* find_actor(std::string_view name) const;
  bool operator==(const ScenarioScript&) const = default;
};

// Throws ParseError with code SyntaxError, UndeclaredActor,
// UndeclaredContract, UndeclaredVariable, UnknownFunction, ArityMismatch or
// TypeMismatch.
ScenarioScript parse(std::string_view text);

// Canonical text form; parse(print(s)) == s.
std::string print(const ScenarioScript& script);
std::string print_step(const Step& step);

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

// Resolves `attach` paths to file contents. Throws Error{NotFound}.
using FileSource = std::function<std::string(const std::string& path)>;

FileSource filesystem_source(std::filesystem::path base_dir);

enum class StepKind { Deploy, Call, View, Attach, Advance };

struct StepRecord {
  std::size_t line = 0;
  StepKind kind = StepKind::Call;
  std::string text;
  std::optional<Receipt> receipt;  // Deploy and Call
  std::optional<ErrorCode> view_error;
  std::string view_value;
  std::optional<ErrorCode> expected_revert;
  bool unexpected = false;  // outcome differs from the expect-revert annotation
};

struct ScenarioReport {
  std::vector<StepRecord> steps;
  std::vector<Receipt> receipts;  // every transactional step in order, deployments included
  CostReport cost;
  std::vector<Seconds> latencies;  // confirm - submit for each receipt
  Seconds total_duration_s = 0;
  bool settlement_ready = false;
  WeiAmount deployment_total;
  std::size_t unexpected_outcomes = 0;
};

// Runs `script` against `ledger`/`store`. Each transactional step is mined
// before the next step is submitted. Reverts are recorded, never fatal.
ScenarioReport execute(const ScenarioScript& script, Ledger& ledger, DocStore& store, const FileSource& files,
                       FeeSource fee_source = FeeSource::GasColumn);

ScenarioReport execute(const ScenarioScript& script, const ChainConfig& config, const GasSchedule& schedule,
                       const FileSource& files, FeeSource fee_source = FeeSource::GasColumn);

std::string render_report_text(const ScenarioReport& report, const ChainConfig& config);
// Columns: contract, function, gas, fee_eth, usd, latency_s; one row per receipt.
std::string render_report_tsv(const ScenarioReport& report, const ChainConfig& config);

// ---------------------------------------------------------------------------
// Canonical letter-of-credit scenario
// ---------------------------------------------------------------------------

std::string_view canonical_lc_source();
ScenarioScript canonical_lc_scenario();
// Serves the documents the canonical scenario attaches.
FileSource canonical_file_source();

}  // namespace tradeledger::scenario
