#include "tradeledger/gasmodel.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "tradeledger/error.hpp"

namespace tradeledger {

namespace {

__extension__ using uint128 = unsigned __int128;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_u64(std::string_view text, ErrorCode code, std::string_view what) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw Error(code, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw Error(ErrorCode::InvalidSchedule, "bad boolean '" + std::string(text) + "'");
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path, ErrorCode code) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(code, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ScheduleEntry fixed(ContractKind c, std::string name, Gas gas, std::string_view table_fee) {
  return {c, std::move(name), gas, false, 0, WeiAmount::parse_eth(table_fee), false};
}

ScheduleEntry view(ContractKind c, std::string name) {
  return {c, std::move(name), 0, false, 0, WeiAmount{0}, true};
}

}  // namespace

// ---------------------------------------------------------------------------
// ChainConfig
// ---------------------------------------------------------------------------

void ChainConfig::validate() const {
  if (tps < 1) throw Error(ErrorCode::InvalidConfig, "tps must be >= 1");
  if (block_interval_s < 1) throw Error(ErrorCode::InvalidConfig, "block_interval_s must be >= 1");
}

ChainConfig parse_chain_config(std::string_view text) {
  ChainConfig config;
  std::size_t line_no = 0;
  std::set<std::string, std::less<>> seen;
  for (const auto raw : split(text, '\n')) {
    ++line_no;
    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line_no) + ": expected key=value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!seen.emplace(key).second) {
      throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line_no) + ": duplicate key '" +
                                                std::string(key) + "'");
    }
    const auto number = parse_u64(value, ErrorCode::InvalidConfig, key);
    if (key == "gas_price_wei") {
      config.gas_price_wei = WeiAmount(number);
    } else if (key == "tps") {
      config.tps = number;
    } else if (key == "block_interval_s") {
      config.block_interval_s = number;
    } else if (key == "eth_usd_rate_micro") {
      config.eth_usd_rate_micro = number;
    } else {
      throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line_no) + ": unknown key '" +
                                                std::string(key) + "'");
    }
  }
  config.validate();
  return config;
}

ChainConfig load_chain_config(const std::filesystem::path& path) {
  return parse_chain_config(read_file(path, ErrorCode::InvalidConfig));
}

std::string format_chain_config(const ChainConfig& config) {
  std::ostringstream out;
  out << "gas_price_wei=" << config.gas_price_wei.wei() << "\n"
      << "tps=" << config.tps << "\n"
      << "block_interval_s=" << config.block_interval_s << "\n"
      << "eth_usd_rate_micro=" << config.eth_usd_rate_micro << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// GasSchedule
// ---------------------------------------------------------------------------

GasSchedule GasSchedule::defaults() {
  using K = ContractKind;
  GasSchedule s;
  s.gas_per_char_ = 625;
  s.entries_ = {
      fixed(K::Sales, "setSalesContract", 106384, "0.00010638"),
      // 176983 measured with a 64-character order: 136983 + 64 * 625.
      {K::Sales, "addOrder", 136983, true, 64, WeiAmount::parse_eth("0.00017698"), false},
      fixed(K::Sales, "createInvoice", 109016, "0.00010902"),
      fixed(K::Sales, "confirmInvoice", 43758, "0.000043758"),
      fixed(K::Sales, "confirmOrder", 47653, "0.000047653"),
      view(K::Sales, "orderExists"),
      fixed(K::Sales, "cancelOrder", 45495, "0.000045495"),
      fixed(K::Sales, "receiveOrder", 43734, "0.000043734"),
      fixed(K::Financial, "setFinancialAgreementParties", 127510, "0.00012751"),
      fixed(K::Financial, "confirmAgreement", 44678, "0.000044678"),
      fixed(K::LetterOfCredit, "initializeContract", 169459, "0.00016946"),
      // The printed fee disagrees with the gas column (68518 gas would be 0.000068518).
      fixed(K::LetterOfCredit, "addDocument", 68518, "0.000177"),
      view(K::LetterOfCredit, "getNumberOfDocuments"),
      view(K::LetterOfCredit, "getDocumentID"),
      view(K::LetterOfCredit, "IsDocumentValid"),
      fixed(K::LetterOfCredit, "validateDocument", 45242, "0.000045242"),
  };
  s.deployments_ = {
      fixed(K::Sales, std::string(kDeployFunction), 1385540, "0.00138554"),
      fixed(K::Financial, std::string(kDeployFunction), 440383, "0.000440383"),
      fixed(K::LetterOfCredit, std::string(kDeployFunction), 640725, "0.000640725"),
  };
  return s;
}

GasSchedule GasSchedule::parse_csv(std::string_view text) {
  GasSchedule s;
  s.gas_per_char_ = 0;
  bool header_seen = false;
  std::size_t line_no = 0;
  for (const auto raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    if (!header_seen) {
      if (line != kCsvHeader) throw Error(ErrorCode::InvalidSchedule, where() + "expected header '" + std::string(kCsvHeader) + "'");
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 7) throw Error(ErrorCode::InvalidSchedule, where() + "expected 7 fields");
    try {
      if (f[1] == kGasPerCharRow) {
        s.gas_per_char_ = parse_u64(f[2], ErrorCode::InvalidSchedule, "gas_per_char");
        continue;
      }
      const auto kind = contract_kind_from_string(f[0]);
      if (!kind) throw Error(ErrorCode::InvalidSchedule, "unknown contract '" + std::string(f[0]) + "'");
      ScheduleEntry e;
      e.contract = *kind;
      e.function = std::string(f[1]);
      e.base_gas = parse_u64(f[2], ErrorCode::InvalidSchedule, "base_gas");
      e.variable = parse_bool(f[3]);
      e.ref_payload_len = parse_u64(f[4], ErrorCode::InvalidSchedule, "ref_payload_len");
      if (!f[5].empty()) e.table_fee = WeiAmount::parse_eth(f[5]);
      e.view = parse_bool(f[6]);
      (e.function == kDeployFunction ? s.deployments_ : s.entries_).push_back(std::move(e));
    } catch (const Error& err) {
      throw Error(err.code(), where() + err.what());
    }
  }
  if (!header_seen) throw Error(ErrorCode::InvalidSchedule, "missing header");
  s.validate();
  return s;
}

GasSchedule GasSchedule::load(const std::filesystem::path& path) {
  return parse_csv(read_file(path, ErrorCode::InvalidSchedule));
}

std::string GasSchedule::to_csv() const {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  const auto row = [&](const ScheduleEntry& e) {
    out << to_string(e.contract) << "," << e.function << "," << e.base_gas << ","
        << (e.variable ? "true" : "false") << "," << e.ref_payload_len << ","
        << (e.table_fee ? e.table_fee->to_eth_string() : "") << "," << (e.view ? "true" : "false") << "\n";
  };
  for (const auto& e : entries_) row(e);
  for (const auto& e : deployments_) row(e);
  out << "*," << kGasPerCharRow << "," << gas_per_char_ << ",false,0,,false\n";
  return out.str();
}

const ScheduleEntry& GasSchedule::entry(std::string_view function) const {
  const auto it = std::find_if(entries_.begin(), entries_.end(),
                               [&](const ScheduleEntry& e) { return e.function == function; });
  if (it == entries_.end()) throw Error(ErrorCode::UnknownFunction, std::string(function));
  return *it;
}

const ScheduleEntry& GasSchedule::deployment(ContractKind kind) const {
  const auto it = std::find_if(deployments_.begin(), deployments_.end(),
                               [&](const ScheduleEntry& e) { return e.contract == kind; });
  if (it == deployments_.end()) {
    throw Error(ErrorCode::UnknownFunction, "no deployment gas for " + std::string(to_string(kind)));
  }
  return *it;
}

Gas GasSchedule::gas_for(std::string_view function, std::size_t payload_len) const {
  const auto& e = entry(function);
  if (!e.variable) return e.base_gas;
  Gas variable_part = 0;
  Gas total = 0;
  if (__builtin_mul_overflow(static_cast<Gas>(payload_len), gas_per_char_, &variable_part) ||
      __builtin_add_overflow(e.base_gas, variable_part, &total)) {
    throw std::overflow_error("gas overflow");
  }
  return total;
}

void GasSchedule::set_deploy_gas(ContractKind kind, Gas gas) {
  for (auto& e : deployments_) {
    if (e.contract == kind) {
      e.base_gas = gas;
      return;
    }
  }
  throw Error(ErrorCode::UnknownFunction, "no deployment gas for " + std::string(to_string(kind)));
}

void GasSchedule::set_gas_per_char(std::uint64_t gas_per_char) {
  if (gas_per_char == 0) throw Error(ErrorCode::InvalidSchedule, "gas_per_char must be > 0");
  gas_per_char_ = gas_per_char;
}

void GasSchedule::validate() const {
  if (gas_per_char_ == 0) throw Error(ErrorCode::InvalidSchedule, "gas_per_char must be > 0");
  std::set<std::string> names;
  for (const auto& e : entries_) {
    const auto* fn = find_function(e.function);
    if (!fn) throw Error(ErrorCode::UnknownFunction, e.function);
    if (fn->contract != e.contract) {
      throw Error(ErrorCode::InvalidSchedule, e.function + " belongs to " + std::string(to_string(fn->contract)));
    }
    if (!names.insert(e.function).second) throw Error(ErrorCode::InvalidSchedule, "duplicate entry " + e.function);
    if (e.view != fn->view) throw Error(ErrorCode::InvalidSchedule, e.function + ": view flag mismatch");
    if (e.view && (e.base_gas != 0 || e.variable)) {
      throw Error(ErrorCode::InvalidSchedule, e.function + ": view functions are zero-cost and fixed");
    }
    if (!e.variable && e.ref_payload_len != 0) {
      throw Error(ErrorCode::InvalidSchedule, e.function + ": ref_payload_len set on a fixed function");
    }
  }
  for (const auto& fn : functions()) {
    if (!names.contains(std::string(fn.name))) {
      throw Error(ErrorCode::InvalidSchedule, "missing entry for " + std::string(fn.name));
    }
  }
  for (auto kind : kAllContractKinds) {
    const auto n = std::count_if(deployments_.begin(), deployments_.end(),
                                 [&](const ScheduleEntry& e) { return e.contract == kind; });
    if (n != 1) {
      throw Error(ErrorCode::InvalidSchedule, "need exactly one DEPLOY row for " + std::string(to_string(kind)));
    }
  }
}

// ---------------------------------------------------------------------------
// Fees
// ---------------------------------------------------------------------------

WeiAmount fee_wei(Gas gas, const ChainConfig& config) { return config.gas_price_wei * gas; }

std::uint64_t usd_micro(WeiAmount fee, std::uint64_t eth_usd_rate_micro) {
  const uint128 product = static_cast<uint128>(fee.wei()) * eth_usd_rate_micro;
  const uint128 rounded = (product + WeiAmount::kWeiPerEth / 2) / WeiAmount::kWeiPerEth;
  return static_cast<std::uint64_t>(rounded);
}

std::string usd_display(std::uint64_t micro_usd) {
  const std::uint64_t cents = (micro_usd + 5'000) / 10'000;
  std::ostringstream out;
  out << cents / 100 << "." << std::setw(2) << std::setfill('0') << cents % 100;
  return out.str();
}

std::string usd_micro_display(std::uint64_t micro_usd) {
  std::ostringstream out;
  out << micro_usd / 1'000'000 << "." << std::setw(6) << std::setfill('0') << micro_usd % 1'000'000;
  return out.str();
}

FeeQuote quote(Gas gas, const ChainConfig& config) {
  FeeQuote q;
  q.gas = gas;
  q.fee_wei = fee_wei(gas, config);
  q.fee_eth_display = q.fee_wei.to_eth_string();
  q.usd_micro = usd_micro(q.fee_wei, config.eth_usd_rate_micro);
  return q;
}

// ---------------------------------------------------------------------------
// Cost report
// ---------------------------------------------------------------------------

std::string_view to_string(FeeSource source) {
  return source == FeeSource::GasColumn ? "gas" : "table";
}

std::optional<FeeSource> fee_source_from_string(std::string_view text) {
  if (text == "gas") return FeeSource::GasColumn;
  if (text == "table") return FeeSource::TableFeeColumn;
  return std::nullopt;
}

CostReport cost_report(std::span<const Receipt> receipts, FeeSource fee_source, const GasSchedule& schedule,
                       const ChainConfig& config) {
  CostReport report;
  report.fee_source = fee_source;
  report.gas_price_wei = config.gas_price_wei;

  std::map<std::string, std::size_t, std::less<>> row_of;
  for (const auto& e : schedule.entries()) {
    row_of.emplace(e.function, report.rows.size());
    CostRow row;
    row.contract = e.contract;
    row.function = e.function;
    row.view = e.view;
    report.rows.push_back(std::move(row));
  }

  for (const auto& r : receipts) {
    if (r.is_deployment()) continue;
    const auto it = row_of.find(r.function_name);
    if (it == row_of.end()) throw Error(ErrorCode::UnknownFunction, r.function_name);
    auto& row = report.rows[it->second];
    if (row.calls++ > 0) continue;
    row.gas = r.gas_used;
    row.latency_s = r.latency();
    if (fee_source == FeeSource::GasColumn) {
      row.fee = fee_wei(r.gas_used, config);
    } else {
      const auto& table_fee = schedule.entry(r.function_name).table_fee;
      row.fee = table_fee ? *table_fee : fee_wei(r.gas_used, config);
    }
    row.usd_micro = usd_micro(row.fee, config.eth_usd_rate_micro);
  }
  return report;
}

std::vector<ContractTotal> totals_by_contract(const CostReport& report, const ChainConfig& config) {
  std::vector<ContractTotal> totals;
  for (const auto& row : report.rows) {
    auto it = std::find_if(totals.begin(), totals.end(),
                           [&](const ContractTotal& t) { return t.contract == row.contract; });
    if (it == totals.end()) {
      totals.push_back(ContractTotal{row.contract, 0, WeiAmount{0}, 0});
      it = std::prev(totals.end());
    }
    it->gas += row.gas;
    it->fee += row.fee;
  }
  for (auto& t : totals) t.usd_micro = usd_micro(t.fee, config.eth_usd_rate_micro);
  return totals;
}

std::string render_cost_table_text(const CostReport& report, const ChainConfig& config) {
  std::ostringstream out;
  const auto price = report.gas_price_wei.to_eth_string();
  out << std::left << std::setw(16) << "Contract" << std::setw(30) << "Function" << std::right
      << std::setw(12) << "Trans Cost" << "  " << std::left << std::setw(16) << "Gas Price (ETH)"
      << std::setw(17) << "Trans Fee (ETH)" << std::right << std::setw(10) << "Cost (USD)"
      << std::setw(13) << "Latency (s)" << "\n";
  std::optional<ContractKind> last;
  for (const auto& row : report.rows) {
    const std::string contract = last == row.contract ? "" : std::string(to_string(row.contract));
    last = row.contract;
    out << std::left << std::setw(16) << contract << std::setw(30) << row.function << std::right
        << std::setw(12) << row.gas << "  " << std::left << std::setw(16) << price << std::setw(17)
        << row.fee.to_eth_string() << std::right << std::setw(10) << usd_display(row.usd_micro)
        << std::setw(13) << (row.latency_s ? std::to_string(*row.latency_s) : "-") << "\n";
  }
  out << "\nTotals by contract\n";
  for (const auto& t : totals_by_contract(report, config)) {
    out << "  " << std::left << std::setw(16) << to_string(t.contract) << std::right << std::setw(10)
        << t.gas << " gas  " << std::left << std::setw(18) << t.fee.to_eth_string() + " ETH" << usd_display(t.usd_micro) << " USD (" << usd_micro_display(t.usd_micro) << ")\n";
  }
  out << "fee source: " << (report.fee_source == FeeSource::GasColumn ? "gas column" : "table fee column")
      << "\n";
  return out.str();
}

std::string render_cost_table_tsv(const CostReport& report, const ChainConfig& config) {
  std::ostringstream out;
  out << "contract\tfunction\tgas\tfee_eth\tusd\tlatency_s\n";
  for (const auto& row : report.rows) {
    out << to_string(row.contract) << "\t" << row.function << "\t" << row.gas << "\t"
        << row.fee.to_eth_string() << "\t" << usd_display(row.usd_micro) << "\t"
        << (row.latency_s ? std::to_string(*row.latency_s) : "-") << "\n";
  }
  for (const auto& t : totals_by_contract(report, config)) {
    out << to_string(t.contract) << "\tTOTAL\t" << t.gas << "\t" << t.fee.to_eth_string() << "\t"
        << usd_micro_display(t.usd_micro) << "\t-\n";
  }
  return out.str();
}

}  // namespace tradeledger
