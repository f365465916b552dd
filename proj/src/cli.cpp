#include "tradeledger/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "tradeledger/docstore.hpp"
#include "tradeledger/gasmodel.hpp"
#include "tradeledger/ledger.hpp"
#include "tradeledger/scenario.hpp"

namespace tradeledger::cli {

namespace {

struct CliConfig {
  std::string config_path;
  std::string schedule_path;
  std::string fee_source = "gas";
  std::string format = "text";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ChainConfig resolve_config(const CliConfig& cli) {
  std::string path = cli.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("TRADELEDGER_CONFIG"); env && *env) path = env;
  }
  return path.empty() ? ChainConfig{} : load_chain_config(path);
}

GasSchedule resolve_schedule(const CliConfig& cli) {
  return cli.schedule_path.empty() ? GasSchedule::defaults() : GasSchedule::load(cli.schedule_path);
}

std::string rate_display(std::uint64_t rate_micro) {
  auto text = usd_micro_display(rate_micro);
  while (text.back() == '0') text.pop_back();
  if (text.back() == '.') text.pop_back();
  return text;
}

int cmd_deploy(const CliConfig& cli, std::ostream& out) {
  const auto config = resolve_config(cli);
  Ledger ledger(config, resolve_schedule(cli));
  std::vector<Ledger::Deployment> deployments;
  WeiAmount total;
  for (auto kind : kAllContractKinds) {
    deployments.push_back(ledger.deploy_contract(kind, Address{}, ledger.now()));
    total += deployments.back().receipt.fee;
  }
  const auto total_usd = usd_micro(total, config.eth_usd_rate_micro);

  if (cli.format == "tsv") {
    out << "contract\taddress\tgas\tfee_eth\tusd\n";
    for (const auto& d : deployments) {
      out << to_string(d.receipt.contract) << "\t" << d.contract.to_hex() << "\t" << d.receipt.gas_used << "\t"
          << d.receipt.fee.to_eth_string() << "\t" << usd_display(usd_micro(d.receipt.fee, config.eth_usd_rate_micro))
          << "\n";
    }
    out << "TOTAL\t-\t-\t" << total.to_eth_string() << "\t" << usd_micro_display(total_usd) << "\n";
    return kOk;
  }

  out << "Contract deployment (gas price " << config.gas_price_wei.to_eth_string() << " ETH, 1 ETH = "
      << rate_display(config.eth_usd_rate_micro) << " USD)\n";
  for (const auto& d : deployments) {
    out << "  " << std::left << std::setw(16) << to_string(d.receipt.contract) << d.contract.to_hex() << std::right
        << std::setw(10) << d.receipt.gas_used << " gas  " << std::left << std::setw(17)
        << d.receipt.fee.to_eth_string() + " ETH" << usd_display(usd_micro(d.receipt.fee, config.eth_usd_rate_micro))
        << " USD\n";
  }
  out << "Total migration cost: " << total.to_eth_string() << " ETH = " << usd_display(total_usd) << " USD ("
      << usd_micro_display(total_usd) << ")\n";
  return kOk;
}

int cmd_run(const CliConfig& cli, const std::string& path, std::ostream& out, std::ostream& err) {
  const auto text = read_file(path);
  scenario::ScenarioScript script;
  try {
    script = scenario::parse(text);
  } catch (const scenario::ParseError& e) {
    err << path << ":" << e.line() << ":" << e.column() << ": " << to_string(e.code()) << ": " << e.message() << "\n";
    return kInputError;
  }
  const auto config = resolve_config(cli);
  const auto base = std::filesystem::path(path).parent_path();
  const auto report = scenario::execute(script, config, resolve_schedule(cli), scenario::filesystem_source(base),
                                        *fee_source_from_string(cli.fee_source));
  out << (cli.format == "tsv" ? scenario::render_report_tsv(report, config)
                              : scenario::render_report_text(report, config));
  if (report.unexpected_outcomes > 0) {
    for (const auto& s : report.steps) {
      if (s.unexpected) err << path << ":" << s.line << ": unexpected outcome for '" << s.text << "'\n";
    }
    return kUnexpectedRevert;
  }
  return kOk;
}

int cmd_report(const CliConfig& cli, std::ostream& out) {
  const auto config = resolve_config(cli);
  const auto report = scenario::execute(scenario::canonical_lc_scenario(), config, resolve_schedule(cli),
                                        scenario::canonical_file_source(), *fee_source_from_string(cli.fee_source));
  out << (cli.format == "tsv" ? render_cost_table_tsv(report.cost, config)
                              : render_cost_table_text(report.cost, config));
  return kOk;
}

int cmd_hash(const std::string& path, std::ostream& out) {
  out << sha256(read_file(path)).to_hex() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gas-metered trade-finance ledger simulator", "tradeledger"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cli;
  app.add_option("--config", cli.config_path, "Chain config file (key=value); defaults to $TRADELEDGER_CONFIG");
  app.add_option("--schedule", cli.schedule_path, "Gas schedule CSV; defaults to the built-in cost table");
  app.add_option("--fee-source", cli.fee_source, "Fee column for cost reports")
      ->check(CLI::IsMember({"gas", "table"}));
  app.add_option("--format", cli.format, "Output format")->check(CLI::IsMember({"text", "tsv"}));

  auto* deploy = app.add_subcommand("deploy", "Deploy the three contracts and report migration cost");
  std::string run_path;
  auto* run_cmd = app.add_subcommand("run", "Execute a scenario script");
  run_cmd->add_option("file", run_path, "Scenario file")->required();
  auto* report = app.add_subcommand("report", "Cost table for the canonical letter-of-credit scenario");
  std::string hash_path;
  auto* hash = app.add_subcommand("hash", "Print the content hash of a file");
  hash->add_option("file", hash_path, "File to hash")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (deploy->parsed()) return cmd_deploy(cli, out);
    if (run_cmd->parsed()) return cmd_run(cli, run_path, out, err);
    if (report->parsed()) return cmd_report(cli, out);
    if (hash->parsed()) return cmd_hash(hash_path, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace tradeledger::cli
