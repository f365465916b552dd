#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "tradeledger/scenario.hpp"

namespace tradeledger::scenario {

namespace {

constexpr std::string_view kCanonicalSource = R"(# Letter-of-credit trade cycle: a sales order financed under a three-party
# agreement and paid against validated shipping documents.

actor buyer     0x00000000000000000000000000000000000000b1
actor seller    0x00000000000000000000000000000000000000c2
actor financier 0x00000000000000000000000000000000000000d3
actor bank      0x00000000000000000000000000000000000000e4

deploy Sales as sales
deploy Financial as finance
deploy LetterOfCredit as lc

buyer > sales.setSalesContract(buyer, seller)
buyer > sales.addOrder("PO-1", "Order PO-1: 500 bales combed cotton yarn 30s CIF Port Klang 2021")
buyer > sales.orderExists("PO-1")
seller > sales.confirmOrder("PO-1")
buyer > sales.addOrder("PO-2", "Order PO-2: sample lot, 2 bales")
buyer > sales.cancelOrder("PO-2")

buyer > finance.setFinancialAgreementParties(buyer, financier, seller)
buyer > finance.confirmAgreement()
financier > finance.confirmAgreement()
seller > finance.confirmAgreement()

bank > lc.initializeContract(buyer, seller, bank, 250000, ["invoice", "billOfLading"])
attach seller docs/commercial_invoice.txt as invoiceDoc
attach seller docs/bill_of_lading.txt as ladingDoc
seller > lc.addDocument($invoiceDoc, "invoice")
seller > lc.addDocument($ladingDoc, "billOfLading")
buyer > lc.getNumberOfDocuments()
buyer > lc.getDocumentID(0)
bank > lc.validateDocument(0)
bank > lc.validateDocument(1)
buyer > lc.IsDocumentValid(1)

seller > sales.createInvoice("INV-1", "PO-1", 250000)
buyer > sales.confirmInvoice("INV-1")
buyer > sales.receiveOrder("PO-1")
)";

constexpr std::string_view kCommercialInvoice = R"(COMMERCIAL INVOICE INV-1
Seller: 0x00000000000000000000000000000000000000c2
Buyer:  0x00000000000000000000000000000000000000b1
Order:  PO-1
Goods:  500 bales combed cotton yarn 30s
Terms:  CIF Port Klang, Incoterms 2020
Amount: 250000
)";

constexpr std::string_view kBillOfLading = R"(BILL OF LADING BL-7731
Shipper:      0x00000000000000000000000000000000000000c2
Consignee:    to the order of 0x00000000000000000000000000000000000000e4
Notify party: 0x00000000000000000000000000000000000000b1
Vessel:       MV Straits Trader, voyage 118E
Port of loading:   Chittagong
Port of discharge: Port Klang
Description:  500 bales combed cotton yarn 30s, shipped on board, clean
)";

Value resolve(const ArgExpr& arg, const ScenarioScript& script, const std::map<std::string, ContentHash>& vars) {
  struct Visitor {
    const ScenarioScript& script;
    const std::map<std::string, ContentHash>& vars;
    Value operator()(std::uint64_t n) const { return n; }
    Value operator()(const std::string& s) const { return s; }
    Value operator()(const ActorRef& a) const { return script.find_actor(a.name)->address; }
    Value operator()(const Address& a) const { return a; }
    Value operator()(const VarRef& v) const { return vars.at(v.name); }
    Value operator()(const StringList& l) const { return l.items; }
  };
  return std::visit(Visitor{script, vars}, arg);
}

std::string status_text(const StepRecord& s) {
  if (s.receipt) {
    return s.receipt->revert ? "reverted " + std::string(to_string(*s.receipt->revert)) : "confirmed";
  }
  if (s.kind == StepKind::View) {
    return s.view_error ? "reverted " + std::string(to_string(*s.view_error)) : "= " + s.view_value;
  }
  return "";
}

}  // namespace

FileSource filesystem_source(std::filesystem::path base_dir) {
  return [base = std::move(base_dir)](const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) p = base / p;
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::NotFound, "cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
}

ScenarioReport execute(const ScenarioScript& script, Ledger& ledger, DocStore& store, const FileSource& files,
                       FeeSource fee_source) {
  ScenarioReport report;
  std::map<std::string, Address> contracts;
  std::map<std::string, ContentHash> vars;
  const Seconds start = ledger.now();

  const auto record_receipt = [&](StepRecord& rec, const Receipt& r) {
    rec.receipt = r;
    report.receipts.push_back(r);
    report.latencies.push_back(r.latency());
    if (std::find(r.events.begin(), r.events.end(), kSettlementReady) != r.events.end()) {
      report.settlement_ready = true;
    }
  };

  for (const auto& step : script.steps) {
    StepRecord rec;
    rec.line = step.line;
    rec.text = print_step(step);

    if (const auto* deploy = std::get_if<DeployStep>(&step.action)) {
      rec.kind = StepKind::Deploy;
      const auto result = ledger.deploy_contract(deploy->kind, Address{}, ledger.now());
      contracts[deploy->id] = result.contract;
      record_receipt(rec, result.receipt);
      report.deployment_total += result.receipt.fee;
    } else if (const auto* call = std::get_if<CallStep>(&step.action)) {
      const auto& sender = script.find_actor(call->actor)->address;
      const auto& target = contracts.at(call->contract_id);
      std::vector<Value> args;
      args.reserve(call->args.size());
      for (const auto& a : call->args) args.push_back(resolve(a, script, vars));
      rec.expected_revert = call->expect_revert;

      const auto* fn = find_function(call->function);
      std::optional<ErrorCode> revert;
      if (fn && fn->view) {
        rec.kind = StepKind::View;
        const auto outcome = ledger.view(target, call->function, args);
        rec.view_error = outcome.revert;
        rec.view_value = render_value(outcome.value);
        revert = outcome.revert;
      } else {
        rec.kind = StepKind::Call;
        const auto tx = ledger.submit(CallRequest{sender, target, call->function, std::move(args), ledger.now()});
        ledger.mine_until_confirmed(tx);
        record_receipt(rec, ledger.receipt_of(tx));
        revert = rec.receipt->revert;
      }
      rec.unexpected = revert != call->expect_revert;
    } else if (const auto* attach = std::get_if<AttachStep>(&step.action)) {
      rec.kind = StepKind::Attach;
      vars[attach->var] = store.put(files(attach->path));
    } else {
      rec.kind = StepKind::Advance;
      ledger.advance_to(ledger.now() + std::get<AdvanceStep>(step.action).seconds);
    }

    if (rec.unexpected) ++report.unexpected_outcomes;
    report.steps.push_back(std::move(rec));
  }

  report.total_duration_s = ledger.now() - start;
  report.cost = cost_report(report.receipts, fee_source, ledger.schedule(), ledger.config());
  return report;
}

ScenarioReport execute(const ScenarioScript& script, const ChainConfig& config, const GasSchedule& schedule,
                       const FileSource& files, FeeSource fee_source) {
  Ledger ledger(config, schedule);
  DocStore store;
  return execute(script, ledger, store, files, fee_source);
}

std::string render_report_text(const ScenarioReport& report, const ChainConfig& config) {
  std::ostringstream out;
  out << "Steps\n";
  out << std::right << std::setw(5) << "line" << "  " << std::left << std::setw(72) << "action" << std::setw(28)
      << "status" << std::right << std::setw(9) << "gas" << std::setw(10) << "latency" << "\n";
  for (const auto& s : report.steps) {
    std::string text = s.text;
    if (text.size() > 70) text = text.substr(0, 67) + "...";
    std::string status = status_text(s);
    if (s.unexpected) status += " (UNEXPECTED)";
    out << std::right << std::setw(5) << s.line << "  " << std::left << std::setw(72) << text << std::setw(28)
        << status << std::right << std::setw(9)
        << (s.receipt ? std::to_string(s.receipt->gas_used) : std::string(s.kind == StepKind::View ? "0" : ""))
        << std::setw(10) << (s.receipt ? std::to_string(s.receipt->latency()) : std::string()) << "\n";
  }

  out << "\nCost table\n" << render_cost_table_text(report.cost, config);

  out << "\nDeployment total: " << report.deployment_total.to_eth_string() << " ETH, "
      << usd_display(usd_micro(report.deployment_total, config.eth_usd_rate_micro)) << " USD ("
      << usd_micro_display(usd_micro(report.deployment_total, config.eth_usd_rate_micro)) << ")\n";
  const auto max_latency =
      report.latencies.empty() ? Seconds{0} : *std::max_element(report.latencies.begin(), report.latencies.end());
  out << "Cycle latency: " << report.latencies.size() << " transactions, max " << max_latency << " s\n";
  out << "Total simulated duration: " << report.total_duration_s << " s\n";
  out << "Settlement: " << (report.settlement_ready ? "ready" : "not reached") << "\n";
  if (report.unexpected_outcomes > 0) out << "Unexpected outcomes: " << report.unexpected_outcomes << "\n";
  return out.str();
}

std::string render_report_tsv(const ScenarioReport& report, const ChainConfig& config) {
  std::ostringstream out;
  out << "contract\tfunction\tgas\tfee_eth\tusd\tlatency_s\n";
  for (const auto& r : report.receipts) {
    out << to_string(r.contract) << "\t" << r.function_name << "\t" << r.gas_used << "\t" << r.fee.to_eth_string()
        << "\t" << usd_display(usd_micro(r.fee, config.eth_usd_rate_micro)) << "\t" << r.latency() << "\n";
  }
  return out.str();
}

std::string_view canonical_lc_source() { return kCanonicalSource; }

ScenarioScript canonical_lc_scenario() { return parse(kCanonicalSource); }

FileSource canonical_file_source() {
  return [](const std::string& path) -> std::string {
    if (path == "docs/commercial_invoice.txt") return std::string(kCommercialInvoice);
    if (path == "docs/bill_of_lading.txt") return std::string(kBillOfLading);
    throw Error(ErrorCode::NotFound, path);
  };
}

}  // namespace tradeledger::scenario
