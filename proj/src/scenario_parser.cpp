#include <charconv>
#include <map>
#include <set>

#include "tradeledger/scenario.hpp"

namespace tradeledger::scenario {

namespace {

bool is_ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9') || c == '-'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Cursor over one source line. `#` outside a string literal ends the line.
class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return pos_ + 1; }

  void skip_ws() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size() || text_[pos_] == '#';
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  char peek_at(std::size_t offset) const {
    return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0';
  }

  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c, std::string_view what) {
    if (!consume(c)) fail("expected " + std::string(what));
  }

  std::string identifier(std::string_view what) {
    skip_ws();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail("expected " + std::string(what));
    const auto start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void keyword(std::string_view word) {
    const auto col = column_after_ws();
    if (identifier("'" + std::string(word) + "'") != word) fail("expected '" + std::string(word) + "'", col);
  }

  std::uint64_t integer() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected an unsigned integer");
    if (pos_ < text_.size() && is_ident_char(text_[pos_])) fail("malformed integer", start + 1);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{}) fail("integer out of range", start + 1);
    return value;
  }

  std::string quoted() {
    skip_ws();
    const auto start_col = column();
    if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected a quoted string");
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string", start_col);
      const char c = text_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (pos_ >= text_.size()) fail("unterminated string", start_col);
      const char esc = text_[pos_++];
      switch (esc) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        default: fail("unknown escape '\\" + std::string(1, esc) + "'", column() - 2);
      }
    }
    return out;
  }

  // Either a quoted string or a run of non-blank characters.
  std::string path() {
    if (peek() == '"') return quoted();
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '#') ++pos_;
    if (start == pos_) fail("expected a file path");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string address_literal() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    const auto token = text_.substr(start, pos_ - start);
    if (!Address::is_valid_hex(token)) fail("expected a 0x-prefixed 40-digit hex address", start + 1);
    return std::string(token);
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

  std::size_t column_after_ws() {
    skip_ws();
    return column();
  }

  [[noreturn]] void fail(const std::string& message, std::size_t col = 0) const {
    throw ParseError(ErrorCode::SyntaxError, line_, col ? col : pos_ + 1, message);
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct PositionedArg {
  ArgExpr value;
  std::size_t column;
};

class Parser {
 public:
  ScenarioScript run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      parse_line(LineCursor(text.substr(start, end - start), line_no));
      start = end + 1;
    }
    return std::move(script_);
  }

 private:
  [[noreturn]] static void fail(ErrorCode code, const LineCursor& cur, std::size_t col, const std::string& msg) {
    throw ParseError(code, cur.line(), col, msg);
  }

  void parse_line(LineCursor cur) {
    if (cur.at_end()) return;
    const auto col = cur.column_after_ws();
    const auto first = cur.identifier("a statement");
    // A keyword followed by '>' is a call made by an actor of that name.
    const bool is_call = cur.peek() == '>';
    if (!is_call && first == "actor") return parse_actor(cur);
    if (!is_call && first == "deploy") return parse_deploy(cur);
    if (!is_call && first == "attach") return parse_attach(cur);
    if (!is_call && first == "advance") return parse_advance(cur);
    if (!is_call) cur.fail("expected '>' after actor name");
    parse_call(cur, first, col);
  }

  void parse_actor(LineCursor& cur) {
    const auto col = cur.column_after_ws();
    auto name = cur.identifier("actor name");
    const auto address = Address::from_hex(cur.address_literal());
    cur.expect_end();
    if (script_.find_actor(name)) cur.fail("actor '" + name + "' already declared", col);
    script_.actors.push_back(Actor{std::move(name), address});
  }

  void parse_deploy(LineCursor& cur) {
    const auto kind_col = cur.column_after_ws();
    const auto kind_name = cur.identifier("contract kind");
    const auto kind = contract_kind_from_string(kind_name);
    if (!kind) cur.fail("unknown contract kind '" + kind_name + "'", kind_col);
    cur.keyword("as");
    const auto id_col = cur.column_after_ws();
    auto id = cur.identifier("contract id");
    cur.expect_end();
    if (contracts_.contains(id)) cur.fail("contract id '" + id + "' already declared", id_col);
    contracts_.emplace(id, *kind);
    script_.steps.push_back(Step{cur.line(), DeployStep{*kind, std::move(id)}});
  }

  void parse_attach(LineCursor& cur) {
    const auto actor_col = cur.column_after_ws();
    auto actor = cur.identifier("actor name");
    auto path = cur.path();
    cur.keyword("as");
    const auto var_col = cur.column_after_ws();
    auto var = cur.identifier("variable name");
    cur.expect_end();
    require_actor(cur, actor, actor_col);
    if (!vars_.insert(var).second) cur.fail("variable '" + var + "' already declared", var_col);
    script_.steps.push_back(Step{cur.line(), AttachStep{std::move(actor), std::move(path), std::move(var)}});
  }

  void parse_advance(LineCursor& cur) {
    const auto seconds = cur.integer();
    cur.expect_end();
    script_.steps.push_back(Step{cur.line(), AdvanceStep{seconds}});
  }

  PositionedArg parse_arg(LineCursor& cur) {
    const auto col = cur.column_after_ws();
    const char c = cur.peek();
    if (c == '"') return {cur.quoted(), col};
    if (c == '0' && (cur.peek_at(1) == 'x' || cur.peek_at(1) == 'X')) {
      return {Address::from_hex(cur.address_literal()), col};
    }
    if (is_digit(c)) return {cur.integer(), col};
    if (c == '$') {
      cur.consume('$');
      return {VarRef{cur.identifier("variable name")}, col};
    }
    if (c == '[') {
      cur.consume('[');
      StringList list;
      if (!cur.consume(']')) {
        do {
          list.items.push_back(cur.quoted());
        } while (cur.consume(','));
        cur.expect(']', "',' or ']'");
      }
      return {std::move(list), col};
    }
    if (is_ident_start(c)) return {ActorRef{cur.identifier("argument")}, col};
    cur.fail("expected an argument");
  }

  void parse_call(LineCursor& cur, std::string actor, std::size_t actor_col) {
    cur.expect('>', "'>'");
    const auto contract_col = cur.column_after_ws();
    auto contract_id = cur.identifier("contract id");
    cur.expect('.', "'.'");
    const auto fn_col = cur.column_after_ws();
    auto function = cur.identifier("function name");
    cur.expect('(', "'('");
    std::vector<PositionedArg> args;
    if (!cur.consume(')')) {
      do {
        args.push_back(parse_arg(cur));
      } while (cur.consume(','));
      cur.expect(')', "',' or ')'");
    }
    std::optional<ErrorCode> expect_revert;
    if (!cur.at_end()) {
      cur.keyword("expect-revert");
      const auto name_col = cur.column_after_ws();
      const auto name = cur.identifier("error name");
      expect_revert = error_code_from_string(name);
      if (!expect_revert) cur.fail("unknown error name '" + name + "'", name_col);
    }
    cur.expect_end();

    require_actor(cur, actor, actor_col);
    const auto it = contracts_.find(contract_id);
    if (it == contracts_.end()) {
      fail(ErrorCode::UndeclaredContract, cur, contract_col, "contract '" + contract_id + "' not deployed");
    }
    const auto* fn = find_function(it->second, function);
    if (!fn) {
      fail(ErrorCode::UnknownFunction, cur, fn_col,
           std::string(to_string(it->second)) + " has no function '" + function + "'");
    }
    if (args.size() != fn->params.size()) {
      fail(ErrorCode::ArityMismatch, cur, fn_col,
           function + " takes " + std::to_string(fn->params.size()) + " argument(s), got " +
               std::to_string(args.size()));
    }

    CallStep step;
    for (std::size_t i = 0; i < args.size(); ++i) {
      check_arg(cur, fn->params[i], args[i]);
      step.args.push_back(std::move(args[i].value));
    }
    if (fn->payload_arg >= 0) {
      step.payload_len = utf8_length(std::get<std::string>(step.args[static_cast<std::size_t>(fn->payload_arg)]));
    }
    step.actor = std::move(actor);
    step.contract_id = std::move(contract_id);
    step.function = std::move(function);
    step.expect_revert = expect_revert;
    script_.steps.push_back(Step{cur.line(), std::move(step)});
  }

  void check_arg(const LineCursor& cur, ArgType type, const PositionedArg& arg) {
    bool ok = false;
    switch (type) {
      case ArgType::Address:
        if (const auto* ref = std::get_if<ActorRef>(&arg.value)) {
          require_actor(cur, ref->name, arg.column);
          ok = true;
        } else {
          ok = std::holds_alternative<Address>(arg.value);
        }
        break;
      case ArgType::Integer: ok = std::holds_alternative<std::uint64_t>(arg.value); break;
      case ArgType::String: ok = std::holds_alternative<std::string>(arg.value); break;
      case ArgType::StringList: ok = std::holds_alternative<StringList>(arg.value); break;
      case ArgType::Hash:
        if (const auto* var = std::get_if<VarRef>(&arg.value)) {
          if (!vars_.contains(var->name)) {
            fail(ErrorCode::UndeclaredVariable, cur, arg.column, "variable '$" + var->name + "' not attached");
          }
          ok = true;
        }
        break;
    }
    if (!ok) fail(ErrorCode::TypeMismatch, cur, arg.column, "expected " + std::string(to_string(type)));
  }

  void require_actor(const LineCursor& cur, const std::string& name, std::size_t col) const {
    if (!script_.find_actor(name)) fail(ErrorCode::UndeclaredActor, cur, col, "actor '" + name + "' not declared");
  }

  ScenarioScript script_;
  std::map<std::string, ContractKind> contracts_;
  std::set<std::string> vars_;
};

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out + "\"";
}

std::string print_arg(const ArgExpr& arg) {
  struct Visitor {
    std::string operator()(std::uint64_t n) const { return std::to_string(n); }
    std::string operator()(const std::string& s) const { return quote(s); }
    std::string operator()(const ActorRef& a) const { return a.name; }
    std::string operator()(const Address& a) const { return a.to_hex(); }
    std::string operator()(const VarRef& v) const { return "$" + v.name; }
    std::string operator()(const StringList& l) const {
      std::string out = "[";
      for (std::size_t i = 0; i < l.items.size(); ++i) out += (i ? ", " : "") + quote(l.items[i]);
      return out + "]";
    }
  };
  return std::visit(Visitor{}, arg);
}

}  // namespace

const Actor* ScenarioScript::find_actor(std::string_view name) const {
  for (const auto& a : actors) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

ScenarioScript parse(std::string_view text) { return Parser{}.run(text); }

std::string print_step(const Step& step) {
  struct Visitor {
    std::string operator()(const DeployStep& s) const {
      return "deploy " + std::string(to_string(s.kind)) + " as " + s.id;
    }
    std::string operator()(const CallStep& s) const {
      std::string out = s.actor + " > " + s.contract_id + "." + s.function + "(";
      for (std::size_t i = 0; i < s.args.size(); ++i) out += (i ? ", " : "") + print_arg(s.args[i]);
      out += ")";
      if (s.expect_revert) out += " expect-revert " + std::string(to_string(*s.expect_revert));
      return out;
    }
    std::string operator()(const AttachStep& s) const {
      return "attach " + s.actor + " " + quote(s.path) + " as " + s.var;
    }
    std::string operator()(const AdvanceStep& s) const { return "advance " + std::to_string(s.seconds); }
  };
  return std::visit(Visitor{}, step.action);
}

std::string print(const ScenarioScript& script) {
  std::string out;
  for (const auto& a : script.actors) out += "actor " + a.name + " " + a.address.to_hex() + "\n";
  for (const auto& s : script.steps) out += print_step(s) + "\n";
  return out;
}

}  // namespace tradeledger::scenario
