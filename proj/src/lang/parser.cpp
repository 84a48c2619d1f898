#include "gpa/lang/parser.hpp"

#include <algorithm>
#include <set>

#include "gpa/error.hpp"
#include "gpa/lang/lexer.hpp"

namespace gpa::lang {

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ModelFile file();
  MomentExpr standalone_expression();

 private:
  // Token access -----------------------------------------------------------
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool is_symbol(std::string_view s, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::kSymbol && t.text == s;
  }
  bool is_ident(std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::kIdentifier;
  }
  bool is_keyword(std::string_view s, std::size_t ahead = 0) const {
    return is_ident(ahead) && peek(ahead).text == s;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.line, t.column, "unexpected " + describe(t), std::move(expected));
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& message) const {
    throw ParseError(t.line, t.column, message);
  }

  const Token& expect_symbol(std::string_view s) {
    if (!is_symbol(s)) fail({"'" + std::string(s) + "'"});
    return next();
  }
  const Token& expect_keyword(std::string_view s) {
    if (!is_keyword(s)) fail({"'" + std::string(s) + "'"});
    return next();
  }
  std::string expect_identifier(const std::string& what) {
    if (!is_ident() || peek().text == "stop") fail({what});
    return next().text;
  }
  double expect_real(const std::string& what) {
    bool negative = false;
    if (is_symbol("-")) {
      next();
      negative = true;
    }
    if (peek().kind != TokenKind::kNumber) fail({what});
    double v = next().number;
    return negative ? -v : v;
  }
  long expect_integer(const std::string& what) {
    const Token& t = peek();
    if (t.kind != TokenKind::kNumber || !t.integral) fail({what});
    next();
    return static_cast<long>(t.number);
  }

  static SourcePos pos_of(const Token& t) { return SourcePos{t.line, t.column}; }

  // Grammar ----------------------------------------------------------------
  ValueRef value_ref();
  ComponentExpr component_expr();
  ComponentExpr component_operand();
  Summation summation();
  Prefix prefix();
  std::vector<std::string> action_set();
  GroupedModel model_definition();
  GroupedModel model_operand();
  Group group();
  AnalysisBlock analysis();
  OdesAnalysis odes();
  SimulationAnalysis simulation();
  ComparisonAnalysis comparison();
  std::vector<Command> command_block();
  Command command();
  MomentExpr expression();
  MomentExpr term();
  MomentExpr unary();
  MomentExpr power();
  MomentExpr primary();
  GCPair gc_pair();
  Moment moment();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::set<std::string> group_labels_;
};

ModelFile Parser::file() {
  ModelFile model;
  std::set<std::string> parameters;
  std::set<std::string> components;

  // Definitions are "name = ..."; the system equation starts with
  // "label {" or "(".
  while (is_ident() && is_symbol("=", 1)) {
    const Token& name = next();
    next();  // '='
    bool is_parameter = peek().kind == TokenKind::kNumber ||
                        (is_symbol("-") && peek(1).kind == TokenKind::kNumber);
    if (is_parameter) {
      if (name.text == "stop") fail_at(name, "'stop' is reserved");
      if (!parameters.insert(name.text).second) {
        fail_at(name, "duplicate definition of parameter '" + name.text + "'");
      }
      double value = expect_real("real number");
      expect_symbol(";");
      model.parameters.push_back(ParameterDef{name.text, value, pos_of(name)});
    } else {
      if (name.text == "stop") fail_at(name, "'stop' is reserved");
      if (!components.insert(name.text).second) {
        fail_at(name, "duplicate definition of component '" + name.text + "'");
      }
      ComponentExpr body = component_expr();
      expect_symbol(";");
      model.components.push_back(ComponentDef{name.text, std::move(body), pos_of(name)});
    }
  }

  if (!(is_ident() && is_symbol("{", 1)) && !is_symbol("(")) {
    if (is_ident()) fail({"'='", "'{'"});
    fail({"definition", "group label", "'('"});
  }
  model.system = model_definition();

  while (peek().kind != TokenKind::kEnd) {
    model.analyses.push_back(analysis());
  }
  return model;
}

MomentExpr Parser::standalone_expression() {
  MomentExpr e = expression();
  if (peek().kind != TokenKind::kEnd) fail({"operator", "end of input"});
  return e;
}

ValueRef Parser::value_ref() {
  const Token& t = peek();
  if (t.kind == TokenKind::kNumber) {
    next();
    return ValueRef{t.number, pos_of(t)};
  }
  if (t.kind == TokenKind::kIdentifier && t.text != "stop") {
    next();
    return ValueRef{t.text, pos_of(t)};
  }
  fail({"parameter name", "number"});
}

// Component := Component <L> Component | Summation | componentId | (Component)
ComponentExpr Parser::component_expr() {
  ComponentExpr left = component_operand();
  while (is_symbol("<")) {
    SourcePos at = pos_of(peek());
    auto actions = action_set();
    ComponentExpr right = component_operand();
    left = ComponentExpr{ComponentCooperation{std::move(left), std::move(right), std::move(actions)},
                         at};
  }
  return left;
}

ComponentExpr Parser::component_operand() {
  const Token& t = peek();
  if (is_symbol("(")) {
    // "(action," opens a prefix; any other '(' groups a component.
    if (is_ident(1) && is_symbol(",", 2)) {
      return ComponentExpr{summation(), pos_of(t)};
    }
    next();
    ComponentExpr inner = component_expr();
    expect_symbol(")");
    return inner;
  }
  if (is_ident() && t.text != "stop") {
    next();
    return ComponentExpr{ComponentRef{t.text, pos_of(t)}, pos_of(t)};
  }
  fail({"'('", "component name"});
}

Summation Parser::summation() {
  Summation s;
  s.prefixes.push_back(prefix());
  while (is_symbol("+")) {
    next();
    s.prefixes.push_back(prefix());
  }
  return s;
}

Prefix Parser::prefix() {
  Prefix p;
  p.pos = pos_of(expect_symbol("("));
  p.action = expect_identifier("action name");
  expect_symbol(",");
  p.rate = value_ref();
  expect_symbol(")");
  expect_symbol(".");
  if (is_symbol("(")) {
    next();
    p.next.kind = Continuation::Kind::kNested;
    p.next.nested = Box<Summation>(summation());
    expect_symbol(")");
  } else if (is_keyword("stop")) {
    next();
    p.next.kind = Continuation::Kind::kStop;
  } else if (is_ident()) {
    p.next.kind = Continuation::Kind::kNamed;
    p.next.name = next().text;
  } else {
    fail({"component name", "'stop'", "'('"});
  }
  return p;
}

std::vector<std::string> Parser::action_set() {
  expect_symbol("<");
  std::vector<std::string> actions;
  if (!is_symbol(">")) {
    while (true) {
      std::string a = expect_identifier("action name");
      if (std::find(actions.begin(), actions.end(), a) == actions.end()) {
        actions.push_back(std::move(a));
      }
      if (!is_symbol(",")) break;
      next();
    }
  }
  if (!is_symbol(">")) fail({"','", "'>'"});
  next();
  return actions;
}

GroupedModel Parser::model_definition() {
  GroupedModel left = model_operand();
  while (is_symbol("<")) {
    auto actions = action_set();
    GroupedModel right = model_operand();
    left = GroupedModel{GroupCooperation{std::move(left), std::move(right), std::move(actions)}};
  }
  return left;
}

GroupedModel Parser::model_operand() {
  if (is_symbol("(")) {
    next();
    GroupedModel inner = model_definition();
    expect_symbol(")");
    return inner;
  }
  if (is_ident() && is_symbol("{", 1)) return GroupedModel{group()};
  if (is_ident()) fail({"'{'"});
  fail({"group label", "'('"});
}

Group Parser::group() {
  Group g;
  const Token& label = next();
  g.label = label.text;
  g.pos = pos_of(label);
  if (!group_labels_.insert(g.label).second) {
    fail_at(label, "duplicate group label '" + g.label + "'");
  }
  expect_symbol("{");
  while (true) {
    GroupMember m;
    m.pos = pos_of(peek());
    m.component = expect_identifier("component name");
    if (is_symbol("[")) {
      next();
      m.multiplicity = value_ref();
      expect_symbol("]");
    }
    g.members.push_back(std::move(m));
    if (!is_symbol("|")) break;
    next();
  }
  if (!is_symbol("}")) fail({"'|'", "'['", "'}'"});
  next();
  return g;
}

AnalysisBlock Parser::analysis() {
  if (is_keyword("odes")) return odes();
  if (is_keyword("simulation")) return simulation();
  // "comparsion" is accepted as an alternative spelling.
  if (is_keyword("comparison") || is_keyword("comparsion")) return comparison();
  fail({"'odes'", "'simulation'", "'comparison'"});
}

OdesAnalysis Parser::odes() {
  OdesAnalysis a;
  a.pos = pos_of(expect_keyword("odes"));
  expect_symbol("(");
  bool seen_stop = false, seen_step = false, seen_density = false;
  while (true) {
    const Token& key = peek();
    if (key.kind != TokenKind::kIdentifier) fail({"'stopTime'", "'stepSize'", "'density'"});
    next();
    expect_symbol("=");
    if (key.text == "stopTime" && !seen_stop) {
      a.params.stop_time = expect_real("real number");
      seen_stop = true;
    } else if (key.text == "stepSize" && !seen_step) {
      a.params.step_size = expect_real("real number");
      seen_step = true;
    } else if (key.text == "density" && !seen_density) {
      a.params.density = expect_integer("integer");
      seen_density = true;
    } else {
      fail_at(key, "unexpected or repeated odes parameter '" + key.text + "'");
    }
    if (!is_symbol(",")) break;
    next();
  }
  if (!is_symbol(")")) fail({"','", "')'"});
  if (!seen_stop || !seen_step || !seen_density) {
    fail_at(peek(), "odes requires stopTime, stepSize and density");
  }
  next();
  a.commands = command_block();
  return a;
}

SimulationAnalysis Parser::simulation() {
  SimulationAnalysis a;
  a.pos = pos_of(expect_keyword("simulation"));
  expect_symbol("(");
  bool seen_stop = false, seen_step = false, seen_reps = false;
  while (true) {
    const Token& key = peek();
    if (key.kind != TokenKind::kIdentifier) {
      fail({"'stopTime'", "'stepSize'", "'replications'"});
    }
    next();
    expect_symbol("=");
    if (key.text == "stopTime" && !seen_stop) {
      a.params.stop_time = expect_real("real number");
      seen_stop = true;
    } else if (key.text == "stepSize" && !seen_step) {
      a.params.step_size = expect_real("real number");
      seen_step = true;
    } else if (key.text == "replications" && !seen_reps) {
      a.params.replications = expect_integer("integer");
      seen_reps = true;
    } else {
      fail_at(key, "unexpected or repeated simulation parameter '" + key.text + "'");
    }
    if (!is_symbol(",")) break;
    next();
  }
  if (!is_symbol(")")) fail({"','", "')'"});
  if (!seen_stop || !seen_step || !seen_reps) {
    fail_at(peek(), "simulation requires stopTime, stepSize and replications");
  }
  next();
  a.commands = command_block();
  return a;
}

ComparisonAnalysis Parser::comparison() {
  ComparisonAnalysis a;
  a.pos = pos_of(next());
  expect_symbol("(");
  a.odes = odes();
  expect_symbol(",");
  a.simulation = simulation();
  expect_symbol(")");
  a.commands = command_block();
  return a;
}

std::vector<Command> Parser::command_block() {
  expect_symbol("{");
  std::vector<Command> commands;
  while (!is_symbol("}")) {
    if (!is_keyword("plot") && !is_keyword("plotSwitchpoints")) {
      fail({"'plot'", "'plotSwitchpoints'", "'}'"});
    }
    commands.push_back(command());
  }
  next();
  return commands;
}

Command Parser::command() {
  Command c;
  const Token& head = next();
  c.pos = pos_of(head);
  expect_symbol("(");
  if (head.text == "plot") {
    PlotCommand plot;
    plot.expressions.push_back(expression());
    while (is_symbol(",")) {
      next();
      plot.expressions.push_back(expression());
    }
    c.kind = std::move(plot);
  } else {
    c.kind = SwitchpointsCommand{static_cast<int>(expect_integer("integer"))};
  }
  if (!is_symbol(")")) fail({"','", "')'"});
  next();
  if (is_symbol("->")) {
    next();
    if (peek().kind != TokenKind::kString) fail({"quoted file name"});
    c.redirect = next().text;
  }
  if (!is_symbol(";")) fail({"'->'", "';'"});
  next();
  return c;
}

MomentExpr Parser::expression() {
  MomentExpr left = term();
  while (is_symbol("+") || is_symbol("-")) {
    BinaryOp op = next().text == "+" ? BinaryOp::kAdd : BinaryOp::kSub;
    MomentExpr right = term();
    left = MomentExpr{BinaryExpr{op, std::move(left), std::move(right)}};
  }
  return left;
}

MomentExpr Parser::term() {
  MomentExpr left = unary();
  while (is_symbol("*") || is_symbol("/")) {
    BinaryOp op = next().text == "*" ? BinaryOp::kMul : BinaryOp::kDiv;
    MomentExpr right = unary();
    left = MomentExpr{BinaryExpr{op, std::move(left), std::move(right)}};
  }
  return left;
}

MomentExpr Parser::unary() {
  if (is_symbol("-")) {
    next();
    return MomentExpr{NegateExpr{unary()}};
  }
  return power();
}

MomentExpr Parser::power() {
  MomentExpr base = primary();
  if (is_symbol("^")) {
    next();
    MomentExpr exponent = unary();
    return MomentExpr{BinaryExpr{BinaryOp::kPow, std::move(base), std::move(exponent)}};
  }
  return base;
}

MomentExpr Parser::primary() {
  const Token& t = peek();
  if (t.kind == TokenKind::kNumber) {
    next();
    return MomentExpr{NumberLiteral{t.number}};
  }
  if (is_symbol("(")) {
    next();
    MomentExpr inner = expression();
    expect_symbol(")");
    return inner;
  }
  if (is_ident() && is_symbol("[", 1)) {
    const std::string& head = t.text;
    if (head == "E") {
      next();
      next();
      Expectation e;
      e.terms.push_back(moment());
      while (is_symbol("+")) {
        next();
        e.terms.push_back(moment());
      }
      if (!is_symbol("]")) fail({"group label", "'+'", "']'"});
      next();
      return MomentExpr{std::move(e)};
    }
    if (head == "Var") {
      next();
      next();
      Variance v;
      v.terms.push_back(gc_pair());
      while (is_symbol("+")) {
        next();
        v.terms.push_back(gc_pair());
      }
      if (!is_symbol("]")) fail({"'+'", "']'"});
      next();
      return MomentExpr{std::move(v)};
    }
    if (head == "Cov") {
      next();
      next();
      Covariance c;
      c.first = gc_pair();
      expect_symbol(",");
      c.second = gc_pair();
      expect_symbol("]");
      return MomentExpr{std::move(c)};
    }
    if (head == "Central" || head == "StandardisedCentral") {
      next();
      next();
      CentralMoment c;
      c.standardised = head == "StandardisedCentral";
      c.pair = gc_pair();
      expect_symbol(",");
      c.order = static_cast<int>(expect_integer("integer"));
      expect_symbol("]");
      return MomentExpr{std::move(c)};
    }
    fail({"'E'", "'Var'", "'Cov'", "'Central'", "'StandardisedCentral'"});
  }
  if (is_ident() && t.text != "stop") {
    next();
    return MomentExpr{ParameterRef{t.text, pos_of(t)}};
  }
  fail({"number", "parameter name", "'E['", "'Var['", "'Cov['", "'Central['", "'('"});
}

GCPair Parser::gc_pair() {
  GCPair p;
  p.pos = pos_of(peek());
  p.group = expect_identifier("group label");
  expect_symbol(":");
  if (!is_ident()) fail({"component name"});
  p.component = next().text;
  return p;
}

Moment Parser::moment() {
  Moment m;
  do {
    GCPair p = gc_pair();
    int exponent = 1;
    if (is_symbol("^")) {
      next();
      exponent = static_cast<int>(expect_integer("integer exponent"));
    }
    m.factors.emplace_back(std::move(p), exponent);
  } while (is_ident() && is_symbol(":", 1));
  return m;
}

}  // namespace

ModelFile parse_model(std::string_view source) {
  Parser parser(tokenize(source));
  return parser.file();
}

MomentExpr parse_moment_expression(std::string_view source) {
  Parser parser(tokenize(source));
  return parser.standalone_expression();
}

}  // namespace gpa::lang
