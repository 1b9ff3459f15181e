#include "hyperset/surface.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <functional>
#include <memory>
#include <sstream>

#include "hyperset/encodings.hpp"

namespace hyperset {

namespace {

// ---------------------------------------------------------------------------
// lexer

enum class Tok {
  Ident,
  Int,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBrack,
  RBrack,
  Comma,
  Semi,
  Eq,
  Dot,
  Pipe,
  Amp,
  Minus,
  Arrow,
  Slash,
  Colon,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  const auto push = [&](Tok kind, std::string value, int l, int c) {
    out.push_back(Token{kind, std::move(value), l, c});
  };
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    const int l = line, c = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      push(Tok::Ident, std::string(text.substr(i, j - i)), l, c);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Tok::Int, std::string(text.substr(i, j - i)), l, c);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (ch == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      push(Tok::Arrow, "->", l, c);
      col += 2;
      i += 2;
      continue;
    }
    Tok kind;
    switch (ch) {
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBrack; break;
      case ']': kind = Tok::RBrack; break;
      case ',': kind = Tok::Comma; break;
      case ';': kind = Tok::Semi; break;
      case '=': kind = Tok::Eq; break;
      case '.': kind = Tok::Dot; break;
      case '|': kind = Tok::Pipe; break;
      case '&': kind = Tok::Amp; break;
      case '-': kind = Tok::Minus; break;
      case '/': kind = Tok::Slash; break;
      case ':': kind = Tok::Colon; break;
      default:
        throw ParseError(l, c, std::string("unexpected character '") + ch + "'");
    }
    push(kind, std::string(1, ch), l, c);
    ++col;
    ++i;
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

const char* token_name(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Eq: return "'='";
    case Tok::Dot: return "'.'";
    case Tok::Pipe: return "'|'";
    case Tok::Amp: return "'&'";
    case Tok::Minus: return "'-'";
    case Tok::Arrow: return "'->'";
    case Tok::Slash: return "'/'";
    case Tok::Colon: return "':'";
    case Tok::End: return "end of input";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// parser

constexpr const char* kOperatorAtoms[] = {"E", "I", "B", "R", "T", "D", "C", "K", "Kdiag"};

bool is_operator_atom(const std::string& name) {
  for (const char* atom : kOperatorAtoms)
    if (name == atom) return true;
  return false;
}

// Evaluable expression: a set expression whose parts may be operator
// applications. Only the surface needs this shape, so it stays internal.
struct EvalExpr {
  enum class Kind { Name, List, Apply };
  Kind kind = Kind::Name;
  std::string name;
  std::vector<EvalExpr> elements;
  std::shared_ptr<OperatorExpr> op;
  std::shared_ptr<EvalExpr> arg;
  int line = 0;
  int col = 0;
};

struct WhereBindings {
  std::vector<SystemSpec::Equation> equations;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  const Token& get() {
    const Token& t = tokens_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }

  bool at(Tok kind) const { return peek().kind == kind; }

  bool at_keyword(const char* word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }

  const Token& expect(Tok kind) {
    if (!at(kind)) fail(std::string("expected ") + token_name(kind));
    return get();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(t.line, t.col, msg + ", found " + describe(t));
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  // ---- set expressions ----

  std::string parse_name(const char* what) {
    if (!at(Tok::Ident)) fail(std::string("expected ") + what);
    const Token& t = get();
    if (t.text == "where" || t.text == "label")
      throw ParseError(t.line, t.col, "'" + t.text + "' is a reserved word");
    return t.text;
  }

  SetExpr parse_setexpr() {
    const Token& t = peek();
    SetExpr e;
    e.line = t.line;
    e.col = t.col;
    if (at(Tok::LBrace)) {
      get();
      if (!at(Tok::RBrace)) {
        for (;;) {
          e.elements.push_back(parse_setexpr());
          if (!at(Tok::Comma)) break;
          get();
        }
      }
      expect(Tok::RBrace);
      return e;
    }
    if (at(Tok::Ident)) {
      e.name = parse_name("a set expression");
      return e;
    }
    fail("expected a set expression");
  }

  WhereBindings parse_where_clause() {
    WhereBindings bindings;
    get();  // "where"
    for (;;) {
      SystemSpec::Equation eq;
      const Token& name_tok = peek();
      eq.name = parse_name("a binding name");
      eq.line = name_tok.line;
      eq.col = name_tok.col;
      expect(Tok::Eq);
      eq.rhs = parse_setexpr();
      bindings.equations.push_back(std::move(eq));
      if (!at(Tok::Comma)) break;
      get();
    }
    return bindings;
  }

  // ---- operator expressions ----

  OperatorExpr parse_op_expr() { return parse_op_low(); }

  OperatorExpr parse_op_low() {
    OperatorExpr lhs = parse_op_intersect();
    while (at(Tok::Pipe) || at(Tok::Minus)) {
      const Tok op = get().kind;
      OperatorExpr rhs = parse_op_intersect();
      lhs = op == Tok::Pipe ? ops::op_union(std::move(lhs), std::move(rhs))
                            : ops::op_diff(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  OperatorExpr parse_op_intersect() {
    OperatorExpr lhs = parse_op_compose();
    while (at(Tok::Amp)) {
      get();
      lhs = ops::op_intersect(std::move(lhs), parse_op_compose());
    }
    return lhs;
  }

  OperatorExpr parse_op_compose() {
    OperatorExpr lhs = parse_op_primary();
    while (at(Tok::Dot)) {
      get();
      lhs = ops::compose(std::move(lhs), parse_op_primary());
    }
    return lhs;
  }

  OperatorExpr parse_op_primary() {
    if (at(Tok::LParen)) {
      get();
      OperatorExpr inner = parse_op_expr();
      expect(Tok::RParen);
      return inner;
    }
    if (!at(Tok::Ident)) fail("expected an operator");
    const Token& t = get();
    const std::string& name = t.text;
    if (name == "E") return ops::elim();
    if (name == "I") return ops::ident();
    if (name == "B") return ops::brace();
    if (name == "R") return ops::russell();
    if (name == "T") return ops::anti_russell();
    if (name == "D") return ops::dual();
    if (name == "C") return ops::c_op();
    if (name == "Kdiag") return ops::k_diag();
    if (name == "K") {
      expect(Tok::LBrack);
      SetExpr head = parse_setexpr();
      WhereBindings bindings;
      if (at_keyword("where")) bindings = parse_where_clause();
      expect(Tok::RBrack);
      return ops::k_a(resolve_ground(head, bindings));
    }
    throw ParseError(t.line, t.col, "unknown operator '" + name + "'");
  }

  // ---- evaluable expressions ----

  EvalExpr parse_eval_expr() {
    const Token& t = peek();
    EvalExpr e;
    e.line = t.line;
    e.col = t.col;
    if (at(Tok::LBrace)) {
      e.kind = EvalExpr::Kind::List;
      get();
      if (!at(Tok::RBrace)) {
        for (;;) {
          e.elements.push_back(parse_eval_expr());
          if (!at(Tok::Comma)) break;
          get();
        }
      }
      expect(Tok::RBrace);
      return e;
    }
    if (at(Tok::LParen) || (at(Tok::Ident) && is_operator_atom(peek().text))) {
      e.kind = EvalExpr::Kind::Apply;
      e.op = std::make_shared<OperatorExpr>(parse_op_expr());
      expect(Tok::LParen);
      e.arg = std::make_shared<EvalExpr>(parse_eval_expr());
      expect(Tok::RParen);
      return e;
    }
    if (at(Tok::Ident)) {
      e.kind = EvalExpr::Kind::Name;
      e.name = parse_name("a set expression");
      return e;
    }
    fail("expected an expression");
  }

  // ---- rationals and integers ----

  Rational parse_rational() {
    bool negative = false;
    if (at(Tok::Minus)) {
      get();
      negative = true;
    }
    const Token& num_tok = expect(Tok::Int);
    const long long num = parse_int(num_tok);
    long long den = 1;
    if (at(Tok::Slash)) {
      get();
      const Token& den_tok = expect(Tok::Int);
      den = parse_int(den_tok);
      if (den == 0) throw ParseError(den_tok.line, den_tok.col, "zero denominator");
    }
    return Rational(negative ? -num : num, den);
  }

  static long long parse_int(const Token& t) {
    try {
      return std::stoll(t.text);
    } catch (const std::exception&) {
      throw ParseError(t.line, t.col, "malformed number '" + t.text + "'");
    }
  }

  // Ground resolution: only literals, where-bound names, and omega.
  static SetValue resolve_ground(const SetExpr& head, const WhereBindings& bindings);

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// expression -> graph assembly

struct GraphBuilder {
  SetGraph graph;
  std::map<std::string, NodeId> defs;                 // equation names
  const std::map<std::string, SetValue>* env = nullptr;  // spliced values
  std::optional<NodeId> omega_node;

  NodeId omega() {
    if (!omega_node) {
      const NodeId w = graph.add_node();
      graph.add_edge(w, w);
      omega_node = w;
    }
    return *omega_node;
  }

  NodeId splice(const SetValue& v) {
    const NodeId base = graph.add_node();
    for (NodeId i = 1; i < v.node_count(); ++i) graph.add_node();
    for (NodeId a = 0; a < v.node_count(); ++a)
      for (NodeId c : v.children_ids(a)) graph.add_edge(base + a, base + c);
    return base;
  }

  NodeId build(const SetExpr& e) {
    if (e.is_name()) {
      const auto def = defs.find(e.name);
      if (def != defs.end()) return def->second;
      if (env) {
        const auto hit = env->find(e.name);
        if (hit != env->end()) return splice(hit->second);
      }
      if (e.name == "omega") return omega();
      throw ParseError(e.line, e.col, "undefined name '" + e.name + "'");
    }
    const NodeId node = graph.add_node();
    for (const SetExpr& child : e.elements) {
      const NodeId c = build(child);
      graph.add_edge(node, c);
    }
    return node;
  }
};

SetGraph assemble_system(const SystemSpec& spec, GraphBuilder& builder, NodeId* point) {
  for (const auto& eq : spec.equations) {
    if (builder.defs.count(eq.name))
      throw ParseError(eq.line, eq.col, "duplicate definition of '" + eq.name + "'");
    builder.defs.emplace(eq.name, builder.graph.add_node());
  }
  for (const auto& eq : spec.equations) {
    if (eq.rhs.is_name())
      throw ParseError(eq.rhs.line, eq.rhs.col, "equation body must be a brace list");
    const NodeId node = builder.defs.at(eq.name);
    for (const SetExpr& child : eq.rhs.elements)
      builder.graph.add_edge(node, builder.build(child));
  }
  *point = builder.build(spec.point);
  return builder.graph;
}

}  // namespace

SetValue Parser::resolve_ground(const SetExpr& head, const WhereBindings& bindings) {
  SystemSpec spec;
  spec.equations = bindings.equations;
  spec.point = head;
  GraphBuilder builder;
  NodeId point = 0;
  const SetGraph g = assemble_system(spec, builder, &point);
  return canon(g, point);
}

namespace {

void check_defined_names(const SetExpr& e, const std::set<std::string>& defined) {
  if (e.is_name()) {
    if (!defined.count(e.name) && e.name != "omega")
      throw ParseError(e.line, e.col, "undefined name '" + e.name + "'");
    return;
  }
  for (const SetExpr& child : e.elements) check_defined_names(child, defined);
}

void validate_system(const SystemSpec& spec) {
  std::set<std::string> defined;
  for (const auto& eq : spec.equations) {
    if (!defined.insert(eq.name).second)
      throw ParseError(eq.line, eq.col, "duplicate definition of '" + eq.name + "'");
  }
  for (const auto& eq : spec.equations) {
    if (eq.rhs.is_name())
      throw ParseError(eq.rhs.line, eq.rhs.col, "equation body must be a brace list");
    check_defined_names(eq.rhs, defined);
  }
  check_defined_names(spec.point, defined);
  for (const auto& [name, expr] : spec.labels) {
    if (!defined.count(name))
      throw ParseError(expr.line, expr.col, "label for undefined name '" + name + "'");
    // labels are ground: resolved with no system names in scope
    check_defined_names(expr, {});
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// public parsers

SystemSpec parse_system(std::string_view text) {
  Parser parser(text);
  SystemSpec spec;

  const bool equation_form =
      (parser.at_keyword("label") && parser.peek(1).kind == Tok::Ident) ||
      (parser.peek().kind == Tok::Ident && parser.peek(1).kind == Tok::Eq);

  if (!equation_form) {
    spec.point = parser.parse_setexpr();
    if (parser.at_keyword("where")) {
      const WhereBindings bindings = parser.parse_where_clause();
      spec.equations = bindings.equations;
    }
    parser.expect(Tok::End);
    validate_system(spec);
    return spec;
  }

  while (!parser.at(Tok::End)) {
    if (parser.at_keyword("label")) {
      parser.get();
      const Token& name_tok = parser.peek();
      const std::string name = parser.parse_name("a node name");
      parser.expect(Tok::Eq);
      SetExpr rhs = parser.parse_setexpr();
      parser.expect(Tok::Semi);
      if (!spec.labels.emplace(name, std::move(rhs)).second)
        throw ParseError(name_tok.line, name_tok.col, "duplicate label for '" + name + "'");
      continue;
    }
    SystemSpec::Equation eq;
    const Token& name_tok = parser.peek();
    eq.name = parser.parse_name("an equation name");
    eq.line = name_tok.line;
    eq.col = name_tok.col;
    parser.expect(Tok::Eq);
    eq.rhs = parser.parse_setexpr();
    parser.expect(Tok::Semi);
    spec.equations.push_back(std::move(eq));
  }
  if (spec.equations.empty()) {
    const Token& t = parser.peek();
    throw ParseError(t.line, t.col, "system defines no equations");
  }
  spec.point.name = spec.equations.front().name;
  spec.point.line = spec.equations.front().line;
  spec.point.col = spec.equations.front().col;
  validate_system(spec);
  return spec;
}

OperatorExpr parse_opexpr(std::string_view text) {
  Parser parser(text);
  OperatorExpr op = parser.parse_op_expr();
  parser.expect(Tok::End);
  return op;
}

NetworkSpec parse_network(std::string_view text) {
  Parser parser(text);
  NetworkSpec spec;
  bool have_neurons = false, have_params = false, have_point = false;
  bool have_synapses = false, have_voltages = false;
  bool have_alpha = false, have_theta = false;

  while (!parser.at(Tok::End)) {
    const Token& section_tok = parser.peek();
    if (section_tok.kind != Tok::Ident)
      throw ParseError(section_tok.line, section_tok.col, "expected a section name");
    const std::string section = parser.get().text;
    parser.expect(Tok::Colon);

    if (section == "neurons") {
      if (have_neurons)
        throw ParseError(section_tok.line, section_tok.col, "duplicate neurons section");
      have_neurons = true;
      for (;;) {
        const Token& t = parser.peek();
        const std::string name = parser.parse_name("a neuron name");
        if (std::find(spec.neurons.begin(), spec.neurons.end(), name) != spec.neurons.end())
          throw ParseError(t.line, t.col, "duplicate neuron '" + name + "'");
        spec.neurons.push_back(name);
        if (!parser.at(Tok::Comma)) break;
        parser.get();
      }
      parser.expect(Tok::Semi);
    } else if (section == "synapses") {
      if (have_synapses)
        throw ParseError(section_tok.line, section_tok.col, "duplicate synapses section");
      have_synapses = true;
      if (!parser.at(Tok::Semi)) {
        for (;;) {
          NetworkSpec::Synapse syn;
          const Token& t = parser.peek();
          syn.source = parser.parse_name("a neuron name");
          parser.expect(Tok::Arrow);
          syn.target = parser.parse_name("a neuron name");
          parser.expect(Tok::Eq);
          syn.weight = parser.parse_rational();
          for (const auto& other : spec.synapses)
            if (other.source == syn.source && other.target == syn.target)
              throw ParseError(t.line, t.col,
                               "duplicate synapse " + syn.source + " -> " + syn.target);
          spec.synapses.push_back(std::move(syn));
          if (!parser.at(Tok::Comma)) break;
          parser.get();
        }
      }
      parser.expect(Tok::Semi);
    } else if (section == "voltages") {
      if (have_voltages)
        throw ParseError(section_tok.line, section_tok.col, "duplicate voltages section");
      have_voltages = true;
      if (!parser.at(Tok::Semi)) {
        for (;;) {
          const std::string name = parser.parse_name("a neuron name");
          parser.expect(Tok::Eq);
          const Token& value_tok = parser.expect(Tok::Int);
          if (value_tok.text != "0" && value_tok.text != "1")
            throw ParseError(value_tok.line, value_tok.col, "voltage must be 0 or 1");
          spec.voltages.emplace_back(name, value_tok.text == "1" ? 1 : 0);
          if (!parser.at(Tok::Comma)) break;
          parser.get();
        }
      }
      parser.expect(Tok::Semi);
    } else if (section == "params") {
      if (have_params)
        throw ParseError(section_tok.line, section_tok.col, "duplicate params section");
      have_params = true;
      for (;;) {
        const Token& t = parser.peek();
        const std::string key = parser.parse_name("alpha or theta");
        parser.expect(Tok::Eq);
        const Rational value = parser.parse_rational();
        if (key == "alpha") {
          have_alpha = true;
          spec.alpha = value;
        } else if (key == "theta") {
          have_theta = true;
          spec.theta = value;
        } else {
          throw ParseError(t.line, t.col, "unknown parameter '" + key + "'");
        }
        if (!parser.at(Tok::Comma)) break;
        parser.get();
      }
      parser.expect(Tok::Semi);
    } else if (section == "point") {
      if (have_point)
        throw ParseError(section_tok.line, section_tok.col, "duplicate point section");
      have_point = true;
      spec.point = parser.parse_name("a neuron name");
      parser.expect(Tok::Semi);
    } else {
      throw ParseError(section_tok.line, section_tok.col,
                       "unknown section '" + section + "'");
    }
  }

  const Token& end = parser.peek();
  if (!have_neurons) throw ParseError(end.line, end.col, "missing neurons section");
  if (!have_params || !have_alpha || !have_theta)
    throw ParseError(end.line, end.col, "params must set alpha and theta");
  if (!have_point) throw ParseError(end.line, end.col, "missing point section");

  const auto declared = [&](const std::string& name) {
    return std::find(spec.neurons.begin(), spec.neurons.end(), name) != spec.neurons.end();
  };
  for (const auto& syn : spec.synapses)
    if (!declared(syn.source) || !declared(syn.target))
      throw ParseError(end.line, end.col,
                       "synapse uses undeclared neuron " + syn.source + " -> " + syn.target);
  for (const auto& [name, value] : spec.voltages)
    if (!declared(name))
      throw ParseError(end.line, end.col, "voltage for undeclared neuron '" + name + "'");
  if (!declared(spec.point))
    throw ParseError(end.line, end.col, "point names undeclared neuron '" + spec.point + "'");
  return spec;
}

// ---------------------------------------------------------------------------
// resolution and evaluation

SystemGraph system_to_graph(const SystemSpec& spec) {
  GraphBuilder builder;
  SystemGraph out;
  out.point = 0;
  out.graph = assemble_system(spec, builder, &out.point);
  for (const auto& eq : spec.equations)
    out.named_nodes.emplace_back(eq.name, builder.defs.at(eq.name));

  for (const auto& [name, expr] : spec.labels) {
    const auto def = builder.defs.find(name);
    if (def == builder.defs.end())
      throw ParseError(expr.line, expr.col, "label for undefined name '" + name + "'");
    out.labels.emplace(def->second, Parser::resolve_ground(expr, {}));
  }
  return out;
}

SetValue eval_system(const SystemSpec& spec) {
  const SystemGraph sg = system_to_graph(spec);
  return canon(sg.graph, sg.point);
}

NetworkInstance instantiate_network(const NetworkSpec& spec) {
  std::map<std::string, NodeId> index;
  for (const auto& name : spec.neurons)
    index.emplace(name, static_cast<NodeId>(index.size()));

  SetGraph g(spec.neurons.size());
  std::map<Edge, Rational> weight_of;
  for (const auto& syn : spec.synapses) {
    const Edge e{index.at(syn.source), index.at(syn.target)};
    g.add_edge(e.first, e.second);
    weight_of.emplace(e, syn.weight);
  }

  NeuralNet net(std::move(g), spec.alpha, spec.theta, index.at(spec.point));
  NeuralState state;
  state.weights.reserve(net.synapses().size());
  for (const Edge& e : net.synapses()) state.weights.push_back(weight_of.at(e));
  state.voltages.assign(spec.neurons.size(), 0);
  for (const auto& [name, value] : spec.voltages)
    state.voltages[index.at(name)] = static_cast<std::uint8_t>(value);

  return NetworkInstance{std::move(net), std::move(state), spec.neurons};
}

namespace {

SetValue evaluate_node(const EvalExpr& e, const std::map<std::string, SetValue>& env) {
  switch (e.kind) {
    case EvalExpr::Kind::Name: {
      const auto hit = env.find(e.name);
      if (hit != env.end()) return hit->second;
      if (e.name == "omega") return quine_atom();
      throw ParseError(e.line, e.col, "undefined name '" + e.name + "'");
    }
    case EvalExpr::Kind::List: {
      std::vector<SetValue> elems;
      elems.reserve(e.elements.size());
      for (const EvalExpr& child : e.elements) elems.push_back(evaluate_node(child, env));
      return make_set(elems);
    }
    case EvalExpr::Kind::Apply:
      return apply(*e.op, evaluate_node(*e.arg, env));
  }
  throw Error("evaluate: unknown node kind");
}

}  // namespace

SetValue eval_expression(std::string_view text, const SystemSpec* system) {
  std::map<std::string, SetValue> env;
  if (system) {
    const SystemGraph sg = system_to_graph(*system);
    const Decoration d = decorate(sg.graph);
    for (const auto& [name, node] : sg.named_nodes) env.emplace(name, d[node]);
  }

  Parser parser(text);
  const EvalExpr expr = parser.parse_eval_expr();
  if (parser.at_keyword("where")) {
    const WhereBindings bindings = parser.parse_where_clause();
    // solve the local equations against the outer environment
    SystemSpec local;
    local.equations = bindings.equations;
    local.point.name = bindings.equations.front().name;
    GraphBuilder builder;
    builder.env = &env;
    NodeId ignored = 0;
    const SetGraph g = assemble_system(local, builder, &ignored);
    const Decoration d = decorate(g);
    for (const auto& [name, node] : builder.defs) env.insert_or_assign(name, d[node]);
  }
  parser.expect(Tok::End);
  return evaluate_node(expr, env);
}

// ---------------------------------------------------------------------------
// printers

namespace {

std::vector<bool> cyclic_nodes(const SetValue& v) {
  const std::size_t n = v.node_count();
  std::vector<bool> cyclic(n, false);
  for (NodeId start = 0; start < n; ++start) {
    // start is cyclic iff it is reachable from one of its children
    std::vector<char> seen(n, 0);
    std::vector<NodeId> queue;
    for (NodeId c : v.children_ids(start))
      if (!seen[c]) {
        seen[c] = 1;
        queue.push_back(c);
      }
    for (std::size_t h = 0; h < queue.size() && !seen[start]; ++h)
      for (NodeId c : v.children_ids(queue[h]))
        if (!seen[c]) {
          seen[c] = 1;
          queue.push_back(c);
        }
    cyclic[start] = seen[start] != 0;
  }
  return cyclic;
}

std::string print_value(const SetValue& v, bool padded) {
  const std::vector<bool> cyclic = cyclic_nodes(v);
  std::vector<std::string> var;
  var.reserve(v.node_count());
  std::size_t next_var = 0;
  for (NodeId i = 0; i < v.node_count(); ++i)
    var.push_back(cyclic[i] ? "x" + std::to_string(next_var++) : "");

  const std::function<std::string(NodeId)> body = [&](NodeId node) {
    std::string inner;
    bool first = true;
    for (NodeId c : v.children_ids(node)) {
      if (!first) inner += ", ";
      first = false;
      inner += cyclic[c] ? var[c] : body(c);
    }
    if (inner.empty()) return std::string("{}");
    if (padded) return "{ " + inner + " }";
    return "{" + inner + "}";
  };

  std::string out = cyclic[v.point()] ? var[v.point()] : body(v.point());
  if (next_var > 0) {
    out += " where ";
    bool first = true;
    for (NodeId i = 0; i < v.node_count(); ++i) {
      if (!cyclic[i]) continue;
      if (!first) out += ", ";
      first = false;
      out += var[i] + " = " + body(i);
    }
  }
  return out;
}

}  // namespace

std::string to_pretty(const SetValue& v) { return print_value(v, true); }

std::string to_dsl(const SetValue& v) { return print_value(v, false); }

std::string print_opexpr(const OperatorExpr& op) {
  switch (op.kind()) {
    case OpKind::Elim: return "E";
    case OpKind::Ident: return "I";
    case OpKind::Brace: return "B";
    case OpKind::Russell: return "R";
    case OpKind::AntiRussell: return "T";
    case OpKind::Dual: return "D";
    case OpKind::COp: return "C";
    case OpKind::KDiag: return "Kdiag";
    case OpKind::KParam: return "K[" + to_dsl(op.param()) + "]";
    case OpKind::Filter: return "<" + op.filter_name() + ">";
    case OpKind::Compose: return "(" + print_opexpr(op.lhs()) + "." + print_opexpr(op.rhs()) + ")";
    case OpKind::Union:
      return "(" + print_opexpr(op.lhs()) + " | " + print_opexpr(op.rhs()) + ")";
    case OpKind::Intersect:
      return "(" + print_opexpr(op.lhs()) + " & " + print_opexpr(op.rhs()) + ")";
    case OpKind::Diff:
      return "(" + print_opexpr(op.lhs()) + " - " + print_opexpr(op.rhs()) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// DOT export

namespace {

std::string dot_graph(std::size_t node_count,
                      const std::function<std::string(NodeId)>& node_attrs,
                      const std::vector<Edge>& edges,
                      const std::function<std::string(std::size_t)>& edge_attrs) {
  std::ostringstream out;
  out << "digraph hyperset {\n";
  for (NodeId i = 0; i < node_count; ++i) {
    out << "  n" << i;
    const std::string attrs = node_attrs(i);
    if (!attrs.empty()) out << " [" << attrs << "]";
    out << ";\n";
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    out << "  n" << edges[k].first << " -> n" << edges[k].second;
    const std::string attrs = edge_attrs(k);
    if (!attrs.empty()) out << " [" << attrs << "]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string export_dot(const SetValue& v) {
  return dot_graph(
      v.node_count(),
      [&](NodeId i) {
        std::string attrs = "label=\"x" + std::to_string(i) + "\"";
        if (i == v.point()) attrs += ", shape=doublecircle";
        return attrs;
      },
      v.as_graph().edges(), [](std::size_t) { return std::string(); });
}

std::string export_dot(const SetGraph& g) {
  return dot_graph(
      g.node_count(),
      [](NodeId i) { return "label=\"n" + std::to_string(i) + "\""; }, g.edges(),
      [](std::size_t) { return std::string(); });
}

std::string export_dot(const NeuralNet& net, const NeuralState* state,
                       const std::vector<std::string>* names) {
  if (state) validate_state(net, *state);
  if (names && names->size() != net.neuron_count())
    throw Error("export_dot: names not total on neurons");
  return dot_graph(
      net.neuron_count(),
      [&](NodeId i) {
        std::string attrs =
            "label=\"" + (names ? (*names)[i] : "n" + std::to_string(i)) + "\"";
        if (i == net.point()) attrs += ", shape=doublecircle";
        if (state && state->voltages[i] == 1) attrs += ", style=filled";
        return attrs;
      },
      net.synapses(),
      [&](std::size_t k) {
        if (!state) return std::string();
        return "label=\"" + state->weights[k].to_string() + "\"";
      });
}

}  // namespace hyperset
