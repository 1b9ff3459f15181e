#ifndef HYPERSET_SURFACE_HPP
#define HYPERSET_SURFACE_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hyperset/kernel.hpp"
#include "hyperset/neural.hpp"
#include "hyperset/operators.hpp"

namespace hyperset {

/// Syntactic set expression: either a name reference or a brace list.
struct SetExpr {
  std::string name;               // nonempty => reference
  std::vector<SetExpr> elements;  // brace list otherwise
  int line = 0;                   // source position for diagnostics
  int col = 0;

  bool is_name() const { return !name.empty(); }
};

/// A system of set equations, parsed from either the line-oriented form
///
///   a = {b, {}};
///   b = {a};
///   label a = {omega};
///
/// (the first equation names the point) or the inline form
///
///   x0 where x0 = {x0, {}}
///
/// whose head expression is the point. `omega` is predefined unless a system
/// defines it. Labels must be ground (literals and omega only).
struct SystemSpec {
  struct Equation {
    std::string name;
    SetExpr rhs;
    int line = 0;
    int col = 0;
  };
  std::vector<Equation> equations;
  SetExpr point;
  std::map<std::string, SetExpr> labels;
};

/// The graph presented by a system, with the name -> node correspondence,
/// the point node, and resolved label values.
struct SystemGraph {
  SetGraph graph;
  std::vector<std::pair<std::string, NodeId>> named_nodes;  // equation order
  NodeId point = 0;
  Labeling labels;
};

/// Weighted network description. Sections in any order, comments with '#':
///
///   neurons: a, b, c;
///   synapses: a -> b = 1/2, a -> c = 1/3, c -> b = 1;
///   voltages: b = 1;
///   params: alpha = 1/2, theta = 1/2;
///   point: a;
///
/// Unlisted voltages are 0. A synapse pair may be declared at most once.
struct NetworkSpec {
  std::vector<std::string> neurons;
  struct Synapse {
    std::string source;
    std::string target;
    Rational weight;
  };
  std::vector<Synapse> synapses;
  std::vector<std::pair<std::string, int>> voltages;
  Rational alpha;
  Rational theta;
  std::string point;
};

SystemSpec parse_system(std::string_view text);
OperatorExpr parse_opexpr(std::string_view text);
NetworkSpec parse_network(std::string_view text);

SystemGraph system_to_graph(const SystemSpec& spec);

/// Canonical value of the system at its point.
SetValue eval_system(const SystemSpec& spec);

/// Net plus initial state plus neuron names, ready to simulate.
struct NetworkInstance {
  NeuralNet net;
  NeuralState state;
  std::vector<std::string> names;
};

NetworkInstance instantiate_network(const NetworkSpec& spec);

/// Evaluates an expression such as "R({ {}, omega })" or "(R.B)(x) where
/// x = {x}": operator terms applied to set expressions, with names resolved
/// against the optional system (each name denotes its node's decoration),
/// local where-bindings, and the omega builtin.
SetValue eval_expression(std::string_view text, const SystemSpec* system = nullptr);

/// Human-facing form: padded braces, e.g. "{ {}, { {} } }"; membership cycles
/// print as bound variables, e.g. "x0 where x0 = { x0 }".
std::string to_pretty(const SetValue& v);

/// Machine form accepted by parse_system: tight braces, e.g. "{{}, {{}}}"
/// and "x0 where x0 = {x0}". Injective on canonical values.
std::string to_dsl(const SetValue& v);

/// Operator term in the syntax accepted by parse_opexpr (filters, which have
/// no surface syntax, print as <name>).
std::string print_opexpr(const OperatorExpr& op);

std::string export_dot(const SetValue& v);
std::string export_dot(const SetGraph& g);
/// Network export; pass a state to annotate weights and firing neurons, and
/// names to label neurons (defaults to n0, n1, ...).
std::string export_dot(const NeuralNet& net, const NeuralState* state = nullptr,
                       const std::vector<std::string>* names = nullptr);

}  // namespace hyperset

#endif  // HYPERSET_SURFACE_HPP
