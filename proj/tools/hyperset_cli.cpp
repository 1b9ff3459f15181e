// Command-line front end: evaluate expressions, canonize and decorate
// equation systems, simulate weighted threshold networks, check operator
// axioms, and export DOT. Exit status: 0 success, 1 domain error, 2 usage
// or syntax error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hyperset/decoration.hpp"
#include "hyperset/neural.hpp"
#include "hyperset/operators.hpp"
#include "hyperset/surface.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct UsageFailure {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageFailure{"cannot open file: " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void render_axiom_line(std::ostream& out, const char* tag, const char* name,
                       const hyperset::AxiomCheck& check) {
  out << tag << " " << name << ": " << (check.passed ? "PASS" : "FAIL");
  if (!check.passed) {
    if (check.witness) out << "  witness: " << hyperset::to_dsl(*check.witness);
    if (check.pair_witness)
      out << "  witness: x = " << hyperset::to_dsl(check.pair_witness->first)
          << ", y = " << hyperset::to_dsl(check.pair_witness->second);
  }
  out << "\n";
}

int run_eval(const std::string& expr, const std::string& system_path) {
  hyperset::SystemSpec system;
  const bool with_system = !system_path.empty();
  if (with_system) system = hyperset::parse_system(read_file(system_path));
  const hyperset::SetValue value =
      hyperset::eval_expression(expr, with_system ? &system : nullptr);
  std::cout << hyperset::to_pretty(value) << "\n";
  return kOk;
}

int run_canon(const std::string& path) {
  const hyperset::SystemSpec spec = hyperset::parse_system(read_file(path));
  std::cout << hyperset::to_dsl(hyperset::eval_system(spec)) << "\n";
  return kOk;
}

int run_decorate(const std::string& path, bool labeled) {
  const hyperset::SystemSpec spec = hyperset::parse_system(read_file(path));
  const hyperset::SystemGraph sg = hyperset::system_to_graph(spec);
  const hyperset::Decoration d = labeled
                                     ? hyperset::decorate_labeled(sg.graph, sg.labels)
                                     : hyperset::decorate(sg.graph);
  for (const auto& [name, node] : sg.named_nodes)
    std::cout << name << " = " << hyperset::to_pretty(d[node]) << "\n";
  return kOk;
}

int run_simulate(const std::string& path, std::size_t steps, const std::string& emit,
                 const std::string& dot_dir) {
  if (emit != "thema" && emit != "full")
    throw UsageFailure{"--emit must be 'thema' or 'full'"};
  const hyperset::NetworkSpec spec = hyperset::parse_network(read_file(path));
  hyperset::NetworkInstance instance = hyperset::instantiate_network(spec);
  const bool full = emit == "full";

  const hyperset::Trajectory trajectory =
      hyperset::run(instance.net, instance.state, steps, full);

  if (!dot_dir.empty()) std::filesystem::create_directories(dot_dir);

  for (const auto& entry : trajectory.entries) {
    std::cout << "t=" << entry.state.time << ": " << hyperset::to_pretty(entry.thema)
              << "\n";
    if (full) {
      std::cout << "  v:";
      for (std::size_t i = 0; i < instance.names.size(); ++i)
        std::cout << (i ? ", " : " ") << instance.names[i] << "="
                  << static_cast<int>(entry.state.voltages[i]);
      std::cout << "\n  w:";
      bool first = true;
      for (const auto& syn : spec.synapses) {
        const auto idx = instance.net.synapse_index(
            static_cast<hyperset::NodeId>(
                std::find(instance.names.begin(), instance.names.end(), syn.source) -
                instance.names.begin()),
            static_cast<hyperset::NodeId>(
                std::find(instance.names.begin(), instance.names.end(), syn.target) -
                instance.names.begin()));
        std::cout << (first ? " " : ", ") << syn.source << "->" << syn.target << "="
                  << entry.state.weights[*idx].to_string();
        first = false;
      }
      std::cout << "\n  d:";
      for (std::size_t i = 0; i < instance.names.size(); ++i)
        std::cout << (i ? ", " : " ") << instance.names[i] << "="
                  << hyperset::to_pretty((*entry.decoration)[i]);
      std::cout << "\n";
    }
    if (!dot_dir.empty()) {
      const std::string dot =
          hyperset::export_dot(instance.net, &entry.state, &instance.names);
      std::ofstream out(dot_dir + "/step_" + std::to_string(entry.state.time) + ".dot");
      out << dot;
    }
  }
  return kOk;
}

int run_axioms(const std::string& expr, const std::string& corpus_arg) {
  const hyperset::OperatorExpr op = hyperset::parse_opexpr(expr);
  std::vector<hyperset::SetValue> corpus;
  if (corpus_arg == "small") {
    corpus = hyperset::corpus_small();
  } else {
    std::istringstream lines(read_file(corpus_arg));
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      corpus.push_back(hyperset::eval_expression(line));
    }
    if (corpus.empty()) throw UsageFailure{"corpus file has no expressions"};
  }

  const hyperset::AxiomReport report = hyperset::check_k_axioms(op, corpus);
  std::cout << "operator: " << hyperset::print_opexpr(op) << "\n"
            << "corpus: " << corpus.size() << " sets\n";
  render_axiom_line(std::cout, "a)", "generation", report.generation);
  render_axiom_line(std::cout, "b)", "irreversibility", report.irreversibility);
  render_axiom_line(std::cout, "c)", "removal", report.removal);
  render_axiom_line(std::cout, "d)", "selection", report.selection);
  std::cout << (report.all_passed() ? "all axioms hold on this corpus"
                                    : "not a consciousness operator on this corpus")
            << "\n";
  return kOk;
}

int run_dot(const std::string& path, bool network) {
  const std::string text = read_file(path);
  if (network) {
    const hyperset::NetworkSpec spec = hyperset::parse_network(text);
    const hyperset::NetworkInstance instance = hyperset::instantiate_network(spec);
    std::cout << hyperset::export_dot(instance.net, &instance.state, &instance.names);
  } else {
    const hyperset::SystemSpec spec = hyperset::parse_system(text);
    std::cout << hyperset::export_dot(hyperset::eval_system(spec));
  }
  return kOk;
}

}  // namespace

namespace {

int run_main(int argc, char** argv) {
  CLI::App app{"finite hypersets: canonical forms, operator algebra, decorated networks"};
  app.require_subcommand(1);

  std::size_t node_limit = hyperset::node_limit();
  app.add_option("--node-limit", node_limit,
                 "largest graph any construction may reach (default 1000000)");

  std::string eval_expr, eval_system_path;
  CLI::App* eval = app.add_subcommand("eval", "evaluate an expression to canonical form");
  eval->add_option("expr", eval_expr, "expression, e.g. \"R({ {}, omega })\"")->required();
  eval->add_option("--system", eval_system_path, "system file providing name bindings");

  std::string canon_path;
  CLI::App* canon = app.add_subcommand("canon", "canonize a system of set equations");
  canon->add_option("file", canon_path, "system file")->required();

  std::string decorate_path;
  bool decorate_labeled = false;
  CLI::App* decorate = app.add_subcommand("decorate", "print each node's canonical set");
  decorate->add_option("file", decorate_path, "system file")->required();
  decorate->add_flag("--labeled", decorate_labeled, "apply the file's label declarations");

  std::string sim_path, sim_emit = "thema", sim_dot_dir;
  std::size_t sim_steps = 0;
  CLI::App* simulate = app.add_subcommand("simulate", "run network dynamics");
  simulate->add_option("file", sim_path, "network file")->required();
  simulate->add_option("--steps", sim_steps, "number of update steps")->required();
  simulate->add_option("--emit", sim_emit, "thema (default) or full");
  simulate->add_option("--dot-dir", sim_dot_dir, "write per-step DOT files here");

  std::string axioms_expr, axioms_corpus = "small";
  CLI::App* axioms = app.add_subcommand("axioms", "check the operator axioms a) - d)");
  axioms->add_option("opexpr", axioms_expr, "operator, e.g. \"R\" or \"K[{omega}]\"")
      ->required();
  axioms->add_option("--corpus", axioms_corpus,
                     "'small' or a file with one expression per line");

  std::string dot_path;
  bool dot_network = false;
  CLI::App* dot = app.add_subcommand("dot", "export DOT");
  dot->add_option("file", dot_path, "system or network file")->required();
  dot->add_flag("--network", dot_network, "treat the file as a network");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsageError;
  }
  hyperset::set_node_limit(node_limit);

  try {
    if (eval->parsed()) return run_eval(eval_expr, eval_system_path);
    if (canon->parsed()) return run_canon(canon_path);
    if (decorate->parsed()) return run_decorate(decorate_path, decorate_labeled);
    if (simulate->parsed()) return run_simulate(sim_path, sim_steps, sim_emit, sim_dot_dir);
    if (axioms->parsed()) return run_axioms(axioms_expr, axioms_corpus);
    if (dot->parsed()) return run_dot(dot_path, dot_network);
  } catch (const UsageFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return kUsageError;
  } catch (const hyperset::ParseError& e) {
    std::cerr << "parse error at " << e.line() << ":" << e.col() << ": " << e.message()
              << "\n";
    return kUsageError;
  } catch (const hyperset::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (...) {
    std::cerr << "error: unknown failure\n";
    return kDomainError;
  }
}
