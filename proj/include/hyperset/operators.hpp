#ifndef HYPERSET_OPERATORS_HPP
#define HYPERSET_OPERATORS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperset/kernel.hpp"

namespace hyperset {

enum class OpKind {
  Elim,         // x -> {}
  Ident,        // x -> x
  Brace,        // x -> {x}
  Russell,      // x -> normal elements of x
  AntiRussell,  // x -> abnormal elements of x
  Dual,         // x -> x* with x* = {x*, x}
  COp,          // normal elements whose own elements all differ from the quine atom
  KParam,       // K_A: normal elements y with every element of y ∩ A normal
  KDiag,        // normal elements y with every element of x ∩ y normal
  Filter,       // elements satisfying a predicate
  Compose,      // (f ∘ g) x = f(g x)
  Union,        // (f ∪ g) x = f x ∪ g x
  Intersect,    // (f ∩ g) x = f x ∩ g x
  Diff,         // (f − g) x = f x − g x
};

/// First-class operator term: an immutable expression tree of atoms and the
/// four dyadic combinators. Evaluation is strict, via apply().
class OperatorExpr {
 public:
  OpKind kind() const;

  /// Parameter set of a KParam atom.
  const SetValue& param() const;
  /// Display name of a Filter atom.
  const std::string& filter_name() const;
  bool filter_test(const SetValue& v) const;

  OperatorExpr lhs() const;
  OperatorExpr rhs() const;

 private:
  struct Node;
  explicit OperatorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend class OperatorBuilder;
  friend SetValue apply(const OperatorExpr& op, const SetValue& x);
};

namespace ops {
OperatorExpr elim();
OperatorExpr ident();
OperatorExpr brace();
OperatorExpr russell();
OperatorExpr anti_russell();
OperatorExpr dual();
OperatorExpr c_op();
OperatorExpr k_a(SetValue param);
OperatorExpr k_diag();
OperatorExpr filter(std::string name, std::function<bool(const SetValue&)> pred);
OperatorExpr compose(OperatorExpr f, OperatorExpr g);
OperatorExpr op_union(OperatorExpr f, OperatorExpr g);
OperatorExpr op_intersect(OperatorExpr f, OperatorExpr g);
OperatorExpr op_diff(OperatorExpr f, OperatorExpr g);
}  // namespace ops

/// Comprehension operator for an arbitrary predicate; block (c) of the atoms.
inline OperatorExpr filter_op(std::string name, std::function<bool(const SetValue&)> pred) {
  return ops::filter(std::move(name), std::move(pred));
}

/// Strict evaluation of an operator term at a set.
SetValue apply(const OperatorExpr& op, const SetValue& x);

// Direct forms of the atoms.
SetValue russell(const SetValue& x);
SetValue elim(const SetValue& x);
SetValue identity(const SetValue& x);
SetValue brace(const SetValue& x);
SetValue anti_russell(const SetValue& x);
SetValue dual(const SetValue& x);
SetValue c_op(const SetValue& x);
SetValue k_a(const SetValue& a, const SetValue& x);
SetValue k_diag(const SetValue& x);

/// Result of testing the selector law x ⊆ y => Ox = x ∩ Oy over a corpus.
struct SelectorCheck {
  bool holds = true;
  std::optional<std::pair<SetValue, SetValue>> witness;  // violating (x, y)

  explicit operator bool() const { return holds; }
};

/// Tests the selector law on every subset pair of the corpus, plus every pair
/// (make_set(S), y) for S a subset of the elements of a corpus member y.
SelectorCheck is_selector_on(const OperatorExpr& op, std::span<const SetValue> corpus);

struct AxiomCheck {
  bool passed = true;
  std::optional<SetValue> witness;                            // axioms a-c
  std::optional<std::pair<SetValue, SetValue>> pair_witness;  // axiom d
};

/// Per-axiom outcome for the four operator axioms; failures carry witnesses.
struct AxiomReport {
  AxiomCheck generation;       // a) Ox ⊆ x
  AxiomCheck irreversibility;  // b) x ∉ Ox
  AxiomCheck removal;          // c) Ox ∉ x
  AxiomCheck selection;        // d) selector law

  bool all_passed() const {
    return generation.passed && irreversibility.passed && removal.passed &&
           selection.passed;
  }
};

/// Evaluates axioms a-d for the operator over the corpus.
AxiomReport check_k_axioms(const OperatorExpr& op, std::span<const SetValue> corpus);

/// Every canonical hyperset whose minimal graph has at most `max_nodes` nodes
/// (exhaustive, deduplicated, sorted). Intended for max_nodes <= 4.
std::vector<SetValue> enumerate_hypersets(std::size_t max_nodes);

/// Default check corpus: exhaustive hypersets up to 4 nodes plus a handful of
/// named example sets that exercise the operator algebra's corner cases.
std::vector<SetValue> corpus_small();

/// Deterministic random corpus of canonical sets with at most max_nodes nodes.
std::vector<SetValue> corpus_random(std::size_t count, std::size_t max_nodes,
                                    std::uint64_t seed);

}  // namespace hyperset

#endif  // HYPERSET_OPERATORS_HPP
