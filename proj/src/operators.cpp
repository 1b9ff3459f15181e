#include "hyperset/operators.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "hyperset/encodings.hpp"

namespace hyperset {

struct OperatorExpr::Node {
  OpKind kind;
  std::optional<SetValue> param;
  std::function<bool(const SetValue&)> pred;
  std::string name;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

class OperatorBuilder {
 public:
  static OperatorExpr atom(OpKind kind) {
    auto n = std::make_shared<OperatorExpr::Node>();
    n->kind = kind;
    return OperatorExpr(std::move(n));
  }
  static OperatorExpr k_param(SetValue param) {
    auto n = std::make_shared<OperatorExpr::Node>();
    n->kind = OpKind::KParam;
    n->param = std::move(param);
    return OperatorExpr(std::move(n));
  }
  static OperatorExpr filter(std::string name, std::function<bool(const SetValue&)> pred) {
    auto n = std::make_shared<OperatorExpr::Node>();
    n->kind = OpKind::Filter;
    n->name = std::move(name);
    n->pred = std::move(pred);
    return OperatorExpr(std::move(n));
  }
  static OperatorExpr binary(OpKind kind, OperatorExpr f, OperatorExpr g) {
    auto n = std::make_shared<OperatorExpr::Node>();
    n->kind = kind;
    n->lhs = std::move(f.node_);
    n->rhs = std::move(g.node_);
    return OperatorExpr(std::move(n));
  }
};

OpKind OperatorExpr::kind() const { return node_->kind; }

const SetValue& OperatorExpr::param() const {
  if (!node_->param) throw Error("operator has no set parameter");
  return *node_->param;
}

const std::string& OperatorExpr::filter_name() const { return node_->name; }

bool OperatorExpr::filter_test(const SetValue& v) const {
  if (!node_->pred) throw Error("operator has no predicate");
  return node_->pred(v);
}

OperatorExpr OperatorExpr::lhs() const {
  if (!node_->lhs) throw Error("operator has no left operand");
  return OperatorExpr(node_->lhs);
}

OperatorExpr OperatorExpr::rhs() const {
  if (!node_->rhs) throw Error("operator has no right operand");
  return OperatorExpr(node_->rhs);
}

namespace ops {

OperatorExpr elim() { return OperatorBuilder::atom(OpKind::Elim); }
OperatorExpr ident() { return OperatorBuilder::atom(OpKind::Ident); }
OperatorExpr brace() { return OperatorBuilder::atom(OpKind::Brace); }
OperatorExpr russell() { return OperatorBuilder::atom(OpKind::Russell); }
OperatorExpr anti_russell() { return OperatorBuilder::atom(OpKind::AntiRussell); }
OperatorExpr dual() { return OperatorBuilder::atom(OpKind::Dual); }
OperatorExpr c_op() { return OperatorBuilder::atom(OpKind::COp); }
OperatorExpr k_a(SetValue param) { return OperatorBuilder::k_param(std::move(param)); }
OperatorExpr k_diag() { return OperatorBuilder::atom(OpKind::KDiag); }
OperatorExpr filter(std::string name, std::function<bool(const SetValue&)> pred) {
  return OperatorBuilder::filter(std::move(name), std::move(pred));
}
OperatorExpr compose(OperatorExpr f, OperatorExpr g) {
  return OperatorBuilder::binary(OpKind::Compose, std::move(f), std::move(g));
}
OperatorExpr op_union(OperatorExpr f, OperatorExpr g) {
  return OperatorBuilder::binary(OpKind::Union, std::move(f), std::move(g));
}
OperatorExpr op_intersect(OperatorExpr f, OperatorExpr g) {
  return OperatorBuilder::binary(OpKind::Intersect, std::move(f), std::move(g));
}
OperatorExpr op_diff(OperatorExpr f, OperatorExpr g) {
  return OperatorBuilder::binary(OpKind::Diff, std::move(f), std::move(g));
}

}  // namespace ops

SetValue russell(const SetValue& x) {
  std::vector<SetValue> kept;
  for (SetValue& y : children(x))
    if (is_normal(y)) kept.push_back(std::move(y));
  return make_set(kept);
}

SetValue elim(const SetValue&) { return make_set({}); }

SetValue identity(const SetValue& x) { return x; }

SetValue brace(const SetValue& x) { return make_set({x}); }

SetValue anti_russell(const SetValue& x) {
  std::vector<SetValue> kept;
  for (SetValue& y : children(x))
    if (!is_normal(y)) kept.push_back(std::move(y));
  return make_set(kept);
}

SetValue dual(const SetValue& x) {
  // fresh point p with p -> p and p -> point(x)
  SetGraph g(1 + x.node_count());
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  for (NodeId v = 0; v < x.node_count(); ++v)
    for (NodeId c : x.children_ids(v)) g.add_edge(1 + v, 1 + c);
  return canon(g, 0);
}

SetValue c_op(const SetValue& x) {
  static const SetValue omega = quine_atom();
  std::vector<SetValue> kept;
  for (SetValue& y : children(x)) {
    if (!is_normal(y)) continue;
    bool contains_omega = false;
    for (const SetValue& z : children(y)) contains_omega |= (z == omega);
    if (!contains_omega) kept.push_back(std::move(y));
  }
  return make_set(kept);
}

SetValue k_a(const SetValue& a, const SetValue& x) {
  std::vector<SetValue> kept;
  for (SetValue& y : children(x)) {
    if (!is_normal(y)) continue;
    // T(y ∩ a) = {}: every element of y that lies in a must be normal
    bool ok = true;
    for (const SetValue& z : children(y))
      if (!is_normal(z) && elem(z, a)) ok = false;
    if (ok) kept.push_back(std::move(y));
  }
  return make_set(kept);
}

SetValue k_diag(const SetValue& x) {
  std::vector<SetValue> kept;
  for (SetValue& y : children(x)) {
    if (!is_normal(y)) continue;
    // every element of x ∩ y must be normal
    bool ok = true;
    for (const SetValue& z : children(x))
      if (!is_normal(z) && elem(z, y)) ok = false;
    if (ok) kept.push_back(std::move(y));
  }
  return make_set(kept);
}

SetValue apply(const OperatorExpr& op, const SetValue& x) {
  const auto& node = *op.node_;
  switch (node.kind) {
    case OpKind::Elim:
      return elim(x);
    case OpKind::Ident:
      return x;
    case OpKind::Brace:
      return brace(x);
    case OpKind::Russell:
      return russell(x);
    case OpKind::AntiRussell:
      return anti_russell(x);
    case OpKind::Dual:
      return dual(x);
    case OpKind::COp:
      return c_op(x);
    case OpKind::KParam:
      return k_a(*node.param, x);
    case OpKind::KDiag:
      return k_diag(x);
    case OpKind::Filter: {
      std::vector<SetValue> kept;
      for (SetValue& y : children(x))
        if (node.pred(y)) kept.push_back(std::move(y));
      return make_set(kept);
    }
    case OpKind::Compose:
      return apply(op.lhs(), apply(op.rhs(), x));
    case OpKind::Union:
      return union2(apply(op.lhs(), x), apply(op.rhs(), x));
    case OpKind::Intersect:
      return intersect(apply(op.lhs(), x), apply(op.rhs(), x));
    case OpKind::Diff:
      return diff(apply(op.lhs(), x), apply(op.rhs(), x));
  }
  throw Error("apply: unknown operator kind");
}

namespace {

// Sorted element list; subset tests between corpus members reduce to ordered
// inclusion instead of repeated elem() calls.
std::vector<SetValue> sorted_children(const SetValue& x) {
  std::vector<SetValue> c = children(x);
  std::sort(c.begin(), c.end());
  return c;
}

bool sorted_includes(const std::vector<SetValue>& sub, const std::vector<SetValue>& super) {
  std::size_t i = 0;
  for (const SetValue& s : sub) {
    while (i < super.size() && super[i] < s) ++i;
    if (i == super.size() || !(super[i] == s)) return false;
  }
  return true;
}

bool selector_law_holds(const OperatorExpr& op, const SetValue& x,
                        const SetValue& op_of_y) {
  return apply(op, x) == intersect(x, op_of_y);
}

}  // namespace

SelectorCheck is_selector_on(const OperatorExpr& op, std::span<const SetValue> corpus) {
  SelectorCheck result;
  std::vector<std::vector<SetValue>> kids;
  std::vector<SetValue> op_of;
  kids.reserve(corpus.size());
  op_of.reserve(corpus.size());
  for (const SetValue& v : corpus) {
    kids.push_back(sorted_children(v));
    op_of.push_back(apply(op, v));
  }

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      if (!sorted_includes(kids[i], kids[j])) continue;
      if (!selector_law_holds(op, corpus[i], op_of[j])) {
        result.holds = false;
        result.witness = {corpus[i], corpus[j]};
        return result;
      }
    }
  }

  // all subsets formed from each member's own elements
  for (std::size_t j = 0; j < corpus.size(); ++j) {
    const std::vector<SetValue>& elems = kids[j];
    if (elems.size() > 10) continue;  // 2^k guard; never hit by the stock corpora
    for (std::uint32_t bits = 0; bits < (1u << elems.size()); ++bits) {
      std::vector<SetValue> chosen;
      for (std::size_t k = 0; k < elems.size(); ++k)
        if (bits & (1u << k)) chosen.push_back(elems[k]);
      const SetValue x = make_set(chosen);
      if (!selector_law_holds(op, x, op_of[j])) {
        result.holds = false;
        result.witness = {x, corpus[j]};
        return result;
      }
    }
  }
  return result;
}

AxiomReport check_k_axioms(const OperatorExpr& op, std::span<const SetValue> corpus) {
  AxiomReport report;
  for (const SetValue& x : corpus) {
    const SetValue ox = apply(op, x);
    if (report.generation.passed && !subset(ox, x)) {
      report.generation.passed = false;
      report.generation.witness = x;
    }
    if (report.irreversibility.passed && elem(x, ox)) {
      report.irreversibility.passed = false;
      report.irreversibility.witness = x;
    }
    if (report.removal.passed && elem(ox, x)) {
      report.removal.passed = false;
      report.removal.witness = x;
    }
  }
  const SelectorCheck sel = is_selector_on(op, corpus);
  report.selection.passed = sel.holds;
  report.selection.pair_witness = sel.witness;
  return report;
}

std::vector<SetValue> enumerate_hypersets(std::size_t max_nodes) {
  std::unordered_set<SetValue, SetValueHash> seen;
  std::vector<SetValue> out;
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    const std::uint64_t cells = static_cast<std::uint64_t>(n) * n;
    for (std::uint64_t bits = 0; bits < (1ull << cells); ++bits) {
      SetGraph g(n);
      for (std::uint64_t cell = 0; cell < cells; ++cell)
        if (bits & (1ull << cell))
          g.add_edge(static_cast<NodeId>(cell / n), static_cast<NodeId>(cell % n));
      SetValue v = canon(g, 0);
      if (seen.insert(v).second) out.push_back(std::move(v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SetValue> corpus_small() {
  std::vector<SetValue> out = enumerate_hypersets(4);
  std::unordered_set<SetValue, SetValueHash> seen(out.begin(), out.end());

  const SetValue e = make_set({});
  const SetValue omega = quine_atom();
  const SetValue one = make_set({e});
  const SetValue eo = make_set({e, omega});
  const std::vector<SetValue> named = {
      e,
      omega,
      one,
      eo,
      make_set({eo}),             // {{∅,Ω}}: fixed by the Russell filter, erased by C
      make_set({e, omega, eo}),   // the axiom-d counterexample superset
      dual(e),
      dual(one),
      make_set({dual(e), dual(one)}),  // {x*, y*} for unequal normal x, y
      nat_to_set(3),
  };
  for (const SetValue& v : named)
    if (seen.insert(v).second) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SetValue> corpus_random(std::size_t count, std::size_t max_nodes,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SetValue> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 1 + rng() % max_nodes;
    SetGraph g(n);
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = 0; b < n; ++b)
        if (rng() % 100 < 30) g.add_edge(a, b);
    out.push_back(canon(g, 0));
  }
  return out;
}

}  // namespace hyperset
