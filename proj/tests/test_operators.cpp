#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hyperset/encodings.hpp"
#include "hyperset/operators.hpp"

using namespace hyperset;

namespace {

const SetValue& empty() {
  static const SetValue e = make_set({});
  return e;
}

const SetValue& omega() {
  static const SetValue w = quine_atom();
  return w;
}

std::vector<SetValue> small_corpus() { return corpus_small(); }

std::vector<OperatorExpr> implemented_selectors() {
  return {ops::russell(), ops::c_op(), ops::k_a(empty()), ops::k_a(make_set({omega()})),
          ops::k_a(make_set({make_set({empty(), omega()})}))};
}

}  // namespace

TEST_CASE("apply on composites") {
  const SetValue eo = make_set({empty(), omega()});
  CHECK(apply(ops::compose(ops::russell(), ops::brace()), omega()) == empty());
  CHECK(apply(ops::compose(ops::brace(), ops::russell()), omega()) == make_set({empty()}));
  CHECK(apply(ops::op_diff(ops::ident(), ops::russell()), eo) == make_set({omega()}));
}

TEST_CASE("russell") {
  const SetValue eo = make_set({empty(), omega()});
  CHECK(russell(empty()) == empty());
  CHECK(russell(eo) == make_set({empty()}));
  const SetValue a = make_set({eo});
  CHECK(russell(a) == a);  // fixed by the filter, erased by C below
}

TEST_CASE("atoms") {
  CHECK(elim(omega()) == empty());
  CHECK(identity(omega()) == omega());
  CHECK(brace(brace(empty())) == make_set({make_set({empty()})}));
  CHECK(anti_russell(make_set({empty(), omega()})) == make_set({omega()}));

  // x* = (B x*) ∪ (B x)
  const SetValue d = dual(empty());
  CHECK(bisimilar(d, union2(brace(d), brace(empty()))));
  CHECK_FALSE(is_normal(d));
  CHECK(dual(omega()) == omega());  // x = {x, Ω} has the unique solution Ω
}

TEST_CASE("c operator") {
  const SetValue eo = make_set({empty(), omega()});
  CHECK(c_op(make_set({eo})) == empty());
  CHECK(c_op(make_set({empty()})) == make_set({empty()}));
  CHECK(c_op(make_set({omega()})) == empty());
}

TEST_CASE("parameterized k") {
  std::vector<SetValue> corpus = corpus_random(40, 6, 9100);
  for (const SetValue& x : corpus) CHECK(k_a(empty(), x) == russell(x));

  const SetValue so = make_set({omega()});
  CHECK(k_a(so, make_set({so})) == empty());
  const SetValue eo = make_set({empty(), omega()});
  CHECK(k_a(so, make_set({eo})) == empty());

  // K_A only sees the abnormal part of its parameter
  for (const SetValue& x : corpus) {
    const SetValue a = make_set({empty(), omega()});
    CHECK(k_a(a, x) == k_a(anti_russell(a), x));
  }
}

TEST_CASE("diagonal k") {
  const SetValue eo = make_set({empty(), omega()});
  const SetValue a1 = make_set({eo});
  CHECK(k_diag(a1) == a1);
  CHECK(k_diag(make_set({empty(), omega(), eo})) == make_set({empty()}));
  CHECK(k_diag(empty()) == empty());
}

TEST_CASE("filter operators") {
  const auto corpus = corpus_random(30, 6, 9101);
  const OperatorExpr by_normal = filter_op("normal", [](const SetValue& v) { return is_normal(v); });
  const OperatorExpr everything = ops::filter("true", [](const SetValue&) { return true; });
  const OperatorExpr nothing = ops::filter("false", [](const SetValue&) { return false; });
  for (const SetValue& x : corpus) {
    CHECK(apply(by_normal, x) == russell(x));
    CHECK(apply(everything, x) == x);
    CHECK(apply(nothing, x) == empty());
  }
}

TEST_CASE("selector law checker") {
  const auto corpus = small_corpus();
  CHECK(is_selector_on(ops::russell(), corpus).holds);

  const std::vector<SetValue> tiny = {empty(), make_set({empty()})};
  const SelectorCheck brace_check = is_selector_on(ops::brace(), tiny);
  CHECK_FALSE(brace_check.holds);
  REQUIRE(brace_check.witness.has_value());
  const auto& [bx, by] = *brace_check.witness;
  CHECK(subset(bx, by));
  CHECK(apply(ops::brace(), bx) != intersect(bx, apply(ops::brace(), by)));

  // the diagonal operator is not a selector
  const SetValue eo = make_set({empty(), omega()});
  const SetValue a1 = make_set({eo});
  const SetValue a2 = make_set({empty(), omega(), eo});
  const std::vector<SetValue> diag_corpus = {a1, a2};
  CHECK_FALSE(is_selector_on(ops::k_diag(), diag_corpus).holds);
  CHECK(subset(a1, a2));
  CHECK(k_diag(a1) != intersect(a1, k_diag(a2)));
}

TEST_CASE("axiom reports match the violation table") {
  const auto corpus = small_corpus();

  CHECK(check_k_axioms(ops::russell(), corpus).all_passed());
  CHECK(check_k_axioms(ops::c_op(), corpus).all_passed());
  for (const auto& sel : implemented_selectors())
    CHECK(check_k_axioms(sel, corpus).all_passed());

  const AxiomReport elim_report = check_k_axioms(ops::elim(), corpus);
  CHECK(elim_report.generation.passed);
  CHECK(elim_report.irreversibility.passed);
  CHECK_FALSE(elim_report.removal.passed);
  CHECK(elim_report.selection.passed);

  const AxiomReport ident_report = check_k_axioms(ops::ident(), corpus);
  CHECK(ident_report.generation.passed);
  CHECK_FALSE(ident_report.irreversibility.passed);
  CHECK(*ident_report.irreversibility.witness == omega());
  CHECK_FALSE(ident_report.removal.passed);
  CHECK(ident_report.selection.passed);

  const AxiomReport brace_report = check_k_axioms(ops::brace(), corpus);
  CHECK_FALSE(brace_report.generation.passed);
  CHECK_FALSE(brace_report.irreversibility.passed);
  CHECK_FALSE(brace_report.removal.passed);
  CHECK_FALSE(brace_report.selection.passed);

  const AxiomReport diag_report = check_k_axioms(ops::k_diag(), corpus);
  CHECK(diag_report.generation.passed);
  CHECK(diag_report.irreversibility.passed);
  CHECK(diag_report.removal.passed);
  CHECK_FALSE(diag_report.selection.passed);
}

TEST_CASE("russell never returns or admits its argument") {
  for (const SetValue& a : small_corpus()) {
    const SetValue ra = russell(a);
    CHECK_FALSE(elem(ra, a));
    CHECK_FALSE(elem(a, ra));
    CHECK(is_normal(ra));
    CHECK_FALSE(elem(ra, ra));  // normality of RA, spelled out
    CHECK(russell(ra) == ra);
  }
}

TEST_CASE("membership via brace inclusion") {
  const auto corpus = enumerate_hypersets(3);
  for (const SetValue& x : corpus)
    for (const SetValue& a : corpus)
      CHECK(elem(x, a) == subset(brace(x), a));
}

TEST_CASE("operator identity suite") {
  const auto corpus = small_corpus();
  const OperatorExpr R = ops::russell();
  const OperatorExpr B = ops::brace();
  const OperatorExpr I = ops::ident();
  const OperatorExpr E = ops::elim();
  const OperatorExpr RB = ops::compose(R, B);
  const OperatorExpr BR = ops::compose(B, R);

  for (const SetValue& x : corpus) {
    CHECK(apply(ops::op_intersect(I, R), x) == russell(x));              // a
    CHECK(apply(ops::op_intersect(B, R), x) == empty());                 // b
    CHECK(apply(ops::op_intersect(I, BR), x) == empty());                // c
    CHECK(apply(ops::op_intersect(I, RB), x) == empty());                // d
    CHECK(apply(RB, x) == apply(ops::op_diff(B, I), x));                 // e
    CHECK(apply(ops::compose(R, ops::compose(B, R)), x) == apply(BR, x));
    CHECK(apply(ops::compose(ops::op_diff(RB, BR), R), x) == empty());
    CHECK(apply(ops::compose(ops::op_diff(BR, RB), R), x) == empty());
  }

  // the two composition orders genuinely differ
  const SetValue eo = make_set({empty(), omega()});
  CHECK(apply(ops::op_diff(RB, BR), eo) != empty());
  CHECK(apply(ops::op_diff(BR, RB), omega()) != empty());
  // and the difference is already visible on the dual of the empty set
  const OperatorExpr BD = ops::compose(B, ops::dual());
  CHECK(apply(ops::compose(ops::op_diff(RB, BR), BD), empty()) != empty());
}

TEST_CASE("braces of normal and abnormal sets") {
  for (const SetValue& x : small_corpus()) {
    const SetValue bx = brace(x);
    if (is_normal(x)) {
      CHECK(russell(bx) == bx);
      CHECK(anti_russell(bx) == empty());
    } else {
      CHECK(russell(bx) == empty());
      CHECK(anti_russell(bx) == bx);
    }
  }
}

TEST_CASE("multiplication table") {
  const auto corpus = enumerate_hypersets(3);
  const OperatorExpr E = ops::elim(), I = ops::ident(), R = ops::russell(), B = ops::brace();
  const auto same = [&](const OperatorExpr& lhs, const OperatorExpr& rhs) {
    for (const SetValue& x : corpus)
      if (apply(lhs, x) != apply(rhs, x)) return false;
    return true;
  };

  // row E
  CHECK(same(ops::compose(E, E), E));
  CHECK(same(ops::compose(E, I), E));
  CHECK(same(ops::compose(E, R), E));
  CHECK(same(ops::compose(E, B), E));
  // row I
  CHECK(same(ops::compose(I, E), E));
  CHECK(same(ops::compose(I, I), I));
  CHECK(same(ops::compose(I, R), R));
  CHECK(same(ops::compose(I, B), B));
  // row R
  CHECK(same(ops::compose(R, E), E));
  CHECK(same(ops::compose(R, I), R));
  CHECK(same(ops::compose(R, R), R));
  // row B
  CHECK(same(ops::compose(B, I), B));

  // composite entries evaluate as their compositions
  for (const SetValue& x : corpus) {
    CHECK(apply(ops::compose(R, B), x) == russell(brace(x)));
    CHECK(apply(ops::compose(B, R), x) == brace(russell(x)));
    CHECK(apply(ops::compose(B, B), x) == brace(brace(x)));
    CHECK(apply(ops::compose(B, E), x) == brace(empty()));  // (BE)x = B{} identically
  }
}

TEST_CASE("selectors rebuild from singletons") {
  const auto corpus = enumerate_hypersets(3);
  for (const auto& sel : implemented_selectors()) {
    for (const SetValue& x : corpus) {
      std::vector<SetValue> kept;
      for (SetValue& y : children(x)) {
        const SetValue by = brace(y);
        if (apply(sel, by) == by) kept.push_back(std::move(y));
      }
      CHECK(apply(sel, x) == make_set(kept));
    }
  }
}

TEST_CASE("selectors commute and are idempotent") {
  const auto corpus = enumerate_hypersets(3);
  const auto selectors = implemented_selectors();
  for (const auto& s1 : selectors) {
    for (const auto& s2 : selectors) {
      for (const SetValue& x : corpus) {
        const SetValue a = apply(s1, apply(s2, x));
        const SetValue b = apply(s2, apply(s1, x));
        CHECK(a == b);
        CHECK(a == intersect(apply(s1, x), apply(s2, x)));
      }
    }
    for (const SetValue& x : corpus) CHECK(apply(s1, apply(s1, x)) == apply(s1, x));
  }
}

TEST_CASE("a selector agreeing with russell on singletons is russell") {
  const auto corpus = small_corpus();
  auto selectors = implemented_selectors();
  selectors.push_back(filter_op("normal", [](const SetValue& v) { return is_normal(v); }));
  bool some_hypothesis_held = false;
  for (const auto& sel : selectors) {
    bool agrees_on_singletons = true;
    for (const SetValue& y : corpus) {
      const SetValue by = brace(y);
      if (apply(sel, by) != russell(by)) {
        agrees_on_singletons = false;
        break;
      }
    }
    if (!agrees_on_singletons) continue;
    some_hypothesis_held = true;
    for (const SetValue& x : corpus) CHECK(apply(sel, x) == russell(x));
  }
  CHECK(some_hypothesis_held);  // K_{} and the normality filter qualify
}

TEST_CASE("duality decomposition") {
  for (const SetValue& x : enumerate_hypersets(3)) {
    const OperatorExpr lhs = ops::dual();
    const OperatorExpr rhs = ops::op_union(ops::compose(ops::brace(), ops::dual()), ops::brace());
    CHECK(apply(lhs, x) == apply(rhs, x));
  }
}

TEST_CASE("every axiom-passing operator fixes the singleton of the empty set") {
  const SetValue se = make_set({empty()});
  for (const auto& sel : implemented_selectors()) CHECK(apply(sel, se) == se);
}

TEST_CASE("two duals of distinct normal sets make a normal pair") {
  const SetValue one = make_set({empty()});
  const std::vector<std::pair<SetValue, SetValue>> pairs = {
      {empty(), one},
      {empty(), make_set({one})},
      {one, make_set({empty(), one})},
  };
  for (const auto& [x, y] : pairs) {
    REQUIRE(is_normal(x));
    REQUIRE(is_normal(y));
    REQUIRE(x != y);
    const SetValue c = make_set({dual(x), dual(y)});
    CHECK_FALSE(elem(c, c));
  }
}

TEST_CASE("distinct parameters need not give distinct operators") {
  const SetValue so = make_set({omega()});
  const SetValue eo = make_set({empty(), omega()});
  // K_{} differs from K_{Ω}...
  const SetValue probe = make_set({eo});
  CHECK(k_a(empty(), probe) != k_a(so, probe));
  // ...but K_{Ω} and K_{{∅,Ω}} coincide: only the abnormal part of A matters
  for (const SetValue& x : enumerate_hypersets(3))
    CHECK(k_a(so, x) == k_a(eo, x));
}
