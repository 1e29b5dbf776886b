#include <doctest.h>

#include "sortal/transformations.hpp"
#include "support/fixtures.hpp"

using namespace sortal;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvariantViolation;
}

const Workspace& stone() {
  static Workspace ws = testing::load_fixture("stone.spec");
  return ws;
}

const Workspace& power() {
  static Workspace ws = testing::load_fixture("direct_power.spec");
  return ws;
}

std::vector<Model> models(const Workspace& ws, std::initializer_list<const char*> names) {
  std::vector<Model> out;
  for (const char* n : names) out.push_back(Model{n, ws.algebras.get(n)});
  return out;
}

}  // namespace

TEST_CASE("strict naturality") {
  const Workspace& pw = power();
  const Transformation& swap = pw.transformations.get("swap").transformation;
  CHECK(check_transformation_strict(swap).holds);
  CHECK(check_transformation_strict(identity_transformation(pw.morphisms.get("square"))).holds);
  auto [lhs, rhs] = naturality_sides(swap, 1);
  CHECK(lhs == rhs);
  CHECK(lhs.to_string() == "(mul(v1, v3), mul(v0, v2))");

  const Polyderivator& sq = pw.morphisms.get("square");
  Sort s("s");
  Context two = canonical_context({s, s});
  Transformation skewed(sq, sq, {{s, TermFamily({s, s}, {s, s}, {parse_term(*sq.target(), two, "unit"), mk_var(two, 1)})}});
  StrictCheck sc = check_transformation_strict(skewed);
  CHECK_FALSE(sc.holds);
  CHECK(sc.failing_op == "mul");
  Verdict v = check_transformation_mod(skewed, pw.specs.get("Monoids"), models(pw, {"z3"}));
  CHECK(v.to_string() == "VerifiedOnModels(1)");

  CHECK(kind_of([&] {
          Transformation(sq, pw.morphisms.get("fourth"), {{s, TermFamily({s, s}, {s, s}, {mk_var(two, 0), mk_var(two, 1)})}});
        }) == ErrorKind::TypingError);
  CHECK(kind_of([&] { check_transformation_strict(swap, sq, stone().morphisms.get("d")); }) ==
        ErrorKind::EndpointMismatch);
}

TEST_CASE("the Stone transformation holds modulo Boolean rings") {
  const Workspace& ws = stone();
  const TransformationDecl& l = ws.transformations.get("L");
  CHECK_FALSE(check_transformation_strict(l.transformation).holds);
  Verdict v = check_transformation_mod(l.transformation, ws.specs.get("BRing"), models(ws, {"z2", "z2xz2"}));
  CHECK(v.status == Verdict::Status::VerifiedOnModels);
  CHECK(v.to_string() == "VerifiedOnModels(2)");

  const TransformationDecl& m = ws.transformations.get("M");
  CHECK(check_transformation_mod(m.transformation, ws.specs.get("BAlg"), models(ws, {"ba2", "ba4"})).to_string() ==
        "VerifiedOnModels(2)");

  // Outside Boolean rings negation is not the identity.
  Specification none{"Empty", ws.specs.get("BRing").signature, {}, nullptr};
  FiniteAlgebra bad(ws.specs.get("BRing").signature);
  Sort s("s");
  bad.set_carrier(s, {"0", "1", "2"});
  bad.set_table("zero", {0});
  bad.set_table("one", {1});
  bad.set_table("neg", {0, 2, 1});
  bad.set_table("mul", {0, 0, 0, 0, 1, 2, 0, 2, 1});
  bad.set_table("add", {0, 1, 2, 1, 2, 0, 2, 0, 1});
  std::vector<Model> z3{Model{"z3", std::make_shared<const FiniteAlgebra>(bad)}};
  Verdict r = check_transformation_mod(l.transformation, none, z3);
  CHECK(r.status == Verdict::Status::Refuted);
  CHECK(r.witness == "neg");
  CHECK(kind_of([&] { check_transformation_mod(l.transformation, ws.specs.get("BRing"), z3); }) ==
        ErrorKind::ModelNotAModel);
}

TEST_CASE("composition of transformations") {
  const Workspace& pw = power();
  const Transformation& swap = pw.transformations.get("swap").transformation;
  Transformation twice = vertical_compose(swap, swap);
  CHECK(twice == identity_transformation(swap.source()));
  Transformation h = horizontal_compose(swap, swap);
  CHECK(h.source() == pw.morphisms.get("fourth"));
  CHECK(h.component(Sort("s")).to_string() == "(v3, v2, v1, v0)");
  CHECK(check_transformation_strict(h).holds);

  const Workspace& ws = stone();
  const Transformation& l = ws.transformations.get("L").transformation;
  CHECK(kind_of([&] { vertical_compose(l, swap); }) == ErrorKind::EndpointMismatch);
  CHECK(kind_of([&] { horizontal_compose(l, swap); }) == ErrorKind::EndpointMismatch);
}

TEST_CASE("transformations induce homomorphisms between reducts") {
  const Workspace& pw = power();
  const Transformation& swap = pw.transformations.get("swap").transformation;
  const FiniteAlgebra& z3 = *pw.algebras.get("z3");
  SortedFunction f = induced_homomorphism(swap, z3);
  FiniteAlgebra r = reduct_algebra(swap.source(), z3);
  Sort s("s");
  CHECK(r.label(s, f.at(s)[*r.find_label(s, "(1,2)")]) == "(2,1)");
  CHECK(check_homomorphism(f, r, reduct_algebra(swap.target(), z3)));

  SortedSet x;
  x.add("a", s);
  GeneralTerm g = transformation_on_context(swap, x);
  CHECK(g.body().size() == 2);
  CHECK(g[0].to_string() == "(a,s,1)");
}
