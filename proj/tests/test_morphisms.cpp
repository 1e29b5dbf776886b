#include <doctest.h>

#include "sortal/morphisms.hpp"
#include "support/fixtures.hpp"
#include "support/random.hpp"

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

}  // namespace

TEST_CASE("polyderivators are typed") {
  const Workspace& ws = stone();
  const Polyderivator& d = ws.morphisms.get("d");
  CHECK(d.image("not").to_string() == "(add(one, v0))");
  CHECK(is_derivor(d));
  CHECK_FALSE(is_derivor(power().morphisms.get("square")));

  SortMap phi = d.sort_map();
  auto images = d.images();
  images.pop_back();
  CHECK(kind_of([&] { Polyderivator(d.source(), d.target(), phi, images); }) == ErrorKind::TypingError);
  images = d.images();
  images[0] = images[2];
  CHECK(kind_of([&] { Polyderivator(d.source(), d.target(), phi, images); }) == ErrorKind::TypingError);
}

TEST_CASE("translation of terms and composition") {
  const Workspace& ws = stone();
  const Polyderivator& d = ws.morphisms.get("d");
  const Polyderivator& e = ws.morphisms.get("e");
  const Signature& ba = *d.source();
  Context two = canonical_context({Sort("s"), Sort("s")});
  Term t = parse_term(ba, two, "and(not(v0), v1)");
  CHECK(translate_term(d, t).to_string() == "(mul(add(one, v0), v1))");

  Polyderivator de = compose_polyderivators(d, e);
  CHECK(de == ws.morphisms.get("dcomp"));
  CHECK(de.image("add").to_string() ==
        "(add(add(mul(v0, add(one, v1)), mul(add(one, v0), v1)), mul(mul(v0, add(one, v1)), mul(add(one, v0), v1))))");
  CHECK(de.image("neg").to_string() == "(v0)");

  const Polyderivator& sq = power().morphisms.get("square");
  Context mon2 = canonical_context({Sort("s"), Sort("s")});
  Term m = parse_term(*sq.source(), mon2, "mul(v1, unit)");
  CHECK(translate_term(sq, m).to_string() == "(mul(v2, unit), mul(v3, unit))");
  CHECK(power().morphisms.get("fourth") == compose_polyderivators(sq, sq));
  CHECK(compose_polyderivators(sq, identity_polyderivator(sq.source())) == sq);
  CHECK(compose_polyderivators(identity_polyderivator(sq.target()), sq) == sq);

  CHECK(kind_of([&] { translate_term(d, translate_term(d, t)[0]); }) == ErrorKind::SignatureMismatch);
}

TEST_CASE("standard morphisms and derivors lift") {
  const Workspace& ws = stone();
  const Polyderivator& d = ws.morphisms.get("d");
  Sort s("s");
  Derivor dv{d.source(), d.target(), {{s, s}}, {}};
  for (const auto& op : d.source()->ops()) dv.terms.emplace(op->name, d.image(op->name)[0]);
  CHECK(lift_derivor(dv) == d);

  auto renamed = std::make_shared<Signature>("BR2");
  renamed->add_sort(s);
  for (const auto& op : d.target()->ops()) renamed->add_op(op->name + "2", op->arity, op->coarity);
  StandardMorphism sm{d.target(), renamed, {{s, s}}, {}};
  for (const auto& op : d.target()->ops()) sm.ops.emplace(op->name, op->name + "2");
  Polyderivator lifted = lift_standard(sm);
  CHECK(lifted.image("add").to_string() == "(add2(v0, v1))");
  CHECK(compose_polyderivators(lifted, d).image("not").to_string() == "(add2(one2, v0))");
}

TEST_CASE("reducts along the Stone translation and the direct square") {
  const Workspace& ws = stone();
  FiniteAlgebra r = reduct_algebra(ws.morphisms.get("d"), *ws.algebras.get("z2"));
  const FiniteAlgebra& ba2 = *ws.algebras.get("ba2");
  CHECK(r.labels(Sort("s")) == std::vector<std::string>{"(0)", "(1)"});
  for (std::size_t k = 0; k < ba2.signature()->ops().size(); ++k) CHECK(r.table(k) == ba2.table(k));
  CHECK(kind_of([&] { reduct_algebra(ws.morphisms.get("d"), ba2); }) == ErrorKind::SignatureMismatch);

  const Workspace& pw = power();
  FiniteAlgebra sq = reduct_algebra(pw.morphisms.get("square"), *pw.algebras.get("z3"));
  Sort s("s");
  REQUIRE(sq.carrier_size(s) == 9);
  std::vector<Element> args{*sq.find_label(s, "(1,2)"), *sq.find_label(s, "(2,2)")};
  CHECK(sq.label(s, sq.apply("mul", args)) == "(0,1)");
  CHECK(sq.label(s, sq.apply("unit", {})) == "(0,0)");
  CHECK(first_violated(sq, pw.specs.get("Monoids")) == std::nullopt);
}

TEST_CASE("valuations regroup through the coproduct blocks") {
  const Workspace& pw = power();
  const Polyderivator& sq = pw.morphisms.get("square");
  const FiniteAlgebra& z3 = *pw.algebras.get("z3");
  Sort s("s");
  Carriers c = z3.carriers();
  CHECK(unpack(c, {s, s}, 5) == std::vector<Element>{1, 2});
  std::vector<Element> tuple{2, 1};
  CHECK(pack(c, {s, s}, tuple) == 7);
  Context x = canonical_context({s, s});
  Valuation v{x, {5, 7}};
  Valuation flat = flatten_valuation(sq, c, v);
  CHECK(flat.values == std::vector<Element>{1, 2, 2, 1});
  CHECK(regroup_valuation(sq, c, x, flat) == v);

  SortedFunction iso = composite_regrouping(sq, sq, c);
  FiniteAlgebra left = reduct_algebra(compose_polyderivators(sq, sq), z3);
  FiniteAlgebra right = reduct_algebra(sq, reduct_algebra(sq, z3));
  CHECK(check_homomorphism(iso, left, right));
  CHECK(right.label(s, iso.at(s)[*left.find_label(s, "(0,1,2,0)")]) == "((0,1),(2,0))");
}

TEST_CASE("satisfaction is invariant under change of signature") {
  const Workspace& ws = stone();
  const Polyderivator& d = ws.morphisms.get("d");
  for (const char* alg : {"z2", "z2xz2"})
    for (const auto& ne : ws.specs.get("BAlg").equations) {
      CHECK(satisfaction_condition_check(d, *ws.algebras.get(alg), ne.equation));
      CHECK(satisfies(*ws.algebras.get(alg), translate_equation(d, ne.equation)));
    }
  Equation eq = translate_equation(d, ws.specs.get("BAlg").equations[0].equation);
  CHECK(eq.lhs.source()->size() == 3);
  CHECK((*eq.lhs.source())[1].name == "(v1,s,0)");
}
