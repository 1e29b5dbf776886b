#include <doctest.h>

#include "sortal/algebras.hpp"
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

}  // namespace

TEST_CASE("realization in the two-element Boolean ring") {
  const FiniteAlgebra& z2 = *stone().algebras.get("z2");
  const Signature& br = *z2.signature();
  Context two = canonical_context({Sort("s"), Sort("s")});
  Term p = parse_term(br, two, "add(add(v0, v1), mul(v0, v1))");
  CHECK(realize(z2, p, Valuation{two, {1, 1}}) == 1);
  CHECK(realize(z2, p, Valuation{two, {0, 0}}) == 0);
  Context one = canonical_context({Sort("s")});
  Term q = parse_term(br, one, "add(one, v0)");
  CHECK(realize(z2, q, Valuation{one, {0}}) == 1);
  CHECK(realize(z2, mk_var(one, 0), Valuation{one, {1}}) == 1);

  CHECK(kind_of([&] { realize(z2, q, Valuation{two, {0, 0}}); }) == ErrorKind::ContextMismatch);
  const FiniteAlgebra& ba2 = *stone().algebras.get("ba2");
  CHECK(kind_of([&] { realize(ba2, q, Valuation{one, {0}}); }) == ErrorKind::SignatureMismatch);

  auto op = realize_general(z2, GeneralTerm(two, canonical_context({Sort("s"), Sort("s")}),
                                            {parse_term(br, two, "mul(v0, v1)"), parse_term(br, two, "add(v0, v1)")}));
  CHECK(op(Valuation{two, {1, 1}}).values == std::vector<Element>{1, 0});
}

TEST_CASE("the three evaluation strategies agree") {
  testing::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto sig = testing::random_signature(rng, "ev" + std::to_string(trial % 5), testing::uniform(rng, 1, 2), 3, 3);
    FiniteAlgebra a = testing::random_algebra(rng, sig, 3);
    Context ctx = testing::covering_context(rng, *sig, 2);
    Term t = testing::random_term(rng, *sig, ctx, sig->sorts()[0], 5);
    CompiledTerm compiled(a, t);
    for (int k = 0; k < 10; ++k) {
      Valuation v = testing::random_valuation(rng, a, ctx);
      Element r = realize(a, t, v);
      CHECK(evaluate_bottom_up(a, t, v) == r);
      CHECK(compiled.eval(v.values) == r);
    }
  }
}

TEST_CASE("tables are validated") {
  auto sig = std::make_shared<Signature>("T");
  Sort s("s");
  sig->add_sort(s);
  sig->add_op("f", {s, s}, s);
  FiniteAlgebra a(sig);
  a.set_carrier(s, {"x", "y"});
  CHECK(kind_of([&] { a.set_carrier(s, {"x", "x"}); }) == ErrorKind::DuplicateName);
  CHECK(kind_of([&] { a.validate(); }) == ErrorKind::TypingError);
  CHECK(kind_of([&] { a.set_table("f", {0, 1, 1}); }) == ErrorKind::TypingError);
  CHECK(kind_of([&] { a.set_table("f", {0, 1, 2, 0}); }) == ErrorKind::TypingError);
  a.set_table("f", {0, 1, 1, 0});
  a.validate();
  std::vector<Element> args{1, 1};
  CHECK(a.apply("f", args) == 0);
  CHECK(a.label(s, 1) == "y");
  CHECK(a.find_label(s, "y") == 1u);

  std::size_t old = table_row_cap();
  set_table_row_cap(3);
  CHECK(kind_of([&] { a.set_table("f", {0, 1, 1, 0}); }) == ErrorKind::TableTooLarge);
  set_table_row_cap(old);
}

TEST_CASE("satisfaction by enumeration") {
  const Workspace& ws = stone();
  const FiniteAlgebra& z2 = *ws.algebras.get("z2");
  const FiniteAlgebra& z4 = *ws.algebras.get("z2xz2");
  CHECK(satisfies(z2, ws.equations.get("comm_add").equation));
  for (const auto& ne : ws.specs.get("BRing").equations) {
    CHECK(satisfies(z2, ne.equation));
    CHECK(satisfies(z4, ne.equation));
  }
  Context one = canonical_context({Sort("s")});
  Equation add_idem = Equation::of_terms(parse_term(*z2.signature(), one, "add(v0, v0)"), mk_var(one, 0));
  auto cex = find_counterexample(z4, add_idem);
  REQUIRE(cex.has_value());
  CHECK(to_string(z4, *cex) == "v0=01");
  CHECK_FALSE(first_violated(z2, ws.specs.get("BRing")).has_value());

  std::size_t old = valuation_cap();
  set_valuation_cap(1);
  CHECK(kind_of([&] { satisfies(z2, ws.equations.get("comm_add").equation); }) == ErrorKind::TableTooLarge);
  set_valuation_cap(old);

  std::size_t count = 0;
  for_each_valuation(z4.carriers(), *canonical_context({Sort("s"), Sort("s")}), [&](std::span<const Element> v) {
    if (count == 1) CHECK(v[1] == 1);
    ++count;
    return true;
  });
  CHECK(count == 16);
}

TEST_CASE("homomorphisms, products and generated subalgebras") {
  const Workspace& ws = stone();
  const FiniteAlgebra& z2 = *ws.algebras.get("z2");
  const FiniteAlgebra& z4 = *ws.algebras.get("z2xz2");
  Sort s("s");
  CHECK(check_homomorphism(identity_function(z4), z4, z4));
  // First coordinate of a pair label.
  CHECK(check_homomorphism(SortedFunction{{s, {0, 0, 1, 1}}}, z4, z2));
  CHECK_FALSE(check_homomorphism(SortedFunction{{s, {0, 1, 1, 0}}}, z4, z2));
  CHECK(kind_of([&] { check_homomorphism(SortedFunction{{s, {0}}}, z4, z2); }) == ErrorKind::TypingError);

  FiniteAlgebra p = product_algebra(z2, z2);
  CHECK(p.labels(s) == std::vector<std::string>{"(0,0)", "(0,1)", "(1,0)", "(1,1)"});
  CHECK(check_homomorphism(SortedFunction{{s, {0, 1, 1, 0}}}, p, z2) == false);
  CHECK(check_homomorphism(SortedFunction{{s, {0, 1, 2, 3}}}, p, z4));

  FiniteAlgebra sub = generated_subalgebra(z4, {});
  CHECK(sub.labels(s) == std::vector<std::string>{"00", "11"});
  FiniteAlgebra all = generated_subalgebra(z4, {{s, {1}}});
  CHECK(all == z4);
}

TEST_CASE("function spaces are encoded with the first row most significant") {
  Carriers c;
  Sort s("s");
  c.set(s, {"0", "1"});
  CHECK(function_space_size(c, {s}, {s}) == 4);
  CHECK(function_space_size(c, {s, s}, {s}) == 16);
  CHECK(function_space_size(c, {}, {s, s}) == 4);
  FiniteOperation neg{{s}, {s}, {1, 0}};
  CHECK(encode_function(c, neg) == 2);
  CHECK(decode_function(c, {s}, {s}, 1).table == std::vector<Element>{0, 1});
  CHECK(function_label(c, neg) == "[1,0]");
  FiniteOperation pair{{s}, {s, s}, {1, 2}};
  CHECK(function_label(c, pair) == "[(0,1),(1,0)]");
  for (Element k = 0; k < 16; ++k) CHECK(encode_function(c, decode_function(c, {s, s}, {s}, k)) == k);

  FiniteOperation conj{{s, s}, {s}, {0, 0, 0, 1}};
  CHECK(hall_project(c, {s, s}, 1).table == std::vector<Element>{0, 1, 0, 1});
  FiniteOperation id = hall_project(c, {s}, 0);
  std::vector<FiniteOperation> gs{id, neg};
  CHECK(hall_substitute(c, {s}, conj, gs).table == std::vector<Element>{0, 0});
  std::vector<FiniteOperation> fs{id, neg};
  FiniteOperation tupled = benabou_tuple(c, {s}, fs);
  CHECK(tupled.table == std::vector<Element>{1, 2});
  CHECK(benabou_compose(c, conj, tupled).table == std::vector<Element>{0, 0});
}
