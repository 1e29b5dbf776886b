#include <doctest.h>

#include "sortal/kernel.hpp"

using namespace sortal;

TEST_CASE("sorts are interned by name") {
  Sort a("k_alpha"), b("k_alpha"), c("k_beta");
  CHECK(a == b);
  CHECK(a.id() == b.id());
  CHECK(a != c);
  CHECK(c.name() == "k_beta");
}

TEST_CASE("words render as bracketed lists") {
  Sort s("s"), t("t");
  CHECK(to_string(Word{}) == "()");
  CHECK(to_string(Word{s, t, s}) == "(s t s)");
  CHECK(concat(Word{s}, Word{t, t}) == Word{s, t, t});
  CHECK(WordHash{}(Word{s, t}) != WordHash{}(Word{t, s}));
}

TEST_CASE("sorted sets keep names unique per sort") {
  Sort s("s"), t("t");
  SortedSet x;
  x.add("x", s);
  x.add("x", t);
  x.add("y", s);
  CHECK_THROWS_AS(x.add("x", s), Error);
  try {
    x.add("y", s);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateName);
  }
  CHECK_FALSE(x.find("x").has_value());
  CHECK(x.find("x", t) == 1u);
  CHECK(x.find("y") == 2u);
  CHECK(x.of_sort(s) == std::vector<std::size_t>{0, 2});
  CHECK(x.sorts() == Word{s, t, s});
  CHECK_FALSE(x.is_canonical());
}

TEST_CASE("canonical contexts are shared") {
  Sort s("s"), t("t");
  Context a = canonical_context({s, t});
  Context b = canonical_context({s, t});
  CHECK(a == b);
  CHECK((*a)[0].name == "v0");
  CHECK((*a)[1].name == "v1");
  CHECK((*a)[1].sort == t);
  CHECK(a->is_canonical());
  SortedSet manual;
  manual.add("v0", s);
  manual.add("v1", t);
  CHECK(make_context(manual) == a);
  CHECK(same_context(a, std::make_shared<const SortedSet>(manual)));
  CHECK(canonical_context({})->empty());
}

TEST_CASE("signatures validate operations") {
  Sort s("s"), t("t");
  Signature sig("Sig");
  sig.add_sort(s);
  sig.add_sort(s);
  CHECK(sig.sorts().size() == 1);
  sig.add_op("f", {s, s}, s);
  CHECK_THROWS_AS(sig.add_op("f", {s}, s), Error);
  try {
    sig.add_op("g", {t}, s);
    FAIL("unknown sort accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownSort);
  }
  CHECK(sig.find_op("f")->arity == Word{s, s});
  CHECK(sig.find_op("g") == nullptr);
  CHECK(sig.op_index("f") == 0);
  CHECK_THROWS_AS(sig.op_index("g"), Error);
  CHECK(sig.contains(OperationSymbol{"f", {s, s}, s}));
  CHECK_FALSE(sig.contains(OperationSymbol{"f", {s}, s}));

  Signature other("Other");
  other.add_sort(s);
  other.add_op("f", {s, s}, s);
  CHECK(sig == other);
  other.add_op("h", {}, s);
  CHECK_FALSE(sig == other);
}

TEST_CASE("sort maps extend to words and dagger contexts") {
  Sort s("s"), u("u"), t("t");
  SortMap phi({s, u}, {t});
  CHECK_FALSE(phi.is_total());
  phi.set(s, {t, t});
  phi.set(u, {});
  CHECK(phi.is_total());
  CHECK_THROWS_AS(phi.set(Sort("nowhere"), {t}), Error);
  CHECK_THROWS_AS(phi.set(s, {Sort("nowhere")}), Error);
  CHECK(apply_sharp(phi, {s, u, s}) == Word{t, t, t, t});

  SortedSet x;
  x.add("a", s);
  x.add("b", u);
  x.add("c", s);
  SortedSet dag = coproduct_dagger(phi, x);
  REQUIRE(dag.size() == 4);
  CHECK(dag[0].name == "(a,s,0)");
  CHECK(dag[3].name == "(c,s,1)");
  CHECK(block_offsets(phi, x) == std::vector<std::size_t>{0, 2, 2, 4});
  CHECK(block_offsets(phi, Word{u, s}) == std::vector<std::size_t>{0, 0, 2});
}

TEST_CASE("error kinds have stable names") {
  CHECK(std::string(kind_name(ErrorKind::TypingError)) == "TypingError");
  Error e(ErrorKind::SortMismatch, "x");
  CHECK(std::string(e.what()) == "SortMismatch: x");
  SourceError se(ErrorKind::SyntaxError, 3, 7, "bad");
  CHECK(std::string(se.what()) == "SyntaxError: 3:7: bad");
  CHECK(se.line() == 3);
  CHECK(se.column() == 7);
}
