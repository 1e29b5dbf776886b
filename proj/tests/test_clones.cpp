#include <doctest.h>

#include "sortal/hallbenabou.hpp"
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

struct Base {
  Sort s{"s"};
  std::shared_ptr<Signature> sig = std::make_shared<Signature>("Base");
  OpRef one, add;
  Base() {
    sig->add_sort(s);
    one = sig->add_op("one", {}, s);
    add = sig->add_op("add", {s, s}, s);
  }
};

}  // namespace

TEST_CASE("family projections, tuples and composition") {
  Base b;
  Sort s = b.s;
  Word ss{s, s};
  TermFamily p0 = family_project(ss, 0), p1 = family_project(ss, 1);
  CHECK(p1.to_string() == "(v1)");
  CHECK(kind_of([&] { family_project(ss, 2); }) == ErrorKind::IndexOutOfRange);
  TermFamily swap = family_tuple(ss, {p1, p0});
  CHECK(swap.to_string() == "(v1, v0)");
  CHECK(family_compose(swap, swap) == identity_family(ss));
  CHECK(family_compose(p0, swap) == p1);
  CHECK(kind_of([&] { family_compose(swap, p0); }) == ErrorKind::DomainMismatch);
  TermFamily par = family_parallel({swap, identity_family({s})});
  CHECK(par.domain() == Word{s, s, s});
  CHECK(par.to_string() == "(v1, v0, v2)");
}

TEST_CASE("generated clone signatures") {
  Sort s("s");
  auto h = hall_signature({s}, 1);
  CHECK(h->signature()->name() == "hall (s) 1");
  CHECK(h->signature()->sorts().size() == 2);
  CHECK(h->signature()->ops().size() == 5);
  CHECK(hall_sort_name({s, s}, s) == "((s s) s)");
  CHECK(hall_sort_name({}, s) == "(() s)");
  CHECK(benabou_sort_name({s}, {s, s}) == "((s) (s s))");
  CHECK(h->projection({s}, 0)->name == "pi_0_0");
  CHECK(h->substitution({}, {s}, s)->name == "xi_e_0_0");
  CHECK(h->substitution({s}, {s}, s)->arity.size() == 2);
  CHECK(hall_signature({s}, 1) == h);
  CHECK(h->decode(h->hall_sort({s}, s)) == std::pair<Word, Word>{{s}, {s}});
  CHECK(kind_of([&] { h->hall_sort({s, s}, s); }) == ErrorKind::BoundTooLarge);
  CHECK(kind_of([&] { hall_signature({s}, 0); }) == ErrorKind::TypingError);
  CHECK(kind_of([&] { hall_signature({s, s}, 1); }) == ErrorKind::DuplicateName);
  CHECK(kind_of([&] { hall_signature({s, Sort("t")}, 40); }) == ErrorKind::BoundTooLarge);

  auto bn = benabou_signature({s}, 1);
  CHECK(bn->signature()->sorts().size() == 4);
  CHECK(bn->signature()->ops().size() == 13);
  CHECK(bn->tuple({s}, {s})->name == "tup_0_0");
  CHECK(bn->composition({}, {s}, {})->name == "comp_e_0_e");
  const CloneOp& d = bn->describe(*bn->composition({s}, {}, {s}));
  CHECK(d.kind == CloneOpKind::Composition);
  CHECK(d.x.empty());

  Sort t("t");
  auto two = hall_signature({s, t}, 2);
  CHECK(two->words().size() == 7);
  CHECK(two->words()[3] == Word{s, s});
  CHECK(two->words()[4] == Word{s, t});
  CHECK(two->word_code({t, s}) == "1x0");
}

TEST_CASE("clone terms evaluate to families") {
  Base b;
  Sort s = b.s;
  auto h = hall_signature({s}, 2);
  Sort fs = h->hall_sort({s}, s);
  Context ctx = canonical_context({fs});
  Context inner = canonical_context({s});
  TermFamily add_one({s}, {s}, {mk_app(inner, b.add, {mk_var(inner, 0), mk_app(inner, b.one, {})})});
  CloneEnv env{b.sig, {add_one}};
  Term twice = mk_app(ctx, h->substitution({s}, {s}, s), {mk_var(ctx, 0), mk_var(ctx, 0)});
  CHECK(eval_hall(*h, twice, env).to_string() == "(add(add(v0, one), one))");
  Term proj = mk_app(ctx, h->projection({s, s}, 1), {});
  CHECK(eval_hall(*h, proj, env) == family_project({s, s}, 1));
  CHECK(kind_of([&] { eval_hall(*h, twice, CloneEnv{b.sig, {std::nullopt}}); }) == ErrorKind::UnboundCloneVariable);

  auto bn = benabou_signature({s}, 2);
  Context bctx = canonical_context({bn->benabou_sort({s}, {s})});
  Term tup = mk_app(bctx, bn->tuple({s}, {s, s}), {mk_var(bctx, 0), mk_var(bctx, 0)});
  Term comp = mk_app(bctx, bn->composition({s}, {s, s}, {s}),
                     {tup, mk_app(bctx, bn->projection({s, s}, 1), {})});
  CHECK(eval_benabou(*bn, comp, CloneEnv{b.sig, {add_one}}) == add_one);
}

TEST_CASE("equality modulo the free clone theory") {
  Sort s("s");
  auto h = hall_signature({s}, 2);
  Context ctx = canonical_context({h->hall_sort({s}, s)});
  Term x = mk_var(ctx, 0);
  Term unit = mk_app(ctx, h->substitution({s}, {s}, s), {x, mk_app(ctx, h->projection({s}, 0), {})});
  CHECK(equal_mod_free_theory(*h, unit, x));
  Context none = canonical_context({});
  CHECK_FALSE(equal_mod_free_theory(*h, mk_app(none, h->projection({s, s}, 0), {}),
                                    mk_app(none, h->projection({s, s}, 1), {})));
  CHECK(kind_of([&] { equal_mod_free_theory(*h, x, mk_app(none, h->projection({s}, 0), {})); }) ==
        ErrorKind::ContextMismatch);
}

TEST_CASE("the freeness extension evaluates through projections and substitution") {
  Base b;
  Sort s = b.s;
  Carriers c;
  c.set(s, {"0", "1"});
  CloneModel m = hop_model(c, 2);
  auto find = [&](const Word& w, const std::string& label) {
    return *m.algebra.find_label(m.clone->hall_sort(w, s), label);
  };
  std::unordered_map<std::string, Element> f{{"one", find({}, "[1]")}, {"add", find({s, s}, "[0,1,1,0]")}};
  Context one_var = canonical_context({s});
  Term p = mk_app(one_var, b.add, {mk_var(one_var, 0), mk_app(one_var, b.one, {})});
  Element negation = hall_extension(*m.clone, m.algebra, f, p);
  CHECK(m.algebra.label(m.clone->hall_sort({s}, s), negation) == "[1,0]");
  CHECK(hall_extension(*m.clone, m.algebra, f, insertion(b.add)) == f.at("add"));
  CHECK(insertion(b.add).to_string() == "add(v0, v1)");
  CHECK(kind_of([&] { hall_extension(*m.clone, m.algebra, {}, p); }) == ErrorKind::UnboundCloneVariable);
}
