#include <doctest.h>

#include "sortal/terms.hpp"
#include "support/random.hpp"

using namespace sortal;

namespace {

struct Ring {
  Sort s{"s"};
  std::shared_ptr<Signature> sig = std::make_shared<Signature>("R");
  OpRef zero, one, add, mul;
  Ring() {
    sig->add_sort(s);
    zero = sig->add_op("zero", {}, s);
    one = sig->add_op("one", {}, s);
    add = sig->add_op("add", {s, s}, s);
    mul = sig->add_op("mul", {s, s}, s);
  }
};

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvariantViolation;
}

}  // namespace

TEST_CASE("terms are well sorted and render in prefix form") {
  Ring r;
  Context ctx = canonical_context({r.s, r.s});
  Term t = mk_app(ctx, r.add, {mk_var(ctx, 0), mk_app(ctx, r.mul, {mk_var(ctx, 1), mk_app(ctx, r.one, {})})});
  CHECK(t.to_string() == "add(v0, mul(v1, one))");
  CHECK(t.depth() == 3);
  CHECK(t.arg(1).op() == r.mul);
  CHECK(mk_var(ctx, "v1").var_index() == 1);

  CHECK(kind_of([&] { mk_app(ctx, r.add, {mk_var(ctx, 0)}); }) == ErrorKind::ArityMismatch);
  CHECK(kind_of([&] { mk_var(ctx, 2); }) == ErrorKind::UnknownVariable);
  Sort other("t_other");
  Context ctx2 = canonical_context({other});
  CHECK(kind_of([&] { mk_app(ctx2, r.add, {mk_var(ctx2, 0), mk_var(ctx2, 0)}); }) == ErrorKind::SortMismatch);
  CHECK(kind_of([&] { mk_app(ctx, r.add, {mk_var(ctx, 0), mk_var(canonical_context({r.s}), 0)}); }) ==
        ErrorKind::ContextMismatch);
}

TEST_CASE("the depth limit is enforced") {
  Ring r;
  Context ctx = canonical_context({r.s});
  std::size_t old = term_depth_limit();
  set_term_depth_limit(2);
  Term t = mk_var(ctx, 0);
  t = mk_app(ctx, r.add, {t, t});
  t = mk_app(ctx, r.add, {t, t});
  CHECK(kind_of([&] { mk_app(ctx, r.add, {t, t}); }) == ErrorKind::DepthExceeded);
  set_term_depth_limit(old);
  CHECK(mk_app(ctx, r.add, {t, t}).depth() == 3);
}

TEST_CASE("substitution and families") {
  Ring r;
  Context two = canonical_context({r.s, r.s});
  Context one_ctx = canonical_context({r.s});
  Term p = mk_app(two, r.add, {mk_var(two, 0), mk_var(two, 1)});
  TermFamily q({r.s}, {r.s, r.s}, {mk_var(one_ctx, 0), mk_app(one_ctx, r.one, {})});
  CHECK(substitute(p, q).to_string() == "add(v0, one)");
  CHECK(substitute(p, identity_family({r.s, r.s})) == p);

  std::vector<Term> images{mk_app(one_ctx, r.zero, {}), mk_var(one_ctx, 0)};
  CHECK(rebind(p, one_ctx, images).to_string() == "add(zero, v0)");

  CHECK_THROWS_AS(TermFamily({r.s}, {r.s}, {p}), Error);
  CHECK(q.to_string() == "(v0, one)");
  CHECK(q == TermFamily({r.s}, {r.s, r.s}, {mk_var(one_ctx, 0), mk_app(one_ctx, r.one, {})}));
}

TEST_CASE("general terms compose associatively with identities as units") {
  Ring r;
  testing::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto general = [&](std::size_t from, std::size_t to) {
      Word wf(from, r.s), wt(to, r.s);
      Context src = canonical_context(wf);
      std::vector<Term> body;
      for (std::size_t i = 0; i < to; ++i) body.push_back(testing::random_term(rng, *r.sig, src, r.s, 3));
      return GeneralTerm(src, canonical_context(wt), body);
    };
    std::size_t a = testing::uniform(rng, 0, 3), b = testing::uniform(rng, 1, 3), c = testing::uniform(rng, 1, 3),
                d = testing::uniform(rng, 1, 3);
    GeneralTerm p = general(a, b), q = general(b, c), h = general(c, d);
    CHECK(kleisli_compose(h, kleisli_compose(q, p)) == kleisli_compose(kleisli_compose(h, q), p));
    CHECK(kleisli_compose(p, identity_general(p.source())) == p);
    CHECK(kleisli_compose(identity_general(p.target()), p) == p);
    CHECK(general_from_family(family_from_general(p)) == p);
  }
}

TEST_CASE("equations need parallel sides") {
  Ring r;
  Context ctx = canonical_context({r.s, r.s});
  Term l = mk_app(ctx, r.add, {mk_var(ctx, 0), mk_var(ctx, 1)});
  Term rr = mk_app(ctx, r.add, {mk_var(ctx, 1), mk_var(ctx, 0)});
  Equation eq = Equation::of_terms(l, rr);
  CHECK(eq.lhs.target()->sorts() == Word{r.s});
  CHECK_THROWS_AS(Equation::of_terms(l, mk_var(canonical_context({r.s}), 0)), Error);

  SortedSet named;
  named.add("x", r.s);
  Context nc = make_context(named);
  GeneralTerm g(nc, canonical_context({r.s}), {mk_var(nc, 0)});
  CHECK(kind_of([&] { family_from_general(g); }) == ErrorKind::NonCanonicalContext);
}
