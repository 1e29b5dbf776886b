#include <doctest.h>

#include "sortal/hallbenabou.hpp"

using namespace sortal;

namespace {

Word base(std::size_t n) {
  Word w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(Sort("b" + std::to_string(i)));
  return w;
}

struct Counts {
  std::size_t hall, benabou;
};

// Axiom instances per (u,w,i), (u,s), (u,v,w,s) and (u,w,i), (u,w) twice, nonempty w, (u,x,w,y).
Counts closed_form(std::size_t n, std::size_t b) {
  std::size_t words = 0, letters = 0, p = 1;
  for (std::size_t k = 0; k <= b; ++k, p *= n) {
    words += p;
    letters += k * p;
  }
  return {words * letters + words * n + words * words * words * n,
          words * letters + 2 * words * words + (words - 1) + words * words * words * words};
}

Carriers two_point(const Word& sorts) {
  Carriers c;
  for (Sort s : sorts) c.set(s, {"0", "1"});
  return c;
}

}  // namespace

TEST_CASE("generated axiom counts match the closed form") {
  for (std::size_t n = 1; n <= 2; ++n)
    for (std::size_t b = 1; b <= 3; ++b) {
      Counts want = closed_form(n, b);
      CHECK(hall_spec(base(n), b).spec.equations.size() == want.hall);
      CHECK(benabou_spec(base(n), b).spec.equations.size() == want.benabou);
    }
  CHECK(closed_form(1, 1).hall == 12);
  CHECK(closed_form(1, 1).benabou == 27);
}

TEST_CASE("axiom instances are named and typed") {
  Sort s("s");
  CloneSpec h = hall_spec({s}, 1);
  CHECK(h.spec.equations[0].name == "H1_e_0_0");
  CHECK(h.spec.free_theory == h.clone);
  CloneSpec b = benabou_spec({s}, 1);
  bool saw_b4 = false;
  for (const auto& ne : b.spec.equations)
    if (ne.name == "B4_0") {
      saw_b4 = true;
      CHECK(ne.equation.lhs.source()->empty());
      CHECK(ne.equation.lhs[0].to_string() == "tup_0_0(pi_0_0)");
    }
  CHECK(saw_b4);
  for (const auto& ne : h.spec.equations) {
    auto g = generic_env(*h.clone, *ne.equation.lhs.source());
    CHECK(eval_clone(*h.clone, ne.equation.lhs[0], g.env) == eval_clone(*h.clone, ne.equation.rhs[0], g.env));
  }
}

TEST_CASE("function models satisfy their axioms and correspond") {
  Sort s("s"), t("t");
  for (const Word& sorts : {Word{s}, Word{s, t}}) {
    Carriers c = two_point(sorts);
    CloneModel h = hop_model(c, 1);
    CloneModel b = bop_model(c, 1);
    CHECK_FALSE(first_violated(h.algebra, hall_spec(sorts, 1).spec).has_value());
    CHECK_FALSE(first_violated(b.algebra, benabou_spec(sorts, 1).spec).has_value());
    CloneModel hb = f_hb(h);
    CHECK_FALSE(first_violated(hb.algebra, benabou_spec(sorts, 1).spec).has_value());
    CHECK(f_bh(hb).algebra == h.algebra);
    auto [f, g] = hb_comparison_maps(b);
    CloneModel round = f_hb(f_bh(b));
    CHECK(check_homomorphism(f, b.algebra, round.algebra));
    CHECK(check_homomorphism(g, round.algebra, b.algebra));
  }
  CloneModel h = hop_model(two_point({s}), 1);
  CHECK(h.algebra.labels(h.clone->hall_sort({s}, s)) == std::vector<std::string>{"[0,0]", "[0,1]", "[1,0]", "[1,1]"});
  CHECK_THROWS_AS(f_bh(h), Error);
}

TEST_CASE("category presentation of a Bénabou model") {
  Sort s("s");
  CloneModel b = bop_model(two_point({s}), 2);
  BenabouTheory th = category_view(b);
  CHECK(th.objects.size() == 3);
  CHECK(th.homs.at(b.clone->benabou_sort({s, s}, {s})).size() == 16);
  CHECK(check_category_laws(th));
  CHECK(from_category_view(th).algebra == b.algebra);

  BenabouTheory broken = th;
  auto& table = broken.composition.at(b.clone->composition({s}, {s}, {s})->name);
  table[1 * 4 + 1] = 0;
  CHECK_FALSE(check_category_laws(broken));

  BenabouTheory lost = th;
  lost.projections.at(b.clone->projection({s, s}, 1)->name) = th.projections.at(b.clone->projection({s, s}, 0)->name);
  CHECK_THROWS_AS(from_category_view(lost), Error);
}

TEST_CASE("the two clone presentations are equivalent") {
  Sort s("s"), t("t");
  for (const Word& sorts : {Word{s}, Word{s, t}})
    for (std::size_t b = 1; b <= 2; ++b)
      for (const auto& line : verify_hall_benabou(sorts, b)) {
        INFO(line.name << ": " << line.detail);
        CHECK(line.ok);
      }
  HbTransformations hb = hb_transformations({s}, 2);
  CHECK(hb.d.image(hb.d.source()->op_index("tup_0_0")) == identity_family(hb.d.sort_map()(benabou_signature({s}, 2)->benabou_sort({s}, {s}))));
  CHECK(check_transformation_strict(hb.chi_h).holds);
}

TEST_CASE("constant functions stay constant under substitution") {
  Sort s("s"), t("t");
  Word sorts{s, t};
  auto h = hall_signature(sorts, 2);
  CloneModel m = hop_model(two_point(sorts), 2);
  std::size_t checked = 0;
  for (const Word& u : h->words())
    for (const Word& v : h->words())
      for (Sort r : sorts) {
        Word ctx_sorts{h->hall_sort({}, r)};
        for (Sort vi : v) ctx_sorts.push_back(h->hall_sort(u, vi));
        Context ctx = canonical_context(ctx_sorts);
        std::vector<Term> args{mk_app(ctx, h->substitution(v, {}, r), {mk_var(ctx, 0)})};
        for (std::size_t i = 0; i < v.size(); ++i) args.push_back(mk_var(ctx, i + 1));
        Term lhs = mk_app(ctx, h->substitution(u, v, r), args);
        Term rhs = mk_app(ctx, h->substitution(u, {}, r), {mk_var(ctx, 0)});
        CHECK(equal_mod_free_theory(*h, lhs, rhs));
        if (v.size() < 2) CHECK(satisfies(m.algebra, Equation::of_terms(lhs, rhs)));
        ++checked;
      }
  CHECK(checked == 98);
}
