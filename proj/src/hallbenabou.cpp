#include "sortal/hallbenabou.hpp"

namespace sortal {

namespace {

std::string spec_label(const char* prefix, const Word& sorts, std::size_t bound) {
  std::string out = prefix;
  for (Sort s : sorts) out += "_" + s.name();
  return out + "_" + std::to_string(bound);
}

Term constant(const OpRef& op) { return mk_app(canonical_context({}), op, {}); }
Term constant_in(const Context& ctx, const OpRef& op) { return mk_app(ctx, op, {}); }

std::vector<Term> variables(const Context& ctx) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < ctx->size(); ++i) out.push_back(mk_var(ctx, i));
  return out;
}

std::vector<Term> with_front(Term front, const std::vector<Term>& rest) {
  std::vector<Term> out{std::move(front)};
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

void add_equation(Specification& spec, std::string name, const Term& l, const Term& r) {
  spec.equations.push_back(NamedEquation{std::move(name), Equation::of_terms(l, r)});
}

}  // namespace

CloneSpec hall_spec(const Word& sorts, std::size_t bound) {
  auto cs = hall_signature(sorts, bound);
  Specification spec{spec_label("Hall", sorts, bound), cs->signature(), {}, cs};
  const auto& words = cs->words();
  auto code = [&](const Word& w) { return cs->word_code(w); };

  for (const auto& u : words)
    for (const auto& w : words)
      for (std::size_t i = 0; i < w.size(); ++i) {
        Word ctxw;
        for (Sort wj : w) ctxw.push_back(cs->hall_sort(u, wj));
        Context ctx = canonical_context(ctxw);
        auto vs = variables(ctx);
        Term pi = mk_app(ctx, cs->projection(w, i), {});
        Term lhs = mk_app(ctx, cs->substitution(u, w, w[i]), with_front(pi, vs));
        add_equation(spec, "H1_" + code(u) + "_" + code(w) + "_" + std::to_string(i), lhs, vs[i]);
      }

  for (const auto& u : words)
    for (std::size_t si = 0; si < sorts.size(); ++si) {
      Context ctx = canonical_context({cs->hall_sort(u, sorts[si])});
      Term x = mk_var(ctx, 0);
      std::vector<Term> pis;
      for (std::size_t i = 0; i < u.size(); ++i) pis.push_back(mk_app(ctx, cs->projection(u, i), {}));
      Term lhs = mk_app(ctx, cs->substitution(u, u, sorts[si]), with_front(x, pis));
      add_equation(spec, "H2_" + code(u) + "_" + std::to_string(si), lhs, x);
    }

  for (const auto& u : words)
    for (const auto& v : words)
      for (const auto& w : words)
        for (std::size_t si = 0; si < sorts.size(); ++si) {
          Sort s = sorts[si];
          Word ctxw{cs->hall_sort(w, s)};
          for (Sort wj : w) ctxw.push_back(cs->hall_sort(v, wj));
          for (Sort vj : v) ctxw.push_back(cs->hall_sort(u, vj));
          Context ctx = canonical_context(ctxw);
          auto vs = variables(ctx);
          Term f = vs[0];
          std::vector<Term> gs(vs.begin() + 1, vs.begin() + 1 + w.size());
          std::vector<Term> hs(vs.begin() + 1 + w.size(), vs.end());
          Term inner = mk_app(ctx, cs->substitution(v, w, s), with_front(f, gs));
          Term lhs = mk_app(ctx, cs->substitution(u, v, s), with_front(inner, hs));
          std::vector<Term> composed;
          for (std::size_t j = 0; j < w.size(); ++j)
            composed.push_back(mk_app(ctx, cs->substitution(u, v, w[j]), with_front(gs[j], hs)));
          Term rhs = mk_app(ctx, cs->substitution(u, w, s), with_front(f, composed));
          add_equation(spec, "H3_" + code(u) + "_" + code(v) + "_" + code(w) + "_" + std::to_string(si), lhs, rhs);
        }
  return CloneSpec{cs, std::move(spec)};
}

CloneSpec benabou_spec(const Word& sorts, std::size_t bound) {
  auto cs = benabou_signature(sorts, bound);
  Specification spec{spec_label("Benabou", sorts, bound), cs->signature(), {}, cs};
  const auto& words = cs->words();
  auto code = [&](const Word& w) { return cs->word_code(w); };

  for (const auto& u : words)
    for (const auto& w : words)
      for (std::size_t i = 0; i < w.size(); ++i) {
        Word ctxw;
        for (Sort wj : w) ctxw.push_back(cs->benabou_sort(u, Word{wj}));
        Context ctx = canonical_context(ctxw);
        auto vs = variables(ctx);
        Term tuple = mk_app(ctx, cs->tuple(u, w), vs);
        Term lhs = mk_app(ctx, cs->composition(u, w, Word{w[i]}), {tuple, mk_app(ctx, cs->projection(w, i), {})});
        add_equation(spec, "B1_" + code(u) + "_" + code(w) + "_" + std::to_string(i), lhs, vs[i]);
      }

  for (const auto& u : words)
    for (const auto& w : words) {
      Context ctx = canonical_context({cs->benabou_sort(u, w)});
      Term x = mk_var(ctx, 0);
      std::vector<Term> pis;
      for (std::size_t i = 0; i < u.size(); ++i) pis.push_back(mk_app(ctx, cs->projection(u, i), {}));
      Term lhs = mk_app(ctx, cs->composition(u, u, w), {mk_app(ctx, cs->tuple(u, u), pis), x});
      add_equation(spec, "B2_" + code(u) + "_" + code(w), lhs, x);
    }

  for (const auto& u : words)
    for (const auto& w : words) {
      Context ctx = canonical_context({cs->benabou_sort(u, w)});
      Term x = mk_var(ctx, 0);
      std::vector<Term> parts;
      for (std::size_t i = 0; i < w.size(); ++i)
        parts.push_back(mk_app(ctx, cs->composition(u, w, Word{w[i]}), {x, mk_app(ctx, cs->projection(w, i), {})}));
      add_equation(spec, "B3_" + code(u) + "_" + code(w), mk_app(ctx, cs->tuple(u, w), parts), x);
    }

  for (const auto& w : words) {
    if (w.empty()) continue;
    Context ctx = canonical_context({});
    Term pi = mk_app(ctx, cs->projection(w, 0), {});
    add_equation(spec, "B4_" + code(w), mk_app(ctx, cs->tuple(w, Word{w[0]}), {pi}), pi);
  }

  for (const auto& u : words)
    for (const auto& x : words)
      for (const auto& w : words)
        for (const auto& y : words) {
          Context ctx = canonical_context({cs->benabou_sort(w, y), cs->benabou_sort(x, w), cs->benabou_sort(u, x)});
          auto vs = variables(ctx);
          Term right = mk_app(ctx, cs->composition(u, x, w), {vs[2], vs[1]});
          Term lhs = mk_app(ctx, cs->composition(u, w, y), {right, vs[0]});
          Term left = mk_app(ctx, cs->composition(x, w, y), {vs[1], vs[0]});
          Term rhs = mk_app(ctx, cs->composition(u, x, y), {vs[2], left});
          add_equation(spec, "B5_" + code(u) + "_" + code(x) + "_" + code(w) + "_" + code(y), lhs, rhs);
        }
  return CloneSpec{cs, std::move(spec)};
}

namespace {

/// Fills carriers with function spaces and returns the decoded operations per sort.
std::unordered_map<std::uint32_t, std::vector<FiniteOperation>> function_carriers(const CloneSignature& cs,
                                                                                const Carriers& a,
                                                                                FiniteAlgebra& alg) {
  std::unordered_map<std::uint32_t, std::vector<FiniteOperation>> ops;
  for (Sort s : cs.signature()->sorts()) {
    const auto& [dom, cod] = cs.decode(s);
    std::size_t n = function_space_size(a, dom, cod);
    if (n > table_row_cap())
      throw Error(ErrorKind::TableTooLarge, "more than " + std::to_string(table_row_cap()) + " operations at " + s.name());
    std::vector<FiniteOperation> all;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < n; ++k) {
      all.push_back(decode_function(a, dom, cod, static_cast<Element>(k)));
      labels.push_back(function_label(a, all.back()));
    }
    alg.set_carrier(s, std::move(labels));
    ops.emplace(s.id(), std::move(all));
  }
  return ops;
}

template <typename Fn>
std::vector<Element> tabulate(const FiniteAlgebra& alg, const OperationSymbol& op, Fn&& fn) {
  auto r = alg.carriers().radices(op.arity);
  std::size_t rows = alg.carriers().product_size(op.arity);
  if (rows > table_row_cap()) throw Error(ErrorKind::TableTooLarge, "table of " + op.name);
  std::vector<Element> table(rows), args(op.arity.size());
  for (std::size_t row = 0; row < rows; ++row) {
    decode_row(r, row, args);
    table[row] = fn(std::span<const Element>(args));
  }
  return table;
}

}  // namespace

CloneModel hop_model(const Carriers& a, std::size_t bound) {
  auto cs = hall_signature(a.sorts(), bound);
  FiniteAlgebra alg(cs->signature());
  auto ops = function_carriers(*cs, a, alg);
  const auto& sig = *cs->signature();
  for (std::size_t k = 0; k < sig.ops().size(); ++k) {
    const auto& op = *sig.ops()[k];
    const CloneOp& desc = cs->describe(op);
    alg.set_table(k, tabulate(alg, op, [&](std::span<const Element> args) {
      if (desc.kind == CloneOpKind::Projection) return encode_function(a, hall_project(a, desc.w, desc.index));
      const FiniteOperation& f = ops.at(op.arity[0].id())[args[0]];
      std::vector<FiniteOperation> gs;
      for (std::size_t i = 1; i < args.size(); ++i) gs.push_back(ops.at(op.arity[i].id())[args[i]]);
      return encode_function(a, hall_substitute(a, desc.u, f, gs));
    }));
  }
  return CloneModel{cs, std::move(alg)};
}

CloneModel bop_model(const Carriers& a, std::size_t bound) {
  auto cs = benabou_signature(a.sorts(), bound);
  FiniteAlgebra alg(cs->signature());
  auto ops = function_carriers(*cs, a, alg);
  const auto& sig = *cs->signature();
  for (std::size_t k = 0; k < sig.ops().size(); ++k) {
    const auto& op = *sig.ops()[k];
    const CloneOp& desc = cs->describe(op);
    alg.set_table(k, tabulate(alg, op, [&](std::span<const Element> args) {
      switch (desc.kind) {
        case CloneOpKind::Projection:
          return encode_function(a, hall_project(a, desc.w, desc.index));
        case CloneOpKind::Tuple: {
          std::vector<FiniteOperation> fs;
          for (std::size_t i = 0; i < args.size(); ++i) fs.push_back(ops.at(op.arity[i].id())[args[i]]);
          return encode_function(a, benabou_tuple(a, desc.u, fs));
        }
        default: {
          const auto& p = ops.at(op.arity[0].id())[args[0]];
          const auto& q = ops.at(op.arity[1].id())[args[1]];
          return encode_function(a, benabou_compose(a, q, p));
        }
      }
    }));
  }
  return CloneModel{cs, std::move(alg)};
}

CloneModel f_hb(const CloneModel& hall) {
  const auto& hs = *hall.clone;
  if (hs.flavor() != CloneFlavor::Hall) throw Error(ErrorKind::SignatureMismatch, "f_hb expects a Hall model");
  auto bs = benabou_signature(hs.base(), hs.bound());
  const FiniteAlgebra& a = hall.algebra;
  const auto& hsig = *hs.signature();
  FiniteAlgebra out(bs->signature());
  auto factors = [&](const Word& u, const Word& w) {
    Word f;
    for (Sort wi : w) f.push_back(hs.hall_sort(u, wi));
    return f;
  };
  for (Sort s : bs->signature()->sorts()) {
    const auto& [u, w] = bs->decode(s);
    Word f = factors(u, w);
    std::size_t n = a.carriers().product_size(f);
    if (n > table_row_cap()) throw Error(ErrorKind::TableTooLarge, "carrier at " + s.name());
    auto r = a.carriers().radices(f);
    std::vector<Element> tuple(f.size());
    std::vector<std::string> labels;
    for (std::size_t row = 0; row < n; ++row) {
      decode_row(r, row, tuple);
      std::vector<std::string> parts;
      for (std::size_t i = 0; i < f.size(); ++i) parts.push_back(a.label(f[i], tuple[i]));
      labels.push_back(parts.size() == 1 ? parts[0] : tuple_label(parts));
    }
    out.set_carrier(s, std::move(labels));
  }
  auto xi = [&](const Word& u, const Word& w, Sort s, std::vector<Element> args) {
    return a.apply(hsig.op_index(hs.substitution(u, w, s)->name), args);
  };
  const auto& bsig = *bs->signature();
  for (std::size_t k = 0; k < bsig.ops().size(); ++k) {
    const auto& op = *bsig.ops()[k];
    const CloneOp& desc = bs->describe(op);
    out.set_table(k, tabulate(out, op, [&](std::span<const Element> args) -> Element {
      switch (desc.kind) {
        case CloneOpKind::Projection:
          return a.apply(hsig.op_index(hs.projection(desc.w, desc.index)->name), {});
        case CloneOpKind::Tuple: {
          const Word& u = desc.u;
          const Word& w = desc.w;
          std::vector<Element> res;
          for (std::size_t j = 0; j < w.size(); ++j) {
            std::vector<Element> xs{a.apply(hsig.op_index(hs.projection(w, j)->name), {})};
            xs.insert(xs.end(), args.begin(), args.end());
            res.push_back(xi(u, w, w[j], xs));
          }
          return pack(a.carriers(), factors(u, w), res);
        }
        default: {
          const Word& u = desc.u;
          const Word& x = desc.x;
          const Word& w = desc.w;
          auto as = unpack(a.carriers(), factors(u, x), args[0]);
          auto bs_ = unpack(a.carriers(), factors(x, w), args[1]);
          std::vector<Element> res;
          for (std::size_t j = 0; j < w.size(); ++j) {
            std::vector<Element> xs{bs_[j]};
            xs.insert(xs.end(), as.begin(), as.end());
            res.push_back(xi(u, x, w[j], xs));
          }
          return pack(a.carriers(), factors(u, w), res);
        }
      }
    }));
  }
  return CloneModel{bs, std::move(out)};
}

CloneModel f_bh(const CloneModel& benabou) {
  const auto& bs = *benabou.clone;
  if (bs.flavor() != CloneFlavor::Benabou) throw Error(ErrorKind::SignatureMismatch, "f_bh expects a Bénabou model");
  auto hs = hall_signature(bs.base(), bs.bound());
  const FiniteAlgebra& b = benabou.algebra;
  const auto& bsig = *bs.signature();
  FiniteAlgebra out(hs->signature());
  for (Sort s : hs->signature()->sorts()) {
    const auto& [w, one] = hs->decode(s);
    out.set_carrier(s, b.labels(bs.benabou_sort(w, one)));
  }
  const auto& hsig = *hs->signature();
  for (std::size_t k = 0; k < hsig.ops().size(); ++k) {
    const auto& op = *hsig.ops()[k];
    const CloneOp& desc = hs->describe(op);
    out.set_table(k, tabulate(out, op, [&](std::span<const Element> args) -> Element {
      if (desc.kind == CloneOpKind::Projection)
        return b.apply(bsig.op_index(bs.projection(desc.w, desc.index)->name), {});
      Element t = b.apply(bsig.op_index(bs.tuple(desc.u, desc.w)->name), args.subspan(1));
      std::vector<Element> xs{t, args[0]};
      return b.apply(bsig.op_index(bs.composition(desc.u, desc.w, Word{*desc.s})->name), xs);
    }));
  }
  return CloneModel{hs, std::move(out)};
}

std::pair<SortedFunction, SortedFunction> hb_comparison_maps(const CloneModel& benabou) {
  const auto& bs = *benabou.clone;
  const FiniteAlgebra& b = benabou.algebra;
  const auto& bsig = *bs.signature();
  CloneModel round = f_hb(f_bh(benabou));
  SortedFunction f, g;
  for (Sort s : bsig.sorts()) {
    const auto& [u, w] = bs.decode(s);
    Word factors;
    for (Sort wi : w) factors.push_back(bs.benabou_sort(u, Word{wi}));
    auto r = b.carriers().radices(factors);
    std::vector<Element> fmap(b.carrier_size(s));
    for (std::size_t a = 0; a < fmap.size(); ++a) {
      std::vector<Element> parts;
      for (std::size_t i = 0; i < w.size(); ++i) {
        Element pi = b.apply(bsig.op_index(bs.projection(w, i)->name), {});
        std::vector<Element> xs{static_cast<Element>(a), pi};
        parts.push_back(b.apply(bsig.op_index(bs.composition(u, w, Word{w[i]})->name), xs));
      }
      fmap[a] = static_cast<Element>(encode_row(r, parts));
    }
    std::vector<Element> gmap(round.algebra.carrier_size(s));
    std::vector<Element> parts(w.size());
    for (std::size_t t = 0; t < gmap.size(); ++t) {
      decode_row(r, t, parts);
      gmap[t] = b.apply(bsig.op_index(bs.tuple(u, w)->name), parts);
    }
    f.emplace(s, std::move(fmap));
    g.emplace(s, std::move(gmap));
  }
  return {std::move(f), std::move(g)};
}

Element BenabouTheory::compose(const Word& u, const Word& x, const Word& w, Element p, Element q) const {
  const auto& table = composition.at(clone->composition(u, x, w)->name);
  std::size_t n = homs.at(clone->benabou_sort(x, w)).size();
  return table[static_cast<std::size_t>(p) * n + q];
}

BenabouTheory category_view(const CloneModel& benabou) {
  const auto& bs = *benabou.clone;
  const FiniteAlgebra& b = benabou.algebra;
  const auto& sig = *bs.signature();
  BenabouTheory t;
  t.clone = benabou.clone;
  t.objects = bs.words();
  for (Sort s : sig.sorts()) t.homs.emplace(s, b.labels(s));
  for (std::size_t k = 0; k < sig.ops().size(); ++k) {
    const auto& op = *sig.ops()[k];
    const CloneOp& desc = bs.describe(op);
    if (desc.kind == CloneOpKind::Composition) t.composition.emplace(op.name, b.table(k));
    if (desc.kind == CloneOpKind::Projection) t.projections.emplace(op.name, b.table(k)[0]);
  }
  for (const auto& w : t.objects) {
    std::vector<Element> pis;
    for (std::size_t i = 0; i < w.size(); ++i) pis.push_back(t.projections.at(bs.projection(w, i)->name));
    t.identities.emplace(bs.benabou_sort(w, w), b.apply(sig.op_index(bs.tuple(w, w)->name), pis));
  }
  return t;
}

bool check_category_laws(const BenabouTheory& t) {
  const auto& bs = *t.clone;
  for (const auto& u : t.objects)
    for (const auto& w : t.objects) {
      std::size_t n = t.homs.at(bs.benabou_sort(u, w)).size();
      Element idu = t.identities.at(bs.benabou_sort(u, u));
      Element idw = t.identities.at(bs.benabou_sort(w, w));
      for (Element p = 0; p < n; ++p) {
        if (t.compose(u, u, w, idu, p) != p) return false;
        if (t.compose(u, w, w, p, idw) != p) return false;
      }
    }
  for (const auto& u : t.objects)
    for (const auto& x : t.objects)
      for (const auto& w : t.objects)
        for (const auto& y : t.objects) {
          std::size_t np = t.homs.at(bs.benabou_sort(u, x)).size();
          std::size_t nq = t.homs.at(bs.benabou_sort(x, w)).size();
          std::size_t nr = t.homs.at(bs.benabou_sort(w, y)).size();
          std::size_t nxy = t.homs.at(bs.benabou_sort(x, y)).size();
          const auto& uxw = t.composition.at(bs.composition(u, x, w)->name);
          const auto& uwy = t.composition.at(bs.composition(u, w, y)->name);
          const auto& uxy = t.composition.at(bs.composition(u, x, y)->name);
          const auto& xwy = t.composition.at(bs.composition(x, w, y)->name);
          for (Element q = 0; q < nq; ++q)
            for (Element r = 0; r < nr; ++r) {
              Element rq = xwy[q * nr + r];
              for (Element p = 0; p < np; ++p)
                if (uwy[uxw[p * nq + q] * nr + r] != uxy[p * nxy + rq]) return false;
            }
        }
  return true;
}

CloneModel from_category_view(const BenabouTheory& t) {
  const auto& bs = *t.clone;
  const auto& sig = *bs.signature();
  FiniteAlgebra out(bs.signature());
  for (Sort s : sig.sorts()) out.set_carrier(s, t.homs.at(s));
  for (std::size_t k = 0; k < sig.ops().size(); ++k) {
    const auto& op = *sig.ops()[k];
    const CloneOp& desc = bs.describe(op);
    switch (desc.kind) {
      case CloneOpKind::Projection:
        out.set_table(k, {t.projections.at(op.name)});
        break;
      case CloneOpKind::Composition:
        out.set_table(k, t.composition.at(op.name));
        break;
      default: {
        const Word& u = desc.u;
        const Word& w = desc.w;
        auto r = out.carriers().radices(op.arity);
        std::size_t rows = out.carriers().product_size(op.arity);
        std::vector<Element> table(rows);
        std::vector<char> hit(rows, 0);
        std::size_t n = t.homs.at(bs.benabou_sort(u, w)).size();
        std::vector<Element> legs(w.size());
        for (Element h = 0; h < n; ++h) {
          for (std::size_t i = 0; i < w.size(); ++i)
            legs[i] = t.compose(u, w, Word{w[i]}, h, t.projections.at(bs.projection(w, i)->name));
          std::size_t row = encode_row(r, legs);
          if (hit[row]) throw Error(ErrorKind::InvariantViolation, "mediating arrow into " + to_string(w) + " is not unique");
          hit[row] = 1;
          table[row] = h;
        }
        for (char c : hit)
          if (!c) throw Error(ErrorKind::InvariantViolation, to_string(w) + " is not a product of its letters");
        out.set_table(k, std::move(table));
      }
    }
  }
  return CloneModel{t.clone, std::move(out)};
}

Polyderivator hb_polyderivator_d(const Word& sorts, std::size_t bound) {
  auto hs = hall_signature(sorts, bound);
  auto bs = benabou_signature(sorts, bound);
  SortMap phi(bs->signature()->sorts(), hs->signature()->sorts());
  for (const auto& u : bs->words())
    for (const auto& w : bs->words()) {
      Word img;
      for (Sort wi : w) img.push_back(hs->hall_sort(u, wi));
      phi.set(bs->benabou_sort(u, w), std::move(img));
    }
  std::vector<TermFamily> images;
  for (const auto& op : bs->signature()->ops()) {
    const CloneOp& desc = bs->describe(*op);
    Word dom = apply_sharp(phi, op->arity);
    const Word& cod = phi(op->coarity);
    switch (desc.kind) {
      case CloneOpKind::Projection:
        images.emplace_back(dom, cod, std::vector<Term>{constant(hs->projection(desc.w, desc.index))});
        break;
      case CloneOpKind::Tuple:
        images.push_back(identity_family(dom));
        break;
      default: {
        Context ctx = canonical_context(dom);
        auto vs = variables(ctx);
        std::size_t m = desc.x.size();
        std::vector<Term> head(vs.begin(), vs.begin() + m);
        std::vector<Term> comps;
        for (std::size_t j = 0; j < desc.w.size(); ++j)
          comps.push_back(mk_app(ctx, hs->substitution(desc.u, desc.x, desc.w[j]), with_front(vs[m + j], head)));
        images.emplace_back(dom, cod, std::move(comps));
      }
    }
  }
  return Polyderivator(bs->signature(), hs->signature(), std::move(phi), std::move(images));
}

Polyderivator hb_polyderivator_e(const Word& sorts, std::size_t bound) {
  auto hs = hall_signature(sorts, bound);
  auto bs = benabou_signature(sorts, bound);
  SortMap psi(hs->signature()->sorts(), bs->signature()->sorts());
  for (const auto& w : hs->words())
    for (Sort s : sorts) psi.set(hs->hall_sort(w, s), Word{bs->benabou_sort(w, Word{s})});
  std::vector<TermFamily> images;
  for (const auto& op : hs->signature()->ops()) {
    const CloneOp& desc = hs->describe(*op);
    Word dom = apply_sharp(psi, op->arity);
    const Word& cod = psi(op->coarity);
    if (desc.kind == CloneOpKind::Projection) {
      images.emplace_back(dom, cod, std::vector<Term>{constant(bs->projection(desc.w, desc.index))});
      continue;
    }
    Context ctx = canonical_context(dom);
    auto vs = variables(ctx);
    Term tuple = mk_app(ctx, bs->tuple(desc.u, desc.w), std::vector<Term>(vs.begin() + 1, vs.end()));
    Term body = mk_app(ctx, bs->composition(desc.u, desc.w, Word{*desc.s}), {tuple, vs[0]});
    images.emplace_back(dom, cod, std::vector<Term>{body});
  }
  return Polyderivator(hs->signature(), bs->signature(), std::move(psi), std::move(images));
}

HbTransformations hb_transformations(const Word& sorts, std::size_t bound) {
  auto hs = hall_signature(sorts, bound);
  auto bs = benabou_signature(sorts, bound);
  Polyderivator d = hb_polyderivator_d(sorts, bound);
  Polyderivator e = hb_polyderivator_e(sorts, bound);
  Polyderivator ed = compose_polyderivators(e, d);
  Polyderivator de = compose_polyderivators(d, e);
  Polyderivator id_b = identity_polyderivator(bs->signature());
  Polyderivator id_h = identity_polyderivator(hs->signature());

  std::unordered_map<Sort, TermFamily> chi, rho;
  for (Sort s : bs->signature()->sorts()) {
    const auto& [u, w] = bs->decode(s);
    Context one = canonical_context({s});
    std::vector<Term> legs;
    for (std::size_t i = 0; i < w.size(); ++i)
      legs.push_back(mk_app(one, bs->composition(u, w, Word{w[i]}), {mk_var(one, 0), constant_in(one, bs->projection(w, i))}));
    chi.emplace(s, TermFamily({s}, ed.sort_map()(s), std::move(legs)));
    Context many = canonical_context(ed.sort_map()(s));
    rho.emplace(s, TermFamily(ed.sort_map()(s), {s}, {mk_app(many, bs->tuple(u, w), variables(many))}));
  }
  std::unordered_map<Sort, TermFamily> chi_h, rho_h;
  for (Sort s : hs->signature()->sorts()) {
    chi_h.emplace(s, identity_family(Word{s}));
    rho_h.emplace(s, identity_family(Word{s}));
  }
  Transformation cb(id_b, ed, std::move(chi));
  Transformation rb(ed, id_b, std::move(rho));
  Transformation ch(id_h, de, std::move(chi_h));
  Transformation rh(de, id_h, std::move(rho_h));
  return HbTransformations{std::move(d), std::move(e), std::move(cb), std::move(rb), std::move(ch), std::move(rh)};
}

Verdict check_pd_spec_morphism(const Polyderivator& d, const Specification& source, const Specification& target,
                               const std::vector<Model>& models) {
  if (!(*source.signature == *d.source()) || !(*target.signature == *d.target()))
    throw Error(ErrorKind::SignatureMismatch, "specifications do not match the polyderivator's signatures");
  require_models(target, models);
  bool literal = true;
  for (const auto& ne : source.equations) {
    Equation t = translate_equation(d, ne.equation);
    if (t.lhs == t.rhs) continue;
    literal = false;
    if (target.free_theory) {
      for (std::size_t k = 0; k < t.lhs.body().size(); ++k)
        if (!equal_mod_free_theory(*target.free_theory, t.lhs[k], t.rhs[k]))
          return Verdict{Verdict::Status::Refuted, 0, ne.name, "free " + target.name};
      continue;
    }
    for (const auto& m : models)
      if (auto v = find_counterexample(*m.algebra, t))
        return Verdict{Verdict::Status::Refuted, 0, ne.name, m.name + " at " + to_string(*m.algebra, *v)};
  }
  if (literal || target.free_theory) return Verdict{Verdict::Status::Proved, 0, {}, {}};
  return Verdict{Verdict::Status::VerifiedOnModels, models.size(), {}, {}};
}

namespace {

bool same_mod_theory(const CloneSignature& cs, const Transformation& a, const Transformation& b) {
  for (const auto& [s, fam] : a.components()) {
    const auto& other = b.component(s);
    for (std::size_t j = 0; j < fam.size(); ++j)
      if (!equal_mod_free_theory(cs, fam[j], other[j])) return false;
  }
  return true;
}

}  // namespace

std::vector<CheckLine> verify_hall_benabou(const Word& sorts, std::size_t bound) {
  std::vector<CheckLine> lines;
  auto hall = hall_spec(sorts, bound);
  auto ben = benabou_spec(sorts, bound);
  lines.push_back({"hall equations generated", true, std::to_string(hall.spec.equations.size())});
  lines.push_back({"benabou equations generated", true, std::to_string(ben.spec.equations.size())});
  auto hb = hb_transformations(sorts, bound);
  auto verdict_line = [&](const std::string& name, const Verdict& v) {
    lines.push_back({name, v.status == Verdict::Status::Proved, v.to_string()});
  };
  verdict_line("d: benabou -> hall preserves equations", check_pd_spec_morphism(hb.d, ben.spec, hall.spec, {}));
  verdict_line("e: hall -> benabou preserves equations", check_pd_spec_morphism(hb.e, hall.spec, ben.spec, {}));
  verdict_line("chi over benabou", check_transformation_mod(hb.chi_b, ben.spec, {}));
  verdict_line("rho over benabou", check_transformation_mod(hb.rho_b, ben.spec, {}));
  verdict_line("chi over hall", check_transformation_mod(hb.chi_h, hall.spec, {}));
  verdict_line("rho over hall", check_transformation_mod(hb.rho_h, hall.spec, {}));
  auto id_b = identity_transformation(hb.chi_b.source());
  auto id_ed = identity_transformation(hb.chi_b.target());
  auto id_h = identity_transformation(hb.chi_h.source());
  auto id_de = identity_transformation(hb.chi_h.target());
  bool ok = same_mod_theory(*ben.clone, vertical_compose(hb.rho_b, hb.chi_b), id_b);
  lines.push_back({"rho . chi = id over benabou", ok, ok ? "Proved" : "differs"});
  ok = same_mod_theory(*ben.clone, vertical_compose(hb.chi_b, hb.rho_b), id_ed);
  lines.push_back({"chi . rho = id over benabou", ok, ok ? "Proved" : "differs"});
  ok = same_mod_theory(*hall.clone, vertical_compose(hb.rho_h, hb.chi_h), id_h);
  lines.push_back({"rho . chi = id over hall", ok, ok ? "Proved" : "differs"});
  ok = same_mod_theory(*hall.clone, vertical_compose(hb.chi_h, hb.rho_h), id_de);
  lines.push_back({"chi . rho = id over hall", ok, ok ? "Proved" : "differs"});
  return lines;
}

}  // namespace sortal
