#include "sortal/morphisms.hpp"

#include <functional>

namespace sortal {

namespace {

void check_ops_in(const TermNode& n, const Signature& sig, const std::string& where) {
  if (n.is_var()) return;
  if (!sig.contains(*n.op))
    throw Error(ErrorKind::SignatureMismatch, where + " uses " + n.op->name + ", which is not in " + sig.name());
  for (const auto& c : n.args) check_ops_in(*c, sig, where);
}

std::string family_type(const Word& u, const Word& w) { return to_string(u) + " → " + to_string(w); }

/// Translation of a node whose variables stand for the given blocks of target nodes.
std::vector<NodePtr> translate_node(const Polyderivator& d, const TermNode& n,
                                    const std::vector<std::vector<NodePtr>>& blocks) {
  if (n.is_var()) return blocks[n.var];
  std::vector<NodePtr> images;
  for (const auto& c : n.args) {
    auto part = translate_node(d, *c, blocks);
    images.insert(images.end(), part.begin(), part.end());
  }
  const auto& fam = d.image(d.source()->op_index(n.op->name));
  std::vector<NodePtr> out;
  out.reserve(fam.size());
  for (const auto& t : fam.components()) out.push_back(detail::rebind_node(t.node(), images));
  return out;
}

std::vector<std::vector<NodePtr>> variable_blocks(const SortMap& phi, const SortedSet& x) {
  std::vector<std::vector<NodePtr>> blocks;
  std::size_t at = 0;
  for (const auto& v : x) {
    std::vector<NodePtr> block;
    for (Sort t : phi(v.sort)) block.push_back(detail::var_node(t, at++));
    blocks.push_back(std::move(block));
  }
  return blocks;
}

void check_source_term(const Polyderivator& d, const Term& p) {
  check_ops_in(*p.node(), *d.source(), "term " + p.to_string());
}

}  // namespace

Polyderivator::Polyderivator(SignatureRef source, SignatureRef target, SortMap phi, std::vector<TermFamily> images)
    : source_(std::move(source)), target_(std::move(target)), phi_(std::move(phi)), images_(std::move(images)) {
  for (Sort s : source_->sorts()) {
    const Word* img = nullptr;
    try {
      img = &phi_(s);
    } catch (const Error&) {
      throw Error(ErrorKind::TypingError, "sort " + s.name() + " has no image");
    }
    for (Sort t : *img)
      if (!target_->has_sort(t)) throw Error(ErrorKind::TypingError, "image of sort " + s.name() + " leaves " + target_->name());
  }
  const auto& ops = source_->ops();
  if (images_.size() != ops.size())
    throw Error(ErrorKind::TypingError, "polyderivator covers " + std::to_string(images_.size()) + " of " +
                                            std::to_string(ops.size()) + " operations");
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const auto& op = *ops[k];
    Word dom = apply_sharp(phi_, op.arity);
    const Word& cod = phi_(op.coarity);
    const auto& fam = images_[k];
    if (fam.domain() != dom || fam.codomain() != cod)
      throw Error(ErrorKind::TypingError, "image of " + op.name + " has type " +
                                              family_type(fam.domain(), fam.codomain()) + ", expected " +
                                              family_type(dom, cod));
    for (const auto& t : fam.components()) {
      try {
        check_ops_in(*t.node(), *target_, "image of " + op.name);
      } catch (const Error& e) {
        throw Error(ErrorKind::TypingError, e.what());
      }
    }
  }
}

bool operator==(const Polyderivator& a, const Polyderivator& b) {
  return *a.source_ == *b.source_ && *a.target_ == *b.target_ && a.phi_ == b.phi_ && a.images_ == b.images_;
}

Polyderivator mk_polyderivator(SignatureRef source, SignatureRef target, SortMap phi,
                               const std::unordered_map<std::string, TermFamily>& images) {
  std::vector<TermFamily> ordered;
  for (const auto& op : source->ops()) {
    auto it = images.find(op->name);
    if (it == images.end()) throw Error(ErrorKind::TypingError, "operation " + op->name + " has no image");
    ordered.push_back(it->second);
  }
  if (images.size() != ordered.size()) {
    for (const auto& [name, fam] : images)
      if (!source->find_op(name)) throw Error(ErrorKind::TypingError, "image given for unknown operation " + name);
  }
  return Polyderivator(std::move(source), std::move(target), std::move(phi), std::move(ordered));
}

namespace {

SortMap sort_to_sort(const Signature& source, const Signature& target, const std::unordered_map<Sort, Sort>& sorts) {
  SortMap phi(source.sorts(), target.sorts());
  for (Sort s : source.sorts()) {
    auto it = sorts.find(s);
    if (it == sorts.end()) throw Error(ErrorKind::TypingError, "sort " + s.name() + " has no image");
    phi.set(s, Word{it->second});
  }
  return phi;
}

}  // namespace

Polyderivator lift_standard(const StandardMorphism& m) {
  SortMap phi = sort_to_sort(*m.source, *m.target, m.sorts);
  std::vector<TermFamily> images;
  for (const auto& op : m.source->ops()) {
    auto it = m.ops.find(op->name);
    if (it == m.ops.end()) throw Error(ErrorKind::TypingError, "operation " + op->name + " has no image");
    auto target_op = m.target->find_op(it->second);
    if (!target_op) throw Error(ErrorKind::TypingError, "operation " + it->second + " is not in " + m.target->name());
    Word dom = apply_sharp(phi, op->arity);
    if (target_op->arity != dom || target_op->coarity != phi(op->coarity)[0])
      throw Error(ErrorKind::TypingError, "image of " + op->name + " has the wrong type");
    images.emplace_back(dom, Word{target_op->coarity}, std::vector<Term>{insertion(target_op)});
  }
  return Polyderivator(m.source, m.target, std::move(phi), std::move(images));
}

Polyderivator lift_derivor(const Derivor& d) {
  SortMap phi = sort_to_sort(*d.source, *d.target, d.sorts);
  std::unordered_map<std::string, TermFamily> images;
  for (const auto& op : d.source->ops()) {
    auto it = d.terms.find(op->name);
    if (it == d.terms.end()) throw Error(ErrorKind::TypingError, "operation " + op->name + " has no image");
    const Term& t = it->second;
    Word dom = apply_sharp(phi, op->arity);
    if (!same_context(t.context(), canonical_context(dom)) || t.sort() != phi(op->coarity)[0])
      throw Error(ErrorKind::TypingError, "image of " + op->name + " is not a term of sort " +
                                              phi(op->coarity)[0].name() + " over ↓" + to_string(dom));
    images.emplace(op->name, TermFamily(dom, phi(op->coarity), {t}));
  }
  return mk_polyderivator(d.source, d.target, std::move(phi), images);
}

bool is_derivor(const Polyderivator& d) {
  for (Sort s : d.source()->sorts())
    if (d.sort_map()(s).size() != 1) return false;
  return true;
}

Polyderivator identity_polyderivator(const SignatureRef& sig) {
  SortMap phi(sig->sorts(), sig->sorts());
  for (Sort s : sig->sorts()) phi.set(s, Word{s});
  std::vector<TermFamily> images;
  for (const auto& op : sig->ops()) images.emplace_back(op->arity, Word{op->coarity}, std::vector<Term>{insertion(op)});
  return Polyderivator(sig, sig, std::move(phi), std::move(images));
}

TermFamily translate_term(const Polyderivator& d, const Term& p) {
  if (!p.context()->is_canonical()) throw Error(ErrorKind::NonCanonicalContext, "term is not over a canonical context");
  check_source_term(d, p);
  Word w = p.context()->sorts();
  Word dom = apply_sharp(d.sort_map(), w);
  Context ctx = canonical_context(dom);
  auto nodes = translate_node(d, *p.node(), variable_blocks(d.sort_map(), *p.context()));
  std::vector<Term> comps;
  for (auto& n : nodes) comps.push_back(Term::adopt(ctx, std::move(n)));
  return TermFamily(std::move(dom), d.sort_map()(p.sort()), std::move(comps));
}

TermFamily translate_family(const Polyderivator& d, const TermFamily& f) {
  Word dom = apply_sharp(d.sort_map(), f.domain());
  Word cod = apply_sharp(d.sort_map(), f.codomain());
  std::vector<Term> comps;
  for (const auto& t : f.components()) {
    auto part = translate_term(d, t);
    comps.insert(comps.end(), part.components().begin(), part.components().end());
  }
  return TermFamily(std::move(dom), std::move(cod), std::move(comps));
}

Polyderivator compose_polyderivators(const Polyderivator& e, const Polyderivator& d) {
  if (!(*d.target() == *e.source()))
    throw Error(ErrorKind::SignatureMismatch, "cannot compose: target of the first is not the source of the second");
  SortMap phi(d.source()->sorts(), e.target()->sorts());
  for (Sort s : d.source()->sorts()) phi.set(s, apply_sharp(e.sort_map(), d.sort_map()(s)));
  std::vector<TermFamily> images;
  for (const auto& fam : d.images()) images.push_back(translate_family(e, fam));
  return Polyderivator(d.source(), e.target(), std::move(phi), std::move(images));
}

Context dagger_context(const SortMap& phi, const SortedSet& x) { return make_context(coproduct_dagger(phi, x)); }

GeneralTerm translate_general(const Polyderivator& d, const GeneralTerm& p) {
  const SortMap& phi = d.sort_map();
  Context src = dagger_context(phi, *p.source());
  Context tgt = dagger_context(phi, *p.target());
  auto blocks = variable_blocks(phi, *p.source());
  std::vector<Term> body;
  for (const auto& t : p.body()) {
    check_source_term(d, t);
    for (auto& n : translate_node(d, *t.node(), blocks)) body.push_back(Term::adopt(src, std::move(n)));
  }
  return GeneralTerm(src, tgt, std::move(body));
}

Equation translate_equation(const Polyderivator& d, const Equation& eq) {
  return Equation(translate_general(d, eq.lhs), translate_general(d, eq.rhs));
}

std::vector<Element> unpack(const Carriers& b, const Word& w, Element e) {
  auto r = b.radices(w);
  std::vector<Element> out(w.size());
  decode_row(r, e, out);
  return out;
}

Element pack(const Carriers& b, const Word& w, std::span<const Element> tuple) {
  auto r = b.radices(w);
  return static_cast<Element>(encode_row(r, tuple));
}

FiniteAlgebra reduct_algebra(const Polyderivator& d, const FiniteAlgebra& b) {
  if (!(*b.signature() == *d.target()))
    throw Error(ErrorKind::SignatureMismatch, "algebra is not over the polyderivator's target signature");
  const SortMap& phi = d.sort_map();
  const Carriers& cb = b.carriers();
  FiniteAlgebra out(d.source());
  for (Sort s : d.source()->sorts()) {
    const Word& img = phi(s);
    std::size_t n = cb.product_size(img);
    if (n > table_row_cap()) throw Error(ErrorKind::TableTooLarge, "carrier at " + s.name() + " of the reduct");
    auto r = cb.radices(img);
    std::vector<Element> tuple(img.size());
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t row = 0; row < n; ++row) {
      decode_row(r, row, tuple);
      std::vector<std::string> parts;
      for (std::size_t i = 0; i < tuple.size(); ++i) parts.push_back(cb.labels(img[i])[tuple[i]]);
      labels.push_back(tuple_label(parts));
    }
    out.set_carrier(s, std::move(labels));
  }
  const auto& ops = d.source()->ops();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const auto& op = *ops[k];
    const auto& fam = d.image(k);
    std::vector<CompiledTerm> comps;
    for (const auto& t : fam.components()) comps.emplace_back(b, t);
    auto outer = out.carriers().radices(op.arity);
    std::size_t rows = out.carriers().product_size(op.arity);
    if (rows > table_row_cap()) throw Error(ErrorKind::TableTooLarge, "table of " + op.name + " in the reduct");
    std::vector<std::vector<std::size_t>> inner;
    for (Sort s : op.arity) inner.push_back(cb.radices(phi(s)));
    auto cod = cb.radices(fam.codomain());
    std::vector<Element> args(op.arity.size()), flat(fam.domain().size()), result(fam.size());
    std::vector<Element> table(rows);
    for (std::size_t row = 0; row < rows; ++row) {
      decode_row(outer, row, args);
      std::size_t at = 0;
      for (std::size_t i = 0; i < args.size(); ++i) {
        decode_row(inner[i], args[i], std::span<Element>(flat).subspan(at, inner[i].size()));
        at += inner[i].size();
      }
      for (std::size_t j = 0; j < comps.size(); ++j) result[j] = comps[j].eval(flat);
      table[row] = static_cast<Element>(encode_row(cod, result));
    }
    out.set_table(k, std::move(table));
  }
  return out;
}

Valuation flatten_valuation(const Polyderivator& d, const Carriers& b, const Valuation& v) {
  Valuation out{dagger_context(d.sort_map(), *v.ctx), {}};
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    auto part = unpack(b, d.sort_map()((*v.ctx)[i].sort), v.values[i]);
    out.values.insert(out.values.end(), part.begin(), part.end());
  }
  return out;
}

Valuation regroup_valuation(const Polyderivator& d, const Carriers& b, const Context& x, const Valuation& flat) {
  if (!same_context(flat.ctx, dagger_context(d.sort_map(), *x)))
    throw Error(ErrorKind::ContextMismatch, "valuation is not on the ∐† context");
  Valuation out{x, {}};
  std::size_t at = 0;
  for (const auto& var : *x) {
    const Word& img = d.sort_map()(var.sort);
    out.values.push_back(pack(b, img, std::span<const Element>(flat.values).subspan(at, img.size())));
    at += img.size();
  }
  return out;
}

SortedFunction composite_regrouping(const Polyderivator& e, const Polyderivator& d, const Carriers& c) {
  SortedFunction out;
  for (Sort s : d.source()->sorts()) {
    const Word& mid = d.sort_map()(s);
    Word flat_word = apply_sharp(e.sort_map(), mid);
    auto flat_r = c.radices(flat_word);
    std::size_t n = c.product_size(flat_word);
    std::vector<std::size_t> nested_r;
    for (Sort t : mid) nested_r.push_back(c.product_size(e.sort_map()(t)));
    std::vector<Element> flat(flat_word.size()), nested(mid.size());
    std::vector<Element> map(n);
    for (std::size_t row = 0; row < n; ++row) {
      decode_row(flat_r, row, flat);
      std::size_t at = 0;
      for (std::size_t j = 0; j < mid.size(); ++j) {
        const Word& block = e.sort_map()(mid[j]);
        nested[j] = pack(c, block, std::span<const Element>(flat).subspan(at, block.size()));
        at += block.size();
      }
      map[row] = static_cast<Element>(encode_row(nested_r, nested));
    }
    out.emplace(s, std::move(map));
  }
  return out;
}

bool satisfaction_condition_check(const Polyderivator& d, const FiniteAlgebra& a, const Equation& eq) {
  bool in_reduct = satisfies(reduct_algebra(d, a), eq);
  bool translated = satisfies(a, translate_equation(d, eq));
  return in_reduct == translated;
}

}  // namespace sortal
