#include "sortal/transformations.hpp"

namespace sortal {

Transformation::Transformation(Polyderivator source, Polyderivator target, std::unordered_map<Sort, TermFamily> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (!(*source_.source() == *target_.source()) || !(*source_.target() == *target_.target()))
    throw Error(ErrorKind::EndpointMismatch, "transformation between polyderivators that are not parallel");
  for (Sort s : source_.source()->sorts()) {
    auto it = components_.find(s);
    if (it == components_.end()) throw Error(ErrorKind::TypingError, "transformation has no component at " + s.name());
    const Word& from = source_.sort_map()(s);
    const Word& to = target_.sort_map()(s);
    if (it->second.domain() != from || it->second.codomain() != to)
      throw Error(ErrorKind::TypingError, "component at " + s.name() + " has type " + to_string(it->second.domain()) +
                                              " → " + to_string(it->second.codomain()) + ", expected " +
                                              to_string(from) + " → " + to_string(to));
  }
  if (components_.size() != source_.source()->sorts().size())
    throw Error(ErrorKind::TypingError, "transformation has components at sorts outside the source signature");
}

const TermFamily& Transformation::component(Sort s) const {
  auto it = components_.find(s);
  if (it == components_.end()) throw Error(ErrorKind::UnknownSort, "no component at " + s.name());
  return it->second;
}

TermFamily Transformation::on_word(const Word& w) const {
  std::vector<TermFamily> parts;
  for (Sort s : w) parts.push_back(component(s));
  return family_parallel(parts);
}

bool operator==(const Transformation& a, const Transformation& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.components_ == b.components_;
}

Transformation identity_transformation(const Polyderivator& d) {
  std::unordered_map<Sort, TermFamily> comps;
  for (Sort s : d.source()->sorts()) comps.emplace(s, identity_family(d.sort_map()(s)));
  return Transformation(d, d, std::move(comps));
}

std::pair<TermFamily, TermFamily> naturality_sides(const Transformation& xi, std::size_t op_index) {
  const auto& op = *xi.source().source()->ops().at(op_index);
  TermFamily lhs = family_compose(xi.component(op.coarity), xi.source().image(op_index));
  TermFamily rhs = family_compose(xi.target().image(op_index), xi.on_word(op.arity));
  return {std::move(lhs), std::move(rhs)};
}

StrictCheck check_transformation_strict(const Transformation& xi) {
  const auto& ops = xi.source().source()->ops();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    auto [lhs, rhs] = naturality_sides(xi, k);
    if (!(lhs == rhs)) return StrictCheck{false, ops[k]->name};
  }
  return StrictCheck{};
}

StrictCheck check_transformation_strict(const Transformation& xi, const Polyderivator& d, const Polyderivator& e) {
  if (!(xi.source() == d) || !(xi.target() == e))
    throw Error(ErrorKind::EndpointMismatch, "transformation does not run between the given polyderivators");
  return check_transformation_strict(xi);
}

std::string Verdict::to_string() const {
  switch (status) {
    case Status::Proved: return "Proved";
    case Status::VerifiedOnModels: return "VerifiedOnModels(" + std::to_string(models) + ")";
    case Status::Refuted: return "Refuted(" + witness + ", " + model + ")";
  }
  return "";
}

void require_models(const Specification& spec, const std::vector<Model>& models) {
  for (const auto& m : models) {
    if (!(*m.algebra->signature() == *spec.signature))
      throw Error(ErrorKind::SignatureMismatch, "model " + m.name + " is not over the signature of " + spec.name);
    if (auto bad = first_violated(*m.algebra, spec))
      throw Error(ErrorKind::ModelNotAModel, "model " + m.name + " violates axiom " + *bad + " of " + spec.name);
  }
}

Verdict check_transformation_mod(const Transformation& xi, const Specification& target_spec,
                                 const std::vector<Model>& models) {
  if (!(*target_spec.signature == *xi.source().target()))
    throw Error(ErrorKind::EndpointMismatch, "specification " + target_spec.name + " is not over the target signature");
  require_models(target_spec, models);
  const auto& ops = xi.source().source()->ops();
  bool strict = true;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    auto [lhs, rhs] = naturality_sides(xi, k);
    if (lhs == rhs) continue;
    strict = false;
    if (target_spec.free_theory) {
      for (std::size_t j = 0; j < lhs.size(); ++j)
        if (!equal_mod_free_theory(*target_spec.free_theory, lhs[j], rhs[j]))
          return Verdict{Verdict::Status::Refuted, 0, ops[k]->name, "free " + target_spec.name};
      continue;
    }
    Equation eq(general_from_family(lhs), general_from_family(rhs));
    for (const auto& m : models)
      if (auto v = find_counterexample(*m.algebra, eq))
        return Verdict{Verdict::Status::Refuted, 0, ops[k]->name, m.name + " at " + to_string(*m.algebra, *v)};
  }
  if (strict || target_spec.free_theory) return Verdict{Verdict::Status::Proved, 0, {}, {}};
  return Verdict{Verdict::Status::VerifiedOnModels, models.size(), {}, {}};
}

Transformation vertical_compose(const Transformation& chi, const Transformation& xi) {
  if (!(xi.target() == chi.source()))
    throw Error(ErrorKind::EndpointMismatch, "vertical composite: middle polyderivators differ");
  std::unordered_map<Sort, TermFamily> comps;
  for (Sort s : xi.source().source()->sorts()) comps.emplace(s, family_compose(chi.component(s), xi.component(s)));
  return Transformation(xi.source(), chi.target(), std::move(comps));
}

Transformation horizontal_compose(const Transformation& chi, const Transformation& xi, bool require_agreement) {
  if (!(*xi.source().target() == *chi.source().source()))
    throw Error(ErrorKind::EndpointMismatch, "horizontal composite: signatures do not meet");
  const Polyderivator& h = chi.source();
  const Polyderivator& i = chi.target();
  std::unordered_map<Sort, TermFamily> comps;
  for (Sort s : xi.source().source()->sorts()) {
    const TermFamily& xs = xi.component(s);
    TermFamily first = family_compose(chi.on_word(xs.codomain()), translate_family(h, xs));
    if (require_agreement) {
      TermFamily second = family_compose(translate_family(i, xs), chi.on_word(xs.domain()));
      if (!(first == second))
        throw Error(ErrorKind::InvariantViolation, "the two horizontal composite formulas disagree at sort " + s.name());
    }
    comps.emplace(s, std::move(first));
  }
  return Transformation(compose_polyderivators(h, xi.source()), compose_polyderivators(i, xi.target()), std::move(comps));
}

SortedFunction induced_homomorphism(const Transformation& xi, const FiniteAlgebra& b) {
  FiniteAlgebra from = reduct_algebra(xi.source(), b);
  FiniteAlgebra to = reduct_algebra(xi.target(), b);
  const Carriers& cb = b.carriers();
  SortedFunction f;
  for (Sort s : xi.source().source()->sorts()) {
    const TermFamily& comp = xi.component(s);
    std::vector<CompiledTerm> terms;
    for (const auto& t : comp.components()) terms.emplace_back(b, t);
    std::size_t n = from.carrier_size(s);
    auto dom = cb.radices(comp.domain());
    auto cod = cb.radices(comp.codomain());
    std::vector<Element> args(comp.domain().size()), out(comp.size());
    std::vector<Element> map(n);
    for (std::size_t e = 0; e < n; ++e) {
      decode_row(dom, e, args);
      for (std::size_t j = 0; j < terms.size(); ++j) out[j] = terms[j].eval(args);
      map[e] = static_cast<Element>(encode_row(cod, out));
    }
    f.emplace(s, std::move(map));
  }
  if (!check_homomorphism(f, from, to))
    throw Error(ErrorKind::NotAHomomorphism, "induced map of the transformation is not a homomorphism");
  return f;
}

GeneralTerm transformation_on_context(const Transformation& xi, const SortedSet& x) {
  const SortMap& phi = xi.source().sort_map();
  const SortMap& psi = xi.target().sort_map();
  Context src = dagger_context(phi, x);
  Context tgt = dagger_context(psi, x);
  std::vector<Term> body;
  std::size_t at = 0;
  for (const auto& v : x) {
    const TermFamily& comp = xi.component(v.sort);
    std::vector<Term> images;
    for (std::size_t j = 0; j < comp.domain().size(); ++j) images.push_back(mk_var(src, at + j));
    for (const auto& t : comp.components()) body.push_back(rebind(t, src, images));
    at += comp.domain().size();
  }
  return GeneralTerm(src, tgt, std::move(body));
}

}  // namespace sortal
