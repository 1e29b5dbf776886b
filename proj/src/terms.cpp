#include "sortal/terms.hpp"

#include <atomic>

namespace sortal {

namespace {

std::atomic<std::size_t> g_depth_limit{32};

NodePtr make_var_node(Sort sort, std::size_t index) {
  auto n = std::make_shared<TermNode>(TermNode{sort, index, nullptr, {}, 0});
  return n;
}

NodePtr make_app_node(const OpRef& op, std::vector<NodePtr> args) {
  std::size_t depth = 0;
  for (const auto& a : args) depth = std::max(depth, a->depth);
  ++depth;
  if (depth > g_depth_limit.load())
    throw Error(ErrorKind::DepthExceeded, "term depth exceeds " + std::to_string(g_depth_limit.load()));
  return std::make_shared<TermNode>(TermNode{op->coarity, 0, op, std::move(args), depth});
}

void render(const TermNode& n, const SortedSet& ctx, std::string& out) {
  if (n.is_var()) {
    out += ctx[n.var].name;
    return;
  }
  out += n.op->name;
  if (n.args.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < n.args.size(); ++i) {
    if (i) out += ", ";
    render(*n.args[i], ctx, out);
  }
  out += ')';
}

NodePtr rebind_node(const NodePtr& n, std::span<const NodePtr> images) {
  if (n->is_var()) return images[n->var];
  std::vector<NodePtr> args;
  args.reserve(n->args.size());
  bool changed = false;
  for (const auto& a : n->args) {
    args.push_back(rebind_node(a, images));
    changed = changed || args.back() != a;
  }
  if (!changed) return n;
  return make_app_node(n->op, std::move(args));
}

}  // namespace

namespace detail {
NodePtr var_node(Sort sort, std::size_t index) { return make_var_node(sort, index); }
NodePtr rebind_node(const NodePtr& n, std::span<const NodePtr> images) { return sortal::rebind_node(n, images); }
}  // namespace detail

bool nodes_equal(const TermNode& a, const TermNode& b) {
  if (&a == &b) return true;
  if (a.sort != b.sort || a.depth != b.depth) return false;
  if (a.is_var() || b.is_var()) return a.is_var() && b.is_var() && a.var == b.var;
  if (a.op != b.op && *a.op != *b.op) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!nodes_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

std::string Term::to_string() const {
  std::string out;
  render(*node_, *ctx_, out);
  return out;
}

bool operator==(const Term& a, const Term& b) {
  return same_context(a.ctx_, b.ctx_) && nodes_equal(*a.node_, *b.node_);
}

std::size_t term_depth_limit() { return g_depth_limit.load(); }
void set_term_depth_limit(std::size_t limit) { g_depth_limit.store(limit); }

Term mk_var(const Context& ctx, std::size_t index) {
  if (index >= ctx->size())
    throw Error(ErrorKind::UnknownVariable, "no variable at position " + std::to_string(index));
  return Term::adopt(ctx, make_var_node((*ctx)[index].sort, index));
}

Term mk_var(const Context& ctx, std::string_view name) {
  auto idx = ctx->find(name);
  if (!idx) throw Error(ErrorKind::UnknownVariable, "no unique variable named " + std::string(name));
  return mk_var(ctx, *idx);
}

Term mk_app(const Context& ctx, const OpRef& op, const std::vector<Term>& args) {
  if (args.size() != op->arity.size())
    throw Error(ErrorKind::ArityMismatch, op->name + " expects " + std::to_string(op->arity.size()) +
                                              " arguments, got " + std::to_string(args.size()));
  std::vector<NodePtr> nodes;
  nodes.reserve(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!same_context(args[i].context(), ctx))
      throw Error(ErrorKind::ContextMismatch, "argument " + std::to_string(i) + " of " + op->name);
    if (args[i].sort() != op->arity[i])
      throw Error(ErrorKind::SortMismatch, "argument " + std::to_string(i) + " of " + op->name + " has sort " +
                                               args[i].sort().name() + ", expected " + op->arity[i].name());
    nodes.push_back(args[i].node());
  }
  return Term::adopt(ctx, make_app_node(op, std::move(nodes)));
}

Term mk_app(const OpRef& op, const std::vector<Term>& args) {
  if (args.empty()) throw Error(ErrorKind::ContextMismatch, "constant " + op->name + " needs an explicit context");
  return mk_app(args.front().context(), op, args);
}

Term rebind(const Term& p, const Context& target, std::span<const Term> images) {
  const SortedSet& src = *p.context();
  if (images.size() != src.size())
    throw Error(ErrorKind::ContextMismatch, "substitution covers " + std::to_string(images.size()) +
                                                " of " + std::to_string(src.size()) + " variables");
  std::vector<NodePtr> nodes;
  nodes.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!same_context(images[i].context(), target))
      throw Error(ErrorKind::ContextMismatch, "image of " + src[i].name + " lives in another context");
    if (images[i].sort() != src[i].sort)
      throw Error(ErrorKind::SortMismatch, "image of " + src[i].name + " has sort " + images[i].sort().name());
    nodes.push_back(images[i].node());
  }
  return Term::adopt(target, rebind_node(p.node(), nodes));
}

TermFamily::TermFamily(Word domain, Word codomain, std::vector<Term> components)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), components_(std::move(components)) {
  if (components_.size() != codomain_.size())
    throw Error(ErrorKind::ArityMismatch, "family into " + sortal::to_string(codomain_) + " has " +
                                              std::to_string(components_.size()) + " components");
  Context ctx = canonical_context(domain_);
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (!same_context(components_[i].context(), ctx))
      throw Error(ErrorKind::ContextMismatch, "component " + std::to_string(i) + " is not over ↓" +
                                                  sortal::to_string(domain_));
    if (components_[i].sort() != codomain_[i])
      throw Error(ErrorKind::SortMismatch, "component " + std::to_string(i) + " has sort " +
                                               components_[i].sort().name() + ", expected " + codomain_[i].name());
  }
}

std::string TermFamily::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += ", ";
    out += components_[i].to_string();
  }
  return out + ")";
}

bool operator==(const TermFamily& a, const TermFamily& b) {
  return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.components_ == b.components_;
}

TermFamily identity_family(const Word& u) {
  Context ctx = canonical_context(u);
  std::vector<Term> comps;
  comps.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) comps.push_back(mk_var(ctx, i));
  return TermFamily(u, u, std::move(comps));
}

Term substitute(const Term& p, const TermFamily& q) {
  if (!same_context(p.context(), canonical_context(q.codomain())))
    throw Error(ErrorKind::ContextMismatch, "term is not over ↓" + to_string(q.codomain()));
  return rebind(p, q.context(), q.components());
}

GeneralTerm::GeneralTerm(Context source, Context target, std::vector<Term> body)
    : source_(std::move(source)), target_(std::move(target)), body_(std::move(body)) {
  if (body_.size() != target_->size())
    throw Error(ErrorKind::ArityMismatch, "general term body covers " + std::to_string(body_.size()) + " of " +
                                              std::to_string(target_->size()) + " target variables");
  for (std::size_t i = 0; i < body_.size(); ++i) {
    if (!same_context(body_[i].context(), source_))
      throw Error(ErrorKind::ContextMismatch, "image of " + (*target_)[i].name + " is not over the source");
    if (body_[i].sort() != (*target_)[i].sort)
      throw Error(ErrorKind::SortMismatch, "image of " + (*target_)[i].name + " has sort " + body_[i].sort().name());
  }
}

bool operator==(const GeneralTerm& a, const GeneralTerm& b) {
  return same_context(a.source_, b.source_) && same_context(a.target_, b.target_) && a.body_ == b.body_;
}

Equation::Equation(GeneralTerm l, GeneralTerm r) : lhs(std::move(l)), rhs(std::move(r)) {
  if (!same_context(lhs.source(), rhs.source()) || !same_context(lhs.target(), rhs.target()))
    throw Error(ErrorKind::ContextMismatch, "equation sides are not parallel");
}

Equation Equation::of_terms(const Term& l, const Term& r) {
  if (l.sort() != r.sort()) throw Error(ErrorKind::SortMismatch, "equation sides have different sorts");
  Context y = canonical_context(Word{l.sort()});
  return Equation(GeneralTerm(l.context(), y, {l}), GeneralTerm(r.context(), y, {r}));
}

GeneralTerm identity_general(const Context& x) {
  std::vector<Term> body;
  body.reserve(x->size());
  for (std::size_t i = 0; i < x->size(); ++i) body.push_back(mk_var(x, i));
  return GeneralTerm(x, x, std::move(body));
}

GeneralTerm general_from_family(const TermFamily& f) {
  return GeneralTerm(f.context(), canonical_context(f.codomain()), f.components());
}

TermFamily family_from_general(const GeneralTerm& g) {
  if (!g.source()->is_canonical() || !g.target()->is_canonical())
    throw Error(ErrorKind::NonCanonicalContext, "general term is not between canonical contexts");
  return TermFamily(g.source()->sorts(), g.target()->sorts(), g.body());
}

GeneralTerm kleisli_compose(const GeneralTerm& q, const GeneralTerm& p) {
  if (!same_context(q.source(), p.target()))
    throw Error(ErrorKind::ContextMismatch, "middle contexts of the composite differ");
  std::vector<Term> body;
  body.reserve(q.body().size());
  for (const auto& t : q.body()) body.push_back(rebind(t, p.source(), p.body()));
  return GeneralTerm(p.source(), q.target(), std::move(body));
}

}  // namespace sortal
