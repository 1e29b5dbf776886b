#include "sortal/clones.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <tuple>

namespace sortal {

TermFamily family_project(const Word& u, std::size_t i) {
  if (i >= u.size())
    throw Error(ErrorKind::IndexOutOfRange, "projection " + std::to_string(i) + " of " + to_string(u));
  return TermFamily(u, Word{u[i]}, {mk_var(canonical_context(u), i)});
}

TermFamily family_tuple(const Word& u, const std::vector<TermFamily>& components) {
  Word w;
  std::vector<Term> comps;
  for (const auto& c : components) {
    if (c.domain() != u || c.size() != 1)
      throw Error(ErrorKind::DomainMismatch, "tuple component " + c.to_string() + " is not a map " + to_string(u) + " → (s)");
    w.push_back(c.codomain()[0]);
    comps.push_back(c[0]);
  }
  return TermFamily(u, std::move(w), std::move(comps));
}

TermFamily family_compose(const TermFamily& q, const TermFamily& p) {
  if (p.codomain() != q.domain())
    throw Error(ErrorKind::DomainMismatch, "cannot compose " + to_string(q.domain()) + " → " + to_string(q.codomain()) +
                                               " after " + to_string(p.domain()) + " → " + to_string(p.codomain()));
  std::vector<Term> comps;
  comps.reserve(q.size());
  for (const auto& t : q.components()) comps.push_back(substitute(t, p));
  return TermFamily(p.domain(), q.codomain(), std::move(comps));
}

TermFamily family_parallel(const std::vector<TermFamily>& ps) {
  Word u, w;
  for (const auto& p : ps) {
    u.insert(u.end(), p.domain().begin(), p.domain().end());
    w.insert(w.end(), p.codomain().begin(), p.codomain().end());
  }
  Context ctx = canonical_context(u);
  std::vector<Term> comps;
  std::size_t offset = 0;
  for (const auto& p : ps) {
    std::vector<Term> images;
    for (std::size_t i = 0; i < p.domain().size(); ++i) images.push_back(mk_var(ctx, offset + i));
    for (const auto& t : p.components()) comps.push_back(rebind(t, ctx, images));
    offset += p.domain().size();
  }
  return TermFamily(std::move(u), std::move(w), std::move(comps));
}

std::string hall_sort_name(const Word& w, Sort s) { return "(" + to_string(w) + " " + s.name() + ")"; }

std::string benabou_sort_name(const Word& u, const Word& w) { return "(" + to_string(u) + " " + to_string(w) + ")"; }

namespace {

constexpr std::size_t kMaxGeneratedEquations = 4'000'000;

std::vector<Word> enumerate_words(const Word& base, std::size_t bound) {
  std::vector<Word> out{Word{}};
  std::size_t start = 0;
  for (std::size_t len = 1; len <= bound; ++len) {
    std::size_t end = out.size();
    for (std::size_t k = start; k < end; ++k)
      for (Sort s : base) {
        Word w = out[k];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    start = end;
  }
  return out;
}

}  // namespace

CloneSignature::CloneSignature(CloneFlavor flavor, Word base, std::size_t bound)
    : flavor_(flavor), base_(std::move(base)), bound_(bound) {
  if (base_.empty()) throw Error(ErrorKind::TypingError, "clone signature needs at least one base sort");
  if (bound_ == 0) throw Error(ErrorKind::TypingError, "word-length bound must be at least 1");
  for (std::size_t i = 0; i < base_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (base_[i] == base_[j]) throw Error(ErrorKind::DuplicateName, "base sort " + base_[i].name() + " listed twice");
  double words = 0;
  for (std::size_t k = 0, p = 1; k <= bound_; ++k, p *= base_.size()) words += static_cast<double>(p);
  double eqs = flavor_ == CloneFlavor::Hall ? words * words * words * base_.size() : words * words * words * words;
  if (eqs > kMaxGeneratedEquations)
    throw Error(ErrorKind::BoundTooLarge, "bound " + std::to_string(bound_) + " over " + std::to_string(base_.size()) +
                                              " sorts generates too many equations");
  words_ = enumerate_words(base_, bound_);

  std::string prefix = flavor_ == CloneFlavor::Hall ? "hall " : "benabou ";
  sig_mut_ = std::make_shared<Signature>(prefix + to_string(base_) + " " + std::to_string(bound_));
  auto& sig = *sig_mut_;
  auto add_op = [&](std::string name, Word arity, Sort coarity, CloneOp desc) {
    sig.add_op(name, std::move(arity), coarity);
    ops_.emplace(std::move(name), std::move(desc));
  };

  if (flavor_ == CloneFlavor::Hall) {
    for (const auto& w : words_)
      for (Sort s : base_) {
        Sort cs(hall_sort_name(w, s));
        sig.add_sort(cs);
        decoded_.emplace(cs.id(), std::make_pair(w, Word{s}));
      }
    for (const auto& w : words_)
      for (std::size_t i = 0; i < w.size(); ++i)
        add_op("pi_" + std::to_string(i) + "_" + word_code(w), {}, hall_sort(w, w[i]),
               CloneOp{CloneOpKind::Projection, {}, {}, w, std::nullopt, i});
    for (const auto& u : words_)
      for (const auto& w : words_)
        for (std::size_t si = 0; si < base_.size(); ++si) {
          Sort s = base_[si];
          Word arity{hall_sort(w, s)};
          for (Sort wi : w) arity.push_back(hall_sort(u, wi));
          add_op("xi_" + word_code(u) + "_" + word_code(w) + "_" + std::to_string(si), std::move(arity),
                 hall_sort(u, s), CloneOp{CloneOpKind::Substitution, u, {}, w, s, 0});
        }
  } else {
    for (const auto& u : words_)
      for (const auto& w : words_) {
        Sort cs(benabou_sort_name(u, w));
        sig.add_sort(cs);
        decoded_.emplace(cs.id(), std::make_pair(u, w));
      }
    for (const auto& w : words_)
      for (std::size_t i = 0; i < w.size(); ++i)
        add_op("pi_" + std::to_string(i) + "_" + word_code(w), {}, benabou_sort(w, Word{w[i]}),
               CloneOp{CloneOpKind::Projection, {}, {}, w, std::nullopt, i});
    for (const auto& u : words_)
      for (const auto& w : words_) {
        Word arity;
        for (Sort wi : w) arity.push_back(benabou_sort(u, Word{wi}));
        add_op("tup_" + word_code(u) + "_" + word_code(w), std::move(arity), benabou_sort(u, w),
               CloneOp{CloneOpKind::Tuple, u, {}, w, std::nullopt, 0});
      }
    for (const auto& u : words_)
      for (const auto& x : words_)
        for (const auto& w : words_)
          add_op("comp_" + word_code(u) + "_" + word_code(x) + "_" + word_code(w),
                 {benabou_sort(u, x), benabou_sort(x, w)}, benabou_sort(u, w),
                 CloneOp{CloneOpKind::Composition, u, x, w, std::nullopt, 0});
  }
  sig_ = sig_mut_;
}

void CloneSignature::check_word(const Word& w) const {
  if (w.size() > bound_)
    throw Error(ErrorKind::BoundTooLarge, "word " + to_string(w) + " is longer than the bound " + std::to_string(bound_));
}

std::string CloneSignature::word_code(const Word& w) const {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    std::size_t idx = base_.size();
    for (std::size_t j = 0; j < base_.size(); ++j)
      if (base_[j] == w[k]) idx = j;
    if (idx == base_.size()) throw Error(ErrorKind::UnknownSort, "sort " + w[k].name() + " is not a base sort");
    if (k) out += 'x';
    out += std::to_string(idx);
  }
  return out;
}

Sort CloneSignature::hall_sort(const Word& w, Sort s) const {
  check_word(w);
  Sort out(hall_sort_name(w, s));
  if (!is_clone_sort(out)) throw Error(ErrorKind::UnknownSort, "no clone sort " + out.name());
  return out;
}

Sort CloneSignature::benabou_sort(const Word& u, const Word& w) const {
  check_word(u);
  check_word(w);
  Sort out(benabou_sort_name(u, w));
  if (!is_clone_sort(out)) throw Error(ErrorKind::UnknownSort, "no clone sort " + out.name());
  return out;
}

const std::pair<Word, Word>& CloneSignature::decode(Sort s) const {
  auto it = decoded_.find(s.id());
  if (it == decoded_.end()) throw Error(ErrorKind::UnknownSort, s.name() + " is not a clone sort of " + sig_->name());
  return it->second;
}

const CloneOp& CloneSignature::describe(const OperationSymbol& op) const {
  auto it = ops_.find(op.name);
  if (it == ops_.end() || !sig_->contains(op))
    throw Error(ErrorKind::SignatureMismatch, op.name + " is not an operation of " + sig_->name());
  return it->second;
}

OpRef CloneSignature::lookup(const std::string& name) const {
  auto op = sig_->find_op(name);
  if (!op) throw Error(ErrorKind::BoundTooLarge, "no generated operation " + name);
  return op;
}

OpRef CloneSignature::projection(const Word& w, std::size_t i) const {
  check_word(w);
  if (i >= w.size()) throw Error(ErrorKind::IndexOutOfRange, "projection " + std::to_string(i) + " of " + to_string(w));
  return lookup("pi_" + std::to_string(i) + "_" + word_code(w));
}

OpRef CloneSignature::substitution(const Word& u, const Word& w, Sort s) const {
  check_word(u);
  check_word(w);
  Word one{s};
  return lookup("xi_" + word_code(u) + "_" + word_code(w) + "_" + word_code(one));
}

OpRef CloneSignature::tuple(const Word& u, const Word& w) const {
  check_word(u);
  check_word(w);
  return lookup("tup_" + word_code(u) + "_" + word_code(w));
}

OpRef CloneSignature::composition(const Word& u, const Word& x, const Word& w) const {
  check_word(u);
  check_word(x);
  check_word(w);
  return lookup("comp_" + word_code(u) + "_" + word_code(x) + "_" + word_code(w));
}

namespace {

CloneSignatureRef cached_signature(CloneFlavor flavor, const Word& sorts, std::size_t bound) {
  static std::mutex mutex;
  static std::map<std::tuple<int, std::vector<std::uint32_t>, std::size_t>, CloneSignatureRef> cache;
  std::vector<std::uint32_t> ids;
  for (Sort s : sorts) ids.push_back(s.id());
  auto key = std::make_tuple(static_cast<int>(flavor), ids, bound);
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto made = std::make_shared<const CloneSignature>(flavor, sorts, bound);
  cache.emplace(key, made);
  return made;
}

TermFamily eval_node(const CloneSignature& cs, const TermNode& n, const SortedSet& ctx, const CloneEnv& env) {
  if (n.is_var()) {
    if (n.var >= env.values.size() || !env.values[n.var])
      throw Error(ErrorKind::UnboundCloneVariable, "no value for clone variable " + ctx[n.var].name);
    const auto& val = *env.values[n.var];
    const auto& [dom, cod] = cs.decode(n.sort);
    if (val.domain() != dom || val.codomain() != cod)
      throw Error(ErrorKind::TypingError, "value of " + ctx[n.var].name + " is not a map " + to_string(dom) + " → " +
                                              to_string(cod));
    return val;
  }
  const CloneOp& op = cs.describe(*n.op);
  auto arg = [&](std::size_t i) { return eval_node(cs, *n.args[i], ctx, env); };
  switch (op.kind) {
    case CloneOpKind::Projection:
      return family_project(op.w, op.index);
    case CloneOpKind::Substitution: {
      std::vector<TermFamily> qs;
      for (std::size_t i = 1; i < n.args.size(); ++i) qs.push_back(arg(i));
      return family_compose(arg(0), family_tuple(op.u, qs));
    }
    case CloneOpKind::Tuple: {
      std::vector<TermFamily> fs;
      for (std::size_t i = 0; i < n.args.size(); ++i) fs.push_back(arg(i));
      return family_tuple(op.u, fs);
    }
    case CloneOpKind::Composition:
      return family_compose(arg(1), arg(0));
  }
  throw Error(ErrorKind::TypingError, "unknown clone operation");
}

}  // namespace

CloneSignatureRef hall_signature(const Word& sorts, std::size_t bound) {
  return cached_signature(CloneFlavor::Hall, sorts, bound);
}

CloneSignatureRef benabou_signature(const Word& sorts, std::size_t bound) {
  return cached_signature(CloneFlavor::Benabou, sorts, bound);
}

TermFamily eval_hall(const CloneSignature& cs, const Term& t, const CloneEnv& env) {
  if (cs.flavor() != CloneFlavor::Hall) throw Error(ErrorKind::SignatureMismatch, "not a Hall clone signature");
  return eval_node(cs, *t.node(), *t.context(), env);
}

TermFamily eval_benabou(const CloneSignature& cs, const Term& t, const CloneEnv& env) {
  if (cs.flavor() != CloneFlavor::Benabou) throw Error(ErrorKind::SignatureMismatch, "not a Bénabou clone signature");
  return eval_node(cs, *t.node(), *t.context(), env);
}

TermFamily eval_clone(const CloneSignature& cs, const Term& t, const CloneEnv& env) {
  return eval_node(cs, *t.node(), *t.context(), env);
}

Term insertion(const OpRef& op) {
  Context ctx = canonical_context(op->arity);
  std::vector<Term> args;
  for (std::size_t i = 0; i < op->arity.size(); ++i) args.push_back(mk_var(ctx, i));
  return mk_app(ctx, op, args);
}

GenericEnv generic_env(const CloneSignature& cs, const SortedSet& ctx) {
  auto theta = std::make_shared<Signature>("generators");
  for (Sort s : cs.base()) theta->add_sort(s);
  std::vector<std::optional<TermFamily>> values;
  for (std::size_t k = 0; k < ctx.size(); ++k) {
    const auto& [dom, cod] = cs.decode(ctx[k].sort);
    std::vector<Term> comps;
    if (cs.flavor() == CloneFlavor::Hall) {
      comps.push_back(insertion(theta->add_op("g" + std::to_string(k), dom, cod[0])));
    } else {
      for (std::size_t i = 0; i < cod.size(); ++i)
        comps.push_back(insertion(theta->add_op("g" + std::to_string(k) + "_" + std::to_string(i), dom, cod[i])));
    }
    values.emplace_back(TermFamily(dom, cod, std::move(comps)));
  }
  return GenericEnv{theta, CloneEnv{theta, std::move(values)}};
}

bool equal_mod_free_theory(const CloneSignature& cs, const Term& a, const Term& b) {
  if (a.sort() != b.sort()) throw Error(ErrorKind::SortMismatch, "clone terms of different sorts");
  if (!same_context(a.context(), b.context())) throw Error(ErrorKind::ContextMismatch, "clone terms over different contexts");
  auto g = generic_env(cs, *a.context());
  return eval_clone(cs, a, g.env) == eval_clone(cs, b, g.env);
}

Element hall_extension(const CloneSignature& cs, const FiniteAlgebra& model,
                       const std::unordered_map<std::string, Element>& f, const Term& p) {
  if (!p.context()->is_canonical()) throw Error(ErrorKind::NonCanonicalContext, "term is not over a canonical context");
  Word w = p.context()->sorts();
  const auto& sig = *model.signature();
  std::function<Element(const TermNode&)> go = [&](const TermNode& n) -> Element {
    if (n.is_var()) return model.apply(sig.op_index(cs.projection(w, n.var)->name), {});
    auto it = f.find(n.op->name);
    if (it == f.end()) throw Error(ErrorKind::UnboundCloneVariable, "no image for operation " + n.op->name);
    std::vector<Element> args{it->second};
    for (const auto& c : n.args) args.push_back(go(*c));
    auto xi = cs.substitution(w, n.op->arity, n.op->coarity);
    return model.apply(sig.op_index(xi->name), args);
  };
  return go(*p.node());
}

}  // namespace sortal
