#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sortal/kernel.hpp"

namespace sortal {

struct TermNode;
using NodePtr = std::shared_ptr<const TermNode>;

/// Shared immutable tree node. A null `op` marks a variable.
struct TermNode {
  Sort sort;
  std::size_t var = 0;
  OpRef op;
  std::vector<NodePtr> args;
  std::size_t depth = 0;

  bool is_var() const { return !op; }
};

bool nodes_equal(const TermNode& a, const TermNode& b);

/// A well-sorted term together with the context its variables live in.
class Term {
 public:
  Sort sort() const { return node_->sort; }
  const Context& context() const { return ctx_; }
  const NodePtr& node() const { return node_; }

  bool is_var() const { return node_->is_var(); }
  std::size_t var_index() const { return node_->var; }
  const OpRef& op() const { return node_->op; }
  std::size_t arity() const { return node_->args.size(); }
  Term arg(std::size_t i) const { return Term(ctx_, node_->args.at(i)); }
  std::size_t depth() const { return node_->depth; }

  /// Prefix rendering using the context's variable names.
  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);

  /// Unchecked: callers guarantee that `node` is well-sorted over `ctx`.
  static Term adopt(Context ctx, NodePtr node) { return Term(std::move(ctx), std::move(node)); }

 private:
  Term(Context ctx, NodePtr node) : ctx_(std::move(ctx)), node_(std::move(node)) {}

  Context ctx_;
  NodePtr node_;
};

std::size_t term_depth_limit();
void set_term_depth_limit(std::size_t limit);

Term mk_var(const Context& ctx, std::size_t index);
Term mk_var(const Context& ctx, std::string_view name);
Term mk_app(const Context& ctx, const OpRef& op, const std::vector<Term>& args);
/// Context taken from the arguments; `args` must be non-empty.
Term mk_app(const OpRef& op, const std::vector<Term>& args);

/// Replace variable i of `p` by images[i]; all images live over `target`.
Term rebind(const Term& p, const Context& target, std::span<const Term> images);

/// Morphism u → w of the term clone: |w| terms over ↓u.
class TermFamily {
 public:
  TermFamily(Word domain, Word codomain, std::vector<Term> components);

  const Word& domain() const { return domain_; }
  const Word& codomain() const { return codomain_; }
  const std::vector<Term>& components() const { return components_; }
  const Term& operator[](std::size_t i) const { return components_[i]; }
  std::size_t size() const { return components_.size(); }
  Context context() const { return canonical_context(domain_); }

  std::string to_string() const;

  friend bool operator==(const TermFamily&, const TermFamily&);

 private:
  Word domain_;
  Word codomain_;
  std::vector<Term> components_;
};

TermFamily identity_family(const Word& u);

/// `p` over ↓w, `q`: u → w. Gives q♯(p) over ↓u.
Term substitute(const Term& p, const TermFamily& q);

/// X → Y: one term over X per variable of Y.
class GeneralTerm {
 public:
  GeneralTerm(Context source, Context target, std::vector<Term> body);

  const Context& source() const { return source_; }
  const Context& target() const { return target_; }
  const std::vector<Term>& body() const { return body_; }
  const Term& operator[](std::size_t i) const { return body_[i]; }

  friend bool operator==(const GeneralTerm&, const GeneralTerm&);

 private:
  Context source_;
  Context target_;
  std::vector<Term> body_;
};

struct Equation {
  GeneralTerm lhs;
  GeneralTerm rhs;

  Equation(GeneralTerm l, GeneralTerm r);
  /// Single-sorted equation over `ctx`, as a general term into ↓(sort).
  static Equation of_terms(const Term& l, const Term& r);

  friend bool operator==(const Equation&, const Equation&) = default;
};

GeneralTerm identity_general(const Context& x);

namespace detail {
NodePtr var_node(Sort sort, std::size_t index);
/// Unchecked node-level substitution.
NodePtr rebind_node(const NodePtr& n, std::span<const NodePtr> images);
}  // namespace detail
GeneralTerm general_from_family(const TermFamily& f);
TermFamily family_from_general(const GeneralTerm& g);
/// Q ◇ P: substitute P's body into Q's.
GeneralTerm kleisli_compose(const GeneralTerm& q, const GeneralTerm& p);

}  // namespace sortal
