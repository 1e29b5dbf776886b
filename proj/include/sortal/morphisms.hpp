#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "sortal/clones.hpp"

namespace sortal {

/// Signature morphism sending each sort to a word and each operation σ: w → s
/// to a family φ♯(w) → φ(s) of derived terms.
class Polyderivator {
 public:
  /// `images` is indexed like the source signature's operations. Throws TypingError.
  Polyderivator(SignatureRef source, SignatureRef target, SortMap phi, std::vector<TermFamily> images);

  const SignatureRef& source() const { return source_; }
  const SignatureRef& target() const { return target_; }
  const SortMap& sort_map() const { return phi_; }
  const std::vector<TermFamily>& images() const { return images_; }
  const TermFamily& image(std::size_t op_index) const { return images_.at(op_index); }
  const TermFamily& image(std::string_view op) const { return images_.at(source_->op_index(op)); }

  friend bool operator==(const Polyderivator& a, const Polyderivator& b);

 private:
  SignatureRef source_;
  SignatureRef target_;
  SortMap phi_;
  std::vector<TermFamily> images_;
};

Polyderivator mk_polyderivator(SignatureRef source, SignatureRef target, SortMap phi,
                               const std::unordered_map<std::string, TermFamily>& images);

/// Sort-to-sort, operation-to-operation renaming.
struct StandardMorphism {
  SignatureRef source;
  SignatureRef target;
  std::unordered_map<Sort, Sort> sorts;
  std::unordered_map<std::string, std::string> ops;
};

/// Sort-to-sort, operation-to-derived-term.
struct Derivor {
  SignatureRef source;
  SignatureRef target;
  std::unordered_map<Sort, Sort> sorts;
  std::unordered_map<std::string, Term> terms;
};

Polyderivator lift_standard(const StandardMorphism& m);
Polyderivator lift_derivor(const Derivor& d);
bool is_derivor(const Polyderivator& d);
Polyderivator identity_polyderivator(const SignatureRef& sig);

/// P over ↓w of sort s to a family φ♯(w) → φ(s).
TermFamily translate_term(const Polyderivator& d, const Term& p);
/// F: u → w to φ♯(u) → φ♯(w).
TermFamily translate_family(const Polyderivator& d, const TermFamily& f);

/// e ∘ d: apply d first.
Polyderivator compose_polyderivators(const Polyderivator& e, const Polyderivator& d);

/// ∐† context of `x`, as a shared context.
Context dagger_context(const SortMap& phi, const SortedSet& x);

GeneralTerm translate_general(const Polyderivator& d, const GeneralTerm& p);
Equation translate_equation(const Polyderivator& d, const Equation& eq);

/// Reduct along d. The carrier at s is B_{φ(s)}, elements labelled by tuples.
FiniteAlgebra reduct_algebra(const Polyderivator& d, const FiniteAlgebra& b);

/// Tuple of B-elements packed in an element of B_w, and back.
std::vector<Element> unpack(const Carriers& b, const Word& w, Element e);
Element pack(const Carriers& b, const Word& w, std::span<const Element> tuple);

/// Valuation of X in reduct(d, B) to the matching valuation of ∐†X in B.
Valuation flatten_valuation(const Polyderivator& d, const Carriers& b, const Valuation& v);
/// Inverse of flatten_valuation; `x` is the original context.
Valuation regroup_valuation(const Polyderivator& d, const Carriers& b, const Context& x, const Valuation& flat);

/// Isomorphism reduct(e∘d, C) → reduct(d, reduct(e, C)) regrouping flat tuples into nested ones.
SortedFunction composite_regrouping(const Polyderivator& e, const Polyderivator& d, const Carriers& c);

/// [reduct(d, A) ⊨ eq] ⇔ [A ⊨ translate_equation(d, eq)].
bool satisfaction_condition_check(const Polyderivator& d, const FiniteAlgebra& a, const Equation& eq);

}  // namespace sortal
