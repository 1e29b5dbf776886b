#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sortal/transformations.hpp"

namespace sortal {

struct CloneSpec {
  CloneSignatureRef clone;
  Specification spec;
};

/// All instances of the Hall axioms (projection, identity, associativity)
/// whose sorts fit the bound.
CloneSpec hall_spec(const Word& sorts, std::size_t bound);
/// All instances of the Bénabou axioms whose sorts fit the bound.
CloneSpec benabou_spec(const Word& sorts, std::size_t bound);

/// Finite model of a truncated clone signature.
struct CloneModel {
  CloneSignatureRef clone;
  FiniteAlgebra algebra;
};

/// All operations A_w → A_s under projection and substitution.
CloneModel hop_model(const Carriers& a, std::size_t bound);
/// All operations A_u → A_w under projection, tupling and composition.
CloneModel bop_model(const Carriers& a, std::size_t bound);

CloneModel f_hb(const CloneModel& hall);
CloneModel f_bh(const CloneModel& benabou);

/// f: B → f_hb(f_bh(B)), a ↦ (π_i ∘ a)_i, and its inverse g: b ↦ ⟨b_0, …⟩.
std::pair<SortedFunction, SortedFunction> hb_comparison_maps(const CloneModel& benabou);

/// Category presentation of a Bénabou model: objects are words, Hom(u,w) is
/// the carrier at (u,w), with identities, composition and product projections.
struct BenabouTheory {
  CloneSignatureRef clone;
  std::vector<Word> objects;
  /// Hom-set labels keyed by (u,w) clone sort.
  std::unordered_map<Sort, std::vector<std::string>> homs;
  std::unordered_map<Sort, Element> identities;  // keyed by (w,w)
  /// Composition q ∘ p keyed by the composition op name; row-major over (p, q).
  std::unordered_map<std::string, std::vector<Element>> composition;
  /// π_i^w as an element of Hom(w, (w_i)), keyed by projection op name.
  std::unordered_map<std::string, Element> projections;

  Element compose(const Word& u, const Word& x, const Word& w, Element p, Element q) const;
};

BenabouTheory category_view(const CloneModel& benabou);
/// Identity and associativity laws on every hom-set.
bool check_category_laws(const BenabouTheory& t);
/// Rebuilds the Bénabou model; tupling is recovered as the unique mediating arrow.
CloneModel from_category_view(const BenabouTheory& t);

Polyderivator hb_polyderivator_d(const Word& sorts, std::size_t bound);
Polyderivator hb_polyderivator_e(const Word& sorts, std::size_t bound);

struct HbTransformations {
  Polyderivator d;
  Polyderivator e;
  /// Over the Bénabou signature: id ⇝ e∘d and back.
  Transformation chi_b;
  Transformation rho_b;
  /// Over the Hall signature: id ⇝ d∘e and back.
  Transformation chi_h;
  Transformation rho_h;
};

HbTransformations hb_transformations(const Word& sorts, std::size_t bound);

/// Every translated source equation holds in the target theory.
Verdict check_pd_spec_morphism(const Polyderivator& d, const Specification& source, const Specification& target,
                               const std::vector<Model>& models);

struct CheckLine {
  std::string name;
  bool ok;
  std::string detail;
};

/// Runs the whole Hall ⇄ Bénabou equivalence check at the given bound.
std::vector<CheckLine> verify_hall_benabou(const Word& sorts, std::size_t bound);

}  // namespace sortal
