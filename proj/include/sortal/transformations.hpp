#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sortal/morphisms.hpp"

namespace sortal {

/// 2-cell d ⇝ e between parallel polyderivators: ξ_s: φ(s) → ψ(s) per source sort.
class Transformation {
 public:
  Transformation(Polyderivator source, Polyderivator target, std::unordered_map<Sort, TermFamily> components);

  const Polyderivator& source() const { return source_; }
  const Polyderivator& target() const { return target_; }
  const TermFamily& component(Sort s) const;
  const std::unordered_map<Sort, TermFamily>& components() const { return components_; }
  /// ξ_{w_0} ∧ … ∧ ξ_{w_{n-1}}.
  TermFamily on_word(const Word& w) const;

  friend bool operator==(const Transformation& a, const Transformation& b);

 private:
  Polyderivator source_;
  Polyderivator target_;
  std::unordered_map<Sort, TermFamily> components_;
};

Transformation identity_transformation(const Polyderivator& d);

/// The two sides ξ_s ∘ d(σ) and e(σ) ∘ ξ_w for operation `op_index`.
std::pair<TermFamily, TermFamily> naturality_sides(const Transformation& xi, std::size_t op_index);

struct StrictCheck {
  bool holds = true;
  std::optional<std::string> failing_op;
};

StrictCheck check_transformation_strict(const Transformation& xi);
/// Also checks that ξ runs from `d` to `e`.
StrictCheck check_transformation_strict(const Transformation& xi, const Polyderivator& d, const Polyderivator& e);

struct Verdict {
  enum class Status { Proved, VerifiedOnModels, Refuted };
  Status status = Status::Proved;
  std::size_t models = 0;
  std::string witness;
  std::string model;

  std::string to_string() const;
  bool ok() const { return status != Status::Refuted; }
};

struct Model {
  std::string name;
  std::shared_ptr<const FiniteAlgebra> algebra;
};

/// Throws ModelNotAModel naming the model and the violated axiom.
void require_models(const Specification& spec, const std::vector<Model>& models);

Verdict check_transformation_mod(const Transformation& xi, const Specification& target_spec,
                                 const std::vector<Model>& models);

/// χ ∘ ξ for ξ: d ⇝ e and χ: e ⇝ h.
Transformation vertical_compose(const Transformation& chi, const Transformation& xi);
/// χ ∗ ξ: h∘d ⇝ i∘e for ξ: d ⇝ e and χ: h ⇝ i. Both composite formulas are computed;
/// when `require_agreement` they must coincide.
Transformation horizontal_compose(const Transformation& chi, const Transformation& xi, bool require_agreement = true);

/// Per-sort map reduct(d, B) → reduct(e, B) realizing ξ. Checked to be a homomorphism.
SortedFunction induced_homomorphism(const Transformation& xi, const FiniteAlgebra& b);

/// ∐†_φ X → ∐†_ψ X.
GeneralTerm transformation_on_context(const Transformation& xi, const SortedSet& x);

}  // namespace sortal
