#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sortal/algebras.hpp"

namespace sortal {

TermFamily family_project(const Word& u, std::size_t i);
/// Each component is u → (w_i); the result is u → w.
TermFamily family_tuple(const Word& u, const std::vector<TermFamily>& components);
/// q ∘ p for p: u → x and q: x → w.
TermFamily family_compose(const TermFamily& q, const TermFamily& p);
/// P_0 ∧ … ∧ P_{n-1}: block-diagonal family on the concatenated words.
TermFamily family_parallel(const std::vector<TermFamily>& ps);

enum class CloneFlavor { Hall, Benabou };

/// Generated operation, decoded. Hall: π_i^w, ξ_{u,w,s}. Bénabou: π_i^w, ⟨⟩_{u,w}, ∘_{u,x,w}.
struct CloneOp {
  CloneOpKind kind;
  Word u;
  Word x;
  Word w;
  std::optional<Sort> s;
  std::size_t index = 0;
};

/// Truncated clone signature over base sorts S with words of length ≤ bound.
/// Hall sort (w,s) is named "((w...) s)", Bénabou sort (u,w) is named "((u...) (w...))".
class CloneSignature {
 public:
  CloneSignature(CloneFlavor flavor, Word base, std::size_t bound);

  CloneFlavor flavor() const { return flavor_; }
  const Word& base() const { return base_; }
  std::size_t bound() const { return bound_; }
  const SignatureRef& signature() const { return sig_; }
  /// All words of length ≤ bound, shortest first, then lexicographic in base order.
  const std::vector<Word>& words() const { return words_; }

  Sort hall_sort(const Word& w, Sort s) const;
  Sort benabou_sort(const Word& u, const Word& w) const;
  /// Domain and codomain words of a clone sort; a Hall sort (w,s) reads as (w,(s)).
  const std::pair<Word, Word>& decode(Sort s) const;
  bool is_clone_sort(Sort s) const { return decoded_.count(s.id()) != 0; }

  const CloneOp& describe(const OperationSymbol& op) const;
  OpRef projection(const Word& w, std::size_t i) const;
  OpRef substitution(const Word& u, const Word& w, Sort s) const;
  OpRef tuple(const Word& u, const Word& w) const;
  OpRef composition(const Word& u, const Word& x, const Word& w) const;

  std::string word_code(const Word& w) const;

 private:
  void check_word(const Word& w) const;
  OpRef lookup(const std::string& name) const;

  CloneFlavor flavor_;
  Word base_;
  std::size_t bound_;
  std::shared_ptr<Signature> sig_mut_;
  SignatureRef sig_;
  std::vector<Word> words_;
  std::unordered_map<std::uint32_t, std::pair<Word, Word>> decoded_;
  std::unordered_map<std::string, CloneOp> ops_;
};

using CloneSignatureRef = std::shared_ptr<const CloneSignature>;

std::string hall_sort_name(const Word& w, Sort s);
std::string benabou_sort_name(const Word& u, const Word& w);

/// Generated signatures are cached per (sorts, bound).
CloneSignatureRef hall_signature(const Word& sorts, std::size_t bound);
CloneSignatureRef benabou_signature(const Word& sorts, std::size_t bound);

/// Value of each clone variable, by position in the clone term's context.
struct CloneEnv {
  SignatureRef base;
  std::vector<std::optional<TermFamily>> values;
};

/// Hall clone term of sort (u,s) to a family u → (s): π is a variable, ξ substitutes.
TermFamily eval_hall(const CloneSignature& cs, const Term& t, const CloneEnv& env);
/// Bénabou clone term of sort (u,w) to a family u → w.
TermFamily eval_benabou(const CloneSignature& cs, const Term& t, const CloneEnv& env);
TermFamily eval_clone(const CloneSignature& cs, const Term& t, const CloneEnv& env);

struct GenericEnv {
  SignatureRef generators;
  CloneEnv env;
};

/// Each variable becomes a fresh generator: g<k> for Hall, g<k>_<i> per output for Bénabou.
GenericEnv generic_env(const CloneSignature& cs, const SortedSet& ctx);

/// Equality modulo the generated clone axioms, decided by generic evaluation.
bool equal_mod_free_theory(const CloneSignature& cs, const Term& a, const Term& b);

/// σ(v0, …, v_{n-1}) over ↓arity.
Term insertion(const OpRef& op);

/// Unique Hall-algebra homomorphism out of the term clone: `f` names an element
/// of the carrier at (arity, coarity) for each operation; `p` is over ↓w.
Element hall_extension(const CloneSignature& cs, const FiniteAlgebra& model,
                       const std::unordered_map<std::string, Element>& f, const Term& p);

}  // namespace sortal
