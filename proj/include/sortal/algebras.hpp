#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sortal/terms.hpp"

namespace sortal {

using Element = std::uint32_t;

/// Cap on the number of rows of any single table (and on function-space carriers).
std::size_t table_row_cap();
void set_table_row_cap(std::size_t cap);
/// Cap on the number of valuations a satisfaction check will enumerate.
std::size_t valuation_cap();
void set_valuation_cap(std::size_t cap);

/// Finite labelled carriers, one per sort.
class Carriers {
 public:
  void set(Sort s, std::vector<std::string> labels);

  bool has(Sort s) const { return index_.count(s.id()) != 0; }
  const std::vector<Sort>& sorts() const { return sorts_; }
  std::size_t size(Sort s) const { return labels(s).size(); }
  const std::vector<std::string>& labels(Sort s) const;
  std::optional<Element> find(Sort s, std::string_view label) const;

  /// |A_w|, saturating just above `table_row_cap()`.
  std::size_t product_size(const Word& w) const;
  std::vector<std::size_t> radices(const Word& w) const;

  friend bool operator==(const Carriers& a, const Carriers& b);

 private:
  struct Entry {
    std::vector<std::string> labels;
    std::unordered_map<std::string, Element> lookup;
  };
  std::vector<Sort> sorts_;
  std::unordered_map<std::uint32_t, Entry> index_;
};

/// Row index of a tuple, last coordinate fastest.
std::size_t encode_row(std::span<const std::size_t> radices, std::span<const Element> tuple);
void decode_row(std::span<const std::size_t> radices, std::size_t row, std::span<Element> out);
/// "(a,b)" rendering of a tuple of labels.
std::string tuple_label(const std::vector<std::string>& parts);

class FiniteAlgebra {
 public:
  explicit FiniteAlgebra(SignatureRef sig);

  void set_carrier(Sort s, std::vector<std::string> labels);
  void set_table(std::string_view op, std::vector<Element> table);
  void set_table(std::size_t op_index, std::vector<Element> table);
  /// TypingError when a carrier or table is missing.
  void validate() const;

  const SignatureRef& signature() const { return sig_; }
  const Carriers& carriers() const { return carriers_; }
  std::size_t carrier_size(Sort s) const { return carriers_.size(s); }
  const std::vector<std::string>& labels(Sort s) const { return carriers_.labels(s); }
  const std::string& label(Sort s, Element e) const { return carriers_.labels(s).at(e); }
  std::optional<Element> find_label(Sort s, std::string_view l) const { return carriers_.find(s, l); }

  const std::vector<Element>& table(std::size_t op_index) const;
  const std::vector<Element>& table(std::string_view op) const;
  Element apply(std::size_t op_index, std::span<const Element> args) const;
  Element apply(std::string_view op, std::span<const Element> args) const;

  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b);

 private:
  SignatureRef sig_;
  Carriers carriers_;
  std::vector<std::vector<Element>> tables_;
  std::vector<char> has_table_;
};

struct Valuation {
  Context ctx;
  std::vector<Element> values;

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

std::string to_string(const FiniteAlgebra& a, const Valuation& v);

/// Recursive evaluation of a term.
Element realize(const FiniteAlgebra& a, const Term& p, const Valuation& v);

/// Term compiled against an algebra to a postfix program, evaluated bottom-up
/// with an explicit stack.
class CompiledTerm {
 public:
  CompiledTerm(const FiniteAlgebra& a, const Term& t);
  Element eval(std::span<const Element> values) const;

 private:
  struct Step {
    const Element* table = nullptr;  // null: push variable `var`
    std::uint32_t var = 0;
    std::uint32_t arity = 0;
    std::uint32_t radix_at = 0;
  };
  std::vector<Step> steps_;
  std::vector<std::size_t> radix_pool_;
  std::size_t max_stack_ = 0;
};

Element evaluate_bottom_up(const FiniteAlgebra& a, const Term& p, const Valuation& v);

using TermOperation = std::function<Valuation(const Valuation&)>;
TermOperation realize_general(const FiniteAlgebra& a, const GeneralTerm& p);

/// Calls `visit` for every valuation of `ctx` in row-major order; stops early
/// when `visit` returns false. Returns false iff stopped early.
bool for_each_valuation(const Carriers& c, const SortedSet& ctx,
                        const std::function<bool(std::span<const Element>)>& visit);

bool satisfies(const FiniteAlgebra& a, const Equation& eq);
std::optional<Valuation> find_counterexample(const FiniteAlgebra& a, const Equation& eq);
bool satisfies_all(const FiniteAlgebra& a, std::span<const Equation> eqs);

using SortedFunction = std::unordered_map<Sort, std::vector<Element>>;

bool check_homomorphism(const SortedFunction& f, const FiniteAlgebra& a, const FiniteAlgebra& b);
SortedFunction identity_function(const FiniteAlgebra& a);

/// Componentwise product, carriers labelled by pairs.
FiniteAlgebra product_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// Smallest subalgebra containing `generators`; labels and relative order are kept.
FiniteAlgebra generated_subalgebra(const FiniteAlgebra& a, const SortedFunction& generators);

/// Concrete operation A_arity → A_coarity; table entries are row indices of A_coarity.
struct FiniteOperation {
  Word arity;
  Word coarity;
  std::vector<Element> table;

  friend bool operator==(const FiniteOperation&, const FiniteOperation&) = default;
};

/// Number of operations A_arity → A_coarity, saturating just above the table cap.
std::size_t function_space_size(const Carriers& c, const Word& arity, const Word& coarity);
Element encode_function(const Carriers& c, const FiniteOperation& f);
FiniteOperation decode_function(const Carriers& c, const Word& arity, const Word& coarity, Element code);
std::string function_label(const Carriers& c, const FiniteOperation& f);

enum class CloneOpKind { Projection, Substitution, Tuple, Composition };

struct CloneOpCall {
  CloneOpKind kind;
  Word u;                 // domain word for Substitution and Tuple
  Word w;                 // word projected from, for Projection
  std::size_t index = 0;  // projection index
};

FiniteOperation hall_project(const Carriers& c, const Word& w, std::size_t i);
/// f: w → (s) and g_i: u → (w_i) give f ∘ ⟨g_0, …⟩: u → (s).
FiniteOperation hall_substitute(const Carriers& c, const Word& u, const FiniteOperation& f,
                                std::span<const FiniteOperation> gs);
FiniteOperation benabou_tuple(const Carriers& c, const Word& u, std::span<const FiniteOperation> fs);
/// q ∘ p for p: u → x and q: x → w.
FiniteOperation benabou_compose(const Carriers& c, const FiniteOperation& q, const FiniteOperation& p);

/// Projection, or Substitution with args (f, g_0, …).
FiniteOperation hall_op_apply(const Carriers& c, const CloneOpCall& call, std::span<const FiniteOperation> args);
/// Projection, Tuple with args (f_0, …), or Composition with args (p, q) meaning q ∘ p.
FiniteOperation benabou_op_apply(const Carriers& c, const CloneOpCall& call, std::span<const FiniteOperation> args);

class CloneSignature;

struct NamedEquation {
  std::string name;
  Equation equation;
};

struct Specification {
  std::string name;
  SignatureRef signature;
  std::vector<NamedEquation> equations;
  /// Set when the equations are the generated Hall or Bénabou axioms.
  std::shared_ptr<const CloneSignature> free_theory;

  std::vector<Equation> plain_equations() const;
};

/// First axiom of `spec` violated by `a`, if any.
std::optional<std::string> first_violated(const FiniteAlgebra& a, const Specification& spec);

}  // namespace sortal
