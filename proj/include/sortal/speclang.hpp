#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sortal/hallbenabou.hpp"

namespace sortal {

/// Name-keyed entries kept in declaration order.
template <typename T>
class Registry {
 public:
  void add(std::string name, T value) {
    if (find(name)) throw Error(ErrorKind::DuplicateName, "'" + name + "' is already declared");
    entries_.emplace_back(std::move(name), std::move(value));
  }
  const T* find(std::string_view name) const {
    for (const auto& [n, v] : entries_)
      if (n == name) return &v;
    return nullptr;
  }
  const T& get(std::string_view name) const {
    if (const T* v = find(name)) return *v;
    throw Error(ErrorKind::UnresolvedName, "no declaration named '" + std::string(name) + "'");
  }
  const std::vector<std::pair<std::string, T>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<std::pair<std::string, T>> entries_;
};

struct TermDecl {
  SignatureRef signature;
  Term term;
  friend bool operator==(const TermDecl& a, const TermDecl& b) {
    return *a.signature == *b.signature && a.term == b.term;
  }
};

struct EquationDecl {
  SignatureRef signature;
  Equation equation;
  friend bool operator==(const EquationDecl& a, const EquationDecl& b) {
    return *a.signature == *b.signature && a.equation == b.equation;
  }
};

struct TransformationDecl {
  std::string source;
  std::string target;
  /// Specification used by default when checking modulo a theory.
  std::optional<std::string> modulo;
  Transformation transformation;
  friend bool operator==(const TransformationDecl&, const TransformationDecl&) = default;
};

struct Workspace {
  Registry<SignatureRef> signatures;
  Registry<TermDecl> terms;
  Registry<EquationDecl> equations;
  Registry<Specification> specs;
  Registry<std::shared_ptr<const FiniteAlgebra>> algebras;
  Registry<Polyderivator> morphisms;
  Registry<TransformationDecl> transformations;

  /// Resolves a signature reference: a declared name or "hall (s ...) b" / "benabou (s ...) b".
  SignatureRef signature(std::string_view ref) const;

  friend bool operator==(const Workspace& a, const Workspace& b);
};

/// Parses a whole document. Errors are SourceError with a 1-based location.
Workspace parse(std::string_view text);
/// Adds the declarations of `text` to `ws`; names must not clash.
void parse_into(Workspace& ws, std::string_view text);

/// Canonical rendering; parse(print(ws)) == ws.
std::string print(const Workspace& ws);

/// Label as written in source: raw when alphanumeric, quoted otherwise.
std::string quote_label(std::string_view label);

/// Sort name as written in source; bracketed names are re-spaced canonically.
std::string canonical_sort_name(std::string_view text);

/// Parses "(s t)" or "s t" into a word of sorts.
Word parse_word(std::string_view text);

/// Parses a single term over `ctx`.
Term parse_term(const Signature& sig, const Context& ctx, std::string_view text);

/// The shipped fixtures, embedded at build time.
extern const std::string_view kPrelude;

}  // namespace sortal
