#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sortal/error.hpp"

namespace sortal {

/// An interned sort name. Copies are cheap and compare by identity.
class Sort {
 public:
  explicit Sort(std::string_view name);

  const std::string& name() const;
  std::uint32_t id() const { return id_; }

  friend bool operator==(Sort a, Sort b) { return a.id_ == b.id_; }
  friend bool operator!=(Sort a, Sort b) { return a.id_ != b.id_; }

 private:
  std::uint32_t id_;
};

using Word = std::vector<Sort>;

Word concat(const Word& a, const Word& b);
std::string to_string(const Word& w);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

struct Variable {
  std::string name;
  Sort sort;

  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Ordered finite sorted set of variables. Position in the sequence is the
/// variable's index; names are unique within a sort.
class SortedSet {
 public:
  SortedSet() = default;

  void add(std::string name, Sort sort);

  std::size_t size() const { return vars_.size(); }
  bool empty() const { return vars_.empty(); }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  auto begin() const { return vars_.begin(); }
  auto end() const { return vars_.end(); }

  /// Index of the unique variable with this name, if any. Ambiguous names
  /// (same name under two sorts) yield nullopt.
  std::optional<std::size_t> find(std::string_view name) const;
  std::optional<std::size_t> find(std::string_view name, Sort sort) const;

  std::vector<std::size_t> of_sort(Sort s) const;
  Word sorts() const;
  bool is_canonical() const;

  friend bool operator==(const SortedSet& a, const SortedSet& b) { return a.vars_ == b.vars_; }

 private:
  std::vector<Variable> vars_;
};

using Context = std::shared_ptr<const SortedSet>;

bool same_context(const Context& a, const Context& b);

/// `v0 : w_0, v1 : w_1, ...`. Results are cached, so equal words share a pointer.
Context canonical_context(const Word& w);
Context make_context(SortedSet set);

struct OperationSymbol {
  std::string name;
  Word arity;
  Sort coarity;

  friend bool operator==(const OperationSymbol&, const OperationSymbol&) = default;
};

using OpRef = std::shared_ptr<const OperationSymbol>;

class Signature {
 public:
  explicit Signature(std::string name = {}) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Adding a sort twice is harmless.
  void add_sort(Sort s);
  OpRef add_op(std::string name, Word arity, Sort coarity);

  const std::vector<Sort>& sorts() const { return sorts_; }
  bool has_sort(Sort s) const { return sort_index_.count(s.id()) != 0; }
  std::size_t sort_index(Sort s) const;

  const std::vector<OpRef>& ops() const { return ops_; }
  OpRef find_op(std::string_view name) const;
  std::size_t op_index(std::string_view name) const;
  /// True when an op with the same name, arity and coarity is present.
  bool contains(const OperationSymbol& op) const;

  /// Structural equality; the name is a label and is ignored.
  friend bool operator==(const Signature& a, const Signature& b);

 private:
  std::string name_;
  std::vector<Sort> sorts_;
  std::unordered_map<std::uint32_t, std::size_t> sort_index_;
  std::vector<OpRef> ops_;
  std::unordered_map<std::string, std::size_t> op_index_;
};

using SignatureRef = std::shared_ptr<const Signature>;

/// φ: S → T*.
class SortMap {
 public:
  SortMap(std::vector<Sort> source, std::vector<Sort> target);

  void set(Sort s, Word image);

  const std::vector<Sort>& source() const { return source_; }
  const std::vector<Sort>& target() const { return target_; }
  bool is_total() const;
  const Word& operator()(Sort s) const;

  friend bool operator==(const SortMap& a, const SortMap& b);

 private:
  std::vector<Sort> source_;
  std::vector<Sort> target_;
  std::unordered_map<std::uint32_t, Word> images_;
};

Word apply_sharp(const SortMap& phi, const Word& w);
SortedSet coproduct_dagger(const SortMap& phi, const SortedSet& x);

/// Start offset of each variable's block inside coproduct_dagger(phi, x),
/// followed by the total size.
std::vector<std::size_t> block_offsets(const SortMap& phi, const SortedSet& x);
std::vector<std::size_t> block_offsets(const SortMap& phi, const Word& w);

}  // namespace sortal

template <>
struct std::hash<sortal::Sort> {
  std::size_t operator()(sortal::Sort s) const noexcept { return s.id(); }
};
