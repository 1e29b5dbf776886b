#include "sortal/kernel.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>

namespace sortal {

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownSort: return "UnknownSort";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::NonCanonicalContext: return "NonCanonicalContext";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::TableTooLarge: return "TableTooLarge";
    case ErrorKind::UnboundCloneVariable: return "UnboundCloneVariable";
    case ErrorKind::BoundTooLarge: return "BoundTooLarge";
    case ErrorKind::TypingError: return "TypingError";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::ModelNotAModel: return "ModelNotAModel";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnresolvedName: return "UnresolvedName";
  }
  return "Error";
}

namespace {

struct Interner {
  std::shared_mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string_view, std::uint32_t> ids;
};

Interner& interner() {
  static Interner instance;
  return instance;
}

}  // namespace

Sort::Sort(std::string_view name) {
  if (name.empty()) throw Error(ErrorKind::UnknownSort, "empty sort name");
  auto& in = interner();
  {
    std::shared_lock lock(in.mutex);
    auto it = in.ids.find(name);
    if (it != in.ids.end()) {
      id_ = it->second;
      return;
    }
  }
  std::unique_lock lock(in.mutex);
  auto it = in.ids.find(name);
  if (it != in.ids.end()) {
    id_ = it->second;
    return;
  }
  in.names.emplace_back(name);
  id_ = static_cast<std::uint32_t>(in.names.size() - 1);
  in.ids.emplace(in.names.back(), id_);
}

const std::string& Sort::name() const {
  auto& in = interner();
  std::shared_lock lock(in.mutex);
  return in.names[id_];
}

Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string to_string(const Word& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i].name();
  }
  out += ')';
  return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = w.size();
  for (Sort s : w) h = h * 1000003u ^ s.id();
  return h;
}

void SortedSet::add(std::string name, Sort sort) {
  for (const auto& v : vars_)
    if (v.sort == sort && v.name == name)
      throw Error(ErrorKind::DuplicateName, "variable " + name + " already declared at sort " + sort.name());
  vars_.push_back(Variable{std::move(name), sort});
}

std::optional<std::size_t> SortedSet::find(std::string_view name) const {
  std::optional<std::size_t> hit;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name != name) continue;
    if (hit) return std::nullopt;
    hit = i;
  }
  return hit;
}

std::optional<std::size_t> SortedSet::find(std::string_view name, Sort sort) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].sort == sort && vars_[i].name == name) return i;
  return std::nullopt;
}

std::vector<std::size_t> SortedSet::of_sort(Sort s) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].sort == s) out.push_back(i);
  return out;
}

Word SortedSet::sorts() const {
  Word w;
  w.reserve(vars_.size());
  for (const auto& v : vars_) w.push_back(v.sort);
  return w;
}

bool SortedSet::is_canonical() const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name != "v" + std::to_string(i)) return false;
  return true;
}

bool same_context(const Context& a, const Context& b) {
  return a == b || (a && b && *a == *b);
}

Context canonical_context(const Word& w) {
  static std::shared_mutex mutex;
  static std::unordered_map<Word, Context, WordHash> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
  }
  SortedSet set;
  for (std::size_t i = 0; i < w.size(); ++i) set.add("v" + std::to_string(i), w[i]);
  auto ctx = std::make_shared<const SortedSet>(std::move(set));
  std::unique_lock lock(mutex);
  return cache.emplace(w, ctx).first->second;
}

Context make_context(SortedSet set) {
  if (set.is_canonical()) return canonical_context(set.sorts());
  return std::make_shared<const SortedSet>(std::move(set));
}

void Signature::add_sort(Sort s) {
  if (has_sort(s)) return;
  sort_index_.emplace(s.id(), sorts_.size());
  sorts_.push_back(s);
}

std::size_t Signature::sort_index(Sort s) const {
  auto it = sort_index_.find(s.id());
  if (it == sort_index_.end()) throw Error(ErrorKind::UnknownSort, "sort " + s.name() + " not in signature " + name_);
  return it->second;
}

OpRef Signature::add_op(std::string name, Word arity, Sort coarity) {
  if (op_index_.count(name)) throw Error(ErrorKind::DuplicateName, "operation " + name + " declared twice");
  for (Sort s : arity)
    if (!has_sort(s)) throw Error(ErrorKind::UnknownSort, "sort " + s.name() + " in arity of " + name);
  if (!has_sort(coarity)) throw Error(ErrorKind::UnknownSort, "sort " + coarity.name() + " as coarity of " + name);
  auto op = std::make_shared<const OperationSymbol>(OperationSymbol{name, std::move(arity), coarity});
  op_index_.emplace(std::move(name), ops_.size());
  ops_.push_back(op);
  return op;
}

OpRef Signature::find_op(std::string_view name) const {
  auto it = op_index_.find(std::string(name));
  return it == op_index_.end() ? nullptr : ops_[it->second];
}

std::size_t Signature::op_index(std::string_view name) const {
  auto it = op_index_.find(std::string(name));
  if (it == op_index_.end())
    throw Error(ErrorKind::SignatureMismatch, "operation " + std::string(name) + " not in signature " + name_);
  return it->second;
}

bool Signature::contains(const OperationSymbol& op) const {
  auto it = op_index_.find(op.name);
  return it != op_index_.end() && *ops_[it->second] == op;
}

bool operator==(const Signature& a, const Signature& b) {
  if (&a == &b) return true;
  if (a.sorts_ != b.sorts_ || a.ops_.size() != b.ops_.size()) return false;
  for (std::size_t i = 0; i < a.ops_.size(); ++i)
    if (a.ops_[i] != b.ops_[i] && *a.ops_[i] != *b.ops_[i]) return false;
  return true;
}

SortMap::SortMap(std::vector<Sort> source, std::vector<Sort> target)
    : source_(std::move(source)), target_(std::move(target)) {}

void SortMap::set(Sort s, Word image) {
  bool known = false;
  for (Sort t : source_) known = known || t == s;
  if (!known) throw Error(ErrorKind::UnknownSort, "sort " + s.name() + " outside the source of the sort map");
  for (Sort letter : image) {
    bool ok = false;
    for (Sort t : target_) ok = ok || t == letter;
    if (!ok) throw Error(ErrorKind::UnknownSort, "sort " + letter.name() + " outside the target of the sort map");
  }
  images_[s.id()] = std::move(image);
}

bool SortMap::is_total() const {
  for (Sort s : source_)
    if (!images_.count(s.id())) return false;
  return true;
}

const Word& SortMap::operator()(Sort s) const {
  auto it = images_.find(s.id());
  if (it == images_.end()) throw Error(ErrorKind::UnknownSort, "sort " + s.name() + " has no image under the sort map");
  return it->second;
}

bool operator==(const SortMap& a, const SortMap& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.images_ == b.images_;
}

Word apply_sharp(const SortMap& phi, const Word& w) {
  Word out;
  for (Sort s : w) {
    const Word& img = phi(s);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

SortedSet coproduct_dagger(const SortMap& phi, const SortedSet& x) {
  SortedSet out;
  for (const auto& v : x) {
    const Word& img = phi(v.sort);
    for (std::size_t i = 0; i < img.size(); ++i)
      out.add("(" + v.name + "," + v.sort.name() + "," + std::to_string(i) + ")", img[i]);
  }
  return out;
}

std::vector<std::size_t> block_offsets(const SortMap& phi, const Word& w) {
  std::vector<std::size_t> out;
  out.reserve(w.size() + 1);
  std::size_t at = 0;
  for (Sort s : w) {
    out.push_back(at);
    at += phi(s).size();
  }
  out.push_back(at);
  return out;
}

std::vector<std::size_t> block_offsets(const SortMap& phi, const SortedSet& x) {
  return block_offsets(phi, x.sorts());
}

}  // namespace sortal
