#include "sortal/algebras.hpp"

#include <array>
#include <atomic>
#include <limits>

namespace sortal {

namespace {

std::atomic<std::size_t> g_table_cap{1'000'000};
std::atomic<std::size_t> g_valuation_cap{100'000'000};

std::size_t saturating_product(std::span<const std::size_t> sizes, std::size_t limit) {
  std::size_t total = 1;
  for (std::size_t n : sizes) if (n == 0) return 0;
  for (std::size_t n : sizes) {
    if (total > limit / n) return limit + 1;
    total *= n;
  }
  return total;
}

std::size_t saturating_power(std::size_t base, std::size_t exp, std::size_t limit) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base == 0) return 0;
    if (total > limit / base) return limit + 1;
    total *= base;
  }
  return total;
}

void require_signature(const FiniteAlgebra& a, const OperationSymbol& op) {
  if (!a.signature()->contains(op))
    throw Error(ErrorKind::SignatureMismatch, "operation " + op.name + " is not in the algebra's signature");
}

}  // namespace

std::size_t table_row_cap() { return g_table_cap.load(); }
void set_table_row_cap(std::size_t cap) { g_table_cap.store(cap); }
std::size_t valuation_cap() { return g_valuation_cap.load(); }
void set_valuation_cap(std::size_t cap) { g_valuation_cap.store(cap); }

void Carriers::set(Sort s, std::vector<std::string> labels) {
  Entry e;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!e.lookup.emplace(labels[i], static_cast<Element>(i)).second)
      throw Error(ErrorKind::DuplicateName, "element " + labels[i] + " listed twice in carrier " + s.name());
  e.labels = std::move(labels);
  if (!has(s)) sorts_.push_back(s);
  index_[s.id()] = std::move(e);
}

const std::vector<std::string>& Carriers::labels(Sort s) const {
  auto it = index_.find(s.id());
  if (it == index_.end()) throw Error(ErrorKind::UnknownSort, "no carrier for sort " + s.name());
  return it->second.labels;
}

std::optional<Element> Carriers::find(Sort s, std::string_view label) const {
  auto it = index_.find(s.id());
  if (it == index_.end()) throw Error(ErrorKind::UnknownSort, "no carrier for sort " + s.name());
  auto jt = it->second.lookup.find(std::string(label));
  if (jt == it->second.lookup.end()) return std::nullopt;
  return jt->second;
}

std::size_t Carriers::product_size(const Word& w) const {
  auto r = radices(w);
  return saturating_product(r, table_row_cap());
}

std::vector<std::size_t> Carriers::radices(const Word& w) const {
  std::vector<std::size_t> r;
  r.reserve(w.size());
  for (Sort s : w) r.push_back(size(s));
  return r;
}

bool operator==(const Carriers& a, const Carriers& b) {
  if (a.sorts_.size() != b.sorts_.size()) return false;
  for (Sort s : a.sorts_)
    if (!b.has(s) || a.labels(s) != b.labels(s)) return false;
  return true;
}

std::size_t encode_row(std::span<const std::size_t> radices, std::span<const Element> tuple) {
  std::size_t row = 0;
  for (std::size_t i = 0; i < radices.size(); ++i) row = row * radices[i] + tuple[i];
  return row;
}

void decode_row(std::span<const std::size_t> radices, std::size_t row, std::span<Element> out) {
  for (std::size_t i = radices.size(); i-- > 0;) {
    out[i] = static_cast<Element>(row % radices[i]);
    row /= radices[i];
  }
}

std::string tuple_label(const std::vector<std::string>& parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out + ")";
}

FiniteAlgebra::FiniteAlgebra(SignatureRef sig)
    : sig_(std::move(sig)), tables_(sig_->ops().size()), has_table_(sig_->ops().size(), 0) {}

void FiniteAlgebra::set_carrier(Sort s, std::vector<std::string> labels) {
  if (!sig_->has_sort(s)) throw Error(ErrorKind::UnknownSort, "sort " + s.name() + " not in the signature");
  carriers_.set(s, std::move(labels));
}

void FiniteAlgebra::set_table(std::string_view op, std::vector<Element> table) {
  set_table(sig_->op_index(op), std::move(table));
}

void FiniteAlgebra::set_table(std::size_t op_index, std::vector<Element> table) {
  const auto& op = *sig_->ops().at(op_index);
  auto r = carriers_.radices(op.arity);
  std::size_t rows = saturating_product(r, table_row_cap());
  if (rows > table_row_cap())
    throw Error(ErrorKind::TableTooLarge, "table of " + op.name + " exceeds " + std::to_string(table_row_cap()) + " rows");
  if (table.size() != rows)
    throw Error(ErrorKind::TypingError, "table of " + op.name + " has " + std::to_string(table.size()) +
                                            " rows, expected " + std::to_string(rows));
  std::size_t n = carriers_.size(op.coarity);
  for (Element e : table)
    if (e >= n) throw Error(ErrorKind::TypingError, "table of " + op.name + " leaves the carrier of " + op.coarity.name());
  tables_[op_index] = std::move(table);
  has_table_[op_index] = 1;
}

void FiniteAlgebra::validate() const {
  for (Sort s : sig_->sorts())
    if (!carriers_.has(s)) throw Error(ErrorKind::TypingError, "missing carrier for sort " + s.name());
  for (std::size_t i = 0; i < tables_.size(); ++i)
    if (!has_table_[i]) throw Error(ErrorKind::TypingError, "missing table for " + sig_->ops()[i]->name);
}

const std::vector<Element>& FiniteAlgebra::table(std::size_t op_index) const {
  if (!has_table_.at(op_index))
    throw Error(ErrorKind::TypingError, "missing table for " + sig_->ops()[op_index]->name);
  return tables_[op_index];
}

const std::vector<Element>& FiniteAlgebra::table(std::string_view op) const { return table(sig_->op_index(op)); }

Element FiniteAlgebra::apply(std::size_t op_index, std::span<const Element> args) const {
  const auto& op = *sig_->ops()[op_index];
  if (args.size() != op.arity.size()) throw Error(ErrorKind::ArityMismatch, op.name);
  auto r = carriers_.radices(op.arity);
  return table(op_index)[encode_row(r, args)];
}

Element FiniteAlgebra::apply(std::string_view op, std::span<const Element> args) const {
  return apply(sig_->op_index(op), args);
}

bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  return *a.sig_ == *b.sig_ && a.carriers_ == b.carriers_ && a.tables_ == b.tables_;
}

std::string to_string(const FiniteAlgebra& a, const Valuation& v) {
  std::string out;
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    if (i) out += ", ";
    out += (*v.ctx)[i].name + "=" + a.label((*v.ctx)[i].sort, v.values[i]);
  }
  return out;
}

namespace {

Element realize_node(const FiniteAlgebra& a, const TermNode& n, const std::vector<Element>& values) {
  if (n.is_var()) return values[n.var];
  require_signature(a, *n.op);
  std::vector<Element> args;
  args.reserve(n.args.size());
  for (const auto& c : n.args) args.push_back(realize_node(a, *c, values));
  return a.apply(n.op->name, args);
}

void check_valuation(const FiniteAlgebra& a, const Context& ctx, const Valuation& v) {
  if (!same_context(ctx, v.ctx) || v.values.size() != ctx->size())
    throw Error(ErrorKind::ContextMismatch, "valuation is not on the term's context");
  for (std::size_t i = 0; i < v.values.size(); ++i)
    if (v.values[i] >= a.carrier_size((*ctx)[i].sort))
      throw Error(ErrorKind::TypingError, "valuation of " + (*ctx)[i].name + " leaves its carrier");
}

}  // namespace

Element realize(const FiniteAlgebra& a, const Term& p, const Valuation& v) {
  check_valuation(a, p.context(), v);
  return realize_node(a, *p.node(), v.values);
}

CompiledTerm::CompiledTerm(const FiniteAlgebra& a, const Term& t) {
  std::size_t depth = 0;
  std::function<void(const TermNode&)> emit = [&](const TermNode& n) {
    if (n.is_var()) {
      steps_.push_back(Step{nullptr, static_cast<std::uint32_t>(n.var), 0, 0});
      ++depth;
      max_stack_ = std::max(max_stack_, depth);
      return;
    }
    require_signature(a, *n.op);
    for (const auto& c : n.args) emit(*c);
    std::size_t idx = a.signature()->op_index(n.op->name);
    auto at = static_cast<std::uint32_t>(radix_pool_.size());
    for (Sort s : n.op->arity) radix_pool_.push_back(a.carrier_size(s));
    steps_.push_back(Step{a.table(idx).data(), 0, static_cast<std::uint32_t>(n.args.size()), at});
    depth = depth - n.args.size() + 1;
    max_stack_ = std::max(max_stack_, depth);
  };
  emit(*t.node());
}

Element CompiledTerm::eval(std::span<const Element> values) const {
  std::array<Element, 64> local{};
  std::vector<Element> heap;
  Element* stack = local.data();
  if (max_stack_ > local.size()) {
    heap.resize(max_stack_);
    stack = heap.data();
  }
  std::size_t sp = 0;
  for (const auto& s : steps_) {
    if (!s.table) {
      stack[sp++] = values[s.var];
      continue;
    }
    std::size_t row = 0;
    Element* base = stack + sp - s.arity;
    const std::size_t* radices = radix_pool_.data() + s.radix_at;
    for (std::uint32_t i = 0; i < s.arity; ++i) row = row * radices[i] + base[i];
    sp -= s.arity;
    stack[sp++] = s.table[row];
  }
  return stack[0];
}

Element evaluate_bottom_up(const FiniteAlgebra& a, const Term& p, const Valuation& v) {
  check_valuation(a, p.context(), v);
  return CompiledTerm(a, p).eval(v.values);
}

TermOperation realize_general(const FiniteAlgebra& a, const GeneralTerm& p) {
  std::vector<CompiledTerm> compiled;
  for (const auto& t : p.body()) compiled.emplace_back(a, t);
  return [&a, p, compiled = std::move(compiled)](const Valuation& v) {
    check_valuation(a, p.source(), v);
    Valuation out{p.target(), {}};
    out.values.reserve(compiled.size());
    for (const auto& c : compiled) out.values.push_back(c.eval(v.values));
    return out;
  };
}

bool for_each_valuation(const Carriers& c, const SortedSet& ctx,
                        const std::function<bool(std::span<const Element>)>& visit) {
  auto r = c.radices(ctx.sorts());
  std::size_t total = saturating_product(r, valuation_cap());
  if (total == 0) return true;
  if (total > valuation_cap())
    throw Error(ErrorKind::TableTooLarge, "more than " + std::to_string(valuation_cap()) + " valuations");
  std::vector<Element> cur(r.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    if (!visit(cur)) return false;
    for (std::size_t i = r.size(); i-- > 0;) {
      if (++cur[i] < r[i]) break;
      cur[i] = 0;
    }
  }
  return true;
}

std::optional<Valuation> find_counterexample(const FiniteAlgebra& a, const Equation& eq) {
  std::vector<CompiledTerm> lhs, rhs;
  for (const auto& t : eq.lhs.body()) lhs.emplace_back(a, t);
  for (const auto& t : eq.rhs.body()) rhs.emplace_back(a, t);
  std::optional<Valuation> witness;
  for_each_valuation(a.carriers(), *eq.lhs.source(), [&](std::span<const Element> v) {
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      if (lhs[k].eval(v) != rhs[k].eval(v)) {
        witness = Valuation{eq.lhs.source(), std::vector<Element>(v.begin(), v.end())};
        return false;
      }
    }
    return true;
  });
  return witness;
}

bool satisfies(const FiniteAlgebra& a, const Equation& eq) { return !find_counterexample(a, eq); }

bool satisfies_all(const FiniteAlgebra& a, std::span<const Equation> eqs) {
  for (const auto& e : eqs)
    if (!satisfies(a, e)) return false;
  return true;
}

bool check_homomorphism(const SortedFunction& f, const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (!(*a.signature() == *b.signature()))
    throw Error(ErrorKind::SignatureMismatch, "homomorphism between algebras over different signatures");
  for (Sort s : a.signature()->sorts()) {
    auto it = f.find(s);
    if (it == f.end()) throw Error(ErrorKind::TypingError, "map is undefined at sort " + s.name());
    if (it->second.size() != a.carrier_size(s))
      throw Error(ErrorKind::TypingError, "map at sort " + s.name() + " is not total");
    for (Element e : it->second)
      if (e >= b.carrier_size(s)) throw Error(ErrorKind::TypingError, "map at sort " + s.name() + " leaves the target");
  }
  const auto& ops = a.signature()->ops();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const auto& op = *ops[k];
    auto ra = a.carriers().radices(op.arity);
    auto rb = b.carriers().radices(op.arity);
    const auto& ta = a.table(k);
    const auto& tb = b.table(k);
    const auto& fs = f.at(op.coarity);
    std::vector<Element> tuple(op.arity.size()), image(op.arity.size());
    for (std::size_t row = 0; row < ta.size(); ++row) {
      decode_row(ra, row, tuple);
      for (std::size_t i = 0; i < tuple.size(); ++i) image[i] = f.at(op.arity[i])[tuple[i]];
      if (fs[ta[row]] != tb[encode_row(rb, image)]) return false;
    }
  }
  return true;
}

SortedFunction identity_function(const FiniteAlgebra& a) {
  SortedFunction f;
  for (Sort s : a.signature()->sorts()) {
    std::vector<Element> m(a.carrier_size(s));
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<Element>(i);
    f.emplace(s, std::move(m));
  }
  return f;
}

FiniteAlgebra product_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (!(*a.signature() == *b.signature()))
    throw Error(ErrorKind::SignatureMismatch, "product of algebras over different signatures");
  FiniteAlgebra out(a.signature());
  for (Sort s : a.signature()->sorts()) {
    std::vector<std::string> labels;
    for (const auto& x : a.labels(s))
      for (const auto& y : b.labels(s)) labels.push_back(tuple_label({x, y}));
    out.set_carrier(s, std::move(labels));
  }
  const auto& ops = a.signature()->ops();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const auto& op = *ops[k];
    auto ro = out.carriers().radices(op.arity);
    auto ra = a.carriers().radices(op.arity);
    auto rb = b.carriers().radices(op.arity);
    std::size_t rows = out.carriers().product_size(op.arity);
    if (rows > table_row_cap()) throw Error(ErrorKind::TableTooLarge, "product table of " + op.name);
    std::vector<Element> table(rows), tuple(op.arity.size()), ta(op.arity.size()), tb(op.arity.size());
    std::size_t nb = b.carrier_size(op.coarity);
    for (std::size_t row = 0; row < rows; ++row) {
      decode_row(ro, row, tuple);
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        std::size_t m = b.carrier_size(op.arity[i]);
        ta[i] = static_cast<Element>(tuple[i] / m);
        tb[i] = static_cast<Element>(tuple[i] % m);
      }
      Element x = a.table(k)[encode_row(ra, ta)];
      Element y = b.table(k)[encode_row(rb, tb)];
      table[row] = static_cast<Element>(x * nb + y);
    }
    out.set_table(k, std::move(table));
  }
  return out;
}

FiniteAlgebra generated_subalgebra(const FiniteAlgebra& a, const SortedFunction& generators) {
  const auto& sig = *a.signature();
  std::vector<std::vector<char>> member;
  for (Sort s : sig.sorts()) {
    member.emplace_back(a.carrier_size(s), 0);
    auto it = generators.find(s);
    if (it == generators.end()) continue;
    for (Element e : it->second) member.back().at(e) = 1;
  }
  auto members_of = [&](Sort s) {
    std::vector<Element> out;
    const auto& m = member[sig.sort_index(s)];
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) out.push_back(static_cast<Element>(i));
    return out;
  };
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t k = 0; k < sig.ops().size(); ++k) {
      const auto& op = *sig.ops()[k];
      std::vector<std::vector<Element>> pools;
      std::size_t rows = 1;
      for (Sort s : op.arity) {
        pools.push_back(members_of(s));
        rows *= pools.back().size();
      }
      auto full = a.carriers().radices(op.arity);
      std::vector<std::size_t> sub;
      for (const auto& p : pools) sub.push_back(p.size());
      std::vector<Element> pick(op.arity.size()), tuple(op.arity.size());
      auto& out = member[sig.sort_index(op.coarity)];
      const auto& table = a.table(k);
      for (std::size_t row = 0; row < rows; ++row) {
        decode_row(sub, row, pick);
        for (std::size_t i = 0; i < pick.size(); ++i) tuple[i] = pools[i][pick[i]];
        Element r = table[encode_row(full, tuple)];
        if (!out[r]) {
          out[r] = 1;
          grew = true;
        }
      }
    }
  }
  FiniteAlgebra sub(a.signature());
  std::vector<std::vector<Element>> back(sig.sorts().size(), std::vector<Element>());
  for (Sort s : sig.sorts()) {
    auto keep = members_of(s);
    auto& rev = back[sig.sort_index(s)];
    rev.assign(a.carrier_size(s), 0);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      rev[keep[i]] = static_cast<Element>(i);
      labels.push_back(a.label(s, keep[i]));
    }
    sub.set_carrier(s, std::move(labels));
  }
  for (std::size_t k = 0; k < sig.ops().size(); ++k) {
    const auto& op = *sig.ops()[k];
    std::vector<std::vector<Element>> pools;
    for (Sort s : op.arity) pools.push_back(members_of(s));
    auto full = a.carriers().radices(op.arity);
    auto small = sub.carriers().radices(op.arity);
    std::size_t rows = sub.carriers().product_size(op.arity);
    std::vector<Element> pick(op.arity.size()), tuple(op.arity.size()), table(rows);
    const auto& rev = back[sig.sort_index(op.coarity)];
    for (std::size_t row = 0; row < rows; ++row) {
      decode_row(small, row, pick);
      for (std::size_t i = 0; i < pick.size(); ++i) tuple[i] = pools[i][pick[i]];
      table[row] = rev[a.table(k)[encode_row(full, tuple)]];
    }
    sub.set_table(k, std::move(table));
  }
  return sub;
}

std::size_t function_space_size(const Carriers& c, const Word& arity, const Word& coarity) {
  std::size_t rows = c.product_size(arity);
  std::size_t values = c.product_size(coarity);
  if (rows > table_row_cap()) return table_row_cap() + 1;
  return saturating_power(values, rows, table_row_cap());
}

Element encode_function(const Carriers& c, const FiniteOperation& f) {
  std::size_t base = c.product_size(f.coarity);
  std::size_t code = 0;
  for (Element e : f.table) code = code * base + e;
  return static_cast<Element>(code);
}

FiniteOperation decode_function(const Carriers& c, const Word& arity, const Word& coarity, Element code) {
  std::size_t base = c.product_size(coarity);
  std::size_t rows = c.product_size(arity);
  FiniteOperation f{arity, coarity, std::vector<Element>(rows)};
  std::size_t rest = code;
  for (std::size_t r = rows; r-- > 0;) {
    f.table[r] = static_cast<Element>(rest % base);
    rest /= base;
  }
  return f;
}

std::string function_label(const Carriers& c, const FiniteOperation& f) {
  auto r = c.radices(f.coarity);
  std::vector<Element> tuple(f.coarity.size());
  std::string out = "[";
  for (std::size_t i = 0; i < f.table.size(); ++i) {
    if (i) out += ',';
    decode_row(r, f.table[i], tuple);
    if (f.coarity.size() == 1) {
      out += c.labels(f.coarity[0])[tuple[0]];
    } else {
      std::vector<std::string> parts;
      for (std::size_t k = 0; k < tuple.size(); ++k) parts.push_back(c.labels(f.coarity[k])[tuple[k]]);
      out += tuple_label(parts);
    }
  }
  return out + "]";
}

FiniteOperation hall_project(const Carriers& c, const Word& w, std::size_t i) {
  if (i >= w.size()) throw Error(ErrorKind::IndexOutOfRange, "projection " + std::to_string(i) + " of " + to_string(w));
  auto r = c.radices(w);
  std::size_t rows = c.product_size(w);
  if (rows > table_row_cap()) throw Error(ErrorKind::TableTooLarge, "projection table on " + to_string(w));
  FiniteOperation f{w, Word{w[i]}, std::vector<Element>(rows)};
  std::vector<Element> tuple(w.size());
  for (std::size_t row = 0; row < rows; ++row) {
    decode_row(r, row, tuple);
    f.table[row] = tuple[i];
  }
  return f;
}

FiniteOperation hall_substitute(const Carriers& c, const Word& u, const FiniteOperation& f,
                                std::span<const FiniteOperation> gs) {
  if (f.coarity.size() != 1) throw Error(ErrorKind::ArityMismatch, "substituted operation must have one output");
  if (gs.size() != f.arity.size()) throw Error(ErrorKind::ArityMismatch, "substitution needs one operation per input");
  for (std::size_t i = 0; i < gs.size(); ++i)
    if (gs[i].arity != u || gs[i].coarity != Word{f.arity[i]})
      throw Error(ErrorKind::ArityMismatch, "argument " + std::to_string(i) + " of the substitution has the wrong type");
  auto rw = c.radices(f.arity);
  std::size_t rows = c.product_size(u);
  if (rows > table_row_cap()) throw Error(ErrorKind::TableTooLarge, "substitution table on " + to_string(u));
  FiniteOperation out{u, f.coarity, std::vector<Element>(rows)};
  std::vector<Element> tuple(gs.size());
  for (std::size_t row = 0; row < rows; ++row) {
    for (std::size_t i = 0; i < gs.size(); ++i) tuple[i] = gs[i].table[row];
    out.table[row] = f.table[encode_row(rw, tuple)];
  }
  return out;
}

FiniteOperation benabou_tuple(const Carriers& c, const Word& u, std::span<const FiniteOperation> fs) {
  Word w;
  for (const auto& f : fs) {
    if (f.arity != u || f.coarity.size() != 1)
      throw Error(ErrorKind::ArityMismatch, "tupled operations must share the domain " + to_string(u) + " and have one output");
    w.push_back(f.coarity[0]);
  }
  auto rw = c.radices(w);
  std::size_t rows = c.product_size(u);
  if (rows > table_row_cap()) throw Error(ErrorKind::TableTooLarge, "tuple table on " + to_string(u));
  FiniteOperation out{u, w, std::vector<Element>(rows)};
  std::vector<Element> tuple(fs.size());
  for (std::size_t row = 0; row < rows; ++row) {
    for (std::size_t i = 0; i < fs.size(); ++i) tuple[i] = fs[i].table[row];
    out.table[row] = static_cast<Element>(encode_row(rw, tuple));
  }
  return out;
}

FiniteOperation benabou_compose(const Carriers&, const FiniteOperation& q, const FiniteOperation& p) {
  if (p.coarity != q.arity) throw Error(ErrorKind::ArityMismatch, "composed operations do not meet");
  FiniteOperation out{p.arity, q.coarity, std::vector<Element>(p.table.size())};
  for (std::size_t row = 0; row < p.table.size(); ++row) out.table[row] = q.table[p.table[row]];
  return out;
}

FiniteOperation hall_op_apply(const Carriers& c, const CloneOpCall& call, std::span<const FiniteOperation> args) {
  switch (call.kind) {
    case CloneOpKind::Projection:
      if (!args.empty()) throw Error(ErrorKind::ArityMismatch, "projection takes no arguments");
      return hall_project(c, call.w, call.index);
    case CloneOpKind::Substitution:
      if (args.empty()) throw Error(ErrorKind::ArityMismatch, "substitution needs the substituted operation");
      return hall_substitute(c, call.u, args[0], args.subspan(1));
    default:
      throw Error(ErrorKind::ArityMismatch, "not a Hall operation");
  }
}

FiniteOperation benabou_op_apply(const Carriers& c, const CloneOpCall& call, std::span<const FiniteOperation> args) {
  switch (call.kind) {
    case CloneOpKind::Projection:
      if (!args.empty()) throw Error(ErrorKind::ArityMismatch, "projection takes no arguments");
      return hall_project(c, call.w, call.index);
    case CloneOpKind::Tuple:
      return benabou_tuple(c, call.u, args);
    case CloneOpKind::Composition:
      if (args.size() != 2) throw Error(ErrorKind::ArityMismatch, "composition takes two arguments");
      return benabou_compose(c, args[1], args[0]);
    default:
      throw Error(ErrorKind::ArityMismatch, "not a Bénabou operation");
  }
}

std::vector<Equation> Specification::plain_equations() const {
  std::vector<Equation> out;
  out.reserve(equations.size());
  for (const auto& e : equations) out.push_back(e.equation);
  return out;
}

std::optional<std::string> first_violated(const FiniteAlgebra& a, const Specification& spec) {
  for (const auto& e : spec.equations)
    if (!satisfies(a, e.equation)) return e.name;
  return std::nullopt;
}

}  // namespace sortal
