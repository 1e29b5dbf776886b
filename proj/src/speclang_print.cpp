#include <cctype>

#include "sortal/speclang.hpp"

namespace sortal {

namespace {

std::string signature_name(const Workspace& ws, const SignatureRef& sig) {
  for (const auto& [name, s] : ws.signatures.entries())
    if (s == sig) return name;
  for (const auto& [name, s] : ws.signatures.entries())
    if (*s == *sig) return name;
  return sig->name();
}

std::string side(const GeneralTerm& g) {
  if (g.body().size() == 1) return g[0].to_string();
  std::string out = "[";
  for (std::size_t i = 0; i < g.body().size(); ++i) {
    if (i) out += ", ";
    out += g[i].to_string();
  }
  return out + "]";
}

std::string context_word(const Context& ctx) { return to_string(ctx->sorts()); }

std::string equation_text(const Equation& eq) {
  return context_word(eq.lhs.source()) + " : " + side(eq.lhs) + " = " + side(eq.rhs);
}

std::string family_terms(const TermFamily& f) {
  std::string out = "(";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ", ";
    out += f[i].to_string();
  }
  return out + ")";
}

std::size_t generated_count(const Specification& spec) {
  if (!spec.free_theory || spec.free_theory->signature() != spec.signature) return 0;
  const auto& cs = *spec.free_theory;
  return (cs.flavor() == CloneFlavor::Hall ? hall_spec(cs.base(), cs.bound()) : benabou_spec(cs.base(), cs.bound()))
      .spec.equations.size();
}

bool same_spec(const Specification& a, const Specification& b) {
  if (a.name != b.name || !(*a.signature == *b.signature) || a.equations.size() != b.equations.size()) return false;
  for (std::size_t i = 0; i < a.equations.size(); ++i)
    if (a.equations[i].name != b.equations[i].name || !(a.equations[i].equation == b.equations[i].equation))
      return false;
  return true;
}

template <typename T, typename Eq>
bool same_registry(const Registry<T>& a, const Registry<T>& b, Eq eq) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.entries()[i].first != b.entries()[i].first || !eq(a.entries()[i].second, b.entries()[i].second)) return false;
  return true;
}

}  // namespace

std::string quote_label(std::string_view label) {
  bool raw = !label.empty();
  for (char c : label)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') raw = false;
  if (raw) return std::string(label);
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string print(const Workspace& ws) {
  std::string out;
  auto block = [&](const std::string& text) {
    if (!out.empty()) out += '\n';
    out += text;
  };

  for (const auto& [name, sig] : ws.signatures.entries()) {
    std::string b = "signature " + name + " {\n";
    for (Sort s : sig->sorts()) b += "  sort " + s.name() + ";\n";
    for (const auto& op : sig->ops()) {
      b += "  op " + op->name + " :";
      for (Sort s : op->arity) b += " " + s.name();
      b += " -> " + op->coarity.name() + ";\n";
    }
    block(b + "}\n");
  }
  for (const auto& [name, d] : ws.terms.entries())
    block("term " + name + " over " + signature_name(ws, d.signature) + " " + context_word(d.term.context()) + " = " +
          d.term.to_string() + ";\n");
  for (const auto& [name, d] : ws.equations.entries())
    block("equation " + name + " over " + signature_name(ws, d.signature) + " " + equation_text(d.equation) + ";\n");
  for (const auto& [name, spec] : ws.specs.entries()) {
    std::string b = "spec " + name + " over " + signature_name(ws, spec.signature) + " {\n";
    for (std::size_t i = generated_count(spec); i < spec.equations.size(); ++i)
      b += "  equation " + spec.equations[i].name + " " + equation_text(spec.equations[i].equation) + ";\n";
    block(b + "}\n");
  }
  for (const auto& [name, alg] : ws.algebras.entries()) {
    std::string b = "algebra " + name + " : " + signature_name(ws, alg->signature()) + " {\n";
    for (Sort s : alg->carriers().sorts()) {
      b += "  carrier " + s.name() + " = {";
      const auto& labels = alg->labels(s);
      for (std::size_t i = 0; i < labels.size(); ++i) b += (i ? ", " : "") + quote_label(labels[i]);
      b += "};\n";
    }
    const auto& ops = alg->signature()->ops();
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const auto& op = *ops[k];
      b += "  op " + op.name + " {\n";
      auto radices = alg->carriers().radices(op.arity);
      const auto& table = alg->table(k);
      std::vector<Element> args(op.arity.size());
      for (std::size_t row = 0; row < table.size(); ++row) {
        decode_row(radices, row, args);
        b += "    row";
        for (std::size_t i = 0; i < args.size(); ++i) b += " " + quote_label(alg->label(op.arity[i], args[i]));
        b += " -> " + quote_label(alg->label(op.coarity, table[row])) + ";\n";
      }
      b += "  }\n";
    }
    block(b + "}\n");
  }
  for (const auto& [name, pd] : ws.morphisms.entries()) {
    std::string b = "morphism " + name + " : " + signature_name(ws, pd.source()) + " -> " +
                    signature_name(ws, pd.target()) + " {\n";
    for (Sort s : pd.source()->sorts()) b += "  sort " + s.name() + " -> " + to_string(pd.sort_map()(s)) + ";\n";
    const auto& ops = pd.source()->ops();
    for (std::size_t k = 0; k < ops.size(); ++k) b += "  op " + ops[k]->name + " -> " + family_terms(pd.image(k)) + ";\n";
    block(b + "}\n");
  }
  for (const auto& [name, d] : ws.transformations.entries()) {
    std::string b = "transformation " + name + " : " + d.source + " => " + d.target;
    if (d.modulo) b += " modulo " + *d.modulo;
    b += " {\n";
    for (Sort s : d.transformation.source().source()->sorts())
      b += "  sort " + s.name() + " -> " + family_terms(d.transformation.component(s)) + ";\n";
    block(b + "}\n");
  }
  return out;
}

bool operator==(const Workspace& a, const Workspace& b) {
  auto deref = [](const auto& x, const auto& y) { return *x == *y; };
  auto plain = [](const auto& x, const auto& y) { return x == y; };
  return same_registry(a.signatures, b.signatures, deref) && same_registry(a.terms, b.terms, plain) &&
         same_registry(a.equations, b.equations, plain) && same_registry(a.specs, b.specs, same_spec) &&
         same_registry(a.algebras, b.algebras, deref) && same_registry(a.morphisms, b.morphisms, plain) &&
         same_registry(a.transformations, b.transformations, plain);
}

}  // namespace sortal
