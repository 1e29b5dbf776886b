#include <cctype>
#include <charconv>

#include "sortal/speclang.hpp"

namespace sortal {

namespace {

enum class Tok { Word, String, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    std::size_t l = line, cl = col;
    if (word_char(c)) {
      std::size_t j = i;
      while (j < src.size() && word_char(src[j])) ++j;
      out.push_back({Tok::Word, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::string text;
      advance(1);
      while (true) {
        if (i >= src.size() || src[i] == '\n') throw SourceError(ErrorKind::SyntaxError, l, cl, "unterminated string");
        if (src[i] == '"') {
          advance(1);
          break;
        }
        if (src[i] == '\\' && i + 1 < src.size() && (src[i + 1] == '"' || src[i + 1] == '\\')) advance(1);
        text += src[i];
        advance(1);
      }
      out.push_back({Tok::String, std::move(text), l, cl});
      continue;
    }
    if ((c == '-' || c == '=') && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Punct, c == '-' ? "->" : "=>", l, cl});
      advance(2);
      continue;
    }
    if (std::string_view("{}()[];:,=.").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    throw SourceError(ErrorKind::SyntaxError, l, cl, "unexpected character '" + std::string(1, c) + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_identifier(std::string_view s) {
  return !s.empty() && !std::isdigit(static_cast<unsigned char>(s[0]));
}

std::string strip_kind(const Error& e) {
  std::string_view what = e.what();
  auto pos = what.find(": ");
  return std::string(pos == std::string_view::npos ? what : what.substr(pos + 2));
}

class Parser {
 public:
  Parser(Workspace& ws, std::string_view src) : ws_(ws), toks_(lex(src)) {}

  void document() {
    while (peek().kind != Tok::End) declaration();
  }

  Word word() {
    expect("(");
    Word w;
    while (!accept(")")) w.push_back(sort());
    return w;
  }

  Term term_at(const Signature& sig, const Context& ctx) { return term(sig, ctx); }

  bool at_end() const { return peek().kind == Tok::End; }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg, ErrorKind kind = ErrorKind::SyntaxError) const {
    throw SourceError(kind, t.line, t.column, msg);
  }
  static std::string show(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }
  bool is(std::string_view p) const { return peek().kind != Tok::String && peek().text == p; }
  bool accept(std::string_view p) {
    if (!is(p)) return false;
    next();
    return true;
  }
  const Token& expect(std::string_view p) {
    if (!is(p)) fail(peek(), "expected '" + std::string(p) + "', found " + show(peek()));
    return next();
  }
  std::string ident() {
    const Token& t = peek();
    if (t.kind != Tok::Word || !is_identifier(t.text)) fail(t, "expected an identifier, found " + show(t));
    return next().text;
  }
  std::size_t integer() {
    const Token& t = peek();
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (t.kind != Tok::Word || ec != std::errc() || p != t.text.data() + t.text.size())
      fail(t, "expected a number, found " + show(t));
    next();
    return v;
  }
  std::string label() {
    const Token& t = peek();
    if (t.kind != Tok::Word && t.kind != Tok::String) fail(t, "expected a label, found " + show(t));
    return next().text;
  }

  template <typename Fn>
  auto located(const Token& t, Fn&& fn) -> decltype(fn()) {
    try {
      return fn();
    } catch (const SourceError&) {
      throw;
    } catch (const Error& e) {
      throw SourceError(e.kind(), t.line, t.column, strip_kind(e));
    }
  }

  std::string sort_text() {
    const Token& t = peek();
    if (t.kind == Tok::Word) return next().text;
    if (!is("(")) fail(t, "expected a sort, found " + show(t));
    next();
    std::string out = "(";
    bool first = true;
    while (!accept(")")) {
      if (!first) out += ' ';
      first = false;
      out += sort_text();
    }
    return out + ")";
  }
  Sort sort() { return Sort(sort_text()); }

  SignatureRef sigref() {
    const Token& t = peek();
    if ((t.text == "hall" || t.text == "benabou") && peek(1).text == "(") {
      bool hall = next().text == "hall";
      Word sorts = word();
      std::size_t bound = integer();
      return located(t, [&] { return hall ? hall_signature(sorts, bound)->signature() : benabou_signature(sorts, bound)->signature(); });
    }
    std::string name = ident();
    return located(t, [&] { return ws_.signatures.get(name); });
  }

  std::shared_ptr<const CloneSignature> generated_theory(const SignatureRef& sig) {
    const std::string& n = sig->name();
    bool hall = n.rfind("hall (", 0) == 0;
    if (!hall && n.rfind("benabou (", 0) != 0) return nullptr;
    auto open = n.find('('), close = n.rfind(')');
    Word sorts = parse_word(n.substr(open, close - open + 1));
    std::size_t bound = std::stoul(n.substr(close + 1));
    auto cs = hall ? hall_signature(sorts, bound) : benabou_signature(sorts, bound);
    return cs->signature() == sig ? cs : nullptr;
  }

  Term term(const Signature& sig, const Context& ctx) {
    const Token& t = peek();
    std::string name = ident();
    OpRef op = sig.find_op(name);
    if (!op) {
      if (name.size() > 1 && name[0] == 'v' && name.find_first_not_of("0123456789", 1) == std::string::npos && !is("(")) {
        std::size_t idx = std::stoul(name.substr(1));
        return located(t, [&] { return mk_var(ctx, idx); });
      }
      fail(t, "unknown operation or variable '" + name + "'", ErrorKind::UnresolvedName);
    }
    std::vector<Term> args;
    if (accept("(")) {
      if (!accept(")")) {
        do args.push_back(term(sig, ctx));
        while (accept(","));
        expect(")");
      }
    }
    return located(t, [&] { return mk_app(ctx, op, args); });
  }

  std::vector<Term> term_list(const Signature& sig, const Context& ctx, std::string_view open, std::string_view close) {
    expect(open);
    std::vector<Term> out;
    if (accept(close)) return out;
    do out.push_back(term(sig, ctx));
    while (accept(","));
    expect(close);
    return out;
  }

  GeneralTerm side(const Signature& sig, const Context& ctx) {
    const Token& t = peek();
    std::vector<Term> body = is("[") ? term_list(sig, ctx, "[", "]") : std::vector<Term>{term(sig, ctx)};
    Word target;
    for (const auto& b : body) target.push_back(b.sort());
    return located(t, [&] { return GeneralTerm(ctx, canonical_context(target), body); });
  }

  Equation equation_body(const Signature& sig) {
    const Token& t = peek();
    Word w = word();
    Context ctx = canonical_context(w);
    for (Sort s : w)
      if (!sig.has_sort(s)) fail(t, "sort " + s.name() + " is not in the signature", ErrorKind::UnknownSort);
    expect(":");
    GeneralTerm l = side(sig, ctx);
    const Token& eq = expect("=");
    GeneralTerm r = side(sig, ctx);
    return located(eq, [&] { return Equation(l, r); });
  }

  void declaration() {
    const Token& t = peek();
    if (t.kind != Tok::Word) fail(t, "expected a declaration, found " + show(t));
    if (t.text == "signature") return signature_decl();
    if (t.text == "term") return term_decl();
    if (t.text == "equation") return equation_decl();
    if (t.text == "spec") return spec_decl();
    if (t.text == "algebra") return algebra_decl();
    if (t.text == "morphism") return morphism_decl();
    if (t.text == "transformation") return transformation_decl();
    fail(t, "expected a declaration, found " + show(t));
  }

  void signature_decl() {
    next();
    const Token& nt = peek();
    std::string name = ident();
    if (name == "hall" || name == "benabou") fail(nt, "'" + name + "' is reserved", ErrorKind::DuplicateName);
    auto sig = std::make_shared<Signature>(name);
    expect("{");
    while (!accept("}")) {
      const Token& kw = peek();
      if (accept("sort")) {
        sig->add_sort(sort());
      } else if (accept("op")) {
        std::string op = ident();
        expect(":");
        Word arity;
        while (!is("->")) {
          if (peek().kind == Tok::End || is(";")) fail(peek(), "expected '->' in operation declaration");
          arity.push_back(sort());
        }
        expect("->");
        Sort coarity = sort();
        located(kw, [&] { sig->add_op(op, arity, coarity); });
      } else {
        fail(kw, "expected 'sort', 'op' or '}', found " + show(kw));
      }
      expect(";");
    }
    located(nt, [&] { ws_.signatures.add(name, sig); });
  }

  void term_decl() {
    next();
    const Token& nt = peek();
    std::string name = ident();
    expect("over");
    SignatureRef sig = sigref();
    Word w = word();
    expect("=");
    Term body = term(*sig, canonical_context(w));
    expect(";");
    located(nt, [&] { ws_.terms.add(name, TermDecl{sig, body}); });
  }

  void equation_decl() {
    next();
    const Token& nt = peek();
    std::string name = ident();
    expect("over");
    SignatureRef sig = sigref();
    Equation eq = equation_body(*sig);
    expect(";");
    located(nt, [&] { ws_.equations.add(name, EquationDecl{sig, eq}); });
  }

  void spec_decl() {
    next();
    const Token& nt = peek();
    std::string name = ident();
    expect("over");
    SignatureRef sig = sigref();
    Specification spec{name, sig, {}, generated_theory(sig)};
    if (spec.free_theory) {
      CloneSpec gen = spec.free_theory->flavor() == CloneFlavor::Hall
                          ? hall_spec(spec.free_theory->base(), spec.free_theory->bound())
                          : benabou_spec(spec.free_theory->base(), spec.free_theory->bound());
      spec.equations = std::move(gen.spec.equations);
    }
    auto add = [&](const Token& at, NamedEquation ne) {
      for (const auto& e : spec.equations)
        if (e.name == ne.name) fail(at, "equation '" + ne.name + "' listed twice", ErrorKind::DuplicateName);
      spec.equations.push_back(std::move(ne));
    };
    expect("{");
    while (!accept("}")) {
      const Token& kw = peek();
      if (accept("equation")) {
        const Token& et = peek();
        std::string ename = ident();
        add(et, NamedEquation{ename, equation_body(*sig)});
      } else if (accept("use")) {
        const Token& ut = peek();
        std::string ename = ident();
        const EquationDecl& d = located(ut, [&]() -> const EquationDecl& { return ws_.equations.get(ename); });
        if (!(*d.signature == *sig)) fail(ut, "equation '" + ename + "' is over another signature", ErrorKind::SignatureMismatch);
        add(ut, NamedEquation{ename, d.equation});
      } else {
        fail(kw, "expected 'equation', 'use' or '}', found " + show(kw));
      }
      expect(";");
    }
    located(nt, [&] { ws_.specs.add(name, std::move(spec)); });
  }

  void algebra_decl() {
    next();
    const Token& nt = peek();
    std::string name = ident();
    expect(":");
    SignatureRef sig = sigref();
    auto alg = std::make_shared<FiniteAlgebra>(sig);
    expect("{");
    while (!accept("}")) {
      const Token& kw = peek();
      if (accept("carrier")) {
        const Token& st = peek();
        Sort s = sort();
        if (!sig->has_sort(s)) fail(st, "sort " + s.name() + " is not in the signature", ErrorKind::UnknownSort);
        expect("=");
        expect("{");
        std::vector<std::string> labels;
        if (!accept("}")) {
          do labels.push_back(label());
          while (accept(","));
          expect("}");
        }
        located(st, [&] { alg->set_carrier(s, std::move(labels)); });
        expect(";");
      } else if (accept("op")) {
        const Token& ot = peek();
        std::string op = ident();
        OpRef ref = sig->find_op(op);
        if (!ref) fail(ot, "unknown operation '" + op + "'", ErrorKind::UnresolvedName);
        for (Sort s : ref->arity)
          if (!alg->carriers().has(s)) fail(ot, "carrier " + s.name() + " must be declared before " + op, ErrorKind::TypingError);
        if (!alg->carriers().has(ref->coarity))
          fail(ot, "carrier " + ref->coarity.name() + " must be declared before " + op, ErrorKind::TypingError);
        std::size_t rows = located(ot, [&] {
          std::size_t n = alg->carriers().product_size(ref->arity);
          if (n > table_row_cap()) throw Error(ErrorKind::TableTooLarge, "table of " + op + " is too large");
          return n;
        });
        auto radices = alg->carriers().radices(ref->arity);
        std::vector<Element> table(rows);
        std::vector<char> seen(rows, 0);
        expect("{");
        while (!accept("}")) {
          const Token& rt = expect("row");
          std::vector<Element> args;
          while (!is("->")) {
            const Token& lt = peek();
            if (args.size() == ref->arity.size()) fail(lt, "too many arguments in row of " + op, ErrorKind::ArityMismatch);
            std::string l = label();
            auto e = alg->find_label(ref->arity[args.size()], l);
            if (!e) fail(lt, "'" + l + "' is not in carrier " + ref->arity[args.size()].name(), ErrorKind::TypingError);
            args.push_back(*e);
          }
          if (args.size() != ref->arity.size()) fail(rt, "too few arguments in row of " + op, ErrorKind::ArityMismatch);
          expect("->");
          const Token& lt = peek();
          std::string l = label();
          auto v = alg->find_label(ref->coarity, l);
          if (!v) fail(lt, "'" + l + "' is not in carrier " + ref->coarity.name(), ErrorKind::TypingError);
          std::size_t row = encode_row(radices, args);
          if (seen[row]) fail(rt, "row given twice in " + op, ErrorKind::DuplicateName);
          seen[row] = 1;
          table[row] = *v;
          expect(";");
        }
        for (std::size_t r = 0; r < rows; ++r)
          if (!seen[r]) {
            std::vector<Element> args(ref->arity.size());
            decode_row(radices, r, args);
            std::string missing;
            for (std::size_t k = 0; k < args.size(); ++k) missing += " " + alg->label(ref->arity[k], args[k]);
            fail(ot, "table of " + op + " has no row for" + (missing.empty() ? std::string(" ()") : missing),
                 ErrorKind::TypingError);
          }
        located(ot, [&] { alg->set_table(op, std::move(table)); });
      } else {
        fail(kw, "expected 'carrier', 'op' or '}', found " + show(kw));
      }
    }
    located(nt, [&] {
      alg->validate();
      ws_.algebras.add(name, alg);
    });
  }

  Polyderivator morphism_expr() {
    const Token& t = peek();
    if (t.text == "identity" && peek(1).text == "(") {
      next();
      expect("(");
      SignatureRef sig = sigref();
      expect(")");
      return identity_polyderivator(sig);
    }
    std::string name = ident();
    Polyderivator acc = located(t, [&] { return ws_.morphisms.get(name); });
    while (accept(".")) {
      const Token& nt = peek();
      std::string inner = ident();
      const Polyderivator& next_pd = located(nt, [&]() -> const Polyderivator& { return ws_.morphisms.get(inner); });
      acc = located(nt, [&] { return compose_polyderivators(acc, next_pd); });
    }
    return acc;
  }

  void morphism_decl() {
    next();
    const Token& nt = peek();
    std::string name = ident();
    if (accept("=")) {
      Polyderivator pd = morphism_expr();
      expect(";");
      located(nt, [&] { ws_.morphisms.add(name, std::move(pd)); });
      return;
    }
    expect(":");
    SignatureRef source = sigref();
    expect("->");
    SignatureRef target = sigref();
    SortMap phi(source->sorts(), target->sorts());
    std::unordered_map<std::string, TermFamily> images;
    expect("{");
    while (!accept("}")) {
      const Token& kw = peek();
      if (accept("sort")) {
        const Token& st = peek();
        Sort s = sort();
        expect("->");
        Word w = word();
        located(st, [&] { phi.set(s, w); });
      } else if (accept("op")) {
        const Token& ot = peek();
        std::string op = ident();
        OpRef ref = source->find_op(op);
        if (!ref) fail(ot, "unknown operation '" + op + "'", ErrorKind::UnresolvedName);
        if (images.count(op)) fail(ot, "operation '" + op + "' mapped twice", ErrorKind::DuplicateName);
        expect("->");
        Word dom, cod;
        located(ot, [&] {
          if (!phi.is_total()) throw Error(ErrorKind::TypingError, "all sorts must be mapped before operations");
          dom = apply_sharp(phi, ref->arity);
          cod = phi(ref->coarity);
        });
        std::vector<Term> comps = term_list(*target, canonical_context(dom), "(", ")");
        images.emplace(op, located(ot, [&] { return TermFamily(dom, cod, comps); }));
      } else {
        fail(kw, "expected 'sort', 'op' or '}', found " + show(kw));
      }
      expect(";");
    }
    located(nt, [&] {
      if (!phi.is_total()) throw Error(ErrorKind::TypingError, "every source sort needs an image");
      ws_.morphisms.add(name, mk_polyderivator(source, target, std::move(phi), images));
    });
  }

  void transformation_decl() {
    next();
    const Token& nt = peek();
    std::string name = ident();
    expect(":");
    const Token& st = peek();
    std::string source = ident();
    expect("=>");
    const Token& tt = peek();
    std::string target = ident();
    const Polyderivator& d = located(st, [&]() -> const Polyderivator& { return ws_.morphisms.get(source); });
    const Polyderivator& e = located(tt, [&]() -> const Polyderivator& { return ws_.morphisms.get(target); });
    std::optional<std::string> modulo;
    if (accept("modulo")) {
      const Token& mt = peek();
      modulo = ident();
      const Specification& spec = located(mt, [&]() -> const Specification& { return ws_.specs.get(*modulo); });
      if (!(*spec.signature == *e.target()))
        fail(mt, "spec '" + *modulo + "' is not over the target signature", ErrorKind::SignatureMismatch);
    }
    std::unordered_map<Sort, TermFamily> comps;
    expect("{");
    while (!accept("}")) {
      const Token& kw = expect("sort");
      const Token& srt = peek();
      Sort s = sort();
      expect("->");
      Word dom, cod;
      located(srt, [&] {
        if (!d.source()->has_sort(s)) throw Error(ErrorKind::UnknownSort, "sort " + s.name() + " is not in the source signature");
        dom = d.sort_map()(s);
        cod = e.sort_map()(s);
      });
      if (comps.count(s)) fail(srt, "sort " + s.name() + " given twice", ErrorKind::DuplicateName);
      std::vector<Term> body = term_list(*d.target(), canonical_context(dom), "(", ")");
      comps.emplace(s, located(kw, [&] { return TermFamily(dom, cod, body); }));
      expect(";");
    }
    located(nt, [&] {
      Transformation xi(d, e, std::move(comps));
      ws_.transformations.add(name, TransformationDecl{source, target, modulo, std::move(xi)});
    });
  }

  Workspace& ws_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

SignatureRef Workspace::signature(std::string_view ref) const {
  if (const auto* s = signatures.find(ref)) return *s;
  auto open = ref.find('(');
  if (open != std::string_view::npos) {
    std::string_view head = ref.substr(0, open);
    while (!head.empty() && head.back() == ' ') head.remove_suffix(1);
    auto close = ref.rfind(')');
    if (close != std::string_view::npos && (head == "hall" || head == "benabou")) {
      Word sorts = parse_word(ref.substr(open, close - open + 1));
      std::string_view rest = ref.substr(close + 1);
      while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
      std::size_t bound = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), bound);
      if (ec != std::errc() || ptr != rest.data() + rest.size())
        throw Error(ErrorKind::SyntaxError, "bad signature reference '" + std::string(ref) + "'");
      return head == "hall" ? hall_signature(sorts, bound)->signature() : benabou_signature(sorts, bound)->signature();
    }
  }
  throw Error(ErrorKind::UnresolvedName, "no signature named '" + std::string(ref) + "'");
}

Workspace parse(std::string_view text) {
  Workspace ws;
  parse_into(ws, text);
  return ws;
}

void parse_into(Workspace& ws, std::string_view text) {
  Parser p(ws, text);
  p.document();
}

std::string canonical_sort_name(std::string_view text) {
  Workspace ws;
  std::string wrapped = "(" + std::string(text) + ")";
  Parser p(ws, wrapped);
  Word w = p.word();
  if (w.size() != 1 || !p.at_end()) throw Error(ErrorKind::SyntaxError, "'" + std::string(text) + "' is not a single sort");
  return w[0].name();
}

Word parse_word(std::string_view text) {
  Workspace ws;
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  std::string wrapped = !trimmed.empty() && trimmed.front() == '(' ? std::string(text) : "(" + std::string(text) + ")";
  Parser p(ws, wrapped);
  Word w = p.word();
  if (!p.at_end()) throw Error(ErrorKind::SyntaxError, "trailing input after word '" + std::string(text) + "'");
  return w;
}

Term parse_term(const Signature& sig, const Context& ctx, std::string_view text) {
  Workspace ws;
  Parser p(ws, text);
  Term t = p.term_at(sig, ctx);
  if (!p.at_end()) throw Error(ErrorKind::SyntaxError, "trailing input after term");
  return t;
}

}  // namespace sortal
