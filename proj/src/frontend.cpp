// Copyright 2026 The Adjoint Sessions Authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy of
// the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations under
// the License.

#include "adjoint/frontend.hpp"

#include <cctype>
#include <map>
#include <set>

namespace adj {
namespace {

enum class Tok { kIdent, kNumber, kSym, kEnd };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {"mode", "order", "type", "proc", "case",
                                           "nu",   "shift", "up",   "down", "input"};
  return kw;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view text, const std::string& file,
                       std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const char* kMulti[] = {"<-", "-o", "|-", "=>"};
  static const std::string kSingle = "{}()[]<>,;:.*+&|=";
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    SourceSpan span{file, i, i, line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      span.end = j;
      out.push_back({Tok::kIdent, std::string(text.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      span.end = j;
      out.push_back({Tok::kNumber, std::string(text.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const char* m : kMulti) {
      if (text.substr(i, 2) == m) {
        span.end = i + 2;
        out.push_back({Tok::kSym, m, span});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (kSingle.find(c) != std::string::npos) {
      span.end = i + 1;
      out.push_back({Tok::kSym, std::string(1, c), span});
      advance(1);
      continue;
    }
    span.end = i + 1;
    diags.push_back(error(std::string("unexpected character '") + c + "'", span));
    advance(1);
  }
  out.push_back({Tok::kEnd, "", SourceSpan{file, text.size(), text.size(), line, col}});
  return out;
}

struct ParseError {
  Diagnostic diag;
};

[[noreturn]] void fail(const std::string& msg, const SourceSpan& span) {
  throw ParseError{error(msg, span)};
}

// Fills in inferred modes on types whose atoms, units or connectives were
// written without one.
class ModeResolver {
 public:
  ModeResolver(const ModeTheory& theory, std::string default_mode)
      : theory_(theory), default_(std::move(default_mode)) {}

  Type resolve(const Type& t, const std::optional<std::string>& expected, const SourceSpan& span) {
    std::optional<std::string> m = expected;
    if (!m) m = synth(t);
    if (!m && !default_.empty()) m = default_;
    if (!m) fail("cannot infer the mode of type " + describe(t) + "; annotate an atom or unit", span);
    return check(t, *m, span);
  }

 private:
  static std::string describe(const Type& t) {
    std::string s = to_string(t);
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.compare(i, 2, "[]") == 0) {
        ++i;
        continue;
      }
      out += s[i];
    }
    return out;
  }

  std::optional<std::string> synth(const Type& t) const {
    if (as<AtomType>(t) || as<OneType>(t)) {
      if (t->mode.empty()) return std::nullopt;
      return t->mode;
    }
    if (as<NamedType>(t) || as<UpType>(t) || as<DownType>(t)) return t->mode;
    if (const auto* l = as<LolliType>(t)) {
      if (auto m = synth(l->arg)) return m;
      return synth(l->result);
    }
    if (const auto* p = as<TensorType>(t)) {
      if (auto m = synth(p->left)) return m;
      return synth(p->right);
    }
    const auto& choices = as<PlusType>(t) ? as<PlusType>(t)->choices : as<WithType>(t)->choices;
    for (const auto& c : choices) {
      if (auto m = synth(c.type)) return m;
    }
    return std::nullopt;
  }

  void require_mode(const std::string& m, const SourceSpan& span) const {
    if (!theory_.has_mode(m)) fail("undeclared mode '" + m + "'", span);
  }

  Type check(const Type& t, const std::string& m, const SourceSpan& span) {
    require_mode(m, span);
    auto mismatch = [&](const std::string& found) {
      fail("mode mismatch: expected " + m + ", found " + found + " in " + describe(t), span);
    };
    if (const auto* a = as<AtomType>(t)) {
      if (!t->mode.empty() && t->mode != m) mismatch(t->mode);
      return make_atom(a->name, m);
    }
    if (as<OneType>(t)) {
      if (!t->mode.empty() && t->mode != m) mismatch(t->mode);
      return make_one(m);
    }
    if (as<NamedType>(t)) {
      if (t->mode != m) mismatch(t->mode);
      return t;
    }
    if (const auto* l = as<LolliType>(t)) {
      return make_lolli(check(l->arg, m, span), check(l->result, m, span));
    }
    if (const auto* p = as<TensorType>(t)) {
      return make_tensor(check(p->left, m, span), check(p->right, m, span));
    }
    if (const auto* s = as<PlusType>(t)) return make_plus(check_choices(s->choices, m, span), m);
    if (const auto* w = as<WithType>(t)) return make_with(check_choices(w->choices, m, span), m);
    const bool up = as<UpType>(t) != nullptr;
    const Type& body = up ? as<UpType>(t)->body : as<DownType>(t)->body;
    if (t->mode != m) mismatch(t->mode);
    auto k = synth(body);
    if (!k && !default_.empty()) k = default_;
    if (!k) fail("cannot infer the mode under " + std::string(up ? "up" : "down") + "[" + m + "]", span);
    Type inner = check(body, *k, span);
    return up ? make_up(m, inner) : make_down(m, inner);
  }

  std::vector<Choice> check_choices(const std::vector<Choice>& choices, const std::string& m,
                                    const SourceSpan& span) {
    std::vector<Choice> out;
    for (const auto& c : choices) out.push_back({c.label, check(c.type, m, span)});
    return out;
  }

  const ModeTheory& theory_;
  std::string default_;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::map<std::string, std::string> known_types)
      : toks_(std::move(toks)), known_types_(std::move(known_types)) {}

  // Token access.
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::kEnd; }
  bool is_sym(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::kSym && peek(k).text == s;
  }
  bool is_word(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::kIdent && peek(k).text == s;
  }
  bool is_name(std::size_t k = 0) const {
    return peek(k).kind == Tok::kIdent && !keywords().count(peek(k).text);
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(const std::string& sym) {
    if (!is_sym(sym)) return false;
    next();
    return true;
  }
  void expect(const std::string& sym) {
    if (!accept(sym)) fail("expected '" + sym + "' but found " + show(peek()), peek().span);
  }
  void expect_word(const std::string& w) {
    if (!is_word(w)) fail("expected '" + w + "' but found " + show(peek()), peek().span);
    next();
  }
  std::string name(const char* what) {
    if (!is_name()) fail(std::string("expected ") + what + " but found " + show(peek()), peek().span);
    return next().text;
  }
  static std::string show(const Token& t) {
    if (t.kind == Tok::kEnd) return "end of input";
    return "'" + t.text + "'";
  }
  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }

  // Types, before mode resolution.
  Type type() {
    Type t = tensorish();
    if (accept("-o")) return make_lolli(t, type());
    return t;
  }

  Type tensorish() {
    Type t = prefix();
    while (true) {
      if (is_sym("*") ) {
        next();
        t = make_tensor(t, prefix());
      } else if (is_sym("&") && !is_sym("{", 1)) {
        next();
        t = make_binary_with(t, prefix());
      } else if (is_sym("+") && !is_sym("{", 1)) {
        next();
        t = make_binary_plus(t, prefix());
      } else {
        return t;
      }
    }
  }

  Type prefix() {
    if (is_word("up") || is_word("down")) {
      const bool up = next().text == "up";
      expect("[");
      std::string m = name("mode");
      expect("]");
      Type body = prefix();
      return up ? make_up(m, body) : make_down(m, body);
    }
    return primary();
  }

  std::string opt_mode() {
    if (!accept("[")) return "";
    std::string m = name("mode");
    expect("]");
    return m;
  }

  Type primary() {
    const Token& t = peek();
    if (accept("(")) {
      Type inner = type();
      expect(")");
      return inner;
    }
    if (is_sym("+") || is_sym("&")) {
      const bool plus = next().text == "+";
      expect("{");
      std::vector<Choice> choices;
      std::set<std::string> labels;
      do {
        const Token& lt = peek();
        std::string label = name("label");
        if (!labels.insert(label).second) fail("duplicate label '" + label + "'", lt.span);
        expect(":");
        choices.push_back({label, type()});
      } while (accept(","));
      expect("}");
      if (choices.empty()) fail("empty label set", t.span);
      return plus ? make_plus(std::move(choices), "") : make_with(std::move(choices), "");
    }
    if (t.kind == Tok::kNumber) {
      if (t.text != "1") fail("unexpected number " + t.text + " in type", t.span);
      next();
      return make_one(opt_mode());
    }
    if (is_name()) {
      std::string n = next().text;
      std::string m = opt_mode();
      auto it = known_types_.find(n);
      if (it != known_types_.end()) {
        if (!m.empty() && m != it->second) {
          fail("type '" + n + "' is defined at mode " + it->second + ", not " + m, t.span);
        }
        return make_named(n, it->second);
      }
      return make_atom(n, m);
    }
    fail("expected a type but found " + show(t), t.span);
  }

  // Processes.
  Proc term(bool allow_spawn = true) {
    const Token& t = peek();
    if (is_word("case")) return case_term();
    if (accept("(")) {
      Proc inner = term();
      expect(")");
      return inner;
    }
    if (is_sym("{")) {
      if (!allow_spawn) fail("parenthesize a spawn used as a spawned process", t.span);
      std::vector<std::string> aliases = alias_set();
      expect("<-");
      return spawn_rest(std::move(aliases), t.span);
    }
    if (!is_name()) fail("expected a process but found " + show(t), t.span);
    if (is_sym(".", 1)) return send_term();
    if (!is_sym("<-", 1)) fail("expected '<-' or '.' after " + show(t), peek(1).span);
    std::string x = next().text;
    next();  // <-
    if (is_sym("(")) {
      if (!allow_spawn) fail("parenthesize a spawn used as a spawned process", t.span);
      return spawn_rest({x}, t.span);
    }
    std::string y = name("channel or process name");
    if (!accept("<-")) return make_proc(Fwd{x, y}, t.span);
    std::vector<std::string> args = arg_list();
    if (allow_spawn && accept(";")) {
      Spawn s;
      s.aliases = {x};
      s.internal = x;
      s.body = make_proc(Call{y, args, x}, t.span);
      s.cont = term();
      return make_proc(std::move(s), t.span);
    }
    return make_proc(Call{y, std::move(args), x}, t.span);
  }

  std::vector<std::string> alias_set() {
    expect("{");
    std::vector<std::string> out;
    std::set<std::string> seen;
    if (!is_sym("}")) {
      do {
        const Token& t = peek();
        std::string a = name("alias");
        if (!seen.insert(a).second) fail("duplicate alias '" + a + "'", t.span);
        out.push_back(a);
      } while (accept(","));
    }
    expect("}");
    return out;
  }

  std::vector<std::string> arg_list() {
    std::vector<std::string> out;
    if (!is_name()) return out;
    do {
      out.push_back(name("argument"));
    } while (accept(","));
    return out;
  }

  Proc spawn_rest(std::vector<std::string> aliases, const SourceSpan& span) {
    Spawn s;
    s.aliases = std::move(aliases);
    if (accept("(")) {
      expect_word("nu");
      s.internal = name("channel");
      if (accept(":")) {
        annotation_spans_.push_back(peek().span);
        s.annotation = type();
      }
      expect(")");
      s.body = term(false);
    } else {
      const Token& ft = peek();
      std::string f = name("process name or '(nu'");
      expect("<-");
      std::vector<std::string> args = arg_list();
      s.internal = s.aliases.empty() ? std::string("x") : s.aliases.front();
      s.body = make_proc(Call{f, std::move(args), s.internal}, ft.span);
    }
    expect(";");
    s.cont = term();
    return make_proc(std::move(s), span);
  }

  Proc send_term() {
    const Token& t = peek();
    std::string c = next().text;
    expect(".");
    if (accept("<")) {
      if (accept(">")) return make_proc(SendUnit{c}, t.span);
      std::string a = name("channel");
      expect(",");
      std::string b = name("channel");
      expect(">");
      return make_proc(SendPair{c, a, b}, t.span);
    }
    if (is_word("shift")) {
      next();
      expect("(");
      std::string a = name("channel");
      expect(")");
      return make_proc(SendShift{c, a}, t.span);
    }
    std::string label = name("label");
    expect("(");
    std::string a = name("channel");
    expect(")");
    return make_proc(SendLabel{c, label, a}, t.span);
  }

  Proc case_term() {
    const Token& t = next();  // case
    std::string c = name("channel");
    std::string close;
    if (accept("{")) {
      close = "}";
    } else if (accept("(")) {
      close = ")";
    } else {
      fail("expected '{' after case " + c, peek().span);
    }
    Proc out;
    if (accept("<")) {
      if (accept(">")) {
        expect("=>");
        out = make_proc(CaseUnit{c, term()}, t.span);
      } else {
        std::string x = name("channel");
        expect(",");
        std::string y = name("channel");
        expect(">");
        expect("=>");
        out = make_proc(CasePair{c, x, y, term()}, t.span);
      }
    } else if (is_word("shift")) {
      next();
      expect("(");
      std::string x = name("channel");
      expect(")");
      expect("=>");
      out = make_proc(CaseShift{c, x, term()}, t.span);
    } else {
      CaseLabel cl{c, {}};
      std::set<std::string> labels;
      do {
        const Token& lt = peek();
        std::string label = name("label");
        if (!labels.insert(label).second) fail("duplicate branch '" + label + "'", lt.span);
        expect("(");
        std::string x = name("channel");
        expect(")");
        expect("=>");
        cl.branches.push_back({label, x, term()});
      } while (accept("|"));
      out = make_proc(std::move(cl), t.span);
    }
    expect(close);
    return out;
  }

  const std::vector<SourceSpan>& annotation_spans() const { return annotation_spans_; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string> known_types_;
  std::vector<SourceSpan> annotation_spans_;
};

// Resolves modes of spawn annotations throughout a process.
Proc resolve_annotations(const Proc& p, ModeResolver& r) {
  return std::visit(
      [&](const auto& n) -> Proc {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Spawn>) {
          Spawn s = n;
          if (s.annotation) s.annotation = r.resolve(s.annotation, std::nullopt, p->span);
          s.body = resolve_annotations(n.body, r);
          s.cont = resolve_annotations(n.cont, r);
          return make_proc(std::move(s), p->span);
        } else if constexpr (std::is_same_v<T, CaseLabel>) {
          CaseLabel c = n;
          for (auto& b : c.branches) b.body = resolve_annotations(b.body, r);
          return make_proc(std::move(c), p->span);
        } else if constexpr (std::is_same_v<T, CasePair> || std::is_same_v<T, CaseUnit> ||
                             std::is_same_v<T, CaseShift>) {
          T c = n;
          c.body = resolve_annotations(n.body, r);
          return make_proc(std::move(c), p->span);
        } else {
          return p;
        }
      },
      p->node);
}

using Env = std::map<std::string, std::string>;

// Renames binders that repeat a name in `taken`; records every binder.
class ApartRenamer {
 public:
  ApartRenamer(std::set<std::string>& taken, NameSupply& names) : taken_(taken), names_(names) {}

  Proc run(const Proc& p, const Env& env) {
    return std::visit([&](const auto& n) -> Proc { return make_proc(go(n, env), p->span); }, p->node);
  }

 private:
  static std::string look(const Env& env, const std::string& n) {
    auto it = env.find(n);
    return it == env.end() ? n : it->second;
  }
  std::string bind(Env& env, const std::string& b) {
    std::string nb = taken_.count(b) ? names_.fresh(b) : b;
    taken_.insert(nb);
    if (nb == b) {
      env.erase(b);
    } else {
      env[b] = nb;
    }
    return nb;
  }
  Fwd go(const Fwd& n, const Env& e) { return {look(e, n.dst), look(e, n.src)}; }
  Spawn go(const Spawn& n, const Env& e) {
    Spawn s;
    s.annotation = n.annotation;
    Env ce = e;
    for (const auto& a : n.aliases) s.aliases.push_back(bind(ce, a));
    Env be = e;
    s.internal = bind(be, n.internal);
    s.body = run(n.body, be);
    s.cont = run(n.cont, ce);
    return s;
  }
  SendLabel go(const SendLabel& n, const Env& e) { return {look(e, n.chan), n.label, look(e, n.cont)}; }
  CaseLabel go(const CaseLabel& n, const Env& e) {
    CaseLabel c{look(e, n.chan), {}};
    for (const auto& b : n.branches) {
      Env be = e;
      std::string v = bind(be, b.var);
      c.branches.push_back({b.label, v, run(b.body, be)});
    }
    return c;
  }
  SendPair go(const SendPair& n, const Env& e) {
    return {look(e, n.chan), look(e, n.first), look(e, n.second)};
  }
  CasePair go(const CasePair& n, const Env& e) {
    Env be = e;
    std::string x = bind(be, n.first);
    std::string y = bind(be, n.second);
    return {look(e, n.chan), x, y, run(n.body, be)};
  }
  SendUnit go(const SendUnit& n, const Env& e) { return {look(e, n.chan)}; }
  CaseUnit go(const CaseUnit& n, const Env& e) { return {look(e, n.chan), run(n.body, e)}; }
  SendShift go(const SendShift& n, const Env& e) { return {look(e, n.chan), look(e, n.cont)}; }
  CaseShift go(const CaseShift& n, const Env& e) {
    Env be = e;
    std::string v = bind(be, n.var);
    return {look(e, n.chan), v, run(n.body, be)};
  }
  Call go(const Call& n, const Env& e) {
    Call c{n.name, {}, look(e, n.result)};
    for (const auto& a : n.args) c.args.push_back(look(e, a));
    return c;
  }

  std::set<std::string>& taken_;
  NameSupply& names_;
};

void skip_to_declaration(Parser& p) {
  while (!p.at_end()) {
    if (p.is_word("mode") || p.is_word("order") || p.is_word("type") || p.is_word("proc")) return;
    p.next();
  }
}

std::string default_mode_of(const ModeTheory& theory) {
  return theory.modes().size() == 1 ? theory.modes().front().name : std::string();
}

std::map<std::string, std::string> type_modes(const Program& program) {
  std::map<std::string, std::string> out;
  for (const auto& t : program.types) out[t.name] = t.mode;
  return out;
}

struct RawProcDef {
  std::string name;
  std::vector<std::pair<std::string, Type>> params;
  std::pair<std::string, Type> result;
  Proc body;
  SourceSpan span;
};

}  // namespace

Parsed<Program> parse_program(std::string_view text, const std::string& file) {
  Parsed<Program> out;
  auto& diags = out.diagnostics;
  std::vector<Token> toks = lex(text, file, diags);

  std::map<std::string, std::string> known;
  for (std::size_t i = 0; i + 4 < toks.size(); ++i) {
    if (toks[i].kind == Tok::kIdent && toks[i].text == "type" && toks[i + 1].kind == Tok::kIdent &&
        toks[i + 2].text == "[" && toks[i + 3].kind == Tok::kIdent) {
      known[toks[i + 1].text] = toks[i + 3].text;
    }
  }

  Parser p(std::move(toks), known);
  std::vector<ModeDecl> modes;
  std::vector<OrderDecl> order;
  std::vector<SourceSpan> mode_spans;
  std::vector<TypeDef> raw_types;
  std::vector<RawProcDef> raw_procs;

  while (!p.at_end()) {
    const Token& start = p.peek();
    try {
      if (p.is_word("mode")) {
        p.next();
        ModeDecl decl;
        decl.name = p.name("mode name");
        if (p.is_word("with")) {
          p.next();
          do {
            const Token& t = p.peek();
            std::string prop = p.name("structural property");
            if (prop == "W") {
              decl.props.weakening = true;
            } else if (prop == "C") {
              decl.props.contraction = true;
            } else {
              fail("unknown structural property '" + prop + "' (expected W or C)", t.span);
            }
          } while (p.accept(","));
        }
        p.expect(";");
        modes.push_back(decl);
        mode_spans.push_back(start.span);
      } else if (p.is_word("order")) {
        p.next();
        std::string hi = p.name("mode name");
        if (!p.is_sym(">")) fail("expected '>' in order declaration", p.peek().span);
        while (p.accept(">")) {
          std::string lo = p.name("mode name");
          order.push_back({hi, lo});
          hi = lo;
        }
        p.expect(";");
      } else if (p.is_word("type")) {
        p.next();
        TypeDef def;
        def.span = start.span;
        def.name = p.name("type name");
        p.expect("[");
        def.mode = p.name("mode");
        p.expect("]");
        p.expect("=");
        def.body = p.type();
        p.expect(";");
        raw_types.push_back(std::move(def));
      } else if (p.is_word("proc")) {
        p.next();
        RawProcDef def;
        def.span = start.span;
        def.name = p.name("process name");
        p.expect("(");
        if (!p.is_sym(")")) {
          do {
            std::string c = p.name("parameter");
            p.expect(":");
            def.params.emplace_back(c, p.type());
          } while (p.accept(","));
        }
        p.expect(")");
        p.expect("|-");
        p.expect("(");
        def.result.first = p.name("result channel");
        p.expect(":");
        def.result.second = p.type();
        p.expect(")");
        p.expect("=");
        def.body = p.term();
        if (!p.at_end() && !p.is_word("proc") && !p.is_word("type") && !p.is_word("mode") &&
            !p.is_word("order")) {
          fail("unexpected " + Parser::show(p.peek()) + " after the body of '" + def.name + "'",
               p.peek().span);
        }
        raw_procs.push_back(std::move(def));
      } else {
        fail("expected a declaration but found " + Parser::show(start), start.span);
      }
    } catch (const ParseError& e) {
      diags.push_back(e.diag);
      if (p.peek().span.start == start.span.start) p.next();
      skip_to_declaration(p);
    }
  }

  Program program;
  try {
    program.theory = ModeTheory::build(modes, order);
  } catch (const ModeError& e) {
    diags.push_back(error(e.what(), mode_spans.empty() ? SourceSpan{file, 0, 0, 1, 1} : mode_spans.front()));
    return out;
  }
  ModeResolver resolver(program.theory, default_mode_of(program.theory));

  for (auto& def : raw_types) {
    try {
      def.body = resolver.resolve(def.body, def.mode, def.span);
      program.types.push_back(def);
    } catch (const ParseError& e) {
      diags.push_back(e.diag);
    }
  }

  NameSupply names;
  for (const auto& def : raw_procs) {
    names.reserve(def.result.first);
    for (const auto& prm : def.params) names.reserve(prm.first);
    if (def.body) names.reserve_all(all_names(def.body));
  }
  std::set<std::string> taken;
  std::set<std::string> proc_names;
  for (const auto& def : raw_procs) proc_names.insert(def.name);

  for (auto& raw : raw_procs) {
    try {
      ProcDef def;
      def.name = raw.name;
      def.span = raw.span;
      for (auto& [c, t] : raw.params) def.params.push_back({c, resolver.resolve(t, std::nullopt, raw.span)});
      def.result = {raw.result.first, resolver.resolve(raw.result.second, std::nullopt, raw.span)};
      Proc body = resolve_annotations(raw.body, resolver);
      std::set<std::string> scope{def.result.chan};
      for (const auto& b : def.params) scope.insert(b.chan);
      std::set<std::string> local = taken;
      local.insert(scope.begin(), scope.end());
      ApartRenamer renamer(local, names);
      def.body = renamer.run(body, {});
      for (const auto& n : local) {
        if (!scope.count(n)) taken.insert(n);
      }
      for (const auto& f : free_channels(def.body)) {
        if (!scope.count(f)) diags.push_back(error("unbound channel '" + f + "' in '" + def.name + "'", def.span));
      }
      std::vector<Proc> stack{def.body};
      while (!stack.empty()) {
        Proc q = stack.back();
        stack.pop_back();
        if (const auto* c = as<Call>(q)) {
          if (!proc_names.count(c->name)) {
            diags.push_back(error("call to undefined process '" + c->name + "'", q->span));
          }
        } else if (const auto* s = as<Spawn>(q)) {
          stack.push_back(s->body);
          stack.push_back(s->cont);
        } else if (const auto* cl = as<CaseLabel>(q)) {
          for (const auto& b : cl->branches) stack.push_back(b.body);
        } else if (const auto* cp = as<CasePair>(q)) {
          stack.push_back(cp->body);
        } else if (const auto* cu = as<CaseUnit>(q)) {
          stack.push_back(cu->body);
        } else if (const auto* cs = as<CaseShift>(q)) {
          stack.push_back(cs->body);
        }
      }
      program.procs.push_back(std::move(def));
    } catch (const ParseError& e) {
      diags.push_back(e.diag);
    }
  }

  for (auto& d : check_declarations(program)) {
    if (d.span.file.empty()) d.span = SourceSpan{file, 0, 0, 1, 1};
    diags.push_back(std::move(d));
  }
  out.value = std::move(program);
  return out;
}

Parsed<Proc> parse_process(std::string_view text, const Program& program) {
  Parsed<Proc> out;
  std::vector<Token> toks = lex(text, "<process>", out.diagnostics);
  Parser p(std::move(toks), type_modes(program));
  try {
    ModeResolver resolver(program.theory, default_mode_of(program.theory));
    Proc proc = p.term();
    if (!p.at_end()) fail("unexpected " + Parser::show(p.peek()) + " after process", p.peek().span);
    out.value = resolve_annotations(proc, resolver);
  } catch (const ParseError& e) {
    out.diagnostics.push_back(e.diag);
  }
  return out;
}

Parsed<Type> parse_type(std::string_view text, const Program& program,
                        const std::string& default_mode) {
  Parsed<Type> out;
  std::vector<Token> toks = lex(text, "<type>", out.diagnostics);
  Parser p(std::move(toks), type_modes(program));
  try {
    ModeResolver resolver(program.theory,
                          default_mode.empty() ? default_mode_of(program.theory) : default_mode);
    const SourceSpan span = p.peek().span;
    Type t = p.type();
    if (!p.at_end()) fail("unexpected " + Parser::show(p.peek()) + " after type", p.peek().span);
    out.value = resolver.resolve(t, std::nullopt, span);
  } catch (const ParseError& e) {
    out.diagnostics.push_back(e.diag);
  }
  return out;
}

Parsed<Sequent> parse_sequent(std::string_view text, const Program& program) {
  Parsed<Sequent> out;
  std::vector<Token> toks = lex(text, "<sequent>", out.diagnostics);
  if (has_errors(out.diagnostics)) return out;
  Parser p(std::move(toks), type_modes(program));
  try {
    std::vector<std::pair<std::string, Type>> ante;
    std::vector<SourceSpan> spans;
    std::set<std::string> vars;
    if (!p.is_sym("|-")) {
      do {
        const Token& t = p.peek();
        std::string v = p.name("variable");
        if (!vars.insert(v).second) fail("duplicate variable '" + v + "'", t.span);
        p.expect(":");
        spans.push_back(p.peek().span);
        ante.emplace_back(v, p.type());
      } while (p.accept(","));
    }
    p.expect("|-");
    const SourceSpan succ_span = p.peek().span;
    Type succ = p.type();
    std::string mode;
    if (p.is_word("at")) {
      p.next();
      const Token& t = p.peek();
      mode = p.name("mode");
      if (!program.theory.has_mode(mode)) fail("undeclared mode '" + mode + "'", t.span);
    }
    if (!p.at_end()) fail("unexpected " + Parser::show(p.peek()) + " in sequent", p.peek().span);
    ModeResolver resolver(program.theory, mode.empty() ? default_mode_of(program.theory) : mode);
    Sequent s;
    for (std::size_t i = 0; i < ante.size(); ++i) {
      s.antecedents.push_back({ante[i].first, resolver.resolve(ante[i].second, std::nullopt, spans[i])});
    }
    s.succedent = resolver.resolve(succ, std::nullopt, succ_span);
    out.value = std::move(s);
  } catch (const ParseError& e) {
    out.diagnostics.push_back(e.diag);
  }
  return out;
}

Parsed<Configuration> parse_config(std::string_view text, const Program& program,
                                   const std::string& file) {
  Parsed<Configuration> out;
  auto& diags = out.diagnostics;
  std::vector<Token> toks = lex(text, file, diags);
  if (has_errors(diags)) return out;
  Parser p(std::move(toks), type_modes(program));
  ModeResolver resolver(program.theory, default_mode_of(program.theory));
  Configuration config;
  std::set<std::string> provided;
  try {
    while (!p.at_end()) {
      const Token& start = p.peek();
      if (p.is_word("input")) {
        p.next();
        const Token& nt = p.peek();
        std::string c = p.name("channel");
        p.expect(":");
        Type t = resolver.resolve(p.type(), std::nullopt, nt.span);
        p.expect(";");
        if (!provided.insert(c).second) fail("channel '" + c + "' is provided twice", nt.span);
        config.inputs.push_back({c, t});
        continue;
      }
      p.expect_word("proc");
      std::vector<std::string> aliases = p.alias_set();
      p.expect("[");
      std::vector<std::string> uses;
      if (!p.is_sym("]")) {
        do {
          uses.push_back(p.name("channel"));
        } while (p.accept(","));
      }
      p.expect("]");
      std::string internal = p.name("internal channel");
      p.expect(":");
      const SourceSpan type_span = p.peek().span;
      Type t = resolver.resolve(p.type(), std::nullopt, type_span);
      p.expect("{");
      Proc body = resolve_annotations(p.term(), resolver);
      p.expect("}");
      for (const auto& a : aliases) {
        if (!provided.insert(a).second) {
          fail("alias '" + a + "' overlaps the alias set of another object", start.span);
        }
      }
      ProcObject obj = config.make_object(aliases, internal, body, t);
      std::set<std::string> declared(uses.begin(), uses.end());
      if (declared.size() != uses.size() ||
          !std::equal(declared.begin(), declared.end(), obj.uses.begin(), obj.uses.end())) {
        std::string free;
        for (const auto& u : obj.uses) free += (free.empty() ? "" : ", ") + u;
        fail("used channels must be exactly the free channels of the body other than '" + internal +
                 "': {" + free + "}",
             start.span);
      }
      config.objects.push_back(std::move(obj));
    }
  } catch (const ParseError& e) {
    diags.push_back(e.diag);
    return out;
  }
  config.reserve_names();
  for (const auto& def : program.procs) {
    for (const auto& b : def.params) config.names.reserve(b.chan);
    config.names.reserve(def.result.chan);
    config.names.reserve_all(all_names(def.body));
  }
  out.value = std::move(config);
  return out;
}

}  // namespace adj
