#pragma once

// Recursive-descent parser for .ebh files: one context or machine per file.
// Every decision is made on a single token of lookahead.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ebhint/lexer.hpp"
#include "ebhint/model.hpp"

namespace ebhint {

struct SourceFile {
  std::string path;
  std::string text;
};

struct ParseDiagnostic {
  SourceLocation location;
  std::string message;
  std::string code;
};

struct ParseOutcome {
  std::optional<Component> component;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return component.has_value() && diagnostics.empty(); }
};

inline bool isReservedWord(const std::string& s) {
  static const std::set<std::string> words = {
      "machine", "context",   "refines", "sees",     "extends", "variables", "invariants",
      "theorems", "events",   "end",     "initialisation",    "event",     "any",
      "where",   "when",      "thm",     "with",     "then",    "begin",     "hints",
      "use",     "for",       "split",   "case",     "using",   "sets",      "constants",
      "axioms",  "theorem",   "true",    "false"};
  return words.count(s) > 0;
}

namespace detail {

struct ParseError : std::runtime_error {
  ParseError(SourceLocation loc, std::string msg, std::string c)
      : std::runtime_error(msg), location(loc), code(std::move(c)) {}
  SourceLocation location;
  std::string code;
};

class Parser {
 public:
  // Thrown when error recovery reaches end of input.
  struct Recovered {};

  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::optional<Component> component(std::vector<ParseDiagnostic>& diags) {
    diags_ = &diags;
    try {
      std::optional<Component> out;
      if (isWord("machine")) {
        out = machine();
      } else if (isWord("context")) {
        out = context();
      } else {
        fail("expected 'machine' or 'context'", peek().kind == Tok::Ident && !isReservedWord(peek().text) ? "unknown-keyword" : "syntax");
      }
      if (peek().kind != Tok::End) fail("unexpected text after 'end'");
      return out;
    } catch (const ParseError& e) {
      diags.push_back({e.location, e.what(), e.code});
      return std::nullopt;
    }
  }

  Formula standaloneFormula() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("unexpected text after formula");
    return f;
  }

 private:
  // ---- token helpers ----
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is(Tok k) const { return peek().kind == k; }
  bool isWord(std::string_view w) const {
    return peek().kind == Tok::Ident && !peek().primed && peek().text == w;
  }
  bool accept(Tok k) {
    if (!is(k)) return false;
    take();
    return true;
  }
  bool acceptWord(std::string_view w) {
    if (!isWord(w)) return false;
    take();
    return true;
  }

  [[noreturn]] void fail(const std::string& msg, const std::string& code = "syntax") const {
    const Token& t = peek();
    std::string where = t.kind == Tok::End ? " at end of file" : " near '" + t.text + "'";
    throw ParseError(t.location, msg + where, code);
  }

  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  void expectWord(std::string_view w) {
    if (!acceptWord(w)) fail("expected '" + std::string(w) + "'");
  }

  bool isName() const {
    return peek().kind == Tok::Ident && !peek().primed && !isReservedWord(peek().text);
  }

  Declaration name(const char* what = "identifier") {
    if (!isName()) fail(std::string("expected ") + what);
    Token t = take();
    return {t.text, t.location};
  }

  std::vector<Declaration> names() {
    std::vector<Declaration> out{name()};
    for (;;) {
      if (accept(Tok::Comma)) {
        out.push_back(name());
      } else if (isName()) {
        out.push_back(name());
      } else {
        return out;
      }
    }
  }

  void unknownSection(const char* expected) {
    if (peek().kind == Tok::Ident && !isReservedWord(peek().text)) {
      fail("unknown keyword '" + peek().text + "'", "unknown-keyword");
    }
    fail(std::string("expected ") + expected);
  }

  // ---- components ----
  Context context() {
    Context c;
    c.location = peek().location;
    expectWord("context");
    c.name = name("context name").name;
    if (acceptWord("extends")) c.extends = name("context name").name;
    for (;;) {
      if (acceptWord("sets")) {
        auto xs = names();
        c.sets.insert(c.sets.end(), xs.begin(), xs.end());
      } else if (acceptWord("constants")) {
        auto xs = names();
        c.constants.insert(c.constants.end(), xs.begin(), xs.end());
      } else if (acceptWord("axioms")) {
        do {
          bool thm = acceptWord("theorem");
          c.axioms.push_back(labeled(thm));
        } while (isName() || isWord("theorem"));
      } else if (acceptWord("end")) {
        return c;
      } else {
        unknownSection("'sets', 'constants', 'axioms' or 'end'");
      }
    }
  }

  Machine machine() {
    Machine m;
    m.location = peek().location;
    expectWord("machine");
    m.name = name("machine name").name;
    if (acceptWord("refines")) m.refines = name("machine name").name;
    if (acceptWord("sees")) m.sees = name("context name").name;
    for (;;) {
      if (acceptWord("variables")) {
        auto xs = names();
        m.variables.insert(m.variables.end(), xs.begin(), xs.end());
      } else if (acceptWord("invariants")) {
        auto ps = labeledList(false);
        m.invariants.insert(m.invariants.end(), ps.begin(), ps.end());
      } else if (acceptWord("theorems")) {
        auto ps = labeledList(true);
        m.theorems.insert(m.theorems.end(), ps.begin(), ps.end());
      } else if (acceptWord("events")) {
        events(m);
      } else if (acceptWord("end")) {
        return m;
      } else {
        unknownSection("'variables', 'invariants', 'theorems', 'events' or 'end'");
      }
    }
  }

  void events(Machine& m) {
    while (isWord("initialisation") || isWord("event")) {
      const std::size_t start = pos_;
      try {
        Event e = event();
        if (e.isInitialisation()) {
          m.initialisation = std::move(e);
        } else {
          m.events.push_back(std::move(e));
        }
      } catch (const ParseError& err) {
        diags_->push_back({err.location, err.what(), err.code});
        if (pos_ == start) take();
        while (!is(Tok::End) && !isWord("event") && !isWord("initialisation")) take();
        if (is(Tok::End)) throw Recovered{};
      }
    }
  }

  Event event() {
    Event e;
    e.location = peek().location;
    if (acceptWord("initialisation")) {
      e.name = kInitialisation;
    } else {
      expectWord("event");
      e.name = name("event name").name;
    }
    if (acceptWord("refines")) {
      e.refines.push_back(name("event name").name);
      while (accept(Tok::Comma)) e.refines.push_back(name("event name").name);
    }
    if (acceptWord("any")) e.parameters = names();
    if (acceptWord("where") || acceptWord("when")) e.guards = labeledList(false);
    if (acceptWord("thm")) e.guardTheorems = labeledList(true);
    if (acceptWord("with")) {
      do {
        e.witnesses.push_back(witness());
      } while (peek().kind == Tok::Ident && !isReservedWord(peek().text));
    }
    if (acceptWord("then") || acceptWord("begin")) {
      do {
        e.actions.push_back(action());
      } while (isName());
    }
    if (acceptWord("hints")) {
      do {
        e.hints.push_back(hint());
      } while (isWord("use") || isWord("split"));
    }
    if (!acceptWord("end")) {
      unknownSection("'end' to close the event");
    }
    return e;
  }

  LabeledPredicate labeled(bool theorem) {
    LabeledPredicate p;
    p.location = peek().location;
    p.label = name("label").name;
    p.theorem = theorem;
    expect(Tok::Colon, "':' after label");
    p.predicate = predicate();
    return p;
  }

  std::vector<LabeledPredicate> labeledList(bool theorem) {
    std::vector<LabeledPredicate> out;
    do {
      const std::size_t start = pos_;
      try {
        out.push_back(labeled(theorem));
      } catch (const ParseError& err) {
        // resume at the next "label:" or section keyword
        diags_->push_back({err.location, err.what(), err.code});
        if (pos_ == start) take();
        while (!is(Tok::End) && !(isName() && peek(1).kind == Tok::Colon) &&
               !(peek().kind == Tok::Ident && isReservedWord(peek().text))) {
          take();
        }
        if (is(Tok::End)) throw Recovered{};
      }
    } while (isName());
    return out;
  }

  Witness witness() {
    Witness w;
    w.location = peek().location;
    if (peek().kind != Tok::Ident || isReservedWord(peek().text)) fail("expected witness subject");
    Token t = take();
    w.subject = Symbol{t.text, t.primed};
    expect(Tok::Colon, "':' after witness subject");
    w.predicate = predicate();
    return w;
  }

  Assignment action() {
    Assignment a;
    a.location = peek().location;
    a.label = name("action label").name;
    expect(Tok::Colon, "':' after action label");
    a.targets.push_back(name("assigned variable").name);
    for (;;) {
      if (accept(Tok::Comma)) {
        a.targets.push_back(name("assigned variable").name);
      } else if (isName()) {
        a.targets.push_back(name().name);
      } else {
        break;
      }
    }
    if (accept(Tok::Becomes)) {
      a.kind = AssignmentKind::Becomes;
    } else if (accept(Tok::BecomesIn)) {
      a.kind = AssignmentKind::BecomesMemberOf;
    } else if (accept(Tok::BecomesSuch)) {
      a.kind = AssignmentKind::BecomesSuchThat;
      a.rhs = predicate();
      return a;
    } else {
      fail("expected ':=', '::' or ':|'");
    }
    if (a.targets.size() != 1) {
      throw ParseError(a.location, "':=' and '::' assign exactly one variable", "syntax");
    }
    a.rhs = expression();
    return a;
  }

  Hint hint() {
    Hint h;
    h.location = peek().location;
    auto bad = [&](const std::string& msg) { fail("malformed hint: " + msg, "malformed-hint"); };
    if (acceptWord("use")) {
      h.kind = HintKind::UseHypothesis;
      if (!isName()) bad("expected hypothesis label after 'use'");
      h.hypothesis = take().text;
    } else {
      expectWord("split");
      h.kind = HintKind::SplitCase;
      if (!acceptWord("case")) bad("expected 'case' after 'split'");
      if (!acceptWord("using")) bad("expected 'using' after 'split case'");
      try {
        h.casePredicate = predicate();
      } catch (const ParseError& e) {
        throw ParseError(e.location, std::string("malformed hint: ") + e.what(), "malformed-hint");
      }
    }
    if (!acceptWord("for")) bad("expected 'for'");
    if (!isName()) bad("expected invariant label after 'for'");
    h.target = take().text;
    return h;
  }

  // ---- formulas ----
  Formula predicate() {
    const Token start = peek();
    Formula f = formula();
    if (!f.isPredicate()) throw ParseError(start.location, "expected a predicate", "syntax");
    return f;
  }

  Formula expression() {
    const Token start = peek();
    Formula f = formula();
    if (f.isPredicate()) throw ParseError(start.location, "expected an expression", "syntax");
    return f;
  }

  Formula requirePredicate(Formula f, const Token& at) const {
    if (!f.isPredicate()) throw ParseError(at.location, "expected a predicate", "syntax");
    return f;
  }
  Formula requireExpression(Formula f, const Token& at) const {
    if (f.isPredicate()) throw ParseError(at.location, "expected an expression", "syntax");
    return f;
  }

  Formula formula() {
    const Token at = peek();
    Formula lhs = implication();
    if (is(Tok::Iff)) {
      take();
      const Token rat = peek();
      Formula rhs = implication();
      if (is(Tok::Iff)) fail("'<=>' is non-associative; add parentheses");
      return Formula::iff(requirePredicate(lhs, at), requirePredicate(rhs, rat));
    }
    return lhs;
  }

  Formula implication() {
    const Token at = peek();
    Formula lhs = disjunction();
    if (is(Tok::Implies)) {
      take();
      const Token rat = peek();
      Formula rhs = implication();
      return Formula::implies(requirePredicate(lhs, at), requirePredicate(rhs, rat));
    }
    return lhs;
  }

  Formula disjunction() {
    const Token at = peek();
    Formula first = conjunction();
    if (!is(Tok::Or)) return first;
    std::vector<Formula> parts{requirePredicate(first, at)};
    while (accept(Tok::Or)) {
      const Token t = peek();
      parts.push_back(requirePredicate(conjunction(), t));
    }
    return Formula::disjunction(std::move(parts));
  }

  Formula conjunction() {
    const Token at = peek();
    Formula first = unaryPredicate();
    if (!is(Tok::And)) return first;
    std::vector<Formula> parts{requirePredicate(first, at)};
    while (accept(Tok::And)) {
      const Token t = peek();
      parts.push_back(requirePredicate(unaryPredicate(), t));
    }
    return Formula::conjunction(std::move(parts));
  }

  Formula unaryPredicate() {
    if (accept(Tok::Not)) {
      const Token t = peek();
      return Formula::negation(requirePredicate(unaryPredicate(), t));
    }
    if (is(Tok::Exists) || is(Tok::Forall)) {
      const Kind k = take().kind == Tok::Exists ? Kind::Exists : Kind::Forall;
      std::vector<Symbol> vars;
      do {
        if (peek().kind != Tok::Ident || isReservedWord(peek().text)) fail("expected bound identifier");
        Token t = take();
        vars.push_back(Symbol{t.text, t.primed});
      } while (accept(Tok::Comma));
      expect(Tok::Dot, "'.' after bound identifiers");
      return Formula::quantifier(k, std::move(vars), predicate());
    }
    return relation();
  }

  static std::optional<CmpOp> comparison(Tok k) {
    switch (k) {
      case Tok::Eq: return CmpOp::Eq;
      case Tok::Ne: return CmpOp::Ne;
      case Tok::Lt: return CmpOp::Lt;
      case Tok::Le: return CmpOp::Le;
      case Tok::Gt: return CmpOp::Gt;
      case Tok::Ge: return CmpOp::Ge;
      default: return std::nullopt;
    }
  }

  Formula relation() {
    const Token at = peek();
    Formula lhs = sum();
    Formula out;
    if (auto op = comparison(peek().kind)) {
      take();
      const Token rat = peek();
      Formula rhs = sum();
      out = Formula::compare(*op, requireScalar(lhs, at), requireScalar(rhs, rat));
    } else if (accept(Tok::In)) {
      const Token rat = peek();
      Formula rhs = sum();
      if (rhs.isPredicate()) throw ParseError(rat.location, "expected a set expression", "syntax");
      out = Formula::member(requireScalar(lhs, at), rhs);
    } else {
      return lhs;
    }
    if (comparison(peek().kind) || is(Tok::In)) fail("comparisons are non-associative; add parentheses");
    return out;
  }

  Formula requireScalar(Formula f, const Token& at) const {
    f = requireExpression(std::move(f), at);
    if (isSetKind(f.kind())) throw ParseError(at.location, "set expression used as a number", "syntax");
    return f;
  }

  Formula sum() {
    const Token at = peek();
    Formula lhs = product();
    while (is(Tok::Plus) || is(Tok::Minus)) {
      const bool plus = take().kind == Tok::Plus;
      const Token rat = peek();
      Formula rhs = requireScalar(product(), rat);
      lhs = requireScalar(lhs, at);
      lhs = plus ? Formula::add(lhs, rhs) : Formula::sub(lhs, rhs);
    }
    return lhs;
  }

  Formula product() {
    const Token at = peek();
    Formula lhs = negation();
    while (accept(Tok::Star)) {
      const Token rat = peek();
      Formula rhs = requireScalar(negation(), rat);
      lhs = Formula::mul(requireScalar(lhs, at), rhs);
    }
    return lhs;
  }

  Formula negation() {
    if (accept(Tok::Minus)) {
      if (is(Tok::Number)) return Formula::literal(-take().number);
      const Token at = peek();
      return Formula::negate(requireScalar(negation(), at));
    }
    return primary();
  }

  Formula primary() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Number: take(); return Formula::literal(t.number);
      case Tok::Error: fail(t.text);
      case Tok::Nat: take(); return Formula::naturals();
      case Tok::Int: take(); return Formula::integers();
      case Tok::LParen: {
        take();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::LBrace: {
        take();
        std::vector<Formula> elems;
        if (!is(Tok::RBrace)) {
          do {
            const Token at = peek();
            elems.push_back(requireScalar(sum(), at));
          } while (accept(Tok::Comma));
        }
        expect(Tok::RBrace, "'}'");
        return Formula::setLiteral(std::move(elems));
      }
      case Tok::Ident:
        if (!t.primed && t.text == "true") {
          take();
          return Formula::truth();
        }
        if (!t.primed && t.text == "false") {
          take();
          return Formula::falsity();
        }
        if (isReservedWord(t.text)) fail("unexpected keyword '" + t.text + "' in formula");
        take();
        return Formula::ident(Symbol{t.text, t.primed});
      default: fail("expected a formula");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<ParseDiagnostic>* diags_ = nullptr;
};

inline std::vector<Token> lex(std::string_view text, std::vector<ParseDiagnostic>& diags) {
  std::vector<LexDiagnostic> lexDiags;
  auto toks = Lexer(text).run(lexDiags);
  for (auto& d : lexDiags) diags.push_back({d.location, d.message, "lexical"});
  return toks;
}

}  // namespace detail

inline ParseOutcome parse(const SourceFile& file) {
  ParseOutcome out;
  auto toks = detail::lex(file.text, out.diagnostics);
  detail::Parser p(std::move(toks));
  std::vector<ParseDiagnostic> diags;
  try {
    out.component = p.component(diags);
  } catch (const detail::Parser::Recovered&) {
    out.component.reset();
  }
  out.diagnostics.insert(out.diagnostics.end(), diags.begin(), diags.end());
  std::stable_sort(out.diagnostics.begin(), out.diagnostics.end(),
                   [](const ParseDiagnostic& a, const ParseDiagnostic& b) {
                     return a.location.before(b.location);
                   });
  if (!out.diagnostics.empty()) out.component.reset();
  return out;
}

inline ParseOutcome parse(std::string_view text) { return parse(SourceFile{"<input>", std::string(text)}); }

// Parses a single formula; throws std::invalid_argument with the first diagnostic.
inline Formula parseFormula(std::string_view text) {
  std::vector<ParseDiagnostic> diags;
  auto toks = detail::lex(text, diags);
  if (!diags.empty()) throw std::invalid_argument(diags.front().message);
  detail::Parser p(std::move(toks));
  try {
    return p.standaloneFormula();
  } catch (const detail::ParseError& e) {
    throw std::invalid_argument(e.what());
  }
}

}  // namespace ebhint
