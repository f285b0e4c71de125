#pragma once

// Tokenizer for .ebh model files. ASCII operators are canonical; the usual
// Unicode mathematical symbols are accepted as aliases.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ebhint/model.hpp"

namespace ebhint {

enum class Tok {
  Ident,
  Number,
  Colon,         // :
  Becomes,       // :=
  BecomesIn,     // ::
  BecomesSuch,   // :|
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Dot,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  Star,
  And,
  Or,
  Not,
  Implies,
  Iff,
  In,
  Nat,
  Int,
  Exists,
  Forall,
  End,
  Error,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier name (without prime) or raw text
  bool primed = false;
  std::int64_t number = 0;
  SourceLocation location;
};

struct LexDiagnostic {
  SourceLocation location;
  std::string message;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run(std::vector<LexDiagnostic>& diags) {
    std::vector<Token> out;
    for (;;) {
      skipSpaceAndComments();
      Token t;
      t.location = {line_, col_};
      if (pos_ >= text_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      if (!next(t)) {
        diags.push_back({t.location, "unexpected character '" + t.text + "'"});
        continue;
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool startsWith(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void advance(std::size_t bytes) {
    for (std::size_t i = 0; i < bytes && pos_ < text_.size(); ++i, ++pos_) {
      const unsigned char c = static_cast<unsigned char>(text_[pos_]);
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void skipSpaceAndComments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
      } else if (startsWith("//")) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else {
        return;
      }
    }
  }

  bool symbol(Token& t) {
    struct Entry {
      std::string_view text;
      Tok kind;
    };
    // Longest spellings first where prefixes overlap.
    static const Entry table[] = {
        {"<=>", Tok::Iff},      {":∈", Tok::BecomesIn}, {":∣", Tok::BecomesSuch},
        {":=", Tok::Becomes},   {"::", Tok::BecomesIn}, {":|", Tok::BecomesSuch},
        {"=>", Tok::Implies},   {"<=", Tok::Le},        {">=", Tok::Ge},
        {"/=", Tok::Ne},        {"≔", Tok::Becomes},    {"⇔", Tok::Iff},
        {"⇒", Tok::Implies},    {"≤", Tok::Le},         {"≥", Tok::Ge},
        {"≠", Tok::Ne},         {"∧", Tok::And},        {"∨", Tok::Or},
        {"¬", Tok::Not},        {"∈", Tok::In},         {"ℕ", Tok::Nat},
        {"ℤ", Tok::Int},        {"∃", Tok::Exists},     {"∀", Tok::Forall},
        {"·", Tok::Dot},        {"−", Tok::Minus},      {":", Tok::Colon},
        {"(", Tok::LParen},     {")", Tok::RParen},     {"{", Tok::LBrace},
        {"}", Tok::RBrace},     {",", Tok::Comma},      {".", Tok::Dot},
        {"=", Tok::Eq},         {"<", Tok::Lt},         {">", Tok::Gt},
        {"+", Tok::Plus},       {"-", Tok::Minus},      {"*", Tok::Star},
        {"&", Tok::And},
    };
    for (const auto& e : table) {
      if (startsWith(e.text)) {
        t.kind = e.kind;
        t.text = std::string(e.text);
        advance(e.text.size());
        return true;
      }
    }
    return false;
  }

  bool next(Token& t) {
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
        ++end;
      }
      t.text = std::string(text_.substr(pos_, end - pos_));
      advance(end - pos_);
      if (startsWith("'")) {
        t.primed = true;
        advance(1);
      } else if (startsWith("′")) {
        t.primed = true;
        advance(std::string_view("′").size());
      }
      t.kind = keywordToken(t.text);
      return true;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      std::int64_t v = 0;
      bool overflow = false;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) {
        overflow = overflow || __builtin_mul_overflow(v, 10, &v) ||
                   __builtin_add_overflow(v, text_[end] - '0', &v);
        ++end;
      }
      t.text = std::string(text_.substr(pos_, end - pos_));
      advance(end - pos_);
      if (overflow) {
        t.kind = Tok::Error;
        t.text = "integer literal out of range: " + t.text;
        return true;
      }
      t.kind = Tok::Number;
      t.number = v;
      return true;
    }
    if (symbol(t)) return true;
    // one UTF-8 code point
    std::size_t len = 1;
    const unsigned char u = static_cast<unsigned char>(c);
    if (u >= 0xF0) {
      len = 4;
    } else if (u >= 0xE0) {
      len = 3;
    } else if (u >= 0xC0) {
      len = 2;
    }
    t.text = std::string(text_.substr(pos_, len));
    advance(len);
    return false;
  }

  static Tok keywordToken(const std::string& s) {
    if (s == "or") return Tok::Or;
    if (s == "not") return Tok::Not;
    if (s == "in") return Tok::In;
    if (s == "NAT") return Tok::Nat;
    if (s == "INT") return Tok::Int;
    if (s == "exists") return Tok::Exists;
    if (s == "forall") return Tok::Forall;
    return Tok::Ident;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace ebhint
