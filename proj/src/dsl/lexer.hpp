#pragma once

// Shared tokenizer and term-level parsing for the .dom/.pol/.scn readers.

#include <string>
#include <string_view>
#include <vector>

#include "apia/ast.hpp"
#include "apia/diagnostics.hpp"

namespace apia::dsl {

enum class Tok {
  Ident,
  Variable,
  Number,
  LParen,
  RParen,
  Comma,
  Colon,
  Semicolon,
  Plus,
  Minus,
  Eq,
  Ne,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
};

using Statement = std::vector<Token>;

// One statement per line. A line ending in ',', ';', '+', ':' or the keyword
// `if` continues on the next line. A trailing '.' is accepted and dropped.
// Every returned statement ends with a Tok::End token.
std::vector<Statement> split_statements(std::string_view text, std::vector<Diagnostic>& diagnostics);

struct SyntaxError {
  SourceLoc loc;
  std::string message;
};

class Cursor {
 public:
  explicit Cursor(const Statement& tokens) : tokens_(tokens) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == Tok::End; }
  bool accept(Tok kind);
  bool accept_word(std::string_view word);
  bool peek_word(std::string_view word, std::size_t ahead = 0) const;
  const Token& expect(Tok kind, std::string_view what);
  void expect_word(std::string_view word);
  void expect_end();
  [[noreturn]] void fail(const std::string& message) const;

 private:
  const Statement& tokens_;
  std::size_t pos_ = 0;
};

ast::Term parse_term(Cursor& in);
// `-atom` or `atom`.
ast::Literal parse_literal(Cursor& in);
// Comma-separated literals and `X != Y` / `X = Y` comparisons.
std::vector<ast::CondItem> parse_condition(Cursor& in);
std::vector<std::string> parse_name_list(Cursor& in);
// `policy_compliant(lit)` or `lit`.
ast::Goal parse_goal(Cursor& in);
// `name(sort, ...)` or bare `name`; returns the name and fills `sorts`.
std::string parse_signature(Cursor& in, std::vector<std::string>& sorts);

}  // namespace apia::dsl
