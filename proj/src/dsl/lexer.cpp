#include "dsl/lexer.hpp"

#include <cctype>

namespace apia::dsl {
namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool continues(const Statement& line) {
  if (line.empty()) return false;
  const Token& last = line.back();
  switch (last.kind) {
    case Tok::Comma:
    case Tok::Semicolon:
    case Tok::Plus:
    case Tok::Colon:
      return true;
    case Tok::Ident:
      return last.text == "if";
    default:
      return false;
  }
}

}  // namespace

std::vector<Statement> split_statements(std::string_view text, std::vector<Diagnostic>& diagnostics) {
  std::vector<Statement> statements;
  Statement current;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    Statement tokens;
    bool line_ok = true;
    for (std::size_t i = 0; i < line.size();) {
      const char c = line[i];
      const SourceLoc loc{line_no, static_cast<int>(i) + 1};
      if (c == '%') break;
      if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        ++i;
        continue;
      }
      if (is_ident_char(c)) {
        std::size_t j = i;
        while (j < line.size() && is_ident_char(line[j])) ++j;
        std::string word(line.substr(i, j - i));
        Tok kind = Tok::Ident;
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
          kind = Tok::Number;
        } else if (std::isupper(static_cast<unsigned char>(c)) != 0 || c == '_') {
          kind = Tok::Variable;
        }
        tokens.push_back({kind, std::move(word), loc});
        i = j;
        continue;
      }
      Tok kind = Tok::End;
      std::size_t width = 1;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ',': kind = Tok::Comma; break;
        case ':': kind = Tok::Colon; break;
        case ';': kind = Tok::Semicolon; break;
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '=': kind = Tok::Eq; break;
        case '!':
          if (i + 1 < line.size() && line[i + 1] == '=') {
            kind = Tok::Ne;
            width = 2;
          }
          break;
        case '.':
          // Only a statement terminator; anything after it must be a comment.
          kind = Tok::End;
          break;
        default:
          break;
      }
      if (c == '.') {
        std::size_t j = i + 1;
        while (j < line.size() && std::isspace(static_cast<unsigned char>(line[j])) != 0) ++j;
        if (j < line.size() && line[j] != '%') {
          diagnostics.push_back({loc, Severity::Error, "unexpected '.' inside a statement"});
          line_ok = false;
        }
        break;
      }
      if (kind == Tok::End) {
        diagnostics.push_back({loc, Severity::Error, std::string("unexpected character '") + c + "'"});
        line_ok = false;
        break;
      }
      tokens.push_back({kind, std::string(line.substr(i, width)), loc});
      i += width;
    }
    if (!line_ok) {
      current.clear();
    } else {
      current.insert(current.end(), tokens.begin(), tokens.end());
      if (!current.empty() && !continues(current)) {
        const SourceLoc end_loc{line_no, static_cast<int>(line.size()) + 1};
        current.push_back({Tok::End, "", end_loc});
        statements.push_back(std::move(current));
        current.clear();
      }
    }
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  if (!current.empty()) {
    const SourceLoc loc = current.back().loc;
    diagnostics.push_back({loc, Severity::Error, "statement continues past end of file"});
  }
  return statements;
}

const Token& Cursor::peek(std::size_t ahead) const {
  const std::size_t i = pos_ + ahead;
  return i < tokens_.size() ? tokens_[i] : tokens_.back();
}

const Token& Cursor::next() {
  const Token& t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool Cursor::accept(Tok kind) {
  if (peek().kind != kind) return false;
  next();
  return true;
}

bool Cursor::peek_word(std::string_view word, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == Tok::Ident && t.text == word;
}

bool Cursor::accept_word(std::string_view word) {
  if (!peek_word(word)) return false;
  next();
  return true;
}

const Token& Cursor::expect(Tok kind, std::string_view what) {
  if (peek().kind != kind) {
    fail("expected " + std::string(what) + (at_end() ? " at end of statement" : " near '" + peek().text + "'"));
  }
  return next();
}

void Cursor::expect_word(std::string_view word) {
  if (!accept_word(word)) expect(Tok::End, "'" + std::string(word) + "'");
}

void Cursor::expect_end() {
  if (!at_end()) fail("unexpected '" + peek().text + "'");
}

void Cursor::fail(const std::string& message) const { throw SyntaxError{peek().loc, message}; }

ast::Term parse_term(Cursor& in) {
  const Token& head = in.peek();
  ast::Term term;
  term.loc = head.loc;
  if (head.kind == Tok::Variable) {
    term.name = in.next().text;
    term.variable = true;
    return term;
  }
  if (head.kind != Tok::Ident && head.kind != Tok::Number) {
    in.fail(in.at_end() ? "expected a term at end of statement" : "expected a term near '" + head.text + "'");
  }
  term.name = in.next().text;
  if (in.accept(Tok::LParen)) {
    do {
      term.args.push_back(parse_term(in));
    } while (in.accept(Tok::Comma));
    in.expect(Tok::RParen, "')'");
  }
  return term;
}

ast::Literal parse_literal(Cursor& in) {
  ast::Literal literal;
  literal.negated = in.accept(Tok::Minus);
  literal.atom = parse_term(in);
  if (literal.atom.variable) in.fail("a literal cannot be a bare variable");
  return literal;
}

std::vector<ast::CondItem> parse_condition(Cursor& in) {
  std::vector<ast::CondItem> items;
  do {
    if (in.peek().kind != Tok::Minus && (in.peek(1).kind == Tok::Eq || in.peek(1).kind == Tok::Ne)) {
      ast::Comparison cmp;
      cmp.lhs = parse_term(in);
      cmp.op = in.next().kind == Tok::Eq ? ast::CompareOp::Eq : ast::CompareOp::Ne;
      cmp.rhs = parse_term(in);
      if (!cmp.lhs.args.empty() || !cmp.rhs.args.empty()) in.fail("comparisons take variables or constants");
      items.emplace_back(std::move(cmp));
    } else {
      items.emplace_back(parse_literal(in));
    }
  } while (in.accept(Tok::Comma));
  return items;
}

std::vector<std::string> parse_name_list(Cursor& in) {
  std::vector<std::string> names;
  do {
    const Token& t = in.peek();
    if (t.kind != Tok::Ident && t.kind != Tok::Number) in.fail("expected a constant name");
    names.push_back(in.next().text);
  } while (in.accept(Tok::Comma));
  return names;
}

std::string parse_signature(Cursor& in, std::vector<std::string>& sorts) {
  std::string name = in.expect(Tok::Ident, "a predicate name").text;
  if (in.accept(Tok::LParen)) {
    do {
      sorts.push_back(in.expect(Tok::Ident, "a sort name").text);
    } while (in.accept(Tok::Comma));
    in.expect(Tok::RParen, "')'");
  }
  return name;
}

ast::Goal parse_goal(Cursor& in) {
  ast::Goal goal;
  if (in.peek_word("policy_compliant") && in.peek(1).kind == Tok::LParen) {
    in.next();
    in.next();
    goal.policy_compliant = true;
    goal.literal = parse_literal(in);
    in.expect(Tok::RParen, "')'");
  } else {
    goal.literal = parse_literal(in);
  }
  return goal;
}

}  // namespace apia::dsl
