#include "adaimpact/lexer.hpp"

#include "adaimpact/error.hpp"

#include <algorithm>
#include <array>

namespace adaimpact {

namespace {

constexpr std::array<std::string_view, 74> kReserved = {
    "abort",     "abs",       "abstract",  "accept",    "access",    "aliased",
    "all",       "and",       "array",     "at",        "begin",     "body",
    "case",      "constant",  "declare",   "delay",     "delta",     "digits",
    "do",        "else",      "elsif",     "end",       "entry",     "exception",
    "exit",      "for",       "function",  "generic",   "goto",      "if",
    "in",        "interface", "is",        "limited",   "loop",      "mod",
    "new",       "not",       "null",      "of",        "or",        "others",
    "out",       "overriding", "package",  "parallel",  "pragma",    "private",
    "procedure", "protected", "raise",     "range",     "record",    "rem",
    "renames",   "requeue",   "return",    "reverse",   "select",    "separate",
    "some",      "subtype",   "synchronized", "tagged", "task",      "terminate",
    "then",      "type",      "until",     "use",       "when",      "while",
    "with",      "xor",
};

bool is_letter(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(unsigned char c) { return is_letter(c) || is_digit(c) || c == '_'; }
bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
  });
  return out;
}

// Returns the offset of the first byte that is not part of a well-formed
// UTF-8 sequence, or npos.
std::size_t first_invalid_utf8(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    unsigned char lo = 0x80, hi = 0xBF;
    if (c < 0x80) {
      ++i;
      continue;
    } else if (c >= 0xC2 && c <= 0xDF) {
      extra = 1;
    } else if (c >= 0xE0 && c <= 0xEF) {
      extra = 2;
      if (c == 0xE0) lo = 0xA0;
      if (c == 0xED) hi = 0x9F;
    } else if (c >= 0xF0 && c <= 0xF4) {
      extra = 3;
      if (c == 0xF0) lo = 0x90;
      if (c == 0xF4) hi = 0x8F;
    } else {
      return i;
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      if (i + k >= n) return i;
      const auto cc = static_cast<unsigned char>(text[i + k]);
      const unsigned char l = k == 1 ? lo : 0x80;
      const unsigned char h = k == 1 ? hi : 0xBF;
      if (cc < l || cc > h) return i;
    }
    i += extra + 1;
  }
  return std::string_view::npos;
}

int line_at(std::string_view text, std::size_t offset) {
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// A tick after a name or a closing paren is an attribute / qualification
// mark, never the start of a character literal.
bool tick_allowed_as_char(const std::vector<Token> &tokens) {
  if (tokens.empty()) return true;
  const Token &prev = tokens.back();
  switch (prev.kind) {
  case TokenKind::Identifier:
    return is_reserved_word(prev.text) && prev.text != "all";
  case TokenKind::Delimiter:
    return prev.text != ")";
  default:
    return false;
  }
}

} // namespace

bool is_reserved_word(std::string_view word) {
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

std::vector<Token> lex(std::string_view text, std::string_view path) {
  if (auto bad = first_invalid_utf8(text); bad != std::string_view::npos)
    throw ParseError(std::string(path), line_at(text, bad), "invalid UTF-8 byte sequence");

  std::vector<Token> tokens;
  const std::size_t n = text.size();
  std::size_t i = 0;
  int line = 1;

  auto push = [&](TokenKind kind, std::string tok_text, std::size_t start) {
    tokens.push_back(Token{kind, std::move(tok_text), start, i - start, line});
  };

  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < n && text[i + 1] == '-') {
      while (i < n && text[i] != '\n')
        ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_letter(c)) {
      while (i < n && is_ident_char(static_cast<unsigned char>(text[i])))
        ++i;
      push(TokenKind::Identifier, lower(text.substr(start, i - start)), start);
      continue;
    }
    if (is_digit(c)) {
      auto digits = [&] {
        while (i < n && (is_digit(static_cast<unsigned char>(text[i])) || text[i] == '_'))
          ++i;
      };
      digits();
      if (i < n && text[i] == '#') {
        ++i;
        while (i < n && text[i] != '#' && text[i] != '\n')
          ++i;
        if (i < n && text[i] == '#') ++i;
      } else if (i + 1 < n && text[i] == '.' && is_digit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
        digits();
      }
      if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (text[j] == '+' || text[j] == '-')) ++j;
        if (j < n && is_digit(static_cast<unsigned char>(text[j]))) {
          i = j;
          digits();
        }
      }
      push(TokenKind::Number, lower(text.substr(start, i - start)), start);
      continue;
    }
    if (c == '"') {
      ++i;
      bool closed = false;
      while (i < n && text[i] != '\n') {
        if (text[i] == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        ++i;
      }
      if (!closed)
        throw ParseError(std::string(path), line, "unterminated string literal");
      push(TokenKind::String, std::string(text.substr(start, i - start)), start);
      continue;
    }
    if (c == '\'' && i + 2 < n && text[i + 2] == '\'' && tick_allowed_as_char(tokens)) {
      i += 3;
      push(TokenKind::Character, std::string(text.substr(start, 3)), start);
      continue;
    }
    static constexpr std::array<std::string_view, 10> kCompound = {
        "=>", "..", "**", ":=", "/=", ">=", "<=", "<<", ">>", "<>"};
    if (i + 1 < n) {
      const auto two = text.substr(i, 2);
      if (std::find(kCompound.begin(), kCompound.end(), two) != kCompound.end()) {
        i += 2;
        push(TokenKind::Delimiter, std::string(two), start);
        continue;
      }
    }
    // Anything else is a one-character delimiter. Characters outside Ada's
    // delimiter set are kept rather than rejected; they only feed hashes.
    ++i;
    push(TokenKind::Delimiter, std::string(1, static_cast<char>(c)), start);
  }
  return tokens;
}

} // namespace adaimpact
