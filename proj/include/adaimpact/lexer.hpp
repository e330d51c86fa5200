#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace adaimpact {

enum class TokenKind {
  Identifier, // includes reserved words; text is lowercased
  Number,     // text is lowercased (based literals, exponents)
  String,     // text verbatim, quotes included
  Character,  // text verbatim, quotes included
  Delimiter,
};

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset = 0; // byte offset of the first character
  std::size_t length = 0; // byte length in the source
  int line = 1;

  bool is(std::string_view s) const {
    return kind == TokenKind::Identifier || kind == TokenKind::Delimiter
               ? text == s
               : false;
  }
};

bool is_reserved_word(std::string_view lowercase_word);

/// Tokenizes Ada source. Comments and whitespace are dropped; identifiers
/// and numeric literals are lowercased. Throws ParseError on invalid UTF-8
/// and unterminated string literals.
std::vector<Token> lex(std::string_view text, std::string_view path = "<input>");

} // namespace adaimpact
