// Line-oriented lexing and number formatting shared by the .mechx and .aem readers.
#pragma once

#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace kinex::detail {

struct Token {
  enum class Kind { word, string };
  Kind kind;
  std::string text;

  bool is_word(std::string_view w) const { return kind == Kind::word && text == w; }
};

/// Raised by tokenize_line; the caller attaches the line number.
class LexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Splits on LF, stripping one trailing CR per line. A final empty line after
/// a terminating LF is not reported.
inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

/// Whitespace-separated words and double-quoted strings; '#' outside a string
/// starts a comment.
inline std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (c == '"') {
      std::string value;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        char d = line[i++];
        if (d == '"') {
          closed = true;
          break;
        }
        if (d == '\\') {
          if (i >= line.size()) throw LexError("dangling backslash in string");
          char e = line[i++];
          switch (e) {
            case '"': value += '"'; break;
            case '\\': value += '\\'; break;
            case 'n': value += '\n'; break;
            case 't': value += '\t'; break;
            default: throw LexError(std::string("unknown escape \\") + e);
          }
          continue;
        }
        value += d;
      }
      if (!closed) throw LexError("unterminated string");
      if (i < line.size() && !is_space(line[i]) && line[i] != '#')
        throw LexError("string must be followed by whitespace");
      tokens.push_back({Token::Kind::string, std::move(value)});
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i]) && line[i] != '#' && line[i] != '"') ++i;
    if (i < line.size() && line[i] == '"') throw LexError("quote inside bare word");
    tokens.push_back({Token::Kind::word, std::string(line.substr(start, i - start))});
  }
  return tokens;
}

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

/// Decimal or scientific notation: [+-] digits [. digits] [(e|E) [+-] digits],
/// where either side of the point may be empty but not both.
inline bool is_number_literal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
  }
  if (digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++exp_digits;
    if (exp_digits == 0) return false;
  }
  return i == s.size();
}

inline bool is_int_literal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

inline std::optional<double> parse_double(std::string_view s) {
  if (!is_number_literal(s)) return std::nullopt;
  std::string buf(s);
  // from_chars rejects a leading '+' and a bare leading '.'
  if (!buf.empty() && buf[0] == '+') buf.erase(0, 1);
  std::size_t sign = (!buf.empty() && buf[0] == '-') ? 1 : 0;
  if (buf.size() > sign && buf[sign] == '.') buf.insert(sign, "0");
  double value = 0;
  auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc() || ptr != buf.data() + buf.size()) return std::nullopt;
  return value;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
  if (!is_int_literal(s)) return std::nullopt;
  if (s[0] == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

inline std::optional<std::uint64_t> parse_uint(std::string_view s) {
  if (!is_int_literal(s) || s[0] == '-') return std::nullopt;
  if (s[0] == '+') s.remove_prefix(1);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

/// Shortest decimal that parses back to the same double.
inline std::string shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

inline std::string fixed(double value, int decimals) {
  char buf[128];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  std::string out(buf, ptr);
  if (out == "-0" || out.rfind("-0.", 0) == 0) {
    if (out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  }
  return out;
}

}  // namespace kinex::detail
