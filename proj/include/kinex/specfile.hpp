// The .mechx platform description format.
//
//   file   = { line } ;
//   line   = meta | group | comment | blank ;
//   meta   = "platform" STRING | "year" INT [ "estimated" ] | "kind" ( "artificial" | "natural" )
//          | "processor" [ STRING ] "transistors" NUMBER | "note" STRING
//          | "neurons" INT | "model" STRING | "stub" STRING ;
//   group  = "group" STRING "count" INT levels { "tag" STRING } ;
//   levels = "states" INT | "range" NUMBER NUMBER "resolution" NUMBER [ "units" STRING ] ;
//
// '#' starts a comment. STRING is double-quoted with backslash escapes.
// LF and CRLF are accepted; LF is emitted.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kinex/core_model.hpp"
#include "kinex/detail/text.hpp"
#include "kinex/errors.hpp"
#include "kinex/expressivity.hpp"

namespace kinex {

struct PlatformDocument {
  Platform platform;
  /// Keys: "platform", "kind", "year", "processor", "neurons", "model", "stub",
  /// "note:<index>", "group:<label>".
  std::map<std::string, int> source_lines;
  /// The transistor count was written in scientific notation.
  bool transistors_scientific = false;

  int line_of(const std::string& key) const {
    auto it = source_lines.find(key);
    return it == source_lines.end() ? 0 : it->second;
  }
};

struct ParseOptions {
  Strictness strictness = Strictness::strict;
};

namespace detail {

/// Exact non-negative integer value of a decimal/scientific literal such as
/// "1.462E+09"; nullopt when it is not an integer or does not fit 64 bits.
inline std::optional<std::uint64_t> exact_integer(std::string_view s) {
  if (!is_number_literal(s)) return std::nullopt;
  if (s[0] == '+') s.remove_prefix(1);
  if (s[0] == '-') return std::nullopt;
  std::string digits;
  std::int64_t exponent = 0;
  std::size_t i = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') digits += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      digits += s[i++];
      --exponent;
    }
  }
  if (i < s.size()) {
    auto e = parse_int(s.substr(i + 1));
    if (!e || *e > 1000 || *e < -1000) return std::nullopt;
    exponent += *e;
  }
  BigInt value(digits.empty() ? std::string("0") : digits);
  if (exponent >= 0) {
    value *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent));
  } else {
    BigInt div = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-exponent));
    if (value % div != 0) return std::nullopt;
    value /= div;
  }
  if (value > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return value.convert_to<std::uint64_t>();
}

class LineCursor {
 public:
  LineCursor(const std::vector<Token>& tokens, int line) : tokens_(tokens), line_(line) {}

  bool at_end() const { return pos_ >= tokens_.size(); }
  bool peek_word(std::string_view w) const { return !at_end() && tokens_[pos_].is_word(w); }
  bool peek_string() const { return !at_end() && tokens_[pos_].kind == Token::Kind::string; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(ParseErrorKind::syntax, line_, message);
  }

  void expect_word(std::string_view w) {
    if (!peek_word(w)) fail("expected '" + std::string(w) + "'" + found());
    ++pos_;
  }

  std::string expect_string(std::string_view what) {
    if (!peek_string()) fail("expected quoted " + std::string(what) + found());
    return tokens_[pos_++].text;
  }

  std::string expect_bare(std::string_view what) {
    if (at_end() || tokens_[pos_].kind != Token::Kind::word) fail("expected " + std::string(what) + found());
    return tokens_[pos_++].text;
  }

  double expect_number(std::string_view what) {
    std::string text = expect_bare(what);
    auto v = parse_double(text);
    if (!v) fail("expected number for " + std::string(what) + ", got '" + text + "'");
    return *v;
  }

  std::int64_t expect_int(std::string_view what) {
    std::string text = expect_bare(what);
    auto v = parse_int(text);
    if (!v) fail("expected integer for " + std::string(what) + ", got '" + text + "'");
    return *v;
  }

  std::uint64_t expect_positive(std::string_view what) {
    std::string text = expect_bare(what);
    auto v = parse_uint(text);
    if (!v) fail("expected positive integer for " + std::string(what) + ", got '" + text + "'");
    if (*v == 0) throw ParseError(ParseErrorKind::invalid_value, line_, std::string(what) + " must be positive");
    return *v;
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing token '" + tokens_[pos_].text + "'");
  }

  int line() const { return line_; }

 private:
  std::string found() const {
    if (at_end()) return ", found end of line";
    return ", found '" + tokens_[pos_].text + "'";
  }

  const std::vector<Token>& tokens_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline PlatformDocument parse_platform(std::string_view text, ParseOptions options = {}) {
  using detail::LineCursor;
  std::optional<std::string> name;
  PlatformKind kind = PlatformKind::artificial;
  PlatformMeta meta;
  std::vector<DofGroup> groups;
  std::map<std::string, int> lines;
  bool scientific = false;

  auto once = [&](const std::string& key, int line) {
    if (lines.count(key)) {
      throw ParseError(ParseErrorKind::syntax, line,
                       "duplicate '" + key + "' statement (first on line " +
                           std::to_string(lines[key]) + ")");
    }
    lines[key] = line;
  };

  int line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::vector<detail::Token> tokens;
    try {
      tokens = detail::tokenize_line(raw);
    } catch (const detail::LexError& e) {
      throw ParseError(ParseErrorKind::syntax, line_no, e.what());
    }
    if (tokens.empty()) continue;
    LineCursor cur(tokens, line_no);
    if (tokens[0].kind != detail::Token::Kind::word) cur.fail("expected a keyword, found a string");
    const std::string keyword = tokens[0].text;
    cur.expect_word(keyword);

    if (keyword == "platform") {
      once("platform", line_no);
      name = cur.expect_string("platform name");
      if (name->empty()) throw ParseError(ParseErrorKind::missing_platform_name, line_no, "platform name is empty");
    } else if (keyword == "kind") {
      once("kind", line_no);
      if (cur.peek_word("artificial")) {
        kind = PlatformKind::artificial;
      } else if (cur.peek_word("natural")) {
        kind = PlatformKind::natural;
      } else {
        cur.fail("kind must be 'artificial' or 'natural'");
      }
      cur.expect_bare("kind");
    } else if (keyword == "year") {
      once("year", line_no);
      auto year = cur.expect_int("year");
      if (year < -100000 || year > 100000) throw ParseError(ParseErrorKind::invalid_value, line_no, "year out of range");
      meta.year = static_cast<int>(year);
      if (cur.peek_word("estimated")) {
        cur.expect_word("estimated");
        meta.year_estimated = true;
      }
    } else if (keyword == "processor") {
      once("processor", line_no);
      ProcessorSpec proc;
      if (cur.peek_string()) proc.name = cur.expect_string("processor name");
      cur.expect_word("transistors");
      std::string literal = cur.expect_bare("transistor count");
      if (!detail::is_number_literal(literal)) cur.fail("expected number for transistor count, got '" + literal + "'");
      auto t = detail::exact_integer(literal);
      if (!t)
        throw ParseError(ParseErrorKind::invalid_value, line_no,
                         "transistor count must be a non-negative integer, got '" + literal + "'");
      proc.transistors = *t;
      scientific = literal.find_first_of("eE") != std::string::npos;
      meta.processor = proc;
    } else if (keyword == "note") {
      lines["note:" + std::to_string(meta.notes.size())] = line_no;
      meta.notes.push_back(cur.expect_string("note text"));
    } else if (keyword == "neurons") {
      once("neurons", line_no);
      meta.neurons = cur.expect_positive("neuron count");
    } else if (keyword == "model") {
      once("model", line_no);
      meta.model = cur.expect_string("model name");
    } else if (keyword == "stub") {
      once("stub", line_no);
      meta.stub_reason = cur.expect_string("stub reason");
    } else if (keyword == "group") {
      std::string label = cur.expect_string("group label");
      cur.expect_word("count");
      std::uint64_t count = cur.expect_positive("group count");
      LevelsSpec levels;
      if (cur.peek_word("states")) {
        cur.expect_word("states");
        levels = DiscreteStates{cur.expect_positive("state count")};
      } else if (cur.peek_word("range")) {
        cur.expect_word("range");
        ContinuousRange r;
        r.min = cur.expect_number("range minimum");
        r.max = cur.expect_number("range maximum");
        cur.expect_word("resolution");
        r.resolution = cur.expect_number("resolution");
        if (cur.peek_word("units")) {
          cur.expect_word("units");
          r.units = cur.expect_string("units");
        }
        levels = r;
      } else {
        cur.fail("expected 'states' or 'range'");
      }
      std::set<std::string> tags;
      while (cur.peek_word("tag")) {
        cur.expect_word("tag");
        tags.insert(cur.expect_string("tag"));
      }
      cur.expect_end();
      const std::string key = "group:" + label;
      if (lines.count(key))
        throw ParseError(ParseErrorKind::duplicate_group_label, line_no,
                         "duplicate group label '" + label + "' (first on line " +
                             std::to_string(lines[key]) + ")");
      try {
        DofGroup group(label, count, std::move(levels), std::move(tags));
        if (options.strictness == Strictness::strict) resolve_levels(group, Strictness::strict);
        groups.push_back(std::move(group));
      } catch (const NonIntegralSpan& e) {
        throw ParseError(ParseErrorKind::non_integral_span, line_no, e.what());
      } catch (const ModelError& e) {
        throw ParseError(ParseErrorKind::invalid_value, line_no, e.what());
      }
      lines[key] = line_no;
      continue;
    } else {
      cur.fail("unknown keyword '" + keyword + "'");
    }
    cur.expect_end();
  }

  if (!name) throw ParseError(ParseErrorKind::missing_platform_name, 0, "missing 'platform' statement");
  PlatformDocument doc{Platform(*name, kind, std::move(groups), std::move(meta)), std::move(lines), scientific};
  return doc;
}

/// Canonical text: metadata first, then one line per group in stored order.
inline std::string serialize_platform(const Platform& p) {
  using detail::quote;
  using detail::shortest;
  std::string out;
  const auto& m = p.meta();
  out += "platform " + quote(p.name()) + "\n";
  out += std::string("kind ") + to_string(p.kind()) + "\n";
  if (m.year) out += "year " + std::to_string(*m.year) + (m.year_estimated ? " estimated" : "") + "\n";
  if (m.neurons) out += "neurons " + std::to_string(*m.neurons) + "\n";
  if (m.model) out += "model " + quote(*m.model) + "\n";
  if (m.stub_reason) out += "stub " + quote(*m.stub_reason) + "\n";
  if (m.processor) {
    out += "processor ";
    if (!m.processor->name.empty()) out += quote(m.processor->name) + " ";
    out += "transistors " + std::to_string(m.processor->transistors) + "\n";
  }
  for (const auto& n : m.notes) out += "note " + quote(n) + "\n";
  for (const auto& g : p.groups()) {
    out += "group " + quote(g.label()) + " count " + std::to_string(g.multiplicity());
    if (const auto* d = std::get_if<DiscreteStates>(&g.levels())) {
      out += " states " + std::to_string(d->count);
    } else {
      const auto& r = std::get<ContinuousRange>(g.levels());
      out += " range " + shortest(r.min) + " " + shortest(r.max) + " resolution " + shortest(r.resolution);
      if (!r.units.empty()) out += " units " + quote(r.units);
    }
    for (const auto& t : g.tags()) out += " tag " + quote(t);
    out += "\n";
  }
  return out;
}

enum class Severity { error, warning, note };

inline const char* to_string(Severity s) {
  switch (s) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    case Severity::note: return "note";
  }
  return "?";
}

struct Diagnostic {
  Severity severity;
  int line;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Severity::error) return true;
  return false;
}

/// Checks that go beyond the grammar. Non-integral spans are warnings in
/// lenient mode and errors in strict mode.
inline std::vector<Diagnostic> validate(const PlatformDocument& doc, Strictness mode = Strictness::lenient) {
  std::vector<Diagnostic> out;
  const Platform& p = doc.platform;
  for (const auto& g : p.groups()) {
    const auto* r = std::get_if<ContinuousRange>(&g.levels());
    if (r && !is_integral_span(*r)) {
      out.push_back({mode == Strictness::strict ? Severity::error : Severity::warning,
                     doc.line_of("group:" + g.label()),
                     "NonIntegralSpan: group '" + g.label() + "' span/resolution = " +
                         detail::shortest(r->span_ratio()) + " is not an integer; rounds to " +
                         std::to_string(resolve_levels(g, Strictness::lenient))});
    }
  }
  if (p.kind() == PlatformKind::natural && p.processor()) {
    out.push_back({Severity::warning, doc.line_of("processor"),
                   "natural platform '" + p.name() + "' declares a processor"});
  }
  if (p.processor() && doc.transistors_scientific) {
    out.push_back({Severity::warning, doc.line_of("processor"),
                   "transistor count written in scientific notation; the stored value " +
                       std::to_string(p.processor()->transistors) + " is likely rounded"});
  }
  if (p.kind() == PlatformKind::artificial && !p.processor() && p.computable()) {
    out.push_back({Severity::note, doc.line_of("platform"),
                   "artificial platform '" + p.name() + "' has no processor; computational capacity unavailable"});
  }
  if (!p.computable() && !p.groups().empty()) {
    out.push_back({Severity::warning, doc.line_of("stub"),
                   "stub platform declares groups; they are ignored"});
  }
  return out;
}

/// Parses leniently and validates; parse failures become a single error diagnostic.
inline std::vector<Diagnostic> check_text(std::string_view text, Strictness mode = Strictness::lenient) {
  try {
    auto doc = parse_platform(text, {Strictness::lenient});
    return validate(doc, mode);
  } catch (const ParseError& e) {
    return {{Severity::error, e.line(), e.detail()}};
  }
}

}  // namespace kinex
