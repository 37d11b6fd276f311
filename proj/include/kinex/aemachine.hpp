// Turing a-machines and their mechanization twins.
//
// A machine reads the cell under its head, and a partial transition table
// decides what to write, which state to enter and whether to move the head
// left, stay, or move right. The tape is one-way infinite from cell 1; a left
// move at cell 1 leaves the head where it is. A machine halts when no
// transition is defined for its (state, scanned symbol) pair.
//
// A mechanization machine is the same structure read physically: symbols are
// motion primitives, the tape is a discretized workspace. to_mechanization()
// relabels a computation machine through a pair of bijections, and the two
// machines then produce traces that correspond step for step.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kinex/detail/text.hpp"
#include "kinex/errors.hpp"

namespace kinex::aem {

enum class Flavor { computation, mechanization };

inline const char* to_string(Flavor f) {
  return f == Flavor::computation ? "computation" : "mechanization";
}

enum class Move : int { left = -1, stay = 0, right = 1 };

inline char move_letter(Move m) {
  switch (m) {
    case Move::left: return 'L';
    case Move::stay: return 'S';
    case Move::right: return 'R';
  }
  return '?';
}

struct Rule {
  std::string state;
  std::string read;
  std::string next;
  std::string write;
  Move move = Move::stay;

  friend bool operator==(const Rule&, const Rule&) = default;
};

class MachineError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonBijectiveMap : public MachineError {
 public:
  using MachineError::MachineError;
};

class BlankNotPreserved : public MachineError {
 public:
  using MachineError::MachineError;
};

class UndeclaredSymbolInTape : public MachineError {
 public:
  using MachineError::MachineError;
};

/// Sparse tape: cell index (>= 1) -> symbol. Blank cells are absent.
using Tape = std::map<std::int64_t, std::string>;

class Machine {
 public:
  /// `symbols` must contain `blank`; order of `states` and `symbols` is kept.
  Machine(Flavor flavor, std::vector<std::string> states, std::vector<std::string> symbols,
          std::string blank, std::vector<Rule> rules, std::string initial_state)
      : flavor_(flavor),
        states_(std::move(states)),
        symbols_(std::move(symbols)),
        blank_(std::move(blank)),
        initial_(std::move(initial_state)) {
    if (states_.empty()) throw MachineError("machine needs at least one state");
    for (std::size_t i = 0; i < states_.size(); ++i)
      if (!state_ix_.emplace(states_[i], static_cast<int>(i)).second)
        throw MachineError("duplicate state '" + states_[i] + "'");
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (!symbol_ix_.emplace(symbols_[i], static_cast<int>(i)).second)
        throw MachineError("duplicate symbol '" + symbols_[i] + "'");
    if (!symbol_ix_.count(blank_)) throw MachineError("blank symbol '" + blank_ + "' is not declared");
    if (!state_ix_.count(initial_)) throw MachineError("initial state '" + initial_ + "' is not declared");
    table_.assign(states_.size() * symbols_.size(), std::nullopt);
    for (const auto& r : rules) {
      int q = require_state(r.state), s = require_symbol(r.read);
      int nq = require_state(r.next), ws = require_symbol(r.write);
      auto& slot = table_[cell(q, s)];
      if (slot)
        throw MachineError("nondeterministic: two transitions for (" + r.state + ", " + r.read + ")");
      slot = Compiled{nq, ws, r.move};
    }
  }

  Flavor flavor() const noexcept { return flavor_; }
  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& blank() const noexcept { return blank_; }
  const std::string& initial_state() const noexcept { return initial_; }

  bool has_state(const std::string& s) const { return state_ix_.count(s) != 0; }
  bool has_symbol(const std::string& s) const { return symbol_ix_.count(s) != 0; }

  std::optional<Rule> find_rule(const std::string& state, const std::string& read) const {
    auto q = state_ix_.find(state);
    auto s = symbol_ix_.find(read);
    if (q == state_ix_.end() || s == symbol_ix_.end()) return std::nullopt;
    const auto& slot = table_[cell(q->second, s->second)];
    if (!slot) return std::nullopt;
    return Rule{state, read, states_[slot->next], symbols_[slot->write], slot->move};
  }

  /// Rules in (state, symbol) declaration order.
  std::vector<Rule> rules() const {
    std::vector<Rule> out;
    for (std::size_t q = 0; q < states_.size(); ++q)
      for (std::size_t s = 0; s < symbols_.size(); ++s)
        if (const auto& slot = table_[cell(static_cast<int>(q), static_cast<int>(s))])
          out.push_back({states_[q], symbols_[s], states_[slot->next], symbols_[slot->write], slot->move});
    return out;
  }

  friend bool operator==(const Machine& a, const Machine& b) {
    return a.flavor_ == b.flavor_ && a.states_ == b.states_ && a.symbols_ == b.symbols_ &&
           a.blank_ == b.blank_ && a.initial_ == b.initial_ && a.rules() == b.rules();
  }

 private:
  struct Compiled {
    int next;
    int write;
    Move move;
  };

  friend class Runner;

  std::size_t cell(int q, int s) const {
    return static_cast<std::size_t>(q) * symbols_.size() + static_cast<std::size_t>(s);
  }
  int require_state(const std::string& s) const {
    auto it = state_ix_.find(s);
    if (it == state_ix_.end()) throw MachineError("transition references undeclared state '" + s + "'");
    return it->second;
  }
  int require_symbol(const std::string& s) const {
    auto it = symbol_ix_.find(s);
    if (it == symbol_ix_.end()) throw MachineError("transition references undeclared symbol '" + s + "'");
    return it->second;
  }

  Flavor flavor_;
  std::vector<std::string> states_;
  std::vector<std::string> symbols_;
  std::string blank_;
  std::string initial_;
  std::unordered_map<std::string, int> state_ix_;
  std::unordered_map<std::string, int> symbol_ix_;
  std::vector<std::optional<Compiled>> table_;
};

struct MachineConfig {
  Tape cells;
  std::int64_t head = 1;
  std::string state;
  std::uint64_t step_count = 0;

  friend bool operator==(const MachineConfig&, const MachineConfig&) = default;
};

struct TraceEntry {
  std::string state;
  std::int64_t head = 1;
  std::string read;
  std::string written;
  Move move = Move::stay;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

enum class Outcome { halted, budget_exhausted };

inline const char* to_string(Outcome o) { return o == Outcome::halted ? "halted" : "budget_exhausted"; }

struct RunResult {
  Outcome outcome = Outcome::halted;
  MachineConfig final;
  std::optional<std::vector<TraceEntry>> trace;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// One application of the transition table; nullopt when the machine halts.
inline std::optional<MachineConfig> step(const Machine& machine, const MachineConfig& config) {
  auto it = config.cells.find(config.head);
  const std::string& read = it == config.cells.end() ? machine.blank() : it->second;
  auto rule = machine.find_rule(config.state, read);
  if (!rule) return std::nullopt;
  MachineConfig next = config;
  if (rule->write == machine.blank())
    next.cells.erase(config.head);
  else
    next.cells[config.head] = rule->write;
  next.state = rule->next;
  next.head = std::max<std::int64_t>(1, config.head + static_cast<int>(rule->move));
  ++next.step_count;
  return next;
}

/// Index-based stepping loop used by run(); semantics match step().
class Runner {
 public:
  static RunResult run(const Machine& m, const Tape& initial, std::uint64_t max_steps, bool trace) {
    std::unordered_map<std::int64_t, int> tape;
    for (const auto& [index, symbol] : initial) {
      if (index < 1) throw MachineError("tape cell index must be >= 1, got " + std::to_string(index));
      auto s = m.symbol_ix_.find(symbol);
      if (s == m.symbol_ix_.end())
        throw UndeclaredSymbolInTape("tape cell " + std::to_string(index) + " holds undeclared symbol '" + symbol + "'");
      if (symbol != m.blank_) tape[index] = s->second;
    }
    const int blank = m.symbol_ix_.at(m.blank_);
    int state = m.state_ix_.at(m.initial_);
    std::int64_t head = 1;
    std::uint64_t steps = 0;
    RunResult result;
    if (trace) result.trace.emplace();
    result.outcome = Outcome::budget_exhausted;
    for (;;) {
      auto cell_it = tape.find(head);
      int read = cell_it == tape.end() ? blank : cell_it->second;
      const auto& slot = m.table_[m.cell(state, read)];
      if (!slot) {
        result.outcome = Outcome::halted;
        break;
      }
      if (steps >= max_steps) break;
      if (trace)
        result.trace->push_back({m.states_[state], head, m.symbols_[read], m.symbols_[slot->write], slot->move});
      if (slot->write == blank) {
        if (cell_it != tape.end()) tape.erase(cell_it);
      } else if (cell_it != tape.end()) {
        cell_it->second = slot->write;
      } else {
        tape.emplace(head, slot->write);
      }
      state = slot->next;
      head = std::max<std::int64_t>(1, head + static_cast<int>(slot->move));
      ++steps;
    }
    result.final.head = head;
    result.final.state = m.states_[state];
    result.final.step_count = steps;
    for (const auto& [index, symbol] : tape) result.final.cells.emplace(index, m.symbols_[symbol]);
    return result;
  }
};

/// Runs from head 1 in the initial state until the machine halts or
/// `max_steps` transitions have been applied. A configuration with no
/// applicable transition counts as halted even when the budget is spent.
inline RunResult run(const Machine& machine, const Tape& initial_cells, std::uint64_t max_steps,
                     bool trace = false) {
  if (max_steps == 0) throw MachineError("max_steps must be positive");
  return Runner::run(machine, initial_cells, max_steps, trace);
}

using NameMap = std::map<std::string, std::string>;

namespace detail {

inline void require_bijection(const std::vector<std::string>& domain, const NameMap& map, const char* what) {
  std::set<std::string> images;
  for (const auto& name : domain) {
    auto it = map.find(name);
    if (it == map.end()) throw NonBijectiveMap(std::string(what) + " map is missing '" + name + "'");
    if (!images.insert(it->second).second)
      throw NonBijectiveMap(std::string(what) + " map sends two names to '" + it->second + "'");
  }
  if (map.size() != domain.size())
    throw NonBijectiveMap(std::string(what) + " map has entries outside the machine's " + what + "s");
}

inline Machine relabel(const Machine& m, const NameMap& symbols, const NameMap& states, Flavor flavor,
                       const std::optional<std::string>& expected_blank) {
  require_bijection(m.symbols(), symbols, "symbol");
  require_bijection(m.states(), states, "state");
  const std::string& new_blank = symbols.at(m.blank());
  if (expected_blank && new_blank != *expected_blank)
    throw BlankNotPreserved("blank '" + m.blank() + "' maps to '" + new_blank + "', expected '" + *expected_blank + "'");
  std::vector<std::string> new_states, new_symbols;
  for (const auto& s : m.states()) new_states.push_back(states.at(s));
  for (const auto& s : m.symbols()) new_symbols.push_back(symbols.at(s));
  std::vector<Rule> rules;
  for (const auto& r : m.rules())
    rules.push_back({states.at(r.state), symbols.at(r.read), states.at(r.next), symbols.at(r.write), r.move});
  return Machine(flavor, std::move(new_states), std::move(new_symbols), new_blank, std::move(rules),
                 states.at(m.initial_state()));
}

}  // namespace detail

/// Inverts a computation machine into a mechanization machine: symbols become
/// motion primitives and states are renamed; the transition structure is kept.
inline Machine to_mechanization(const Machine& machine, const NameMap& symbol_map, const NameMap& state_map,
                                const std::optional<std::string>& expected_blank = std::nullopt) {
  if (machine.flavor() != Flavor::computation)
    throw MachineError("to_mechanization expects a computation machine");
  return detail::relabel(machine, symbol_map, state_map, Flavor::mechanization, expected_blank);
}

/// The reverse direction of to_mechanization.
inline Machine to_computation(const Machine& machine, const NameMap& symbol_map, const NameMap& state_map,
                              const std::optional<std::string>& expected_blank = std::nullopt) {
  if (machine.flavor() != Flavor::mechanization)
    throw MachineError("to_computation expects a mechanization machine");
  return detail::relabel(machine, symbol_map, state_map, Flavor::computation, expected_blank);
}

inline NameMap invert(const NameMap& map) {
  NameMap out;
  for (const auto& [k, v] : map)
    if (!out.emplace(v, k).second) throw NonBijectiveMap("map is not injective at '" + v + "'");
  return out;
}

inline Tape map_tape(const Tape& tape, const NameMap& symbol_map) {
  Tape out;
  for (const auto& [i, s] : tape) out.emplace(i, symbol_map.at(s));
  return out;
}

/// True when b's trace is a's trace seen through the bijections: same length,
/// same outcome, states and symbols mapped, heads and moves identical.
inline bool traces_isomorphic(const RunResult& a, const RunResult& b, const NameMap& symbol_map,
                              const NameMap& state_map) {
  if (!a.trace || !b.trace) throw MachineError("traces_isomorphic needs traced runs");
  if (a.outcome != b.outcome || a.trace->size() != b.trace->size()) return false;
  auto mapped = [](const NameMap& m, const std::string& k) -> const std::string* {
    auto it = m.find(k);
    return it == m.end() ? nullptr : &it->second;
  };
  for (std::size_t i = 0; i < a.trace->size(); ++i) {
    const auto& x = (*a.trace)[i];
    const auto& y = (*b.trace)[i];
    const auto* st = mapped(state_map, x.state);
    const auto* rd = mapped(symbol_map, x.read);
    const auto* wr = mapped(symbol_map, x.written);
    if (!st || !rd || !wr) return false;
    if (*st != y.state || *rd != y.read || *wr != y.written || x.head != y.head || x.move != y.move)
      return false;
  }
  return true;
}

/// A reusable transition-table fragment ("tool"). Its states are local names;
/// inlining binds some of them to machine states and gives the rest fresh
/// names, so the running machine only ever sees ordinary transitions.
struct Tool {
  std::string name;
  std::vector<Rule> rules;
};

struct InlinedTool {
  std::vector<Rule> rules;
  /// Fresh states introduced for unbound locals, in first-use order.
  std::vector<std::string> new_states;
};

inline InlinedTool inline_tool(const Tool& tool, const NameMap& bindings, int instance) {
  InlinedTool out;
  std::map<std::string, std::string> names = bindings;
  auto resolve = [&](const std::string& local) {
    auto it = names.find(local);
    if (it != names.end()) return it->second;
    std::string fresh = tool.name + "." + std::to_string(instance) + "." + local;
    names.emplace(local, fresh);
    out.new_states.push_back(fresh);
    return fresh;
  };
  for (const auto& r : tool.rules) {
    std::string from = resolve(r.state);
    std::string to = resolve(r.next);
    out.rules.push_back({from, r.read, to, r.write, r.move});
  }
  return out;
}

struct MachineFile {
  Machine machine;
  Tape tape;
};

/// Reads the .aem format:
///
///   flavor computation|mechanization
///   states q1 q2 ...
///   symbols blank <blank> <symbol> ...
///   init <state>
///   rule <state> <read> -> <next> <write> L|S|R
///   tape <cell-index> <symbol>
///   tool <name>  { rule ... }  end
///   use <tool> <local>=<state> ...
///
/// '#' starts a comment.
inline MachineFile parse_machine(std::string_view text) {
  using kinex::detail::Token;
  Flavor flavor = Flavor::computation;
  std::vector<std::string> states;
  std::vector<std::string> symbols;
  std::optional<std::string> blank, init;
  std::vector<std::pair<Rule, int>> rules;
  std::vector<std::pair<std::int64_t, std::pair<std::string, int>>> tape_cells;
  std::map<std::string, Tool> tools;
  std::optional<Tool> open_tool;
  int open_tool_line = 0;
  int uses = 0;
  std::set<std::string> seen;

  auto fail = [](int line, const std::string& msg) -> void {
    throw ParseError(ParseErrorKind::syntax, line, msg);
  };
  auto parse_move = [&](const std::string& s, int line) {
    if (s == "L" || s == "-1") return Move::left;
    if (s == "S" || s == "0") return Move::stay;
    if (s == "R" || s == "+1" || s == "1") return Move::right;
    fail(line, "move must be L, S or R, got '" + s + "'");
    return Move::stay;
  };
  auto once = [&](const std::string& key, int line) {
    if (!seen.insert(key).second) fail(line, "duplicate '" + key + "' statement");
  };

  int line_no = 0;
  for (std::string_view raw : kinex::detail::split_lines(text)) {
    ++line_no;
    std::vector<Token> tokens;
    try {
      tokens = kinex::detail::tokenize_line(raw);
    } catch (const kinex::detail::LexError& e) {
      fail(line_no, e.what());
    }
    if (tokens.empty()) continue;
    std::vector<std::string> w;
    for (const auto& t : tokens) w.push_back(t.text);
    const std::string& kw = w[0];
    if (tokens[0].kind != Token::Kind::word) fail(line_no, "expected a keyword");

    if (kw == "rule") {
      if (w.size() != 7 || w[3] != "->") fail(line_no, "expected 'rule <state> <read> -> <next> <write> L|S|R'");
      Rule r{w[1], w[2], w[4], w[5], parse_move(w[6], line_no)};
      if (open_tool)
        open_tool->rules.push_back(r);
      else
        rules.emplace_back(r, line_no);
      continue;
    }
    if (open_tool && kw != "end") fail(line_no, "only 'rule' and 'end' are allowed inside a tool");

    if (kw == "flavor") {
      once("flavor", line_no);
      if (w.size() != 2) fail(line_no, "expected 'flavor computation|mechanization'");
      if (w[1] == "computation")
        flavor = Flavor::computation;
      else if (w[1] == "mechanization")
        flavor = Flavor::mechanization;
      else
        fail(line_no, "unknown flavor '" + w[1] + "'");
    } else if (kw == "states") {
      once("states", line_no);
      if (w.size() < 2) fail(line_no, "expected at least one state");
      states.insert(states.end(), w.begin() + 1, w.end());
    } else if (kw == "symbols") {
      once("symbols", line_no);
      if (w.size() < 3 || w[1] != "blank") fail(line_no, "expected 'symbols blank <blank> <symbol> ...'");
      blank = w[2];
      symbols.assign(w.begin() + 2, w.end());
    } else if (kw == "init") {
      once("init", line_no);
      if (w.size() != 2) fail(line_no, "expected 'init <state>'");
      init = w[1];
    } else if (kw == "tape") {
      if (w.size() != 3) fail(line_no, "expected 'tape <cell-index> <symbol>'");
      auto index = kinex::detail::parse_int(w[1]);
      if (!index || *index < 1) fail(line_no, "tape cell index must be an integer >= 1");
      tape_cells.push_back({*index, {w[2], line_no}});
    } else if (kw == "tool") {
      if (w.size() != 2) fail(line_no, "expected 'tool <name>'");
      if (tools.count(w[1])) fail(line_no, "duplicate tool '" + w[1] + "'");
      open_tool = Tool{w[1], {}};
      open_tool_line = line_no;
    } else if (kw == "end") {
      if (!open_tool || w.size() != 1) fail(line_no, "'end' without an open tool");
      std::string name = open_tool->name;
      tools.emplace(name, std::move(*open_tool));
      open_tool.reset();
    } else if (kw == "use") {
      if (w.size() < 2) fail(line_no, "expected 'use <tool> <local>=<state> ...'");
      auto it = tools.find(w[1]);
      if (it == tools.end()) fail(line_no, "unknown tool '" + w[1] + "'");
      NameMap bindings;
      for (std::size_t i = 2; i < w.size(); ++i) {
        auto eq = w[i].find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == w[i].size())
          fail(line_no, "expected binding <local>=<state>, got '" + w[i] + "'");
        bindings[w[i].substr(0, eq)] = w[i].substr(eq + 1);
      }
      auto inlined = inline_tool(it->second, bindings, ++uses);
      states.insert(states.end(), inlined.new_states.begin(), inlined.new_states.end());
      for (auto& r : inlined.rules) rules.emplace_back(std::move(r), line_no);
    } else {
      fail(line_no, "unknown keyword '" + kw + "'");
    }
  }
  if (open_tool) fail(open_tool_line, "tool '" + open_tool->name + "' is missing 'end'");
  if (states.empty()) fail(0, "missing 'states' statement");
  if (!blank) fail(0, "missing 'symbols' statement");
  if (!init) fail(0, "missing 'init' statement");

  std::set<std::string> state_set(states.begin(), states.end());
  std::set<std::string> symbol_set(symbols.begin(), symbols.end());
  std::set<std::pair<std::string, std::string>> keys;
  for (const auto& [r, line] : rules) {
    for (const auto* s : {&r.state, &r.next})
      if (!state_set.count(*s)) fail(line, "undeclared state '" + *s + "'");
    for (const auto* s : {&r.read, &r.write})
      if (!symbol_set.count(*s)) fail(line, "undeclared symbol '" + *s + "'");
    if (!keys.insert({r.state, r.read}).second)
      fail(line, "second transition for (" + r.state + ", " + r.read + ")");
  }
  Tape tape;
  for (const auto& [index, sym] : tape_cells) {
    if (!symbol_set.count(sym.first)) fail(sym.second, "undeclared symbol '" + sym.first + "' on tape");
    if (tape.count(index)) fail(sym.second, "tape cell " + std::to_string(index) + " set twice");
    if (sym.first != *blank) tape.emplace(index, sym.first);
  }
  std::vector<Rule> plain;
  for (auto& [r, line] : rules) plain.push_back(std::move(r));
  try {
    return MachineFile{Machine(flavor, states, symbols, *blank, std::move(plain), *init), std::move(tape)};
  } catch (const MachineError& e) {
    throw ParseError(ParseErrorKind::invalid_value, 0, e.what());
  }
}

/// Stable text form of a run: optional trace lines "step state head read write
/// move", then the outcome and the final configuration.
inline std::string format_run_result(const RunResult& r) {
  std::string out;
  if (r.trace) {
    std::uint64_t n = 0;
    for (const auto& t : *r.trace) {
      out += std::to_string(++n) + " " + t.state + " " + std::to_string(t.head) + " " + t.read + " " +
             t.written + " " + move_letter(t.move) + "\n";
    }
  }
  out += std::string("outcome ") + to_string(r.outcome) + "\n";
  out += "steps " + std::to_string(r.final.step_count) + "\n";
  out += "state " + r.final.state + "\n";
  out += "head " + std::to_string(r.final.head) + "\n";
  out += "tape";
  for (const auto& [i, s] : r.final.cells) out += " " + std::to_string(i) + ":" + s;
  out += "\n";
  return out;
}

}  // namespace kinex::aem
