// Independent reference computations and random generators for the tests.
// Nothing here calls into the code paths it is used to check.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kinex/aemachine.hpp"
#include "kinex/core_model.hpp"
#include "kinex/specfile.hpp"

namespace kinex::testing {

/// (levels per DOF, number of DOFs) for one group.
using LevelPair = std::pair<std::uint64_t, std::uint64_t>;

/// Counts configurations by stepping an odometer over every DOF; no
/// multiplication or logarithm involved.
inline std::uint64_t enumerate_configurations(const std::vector<LevelPair>& groups) {
  std::vector<std::uint64_t> radix;
  for (const auto& [levels, dofs] : groups)
    for (std::uint64_t i = 0; i < dofs; ++i) radix.push_back(levels);
  std::vector<std::uint64_t> digit(radix.size(), 0);
  std::uint64_t count = 0;
  for (;;) {
    ++count;
    std::size_t k = 0;
    while (k < radix.size()) {
      if (++digit[k] < radix[k]) break;
      digit[k] = 0;
      ++k;
    }
    if (k == radix.size()) break;
  }
  return count;
}

inline double bits_from_pairs(const std::vector<LevelPair>& groups) {
  double bits = 0;
  for (const auto& [levels, dofs] : groups) bits += static_cast<double>(dofs) * std::log2(static_cast<double>(levels));
  return bits;
}

/// A random group with a known level count: either explicit states or a
/// continuous range built as levels * resolution.
inline DofGroup random_group(std::mt19937_64& rng, const std::string& label, std::uint64_t levels,
                             std::uint64_t dofs) {
  if (rng() % 2 == 0 || levels == 1) return DofGroup::discrete(label, dofs, levels);
  static const double resolutions[] = {0.1, 0.25, 0.5, 1.0, 2.0, 0.08, 0.01};
  double res = resolutions[rng() % 7];
  double min = static_cast<double>(static_cast<int>(rng() % 201) - 100) * res;
  double max = min + static_cast<double>(levels) * res;
  return DofGroup::continuous(label, dofs, min, max, res, "deg");
}

struct GeneratedGroups {
  std::vector<DofGroup> groups;
  std::vector<LevelPair> pairs;
};

/// 0-4 groups whose product of levels stays at or below `limit`.
inline GeneratedGroups random_groups(std::mt19937_64& rng, double limit = 1e6) {
  GeneratedGroups g;
  int n = static_cast<int>(rng() % 5);
  double product = 1;
  for (int i = 0; i < n; ++i) {
    std::uint64_t levels = 1 + rng() % 30;
    std::uint64_t dofs = 1 + rng() % 4;
    double c = std::pow(static_cast<double>(levels), static_cast<double>(dofs));
    if (product * c > limit) continue;
    product *= c;
    g.groups.push_back(random_group(rng, "g" + std::to_string(i), levels, dofs));
    g.pairs.emplace_back(levels, dofs);
  }
  return g;
}

/// The unary incrementer done directly on a string: skip the 1s, append one.
struct IncrementerOutcome {
  std::string tape;
  std::int64_t head;
  std::uint64_t steps;
};

inline IncrementerOutcome increment_unary(std::size_t ones) {
  std::string tape(ones, '1');
  std::size_t pos = 0;
  std::uint64_t steps = 0;
  while (pos < tape.size() && tape[pos] == '1') {
    ++pos;
    ++steps;
  }
  tape.push_back('1');
  ++steps;
  return {tape, static_cast<std::int64_t>(pos + 1), steps};
}

inline aem::Machine unary_incrementer() {
  return aem::Machine(aem::Flavor::computation, {"scan", "done"}, {"_", "0", "1"}, "_",
                      {{"scan", "1", "scan", "1", aem::Move::right}, {"scan", "_", "done", "1", aem::Move::stay}},
                      "scan");
}

/// Straight-line re-simulation from a rule list; shares no code with the
/// library's runner.
struct OracleRun {
  bool halted = false;
  std::map<std::int64_t, std::string> cells;
  std::int64_t head = 1;
  std::string state;
  std::uint64_t steps = 0;
  std::vector<std::int64_t> heads;
};

inline OracleRun simulate(const std::vector<aem::Rule>& rules, const std::string& blank, const std::string& initial,
                          std::map<std::int64_t, std::string> cells, std::uint64_t max_steps) {
  OracleRun out;
  out.state = initial;
  out.cells = std::move(cells);
  for (;;) {
    std::string read = out.cells.count(out.head) ? out.cells[out.head] : blank;
    const aem::Rule* hit = nullptr;
    for (const auto& r : rules)
      if (r.state == out.state && r.read == read) hit = &r;
    if (!hit) {
      out.halted = true;
      return out;
    }
    if (out.steps == max_steps) return out;
    out.heads.push_back(out.head);
    if (hit->write == blank) out.cells.erase(out.head);
    else out.cells[out.head] = hit->write;
    out.state = hit->next;
    if (hit->move == aem::Move::right) out.head += 1;
    if (hit->move == aem::Move::left && out.head > 1) out.head -= 1;
    ++out.steps;
  }
}

struct RandomMachine {
  aem::Machine machine;
  aem::Tape tape;
  aem::NameMap symbol_map;
  aem::NameMap state_map;
};

/// Up to 6 states and 4 symbols (blank included), a random partial
/// transition table, up to 16 non-blank tape cells, and bijections onto
/// fresh mechanization names.
inline RandomMachine random_machine(std::mt19937_64& rng) {
  int n_states = 1 + static_cast<int>(rng() % 6);
  int n_symbols = 1 + static_cast<int>(rng() % 4);
  std::vector<std::string> states, symbols;
  for (int i = 0; i < n_states; ++i) states.push_back("q" + std::to_string(i));
  symbols.push_back("_");
  for (int i = 1; i < n_symbols; ++i) symbols.push_back(std::to_string(i - 1));
  std::vector<aem::Rule> rules;
  for (const auto& q : states)
    for (const auto& s : symbols) {
      if (rng() % 10 < 2) continue;
      static const aem::Move moves[] = {aem::Move::left, aem::Move::stay, aem::Move::right};
      rules.push_back({q, s, states[rng() % states.size()], symbols[rng() % symbols.size()], moves[rng() % 3]});
    }
  aem::Tape tape;
  int cells = static_cast<int>(rng() % 17);
  for (int i = 0; i < cells; ++i) {
    const auto& s = symbols[rng() % symbols.size()];
    if (s != "_") tape[1 + static_cast<std::int64_t>(rng() % 32)] = s;
  }
  static const char* primitives[] = {"flexion", "extension", "twist"};
  aem::NameMap sym_map, st_map;
  sym_map["_"] = "eps'";
  for (int i = 1; i < n_symbols; ++i) sym_map[symbols[i]] = primitives[i - 1];
  for (int i = 0; i < n_states; ++i) st_map[states[i]] = "p" + std::to_string(n_states - i) + "'";
  aem::Machine m(aem::Flavor::computation, states, symbols, "_", rules, states[rng() % states.size()]);
  return {std::move(m), std::move(tape), std::move(sym_map), std::move(st_map)};
}

inline std::string random_text(std::mt19937_64& rng) {
  static const std::string alphabet[] = {"a", "Z", "7", " ", "-", "\"", "\\", "#", "\t", "é", "/", "(", ")", ".", "\n"};
  std::string s;
  int n = 1 + static_cast<int>(rng() % 12);
  for (int i = 0; i < n; ++i) s += alphabet[rng() % std::size(alphabet)];
  return s;
}

inline double random_real(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1e4, 1e4);
  switch (rng() % 3) {
    case 0: return static_cast<double>(static_cast<int>(rng() % 2001) - 1000) / 10.0;
    case 1: return d(rng);
    default: return std::ldexp(d(rng), static_cast<int>(rng() % 60) - 30);
  }
}

/// A valid platform with arbitrary names, metadata and groups; spans need
/// not be integral, so documents from it parse leniently.
inline Platform random_platform(std::mt19937_64& rng) {
  PlatformMeta meta;
  if (rng() % 2) {
    meta.year = 1950 + static_cast<int>(rng() % 80);
    meta.year_estimated = rng() % 2;
  }
  if (rng() % 2) meta.processor = ProcessorSpec{rng() % 3 ? random_text(rng) : "", rng() % 5'000'000'000ull};
  if (rng() % 3 == 0) meta.neurons = 1 + rng() % 100'000'000'000ull;
  if (rng() % 4 == 0) meta.model = random_text(rng);
  int notes = static_cast<int>(rng() % 3);
  for (int i = 0; i < notes; ++i) meta.notes.push_back(random_text(rng));
  std::vector<DofGroup> groups;
  if (rng() % 8 == 0) {
    meta.stub_reason = random_text(rng);
  } else {
    int n = static_cast<int>(rng() % 7);
    for (int i = 0; i < n; ++i) {
      std::string label = random_text(rng) + "#" + std::to_string(i);
      std::set<std::string> tags;
      if (rng() % 3 == 0) tags.insert(kNonMechanicalTag);
      if (rng() % 5 == 0) tags.insert(random_text(rng));
      std::uint64_t count = 1 + rng() % 1000;
      if (rng() % 2) {
        groups.push_back(DofGroup::discrete(label, count, 1 + rng() % 100000, tags));
      } else {
        double min = random_real(rng);
        double res = std::abs(random_real(rng)) + 1e-3;
        double max = min + res * (1.0 + static_cast<double>(rng() % 5000) * std::abs(random_real(rng)) / 1e4);
        if (!(max - min >= res)) max = min + 2 * res;
        groups.push_back(DofGroup::continuous(label, count, min, max, res, rng() % 2 ? "deg" : "", tags));
      }
    }
  }
  return Platform(random_text(rng) + "x", rng() % 2 ? PlatformKind::artificial : PlatformKind::natural,
                  std::move(groups), std::move(meta));
}

}  // namespace kinex::testing
