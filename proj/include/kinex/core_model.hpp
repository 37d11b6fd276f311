// Platform description types and the range/resolution -> level count rule.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kinex {

/// Raised when a value would violate a model invariant.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (max - min) / resolution is not an integer within the relative tolerance.
class NonIntegralSpan : public ModelError {
 public:
  NonIntegralSpan(std::string label, double ratio)
      : ModelError("group '" + label + "': span/resolution = " + std::to_string(ratio) +
                   " is not an integer"),
        label_(std::move(label)),
        ratio_(ratio) {}

  const std::string& label() const noexcept { return label_; }
  double ratio() const noexcept { return ratio_; }

 private:
  std::string label_;
  double ratio_;
};

enum class Strictness { strict, lenient };

inline constexpr double kIntegralityTolerance = 1e-9;
inline constexpr const char* kNonMechanicalTag = "non-mechanical";

struct DiscreteStates {
  std::uint64_t count = 1;

  friend bool operator==(const DiscreteStates&, const DiscreteStates&) = default;
};

/// A continuous actuator sampled at a fixed resolution. Units are opaque text
/// shared by all three numbers and never converted.
struct ContinuousRange {
  double min = 0;
  double max = 0;
  double resolution = 0;
  std::string units;

  double span_ratio() const { return (max - min) / resolution; }

  friend bool operator==(const ContinuousRange&, const ContinuousRange&) = default;
};

using LevelsSpec = std::variant<DiscreteStates, ContinuousRange>;

/// One homogeneous actuator group: `multiplicity` identical degrees of freedom
/// that each take the same number of levels.
class DofGroup {
 public:
  DofGroup(std::string label, std::uint64_t multiplicity, LevelsSpec levels,
           std::set<std::string> tags = {})
      : label_(std::move(label)),
        multiplicity_(multiplicity),
        levels_(std::move(levels)),
        tags_(std::move(tags)) {
    if (multiplicity_ < 1) throw ModelError("group '" + label_ + "': multiplicity must be >= 1");
    if (const auto* d = std::get_if<DiscreteStates>(&levels_)) {
      if (d->count < 1) throw ModelError("group '" + label_ + "': state count must be >= 1");
    } else {
      const auto& c = std::get<ContinuousRange>(levels_);
      if (!std::isfinite(c.min) || !std::isfinite(c.max) || !std::isfinite(c.resolution))
        throw ModelError("group '" + label_ + "': range values must be finite");
      if (!(c.max > c.min)) throw ModelError("group '" + label_ + "': max must exceed min");
      if (!(c.resolution > 0)) throw ModelError("group '" + label_ + "': resolution must be > 0");
      if (c.max - c.min < c.resolution)
        throw ModelError("group '" + label_ + "': span must be at least one resolution step");
    }
  }

  static DofGroup discrete(std::string label, std::uint64_t multiplicity, std::uint64_t states,
                           std::set<std::string> tags = {}) {
    return DofGroup(std::move(label), multiplicity, DiscreteStates{states}, std::move(tags));
  }

  static DofGroup continuous(std::string label, std::uint64_t multiplicity, double min, double max,
                             double resolution, std::string units = {},
                             std::set<std::string> tags = {}) {
    return DofGroup(std::move(label), multiplicity,
                    ContinuousRange{min, max, resolution, std::move(units)}, std::move(tags));
  }

  const std::string& label() const noexcept { return label_; }
  std::uint64_t multiplicity() const noexcept { return multiplicity_; }
  const LevelsSpec& levels() const noexcept { return levels_; }
  const std::set<std::string>& tags() const noexcept { return tags_; }
  bool has_tag(const std::string& tag) const { return tags_.count(tag) != 0; }

  friend bool operator==(const DofGroup&, const DofGroup&) = default;

 private:
  std::string label_;
  std::uint64_t multiplicity_;
  LevelsSpec levels_;
  std::set<std::string> tags_;
};

struct ProcessorSpec {
  std::string name;
  std::uint64_t transistors = 0;

  friend bool operator==(const ProcessorSpec&, const ProcessorSpec&) = default;
};

enum class PlatformKind { artificial, natural };

inline const char* to_string(PlatformKind k) {
  return k == PlatformKind::artificial ? "artificial" : "natural";
}

/// Everything about a platform that is not its actuator groups.
struct PlatformMeta {
  std::optional<int> year;
  bool year_estimated = false;
  std::optional<ProcessorSpec> processor;
  std::vector<std::string> notes;
  std::optional<std::uint64_t> neurons;
  std::optional<std::string> model;
  /// Present when the platform cannot be evaluated; holds the reason.
  std::optional<std::string> stub_reason;

  friend bool operator==(const PlatformMeta&, const PlatformMeta&) = default;
};

class Platform {
 public:
  Platform(std::string name, PlatformKind kind, std::vector<DofGroup> groups,
           PlatformMeta meta = {})
      : name_(std::move(name)), kind_(kind), groups_(std::move(groups)), meta_(std::move(meta)) {
    if (name_.empty()) throw ModelError("platform name must be non-empty");
    std::set<std::string> seen;
    for (const auto& g : groups_)
      if (!seen.insert(g.label()).second)
        throw ModelError("platform '" + name_ + "': duplicate group label '" + g.label() + "'");
  }

  const std::string& name() const noexcept { return name_; }
  PlatformKind kind() const noexcept { return kind_; }
  const std::vector<DofGroup>& groups() const noexcept { return groups_; }
  const PlatformMeta& meta() const noexcept { return meta_; }
  const std::optional<ProcessorSpec>& processor() const noexcept { return meta_.processor; }
  std::optional<int> year() const noexcept { return meta_.year; }
  bool computable() const noexcept { return !meta_.stub_reason.has_value(); }

  const DofGroup* find_group(const std::string& label) const {
    for (const auto& g : groups_)
      if (g.label() == label) return &g;
    return nullptr;
  }

  friend bool operator==(const Platform&, const Platform&) = default;

 private:
  std::string name_;
  PlatformKind kind_;
  std::vector<DofGroup> groups_;
  PlatformMeta meta_;
};

/// True when span/resolution lies within the relative tolerance of an integer.
inline bool is_integral_span(const ContinuousRange& r) {
  double q = r.span_ratio();
  double n = std::round(q);
  return std::abs(q - n) <= kIntegralityTolerance * n;
}

/// Number of discrete levels R for one degree of freedom of the group.
/// Continuous ranges count round((max - min) / resolution) with no endpoint term.
inline std::uint64_t resolve_levels(const DofGroup& group, Strictness mode = Strictness::strict) {
  if (const auto* d = std::get_if<DiscreteStates>(&group.levels())) return d->count;
  const auto& r = std::get<ContinuousRange>(group.levels());
  if (mode == Strictness::strict && !is_integral_span(r))
    throw NonIntegralSpan(group.label(), r.span_ratio());
  double n = std::round(r.span_ratio());
  return n < 1 ? 1 : static_cast<std::uint64_t>(n);
}

/// Groups that move something; anything tagged non-mechanical (LEDs and the
/// like) is dropped. Order is preserved.
inline std::vector<DofGroup> mechanical_groups(const Platform& platform) {
  std::vector<DofGroup> out;
  for (const auto& g : platform.groups())
    if (!g.has_tag(kNonMechanicalTag)) out.push_back(g);
  return out;
}

}  // namespace kinex
