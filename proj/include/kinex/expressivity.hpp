// Configuration counts, kinematic expressivity in bits, and processor capacity.
//
// Every count is carried twice: as an exact big integer (when requested and
// affordable) and as a log10 value accumulated term by term in double
// precision. The two routes are computed independently so they can check
// each other.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinex/core_model.hpp"
#include "kinex/detail/text.hpp"

namespace kinex {

using BigInt = boost::multiprecision::cpp_int;

enum class CountMode { exact, log_space, both };

/// Exact mode would need more than kMaxExactDigits decimal digits.
class ExactTooLarge : public std::runtime_error {
 public:
  explicit ExactTooLarge(double digits)
      : std::runtime_error("exact count would need about " + detail::shortest(std::ceil(digits)) +
                           " decimal digits") {}
};

/// The platform is a stub without evaluable groups.
class NonComputable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMaxExactDigits = 1e7;

namespace detail {

/// log10 of a positive big integer from its top 64 bits.
inline double log10_of(const BigInt& value) {
  if (value <= 0) throw std::domain_error("log10 of non-positive integer");
  std::size_t msb = boost::multiprecision::msb(value);
  if (msb < 64) return std::log10(static_cast<double>(value.convert_to<std::uint64_t>()));
  std::size_t shift = msb - 63;
  auto top = static_cast<std::uint64_t>(value >> shift);
  return std::log10(static_cast<double>(top)) + static_cast<double>(shift) * std::log10(2.0);
}

}  // namespace detail

/// A configuration count C >= 1.
class BigCount {
 public:
  static BigCount from_exact(BigInt exact, double log10_value) {
    BigCount c;
    c.decimal_digits_ = exact.str().size();
    c.exact_ = std::move(exact);
    c.log10_ = log10_value;
    return c;
  }

  static BigCount from_log10(double log10_value) {
    BigCount c;
    c.log10_ = log10_value;
    c.decimal_digits_ = static_cast<std::uint64_t>(std::floor(log10_value + 1e-12)) + 1;
    return c;
  }

  const std::optional<BigInt>& exact() const noexcept { return exact_; }
  double log10() const noexcept { return log10_; }
  double log2() const noexcept { return log10_ / std::log10(2.0); }
  std::uint64_t decimal_digits() const noexcept { return decimal_digits_; }

  /// Leading-digit form such as "4.1x10^71".
  std::string scientific(int significant = 2) const {
    std::int64_t exponent;
    double mantissa;
    if (exact_) {
      std::string digits = exact_->str();
      exponent = static_cast<std::int64_t>(digits.size()) - 1;
      std::string lead = digits.substr(0, std::min<std::size_t>(digits.size(), 17));
      mantissa = std::stod(lead) / std::pow(10.0, static_cast<double>(lead.size() - 1));
    } else {
      exponent = static_cast<std::int64_t>(std::floor(log10_));
      mantissa = std::pow(10.0, log10_ - static_cast<double>(exponent));
    }
    double scale = std::pow(10.0, significant - 1);
    mantissa = std::round(mantissa * scale) / scale;
    if (mantissa >= 10.0) {
      mantissa /= 10.0;
      ++exponent;
    }
    return detail::fixed(mantissa, significant - 1) + "x10^" + std::to_string(exponent);
  }

 private:
  BigCount() = default;

  std::optional<BigInt> exact_;
  double log10_ = 0;
  std::uint64_t decimal_digits_ = 1;
};

/// Sum of M_i * log10(R_i); the log-space route.
inline double log10_configurations(std::span<const DofGroup> groups,
                                   Strictness mode = Strictness::strict) {
  double sum = 0;
  for (const auto& g : groups)
    sum += static_cast<double>(g.multiplicity()) * std::log10(static_cast<double>(resolve_levels(g, mode)));
  return sum;
}

/// C = prod_i R_i^M_i.
inline BigCount count_configurations(std::span<const DofGroup> groups,
                                     CountMode count_mode = CountMode::both,
                                     Strictness mode = Strictness::strict) {
  double log10_value = log10_configurations(groups, mode);
  if (count_mode == CountMode::log_space) return BigCount::from_log10(log10_value);
  if (log10_value + 1 > kMaxExactDigits) {
    if (count_mode == CountMode::exact) throw ExactTooLarge(log10_value + 1);
    return BigCount::from_log10(log10_value);
  }
  BigInt product = 1;
  for (const auto& g : groups) {
    BigInt levels = resolve_levels(g, mode);
    product *= boost::multiprecision::pow(levels, static_cast<unsigned>(g.multiplicity()));
  }
  return BigCount::from_exact(std::move(product), log10_value);
}

/// K = log2(C) = sum_i M_i * log2(R_i), in bits.
inline double kinematic_expressivity(std::span<const DofGroup> groups,
                                     Strictness mode = Strictness::strict) {
  double bits = 0;
  for (const auto& g : groups)
    bits += static_cast<double>(g.multiplicity()) * std::log2(static_cast<double>(resolve_levels(g, mode)));
  return bits;
}

struct ComputationalCapacity {
  double bits = 0;
  /// Decimal digits of 2^t, i.e. floor(t log10 2) + 1.
  BigInt config_digits = 1;

  /// floor(t log10 2): 2^t is written as 10^exponent in leading-order form.
  BigInt decimal_exponent() const { return config_digits - 1; }
};

namespace detail {
// log10(2) to 56 decimal places, scaled by 10^56.
inline const BigInt& log10_two_scaled() {
  static const BigInt value("30102999566398119521373889472449302676818988146210854131");
  return value;
}
inline const BigInt& log10_two_scale() {
  static const BigInt value = boost::multiprecision::pow(BigInt(10), 56);
  return value;
}
}  // namespace detail

/// Each transistor is a two-level degree of freedom, so t transistors give
/// t bits and 2^t internal configurations. The digit count is exact for any
/// 64-bit t; 2^t itself is never formed.
inline ComputationalCapacity computational_capacity(const ProcessorSpec& processor) {
  ComputationalCapacity cap;
  cap.bits = static_cast<double>(processor.transistors);
  BigInt scaled = BigInt(processor.transistors) * detail::log10_two_scaled();
  cap.config_digits = scaled / detail::log10_two_scale() + 1;
  return cap;
}

struct CapacityReport {
  std::string platform_name;
  BigCount c_all = BigCount::from_log10(0);
  double k_all_bits = 0;
  BigCount c_mechanical = BigCount::from_log10(0);
  double k_mechanical_bits = 0;
  std::optional<double> computational_bits;
  std::optional<BigInt> computational_config_digits;

  /// The whole-bit figures quoted in prose ("about 238 bits").
  std::int64_t k_all_rounded() const { return std::llround(k_all_bits); }
  std::int64_t k_mechanical_rounded() const { return std::llround(k_mechanical_bits); }
};

struct AnalyzeOptions {
  CountMode count_mode = CountMode::both;
  Strictness strictness = Strictness::strict;
};

inline CapacityReport analyze(const Platform& platform, AnalyzeOptions options = {}) {
  if (!platform.computable())
    throw NonComputable("platform '" + platform.name() + "' is not computable: " +
                        *platform.meta().stub_reason);
  CapacityReport report;
  report.platform_name = platform.name();
  const auto& all = platform.groups();
  report.c_all = count_configurations(all, options.count_mode, options.strictness);
  report.k_all_bits = kinematic_expressivity(all, options.strictness);
  auto mech = mechanical_groups(platform);
  report.c_mechanical = count_configurations(mech, options.count_mode, options.strictness);
  report.k_mechanical_bits = kinematic_expressivity(mech, options.strictness);
  if (const auto& proc = platform.processor()) {
    auto cap = computational_capacity(*proc);
    report.computational_bits = cap.bits;
    report.computational_config_digits = cap.config_digits;
  }
  return report;
}

struct ComparisonReport {
  std::string a;
  std::string b;
  double delta_bits = 0;           // K_a - K_b
  double orders_of_magnitude = 0;  // log10 C_a - log10 C_b
  /// K_a / K_b; absent when K_b is zero.
  std::optional<double> bits_ratio;
};

inline ComparisonReport compare(const CapacityReport& a, const CapacityReport& b) {
  ComparisonReport r;
  r.a = a.platform_name;
  r.b = b.platform_name;
  r.orders_of_magnitude = a.c_all.log10() - b.c_all.log10();
  r.delta_bits = a.k_all_bits - b.k_all_bits;
  if (b.k_all_bits > 0) r.bits_ratio = a.k_all_bits / b.k_all_bits;
  return r;
}

}  // namespace kinex
