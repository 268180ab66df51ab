#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace kcover {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Natural logarithm of a positive integer, computed from its exact bit
/// length and its leading 64 bits. Relative error stays below 1e-15 for any
/// magnitude, including values far outside the range of double.
double log_big(const BigInt& x);

/// ln(p/q) for a positive rational.
double log_big(const BigRational& x);

/// Nearest double; +inf when the value exceeds the double range.
double to_double(const BigInt& x);
double to_double(const BigRational& x);

BigInt pow_big(const BigInt& base, unsigned exponent);

/// Parses "p/q" or "p" (optionally signed) into a normalized rational.
BigRational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string format_rational(const BigRational& x);

/// Largest integer k with base^k <= x. Requires x > 0 and base > 1.
/// Decided by exact cross-multiplication, never by floating logs.
std::int64_t floor_log(const BigRational& x, const BigRational& base);

/// Smallest integer k with x <= base^k. Requires x > 0 and base > 1.
std::int64_t ceil_log(const BigRational& x, const BigRational& base);

/// Best rational approximation of `target` with denominator at most
/// `maxDen` that lies in the half-open interval (lo, hi]. Walks the
/// continued-fraction convergents of `target`; throws when none fits.
BigRational rational_in_window(double target, double lo, double hi,
                               std::int64_t maxDen);

/// Accumulates a sum of positive terms given by their natural logs, without
/// overflowing for terms beyond double range. Uses compensated summation
/// relative to a running scale.
class LogSum {
 public:
  void add_log(double logTerm);
  void add(double term);

  /// ln of the accumulated sum; -inf when nothing was added.
  double log() const;
  double value() const;

 private:
  void rescale(double newScale);

  double scale_ = 0.0;
  double sum_ = 0.0;
  double carry_ = 0.0;
  bool empty_ = true;
};

}  // namespace kcover
