#pragma once

#include <cstddef>
#include <map>
#include <utility>

#include "kcover/bigint.hpp"

namespace kcover {

/// Summary metrics of a rectangle multiset.
struct Metrics {
  BigInt w;              ///< complexity: sum of a+b, exact
  double wApprox = 0.0;  ///< w as a double (may be +inf for huge runs)
  double logW = 0.0;
  double sigma = 0.0;    ///< spectral weight: sum of sqrt(ab)
  double sigmaLog = 0.0;
  BigInt count;
};

/// Multiset of rectangle shapes (height a, width b) with exact multiplicities.
/// Iteration order is the canonical (a, b) order, so every consumer sees the
/// same sequence.
class ShapeSet {
 public:
  using Key = std::pair<BigInt, BigInt>;

  ShapeSet() = default;

  void add(const BigInt& height, const BigInt& width, const BigInt& multiplicity = 1);
  void merge(const ShapeSet& other);

  const std::map<Key, BigInt>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t distinct() const noexcept { return entries_.size(); }

  BigInt count() const;
  /// Sum of mult*(a+b).
  BigInt complexity() const;
  /// Sum of mult*a*b: the number of matrix cells covered, with multiplicity.
  BigInt coverage() const;
  double log_sigma() const;
  double sigma() const;
  Metrics metrics() const;

  ShapeSet transposed() const;
  /// Every shape has a >= b; squares are compatible with either side.
  bool is_one_sided() const;

  friend bool operator==(const ShapeSet&, const ShapeSet&) = default;

 private:
  std::map<Key, BigInt> entries_;
};

/// ln sqrt(a*b) evaluated through exact bit lengths.
double log_sigma_of(const BigInt& height, const BigInt& width);

}  // namespace kcover
