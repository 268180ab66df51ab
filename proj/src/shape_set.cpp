#include "kcover/shape_set.hpp"

#include <cmath>

#include "kcover/error.hpp"

namespace kcover {

double log_sigma_of(const BigInt& height, const BigInt& width) {
  return 0.5 * (log_big(height) + log_big(width));
}

void ShapeSet::add(const BigInt& height, const BigInt& width, const BigInt& multiplicity) {
  if (height < 1 || width < 1) throw Error(ErrorKind::InvalidArgument, "shape sides must be positive");
  if (multiplicity < 0) throw Error(ErrorKind::InvalidArgument, "negative shape multiplicity");
  if (multiplicity == 0) return;
  entries_[Key{height, width}] += multiplicity;
}

void ShapeSet::merge(const ShapeSet& other) {
  for (const auto& [key, mult] : other.entries_) entries_[key] += mult;
}

BigInt ShapeSet::count() const {
  BigInt total = 0;
  for (const auto& [key, mult] : entries_) total += mult;
  return total;
}

BigInt ShapeSet::complexity() const {
  BigInt total = 0;
  for (const auto& [key, mult] : entries_) total += mult * (key.first + key.second);
  return total;
}

BigInt ShapeSet::coverage() const {
  BigInt total = 0;
  for (const auto& [key, mult] : entries_) total += mult * key.first * key.second;
  return total;
}

double ShapeSet::log_sigma() const {
  LogSum sum;
  for (const auto& [key, mult] : entries_) sum.add_log(log_big(mult) + log_sigma_of(key.first, key.second));
  return sum.log();
}

double ShapeSet::sigma() const { return std::exp(log_sigma()); }

Metrics ShapeSet::metrics() const {
  Metrics m;
  m.w = complexity();
  m.wApprox = to_double(m.w);
  m.logW = m.w > 0 ? log_big(m.w) : -INFINITY;
  m.sigmaLog = log_sigma();
  m.sigma = std::exp(m.sigmaLog);
  m.count = count();
  return m;
}

ShapeSet ShapeSet::transposed() const {
  ShapeSet out;
  for (const auto& [key, mult] : entries_) out.entries_[Key{key.second, key.first}] += mult;
  return out;
}

bool ShapeSet::is_one_sided() const {
  for (const auto& [key, mult] : entries_)
    if (key.first < key.second) return false;
  return true;
}

}  // namespace kcover
