#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace kcover {

/// Explicit matrices larger than this per side are rejected unless the caller
/// raises the cap.
inline constexpr std::size_t kDefaultSideCap = 8192;

/// A subset of the ground set {1..t}, encoded as a bitmask (low bit = element 1).
struct SubsetLabel {
  std::uint32_t mask = 0;

  int size() const noexcept { return std::popcount(mask); }
  bool disjoint(SubsetLabel other) const noexcept { return (mask & other.mask) == 0; }
};

/// Dense 0/1 matrix in row-major order. When `label_arity()` is set to t the
/// matrix is 2^t x 2^t and rows/columns are indexed by subset bitmasks in
/// increasing order.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  BoolMatrix(std::size_t rows, std::size_t cols, std::optional<int> labelArity = std::nullopt);

  /// Builds from nested rows of 0/1 values; all rows must have equal length.
  static BoolMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::optional<int> label_arity() const noexcept { return arity_; }

  bool at(std::size_t r, std::size_t c) const noexcept { return bits_[r * cols_ + c] != 0; }
  void set(std::size_t r, std::size_t c, bool value) noexcept { bits_[r * cols_ + c] = value ? 1 : 0; }

  std::size_t popcount() const noexcept;
  BoolMatrix transposed() const;

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
  std::optional<int> arity_;
};

/// The disjointness matrix D_{2^t}: entry (u, v) is 1 iff masks u and v are
/// disjoint. Equals the t-fold Kronecker power of [[1,1],[1,0]].
BoolMatrix kneser_sierpinski(int t, std::size_t sideCap = kDefaultSideCap);

/// Kronecker product; A's index is the more significant digit.
BoolMatrix kron(const BoolMatrix& a, const BoolMatrix& b, std::size_t sideCap = kDefaultSideCap);

bool is_symmetric(const BoolMatrix& a);

}  // namespace kcover
