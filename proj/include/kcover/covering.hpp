#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kcover/bigint.hpp"
#include "kcover/matrix.hpp"
#include "kcover/shape_set.hpp"

namespace kcover {

/// How overlapping rectangles combine: integer sum, disjunction, or parity.
enum class Mode { Sum, Or, Xor };

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// One Kronecker level of a factored rectangle: sorted, nonempty index sets
/// into that level's base matrix.
struct Level {
  std::vector<std::uint32_t> rows;
  std::vector<std::uint32_t> cols;

  friend auto operator<=>(const Level&, const Level&) = default;
};

/// An all-ones submatrix of a Kronecker product, kept in factored form. The
/// sides a and b are the products of the per-level set sizes and are held
/// exactly, since they grow exponentially with depth.
class Rectangle {
 public:
  /// Depth-0 rectangle: the 1x1 covering of the 1x1 matrix A^(x)0.
  Rectangle();
  explicit Rectangle(std::vector<Level> levels);

  static Rectangle single(std::vector<std::uint32_t> rows, std::vector<std::uint32_t> cols);

  const std::vector<Level>& levels() const noexcept { return levels_; }
  std::size_t depth() const noexcept { return levels_.size(); }

  const BigInt& height() const noexcept { return height_; }
  const BigInt& width() const noexcept { return width_; }

  BigInt complexity() const { return height_ + width_; }
  double log_sigma() const { return log_sigma_of(height_, width_); }

  Rectangle transposed() const;
  /// Level-wise concatenation: this rectangle's levels first, then `inner`'s.
  Rectangle kron(const Rectangle& inner) const;

  friend bool operator==(const Rectangle& x, const Rectangle& y) { return x.levels_ == y.levels_; }
  friend auto operator<=>(const Rectangle& x, const Rectangle& y) { return x.levels_ <=> y.levels_; }

 private:
  std::vector<Level> levels_;
  BigInt height_ = 1;
  BigInt width_ = 1;
};

/// A mode-tagged multiset of rectangles covering A_0 (x) A_1 (x) ... where
/// level i's base matrix is baseSizes[i] x baseSizes[i].
struct Covering {
  Mode mode = Mode::Sum;
  std::vector<std::size_t> baseSizes;
  std::vector<Rectangle> rectangles;

  std::size_t depth() const noexcept { return baseSizes.size(); }
  /// Side of the covered matrix as an exact integer.
  BigInt side() const;
};

/// Checks level counts and index bounds; throws on malformed coverings.
void validate(const Covering& cover);

/// Rectangles sorted by level sets; the order used for serialization.
Covering canonicalized(Covering cover);

struct Expanded {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// Explicit global row/column indices of a factored rectangle, mixed radix
/// with level 0 most significant.
Expanded expand(const Rectangle& rect, std::span<const std::size_t> baseSizes,
                std::size_t sideCap = kDefaultSideCap);

struct Violation {
  std::size_t row = 0;
  std::size_t col = 0;
  int expected = 0;
  /// Rectangle multiplicity at the cell (saturates at 255; parity for XOR).
  int multiplicity = 0;
};

struct VerifyReport {
  bool ok = false;
  std::optional<Violation> firstViolation;
};

/// Cell-by-cell check of the covering equation in the covering's mode.
VerifyReport verify(const Covering& cover, const BoolMatrix& target,
                    std::size_t sideCap = kDefaultSideCap);

Metrics metrics(const Covering& cover);
ShapeSet shapes_of(const Covering& cover);

/// All pairwise level-concatenations; covers kron(A, B) when F covers A and
/// G covers B.
Covering kron_cover(const Covering& f, const Covering& g);
Covering transpose_cover(const Covering& cover);
bool is_one_sided(const Covering& cover);

}  // namespace kcover
