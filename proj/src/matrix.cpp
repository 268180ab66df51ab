#include "kcover/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "kcover/error.hpp"

namespace kcover {

BoolMatrix::BoolMatrix(std::size_t rows, std::size_t cols, std::optional<int> labelArity)
    : rows_(rows), cols_(cols), bits_(rows * cols, 0), arity_(labelArity) {
  if (arity_) {
    if (*arity_ < 0 || *arity_ > 30) throw Error(ErrorKind::InvalidArgument, "label arity out of range");
    const std::size_t side = std::size_t{1} << *arity_;
    if (rows != side || cols != side) {
      throw Error(ErrorKind::DimensionMismatch, "label arity t requires a 2^t x 2^t matrix");
    }
  }
}

BoolMatrix BoolMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BoolMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const int v = rows[r][c];
      if (v != 0 && v != 1) throw Error(ErrorKind::InvalidArgument, "matrix entries must be 0 or 1");
      m.set(r, c, v == 1);
    }
  }
  return m;
}

std::size_t BoolMatrix::popcount() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BoolMatrix BoolMatrix::transposed() const {
  BoolMatrix t(cols_, rows_, arity_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

BoolMatrix kneser_sierpinski(int t, std::size_t sideCap) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "kneser_sierpinski: t must be positive");
  if (t > 30 || (std::size_t{1} << t) > sideCap) {
    throw Error(ErrorKind::SizeLimit,
                "kneser_sierpinski: 2^" + std::to_string(t) + " exceeds the side cap " + std::to_string(sideCap));
  }
  const std::size_t side = std::size_t{1} << t;
  BoolMatrix d(side, side, t);
  for (std::size_t u = 0; u < side; ++u)
    for (std::size_t v = 0; v < side; ++v) d.set(u, v, (u & v) == 0);
  return d;
}

BoolMatrix kron(const BoolMatrix& a, const BoolMatrix& b, std::size_t sideCap) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > sideCap || cols > sideCap) {
    throw Error(ErrorKind::SizeLimit, "kron: product of size " + std::to_string(rows) + "x" +
                                          std::to_string(cols) + " exceeds the side cap");
  }
  std::optional<int> arity;
  if (a.label_arity() && b.label_arity()) arity = *a.label_arity() + *b.label_arity();
  BoolMatrix out(rows, cols, arity);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a.at(i, j)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (b.at(k, l)) out.set(i * b.rows() + k, j * b.cols() + l, true);
    }
  return out;
}

bool is_symmetric(const BoolMatrix& a) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = r + 1; c < a.cols(); ++c)
      if (a.at(r, c) != a.at(c, r)) return false;
  return true;
}

}  // namespace kcover
