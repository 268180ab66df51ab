#include "kcover/covering.hpp"

#include <algorithm>
#include <cmath>

#include "kcover/error.hpp"

namespace kcover {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Sum: return "sum";
    case Mode::Or: return "or";
    case Mode::Xor: return "xor";
  }
  return "sum";
}

Mode parse_mode(std::string_view text) {
  if (text == "sum") return Mode::Sum;
  if (text == "or") return Mode::Or;
  if (text == "xor") return Mode::Xor;
  throw Error(ErrorKind::Parse, "unknown covering mode '" + std::string(text) + "'");
}

Rectangle::Rectangle() = default;

Rectangle::Rectangle(std::vector<Level> levels) : levels_(std::move(levels)) {
  for (auto& level : levels_) {
    if (level.rows.empty() || level.cols.empty()) {
      throw Error(ErrorKind::InvalidArgument, "rectangle levels must have nonempty row and column sets");
    }
    std::sort(level.rows.begin(), level.rows.end());
    std::sort(level.cols.begin(), level.cols.end());
    if (std::adjacent_find(level.rows.begin(), level.rows.end()) != level.rows.end() ||
        std::adjacent_find(level.cols.begin(), level.cols.end()) != level.cols.end()) {
      throw Error(ErrorKind::InvalidArgument, "duplicate index inside a rectangle level");
    }
    height_ *= level.rows.size();
    width_ *= level.cols.size();
  }
}

Rectangle Rectangle::single(std::vector<std::uint32_t> rows, std::vector<std::uint32_t> cols) {
  return Rectangle({Level{std::move(rows), std::move(cols)}});
}

Rectangle Rectangle::transposed() const {
  Rectangle out = *this;
  for (auto& level : out.levels_) std::swap(level.rows, level.cols);
  std::swap(out.height_, out.width_);
  return out;
}

Rectangle Rectangle::kron(const Rectangle& inner) const {
  Rectangle out = *this;
  out.levels_.insert(out.levels_.end(), inner.levels_.begin(), inner.levels_.end());
  out.height_ *= inner.height_;
  out.width_ *= inner.width_;
  return out;
}

BigInt Covering::side() const {
  BigInt s = 1;
  for (auto b : baseSizes) s *= b;
  return s;
}

void validate(const Covering& cover) {
  for (auto b : cover.baseSizes)
    if (b == 0) throw Error(ErrorKind::InvalidArgument, "base sizes must be positive");
  for (const auto& rect : cover.rectangles) {
    if (rect.depth() != cover.depth()) {
      throw Error(ErrorKind::DimensionMismatch, "rectangle depth " + std::to_string(rect.depth()) +
                                                    " differs from covering depth " +
                                                    std::to_string(cover.depth()));
    }
    for (std::size_t i = 0; i < rect.depth(); ++i) {
      const auto& level = rect.levels()[i];
      if (level.rows.back() >= cover.baseSizes[i] || level.cols.back() >= cover.baseSizes[i]) {
        throw Error(ErrorKind::DimensionMismatch, "rectangle index outside its level's base matrix");
      }
    }
  }
}

Covering canonicalized(Covering cover) {
  std::sort(cover.rectangles.begin(), cover.rectangles.end());
  return cover;
}

namespace {

std::vector<std::size_t> expand_axis(const Rectangle& rect, std::span<const std::size_t> baseSizes, bool rows) {
  std::vector<std::size_t> out{0};
  for (std::size_t i = 0; i < rect.depth(); ++i) {
    const auto& set = rows ? rect.levels()[i].rows : rect.levels()[i].cols;
    std::vector<std::size_t> next;
    next.reserve(out.size() * set.size());
    for (auto prefix : out)
      for (auto digit : set) next.push_back(prefix * baseSizes[i] + digit);
    out = std::move(next);
  }
  return out;
}

}  // namespace

Expanded expand(const Rectangle& rect, std::span<const std::size_t> baseSizes, std::size_t sideCap) {
  if (rect.depth() != baseSizes.size()) {
    throw Error(ErrorKind::DimensionMismatch, "expand: rectangle depth does not match base sizes");
  }
  BigInt side = 1;
  for (auto b : baseSizes) side *= b;
  if (side > sideCap) {
    throw Error(ErrorKind::SizeLimit, "expand: matrix side " + side.str() + " exceeds the cap " + std::to_string(sideCap));
  }
  return {expand_axis(rect, baseSizes, true), expand_axis(rect, baseSizes, false)};
}

VerifyReport verify(const Covering& cover, const BoolMatrix& target, std::size_t sideCap) {
  validate(cover);
  const BigInt side = cover.side();
  if (side != target.rows() || side != target.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "verify: covering spans a " + side.str() + "-sided matrix, target is " +
                                                  std::to_string(target.rows()) + "x" + std::to_string(target.cols()));
  }
  const std::size_t n = target.rows();
  // Saturating counts for SUM/OR, parity for XOR.
  std::vector<std::uint8_t> mult(n * n, 0);
  for (const auto& rect : cover.rectangles) {
    const auto cells = expand(rect, cover.baseSizes, sideCap);
    for (auto r : cells.rows) {
      std::uint8_t* row = mult.data() + r * n;
      for (auto c : cells.cols) {
        if (cover.mode == Mode::Xor) {
          row[c] ^= 1;
        } else if (row[c] != 255) {
          ++row[c];
        }
      }
    }
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const int expected = target.at(r, c) ? 1 : 0;
      const int m = mult[r * n + c];
      bool good = false;
      switch (cover.mode) {
        case Mode::Sum: good = m == expected; break;
        case Mode::Or: good = (m >= 1) == (expected == 1); break;
        case Mode::Xor: good = m == expected; break;
      }
      if (!good) return {false, Violation{r, c, expected, m}};
    }
  return {true, std::nullopt};
}

ShapeSet shapes_of(const Covering& cover) {
  ShapeSet shapes;
  for (const auto& rect : cover.rectangles) shapes.add(rect.height(), rect.width());
  return shapes;
}

Metrics metrics(const Covering& cover) {
  Metrics m;
  LogSum sigma;
  m.w = 0;
  for (const auto& rect : cover.rectangles) {
    m.w += rect.complexity();
    sigma.add_log(rect.log_sigma());
  }
  m.wApprox = to_double(m.w);
  m.logW = m.w > 0 ? log_big(m.w) : -INFINITY;
  m.sigmaLog = sigma.log();
  m.sigma = cover.rectangles.empty() ? 0.0 : std::exp(m.sigmaLog);
  m.count = cover.rectangles.size();
  return m;
}

Covering kron_cover(const Covering& f, const Covering& g) {
  if (f.mode != g.mode) throw Error(ErrorKind::ModeMismatch, "kron_cover: coverings have different modes");
  Covering out;
  out.mode = f.mode;
  out.baseSizes = f.baseSizes;
  out.baseSizes.insert(out.baseSizes.end(), g.baseSizes.begin(), g.baseSizes.end());
  out.rectangles.reserve(f.rectangles.size() * g.rectangles.size());
  for (const auto& outer : f.rectangles)
    for (const auto& inner : g.rectangles) out.rectangles.push_back(outer.kron(inner));
  return out;
}

Covering transpose_cover(const Covering& cover) {
  Covering out = cover;
  for (auto& rect : out.rectangles) rect = rect.transposed();
  return out;
}

bool is_one_sided(const Covering& cover) {
  return std::all_of(cover.rectangles.begin(), cover.rectangles.end(),
                     [](const Rectangle& r) { return r.height() >= r.width(); });
}

}  // namespace kcover
