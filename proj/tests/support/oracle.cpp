#include "oracle.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace oracle {

Dense disjointness(int t) {
  const std::size_t n = std::size_t{1} << t;
  Dense d(n, std::vector<int>(n, 0));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      bool shared = false;
      for (int e = 0; e < t; ++e) shared = shared || (((u >> e) & 1) && ((v >> e) & 1));
      d[u][v] = shared ? 0 : 1;
    }
  }
  return d;
}

namespace {

// Global indices of one side by repeated multiply-and-add over levels.
std::vector<std::size_t> global_indices(const kcover::Rectangle& r, const std::vector<std::size_t>& base, bool rows) {
  std::vector<std::size_t> acc{0};
  for (std::size_t i = 0; i < r.levels().size(); ++i) {
    const auto& ids = rows ? r.levels()[i].rows : r.levels()[i].cols;
    std::vector<std::size_t> next;
    for (std::size_t prefix : acc)
      for (auto id : ids) next.push_back(prefix * base[i] + id);
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

Dense cell_counts(const kcover::Covering& cover) {
  std::size_t side = 1;
  for (auto b : cover.baseSizes) side *= b;
  Dense counts(side, std::vector<int>(side, 0));
  for (const auto& r : cover.rectangles) {
    const auto rows = global_indices(r, cover.baseSizes, true);
    const auto cols = global_indices(r, cover.baseSizes, false);
    for (auto i : rows)
      for (auto j : cols) ++counts[i][j];
  }
  return counts;
}

bool sum_covers(const kcover::Covering& cover, const Dense& target) {
  const Dense counts = cell_counts(cover);
  return counts == target;
}

Dense to_dense(const kcover::BoolMatrix& m) {
  Dense d(m.rows(), std::vector<int>(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m.at(i, j) ? 1 : 0;
  return d;
}

std::vector<std::int64_t> matvec(const Dense& a, const std::vector<std::int64_t>& x, Ring ring) {
  std::vector<std::int64_t> y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!a[i][j]) continue;
      switch (ring) {
        case Ring::Sum: y[i] += x[j]; break;
        case Ring::Or: y[i] = y[i] || x[j]; break;
        case Ring::Xor: y[i] ^= (x[j] & 1); break;
      }
    }
  }
  return y;
}

std::vector<std::pair<double, double>> sides(const kcover::Covering& cover) {
  std::vector<std::pair<double, double>> out;
  for (const auto& r : cover.rectangles) {
    double a = 1, b = 1;
    for (const auto& lv : r.levels()) {
      a *= static_cast<double>(lv.rows.size());
      b *= static_cast<double>(lv.cols.size());
    }
    out.emplace_back(a, b);
  }
  return out;
}

double sigma(const std::vector<std::pair<double, double>>& rects) {
  double s = 0;
  for (auto [a, b] : rects) s += std::sqrt(a * b);
  return s;
}

double chi(const std::vector<std::pair<double, double>>& rects, double x) {
  double s = 0;
  for (auto [a, b] : rects) s += std::sqrt(a * b) * (std::pow(a / b, x) - 1.0);
  return s;
}

double lambda(const std::vector<std::pair<double, double>>& rects) {
  auto f = [&](double x) { return chi(rects, x); };
  const auto [xmin, fmin] = boost::math::tools::brent_find_minima(f, -64.0, 0.0, 52);
  if (!(fmin < 0)) throw std::runtime_error("oracle: chi has no negative value on [-64, 0)");
  std::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  const auto [lo, hi] = boost::math::tools::toms748_solve(f, -64.0, xmin, tol, iters);
  return 0.5 * (lo + hi);
}

std::vector<std::pair<double, double>> gradient_sides(int t) {
  const Dense d = disjointness(t);
  const std::size_t n = d.size();
  Dense left = d;
  std::vector<std::pair<double, double>> out;
  for (int k = 0; 2 * k <= t; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t v = 0; v < n; ++v) {
        if (__builtin_popcountll(v) != k) continue;
        int hits = 0;
        for (std::size_t u = 0; u < n; ++u) {
          int& cell = pass == 0 ? left[u][v] : left[v][u];
          if (cell) {
            ++hits;
            cell = 0;
          }
        }
        if (hits == 0) continue;
        out.emplace_back(pass == 0 ? std::pair<double, double>(hits, 1) : std::pair<double, double>(1, hits));
      }
    }
  }
  for (const auto& row : left)
    for (int c : row)
      if (c) throw std::runtime_error("oracle: extraction left ones uncovered");
  return out;
}

kcover::Covering f2() {
  using kcover::Rectangle;
  return kcover::Covering{kcover::Mode::Sum,
                          {4},
                          {Rectangle::single({0, 1, 2, 3}, {0}), Rectangle::single({0}, {1, 2, 3}),
                           Rectangle::single({2}, {1}), Rectangle::single({1}, {2})}};
}

kcover::Covering g2() {
  using kcover::Rectangle;
  return kcover::Covering{kcover::Mode::Sum,
                          {4},
                          {Rectangle::single({0, 1, 2, 3}, {0}), Rectangle::single({0, 2}, {1}),
                           Rectangle::single({0, 1}, {2}), Rectangle::single({0}, {3})}};
}

kcover::Covering random_covering(std::mt19937_64& rng, std::size_t side, std::size_t levels, std::size_t count) {
  auto subset = [&] {
    std::vector<std::uint32_t> ids;
    while (ids.empty()) {
      for (std::uint32_t i = 0; i < side; ++i)
        if (rng() & 1) ids.push_back(i);
    }
    return ids;
  };
  kcover::Covering c;
  c.baseSizes.assign(levels, side);
  for (std::size_t r = 0; r < count; ++r) {
    std::vector<kcover::Level> lv;
    for (std::size_t l = 0; l < levels; ++l) lv.push_back({subset(), subset()});
    c.rectangles.emplace_back(std::move(lv));
  }
  return c;
}

}  // namespace oracle
