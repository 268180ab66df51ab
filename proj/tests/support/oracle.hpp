#pragma once

// Reference implementations used only by tests. Nothing here calls into the
// library's algorithms; results are compared against the library instead.

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "kcover/covering.hpp"
#include "kcover/matrix.hpp"

namespace oracle {

using Dense = std::vector<std::vector<int>>;

/// D_{2^t} by enumerating subset pairs.
Dense disjointness(int t);

/// Per-cell rectangle counts of a covering, expanded with plain loops.
Dense cell_counts(const kcover::Covering& cover);

/// Cell-by-cell comparison of a covering with a dense target in SUM mode.
bool sum_covers(const kcover::Covering& cover, const Dense& target);

Dense to_dense(const kcover::BoolMatrix& m);

enum class Ring { Sum, Or, Xor };
std::vector<std::int64_t> matvec(const Dense& a, const std::vector<std::int64_t>& x, Ring ring);

/// Rectangle sides read off one rectangle at a time.
std::vector<std::pair<double, double>> sides(const kcover::Covering& cover);

double sigma(const std::vector<std::pair<double, double>>& rects);

/// chi(x) = sum sqrt(ab) (a/b)^x - sigma, summed rectangle by rectangle.
double chi(const std::vector<std::pair<double, double>>& rects, double x);

/// Minimal root of a convex chi with chi(0) = 0: locate the minimum with
/// Brent's method, then solve on the left branch with TOMS 748.
double lambda(const std::vector<std::pair<double, double>>& rects);

/// Greedy columns-then-rows extraction on an explicit bitmap of D_{2^t},
/// returning (a, b) per extracted rectangle.
std::vector<std::pair<double, double>> gradient_sides(int t);

/// The weight-minimal covering of D_4: 4x1 column, 1x3 row, two cells.
kcover::Covering f2();
/// The per-column covering of D_4.
kcover::Covering g2();

/// Random covering with `levels` square levels of the given side, each
/// rectangle picking nonempty random row and column subsets.
kcover::Covering random_covering(std::mt19937_64& rng, std::size_t side, std::size_t levels, std::size_t count);

}  // namespace oracle
