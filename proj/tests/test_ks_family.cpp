#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kcover/analysis.hpp"
#include "kcover/covering.hpp"
#include "kcover/error.hpp"
#include "kcover/ks_family.hpp"
#include "support/oracle.hpp"

using namespace kcover;

TEST_CASE("binomial tail sums") {
  CHECK(ks::binomial_tail(2, 0) == 4);
  CHECK(ks::binomial_tail(2, 1) == 3);
  CHECK(ks::binomial_tail(3, 1) == 7);
  CHECK(ks::binomial_tail(5, 6) == 0);
  for (int m = 0; m <= 20; ++m) {
    BigInt manual = 0;
    for (int k = 3; k <= m; ++k) manual += ks::binomial(m, k);
    CHECK(ks::binomial_tail(m, 3) == manual);
  }
  CHECK(ks::binomial(60, 30) == BigInt("118264581564861424"));
}

TEST_CASE("gradient covering reproduces the D4 and D8 spectral weights") {
  CHECK(metrics(ks::gradient_covering(2)).sigma == doctest::Approx(4 + std::sqrt(3.0)).epsilon(1e-12));
  CHECK(metrics(ks::gradient_covering(2)).count == 4);
  const double d8 = std::sqrt(8.0) + std::sqrt(7.0) + 3 * std::sqrt(3.0) + 3;
  CHECK(std::abs(metrics(ks::gradient_covering(3)).sigma - d8) < 1e-9);
  CHECK(shapes_of(ks::gradient_covering(2)) == shapes_of(oracle::f2()));
}

TEST_CASE("gradient and column coverings match brute-force construction") {
  for (int t = 1; t <= 8; ++t) {
    const auto target = oracle::disjointness(t);
    const Covering f = ks::gradient_covering(t);
    const Covering g = ks::column_covering(t);
    CHECK(oracle::sum_covers(f, target));
    CHECK(oracle::sum_covers(g, target));
    auto lib = oracle::sides(f);
    auto ref = oracle::gradient_sides(t);
    std::sort(lib.begin(), lib.end());
    std::sort(ref.begin(), ref.end());
    CHECK(lib == ref);
  }
}

TEST_CASE("gradient covering invariants for t <= 10") {
  for (int t = 1; t <= 10; ++t) {
    const Covering f = ks::gradient_covering(t);
    bool width1 = true;
    for (const auto& r : f.rectangles) width1 = width1 && (r.height() == 1 || r.width() == 1);
    CHECK(width1);
    CHECK(metrics(f).sigma == doctest::Approx(ks::sigma_gradient(t)).epsilon(1e-9));
    CHECK(shapes_of(f) == ks::gradient_shapes(t));
    const Covering g = ks::column_covering(t);
    CHECK(metrics(g).sigma == doctest::Approx(std::pow(std::sqrt(2.0) + 1, t)).epsilon(1e-9));
    CHECK(compensation_profile(g, BigRational(2)).mu ==
          doctest::Approx(std::pow(2 / (std::sqrt(2.0) + 1), t)).epsilon(1e-9));
    CHECK(shapes_of(g) == ks::column_shapes(t));
  }
}

TEST_CASE("gradient covering is cell-disjoint, so it covers in every mode") {
  for (int t = 1; t <= 8; ++t) {
    Covering f = ks::gradient_covering(t);
    const auto counts = oracle::cell_counts(f);
    int maxCount = 0;
    for (const auto& row : counts)
      for (int c : row) maxCount = std::max(maxCount, c);
    CHECK(maxCount == 1);
    const BoolMatrix d = kneser_sierpinski(t);
    for (Mode m : {Mode::Sum, Mode::Or, Mode::Xor}) {
      f.mode = m;
      CHECK(verify(f, d).ok);
    }
  }
}

TEST_CASE("column covering at t=2 is the D4 compensating covering") {
  CHECK(shapes_of(ks::column_covering(2)) == shapes_of(oracle::g2()));
  CHECK(metrics(ks::column_covering(3)).sigma == doctest::Approx(std::pow(std::sqrt(2.0) + 1, 3)).epsilon(1e-12));
}

TEST_CASE("closed-form spectral weights") {
  CHECK(ks::sigma_gradient(2) == doctest::Approx(4 + std::sqrt(3.0)).epsilon(1e-12));
  CHECK(ks::sigma_gradient(15) < 442412);
  const double e18 = ks::log_sigma_gradient(18) / (18 * std::log(2.0));
  CHECK(e18 >= 1.2497);
  CHECK(e18 <= 1.2507);
  for (int t = 11; t <= 30; ++t)
    CHECK(ks::log_sigma_gradient(t) == doctest::Approx(ks::gradient_shapes(t).log_sigma()).epsilon(1e-12));
}

TEST_CASE("family reports and scan") {
  const auto rows = ks::scan(20, {}, 3);
  REQUIRE(rows.size() == 19);
  const auto single = ks::scan(20, {}, 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].t == static_cast<int>(i) + 2);
    CHECK(rows[i].exponent == single[i].exponent);
    CHECK(rows[i].applicable == single[i].applicable);
  }
  for (int t : {2, 3, 15}) CHECK(rows[t - 2].applicable);
  for (int t : {16, 17, 18}) {
    CHECK_FALSE(rows[t - 2].applicable);
    CHECK(rows[t - 2].failureReason);
  }
  const std::string csv = ks::scan_csv(rows);
  CHECK(csv.rfind("t,sigmaF,sigmaG,exponent,lambdaF,muG,applicable,reason\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 20);
}

TEST_CASE("corollary exponent") {
  const double e = ks::corollary_exponent();
  CHECK(e < 1.251);
  CHECK(e > 1.25);
  CHECK(e == doctest::Approx(std::log(ks::sigma_gradient(15)) / (15 * std::log(2.0))).epsilon(1e-9));
}

TEST_CASE("explicit generation is bounded") {
  CHECK_THROWS_AS(ks::gradient_covering(ks::kMaxExplicitT + 1), Error);
  CHECK_THROWS_AS(ks::gradient_covering(0), Error);
}
