#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "kcover/covering.hpp"
#include "kcover/error.hpp"
#include "support/oracle.hpp"

using namespace kcover;

TEST_CASE("expand uses mixed radix with level 0 most significant") {
  const std::vector<std::size_t> base4{4};
  const Expanded one = expand(Rectangle::single({0, 1, 2, 3}, {0}), base4);
  CHECK(one.rows == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(one.cols == std::vector<std::size_t>{0});
  const std::vector<std::size_t> base22{2, 2};
  const Expanded two = expand(Rectangle({Level{{0}, {0, 1}}, Level{{1}, {0}}}), base22);
  CHECK(two.rows == std::vector<std::size_t>{1});
  CHECK(two.cols == std::vector<std::size_t>{0, 2});
}

TEST_CASE("expanded sides equal the factored sides for random rectangles") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t levels = 1 + rng() % 4;
    const Covering c = oracle::random_covering(rng, 3, levels, 1);
    const Rectangle& r = c.rectangles.front();
    const Expanded e = expand(r, c.baseSizes);
    CHECK(BigInt(e.rows.size()) == r.height());
    CHECK(BigInt(e.cols.size()) == r.width());
    CHECK(std::set<std::size_t>(e.rows.begin(), e.rows.end()).size() == e.rows.size());
  }
}

TEST_CASE("verify accepts the two D4 coverings and reports a removed cell") {
  const BoolMatrix d4 = kneser_sierpinski(2);
  CHECK(verify(oracle::f2(), d4).ok);
  CHECK(verify(oracle::g2(), d4).ok);
  Covering broken = oracle::f2();
  broken.rectangles.pop_back();  // the {1}x{2} cell
  const VerifyReport rep = verify(broken, d4);
  REQUIRE_FALSE(rep.ok);
  REQUIRE(rep.firstViolation);
  CHECK(rep.firstViolation->row == 1);
  CHECK(rep.firstViolation->col == 2);
  CHECK(rep.firstViolation->expected == 1);
  CHECK(rep.firstViolation->multiplicity == 0);
}

TEST_CASE("verify respects the covering mode") {
  const BoolMatrix d2 = kneser_sierpinski(1);
  Covering c{Mode::Sum, {2}, {Rectangle::single({0, 1}, {0}), Rectangle::single({0}, {0, 1})}};
  CHECK_FALSE(verify(c, d2).ok);  // (0,0) counted twice
  c.mode = Mode::Or;
  CHECK(verify(c, d2).ok);
  c.mode = Mode::Xor;
  CHECK_FALSE(verify(c, d2).ok);
  CHECK_THROWS_AS(verify(c, kneser_sierpinski(2)), Error);
}

TEST_CASE("metrics of the D4 coverings") {
  const Metrics f = metrics(oracle::f2());
  CHECK(f.sigma == doctest::Approx(4 + std::sqrt(3.0)).epsilon(1e-12));
  CHECK(f.w == 13);
  CHECK(f.count == 4);
  const Metrics g = metrics(oracle::g2());
  CHECK(g.sigma == doctest::Approx(3 + 2 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(g.w == 13);
}

TEST_CASE("kron_cover multiplies sigma and covers the Kronecker product") {
  const Covering ff = kron_cover(oracle::f2(), oracle::f2());
  CHECK(metrics(ff).sigma == doctest::Approx(std::pow(4 + std::sqrt(3.0), 2)).epsilon(1e-12));
  CHECK(oracle::sum_covers(ff, oracle::disjointness(4)));
  CHECK(verify(ff, kneser_sierpinski(4)).ok);
  const Covering unit{Mode::Sum, {1}, {Rectangle::single({0}, {0})}};
  const Metrics m1 = metrics(kron_cover(oracle::f2(), unit));
  const Metrics m0 = metrics(oracle::f2());
  CHECK(m1.w == m0.w);
  CHECK(m1.count == m0.count);
  CHECK(m1.sigma == doctest::Approx(m0.sigma));
  Covering orCover = oracle::g2();
  orCover.mode = Mode::Or;
  CHECK_THROWS_AS(kron_cover(oracle::f2(), orCover), Error);
}

TEST_CASE("transpose_cover") {
  const Covering f = oracle::f2();
  CHECK(canonicalized(transpose_cover(transpose_cover(f))).rectangles == canonicalized(f).rectangles);
  CHECK(metrics(transpose_cover(f)).sigma == doctest::Approx(metrics(f).sigma));
  CHECK(verify(transpose_cover(f), kneser_sierpinski(2).transposed()).ok);
}

TEST_CASE("one-sidedness") {
  CHECK(is_one_sided(oracle::g2()));
  CHECK_FALSE(is_one_sided(oracle::f2()));
  const Covering squares{Mode::Sum, {2}, {Rectangle::single({0}, {0}), Rectangle::single({0, 1}, {0, 1})}};
  CHECK(is_one_sided(squares));
}

TEST_CASE("validate rejects bad coverings") {
  Covering c{Mode::Sum, {4}, {Rectangle::single({0, 4}, {0})}};
  CHECK_THROWS_AS(validate(c), Error);
  CHECK_THROWS_AS(Rectangle::single({}, {0}), Error);
  CHECK_THROWS_AS(Rectangle::single({1, 1}, {0}), Error);
  Covering depthMismatch{Mode::Sum, {2, 2}, {Rectangle::single({0}, {0})}};
  CHECK_THROWS_AS(validate(depthMismatch), Error);
}

TEST_CASE("shape sets") {
  const ShapeSet s = shapes_of(oracle::f2());
  CHECK(s.count() == 4);
  CHECK(s.complexity() == 13);
  CHECK(s.coverage() == 9);
  CHECK(s.transposed().transposed() == s);
  CHECK_FALSE(s.is_one_sided());
  CHECK(shapes_of(oracle::g2()).is_one_sided());
  CHECK(std::exp(s.log_sigma()) == doctest::Approx(4 + std::sqrt(3.0)));
}
