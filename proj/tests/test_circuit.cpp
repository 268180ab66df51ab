#include <doctest.h>

#include <random>

#include "kcover/circuit.hpp"
#include "kcover/error.hpp"
#include "kcover/ks_family.hpp"
#include "support/oracle.hpp"

using namespace kcover;

TEST_CASE("gate and wire counts") {
  const Depth2Circuit f = lower(oracle::f2());
  CHECK(f.gate_count() == 4);
  CHECK(f.wire_count() == 13);
  const Depth2Circuit g = lower(oracle::g2());
  CHECK(g.gate_count() == 4);
  CHECK(g.wire_count() == 13);
  const Depth2Circuit one = lower(Covering{Mode::Sum, {1}, {Rectangle::single({0}, {0})}});
  CHECK(one.gate_count() == 1);
  CHECK(one.wire_count() == 2);
  CHECK(f.semiring == Semiring::IntegerSum);
}

TEST_CASE("unit vector probe gives a column of D4") {
  const Depth2Circuit f = lower(oracle::f2());
  const std::vector<std::int64_t> e0{1, 0, 0, 0};
  CHECK(evaluate(f, e0) == std::vector<std::int64_t>{1, 1, 1, 1});
  const std::vector<std::int64_t> e3{0, 0, 0, 1};
  CHECK(evaluate(f, e3) == std::vector<std::int64_t>{1, 0, 0, 0});
}

TEST_CASE("evaluation matches the dense oracle") {
  std::mt19937_64 rng(3);
  const auto d4 = oracle::disjointness(2);
  const Depth2Circuit sum = lower(oracle::f2());
  const Depth2Circuit orc = lower(oracle::g2(), Semiring::BooleanOr);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::int64_t> x(4);
    for (auto& v : x) v = static_cast<std::int64_t>(rng() & 1);
    CHECK(evaluate(sum, x) == oracle::matvec(d4, x, oracle::Ring::Sum));
    CHECK(evaluate(orc, x) == oracle::matvec(d4, x, oracle::Ring::Or));
  }
}

TEST_CASE("semiring follows the covering mode") {
  Covering c = oracle::f2();
  c.mode = Mode::Xor;
  CHECK(lower(c).semiring == Semiring::Mod2Xor);
  CHECK(semiring_for(Mode::Or) == Semiring::BooleanOr);
  CHECK(parse_semiring("sum") == Semiring::IntegerSum);
  CHECK_THROWS_AS(parse_semiring("max"), Error);
}

TEST_CASE("evaluate input checks") {
  const Depth2Circuit orc = lower(oracle::g2(), Semiring::BooleanOr);
  const std::vector<std::int64_t> shortX{1, 0};
  CHECK_THROWS_AS(evaluate(orc, shortX), Error);
  const std::vector<std::int64_t> nonBinary{2, 0, 0, 0};
  CHECK_THROWS_AS(evaluate(orc, nonBinary), Error);
}
