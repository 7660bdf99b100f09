#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fillable/contract.hpp"

using namespace fillable;

TEST_CASE("fresh oracle reads 0 everywhere") {
  OracleArray o(10);
  CHECK(o.read(5) == 0);
  CHECK(o.read(1) == 0);
  CHECK(o.read(10) == 0);
}

TEST_CASE("oracle fill then read") {
  OracleArray o(10);
  o.fill(7);
  CHECK(o.read(3) == 7);
}

TEST_CASE("oracle fill overwrites earlier writes") {
  OracleArray o(10);
  o.write(2, 9);
  o.fill(4);
  CHECK(o.read(2) == 4);
  o.write(2, 9);
  CHECK(o.read(2) == 9);
  CHECK(o.read(3) == 4);
}

TEST_CASE("oracle bounds are fatal") {
  OracleArray o(10);
  CHECK_THROWS_AS(o.read(0), ContractViolation);
  CHECK_THROWS_AS(o.read(11), ContractViolation);
  CHECK_THROWS_AS(o.write(11, 1), ContractViolation);
}

TEST_CASE("oracle fill touches n elements, reads and writes touch one") {
  OracleArray o(100);
  u64 before = o.touches();
  o.fill(1);
  CHECK(o.touches() - before == 100);
  before = o.touches();
  o.write(5, 2);
  o.read(5);
  CHECK(o.touches() - before == 2);
}

TEST_CASE("trivial array zeroes garbage eagerly at construction") {
  WordArena a(64, 64);
  a.fill_garbage(17);
  TrivialArray t = TrivialArray::create(a);
  for (u64 i = 1; i <= 64; ++i) CHECK(t.read(i) == 0);
}

TEST_CASE("trivial array matches the oracle on random sequences") {
  WordArena a(50, 8);
  a.fill_garbage(3);
  TrivialArray t = TrivialArray::create(a);
  OracleArray o(50, 8);
  Rng rng(11);
  for (int step = 0; step < 4000; ++step) {
    u64 roll = rng.below(100);
    if (roll < 55) {
      u64 i = rng.below(50) + 1;
      Word v = rng.next() & 0xff;
      t.write(i, v);
      o.write(i, v);
    } else if (roll < 95) {
      u64 i = rng.below(50) + 1;
      CHECK(t.read(i) == o.read(i));
    } else {
      Word v = rng.next() & 0xff;
      t.fill(v);
      o.fill(v);
    }
  }
}

TEST_CASE("trivial fill costs n stores; reads and writes cost one access") {
  WordArena a(128, 64);
  TrivialArray t = TrivialArray::create(a);
  a.op_boundary();
  a.meter().reset();
  t.fill(9);
  CHECK(a.op_boundary() == 128);
  t.read(4);
  CHECK(a.op_boundary() == 1);
  t.write(4, 1);
  CHECK(a.op_boundary() == 1);
}
