#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fillable/arena.hpp"

using namespace fillable;

TEST_CASE("fresh arena is all zeros with the mode bit clear") {
  WordArena a(8, 64);
  for (u64 i = 0; i < 8; ++i) CHECK(a.load(i) == 0);
  CHECK_FALSE(a.mode_bit());
  WordArena one(1, 64);
  CHECK(one.load(0) == 0);
}

TEST_CASE("word width must hold a link value of n with headroom") {
  CHECK_THROWS_AS(WordArena(8, 3), ContractViolation);
  CHECK_THROWS_AS(WordArena(8, 4), ContractViolation);
  CHECK_NOTHROW(WordArena(8, 5));
  CHECK_NOTHROW(WordArena(1, 2));
  CHECK_THROWS_AS(WordArena(0, 64), ContractViolation);
  CHECK_THROWS_AS(WordArena(8, 65), ContractViolation);
}

TEST_CASE("load and store round-trip, last store wins") {
  WordArena a(8, 64);
  a.store(3, 17);
  CHECK(a.load(3) == 17);
  a.store(0, ~Word{0});
  CHECK(a.load(0) == ~Word{0});
  a.store(5, 1);
  a.store(5, 2);
  CHECK(a.load(5) == 2);
}

TEST_CASE("out-of-range and over-width accesses are fatal") {
  WordArena a(8, 5);
  CHECK_THROWS_AS(a.load(8), ContractViolation);
  CHECK_THROWS_AS(a.store(8, 0), ContractViolation);
  CHECK_THROWS_AS(a.store(0, Word{1} << 5), ContractViolation);
  a.store(0, (Word{1} << 5) - 1);
  CHECK(a.load(0) == 31);
}

TEST_CASE("garbage fill is deterministic per seed and differs across seeds") {
  WordArena a(4, 64), b(4, 64), c(4, 64);
  a.fill_garbage(1);
  b.fill_garbage(1);
  c.fill_garbage(2);
  bool same_ab = true, same_ac = true;
  for (u64 i = 0; i < 4; ++i) {
    same_ab = same_ab && a.debug_peek(i) == b.debug_peek(i);
    same_ac = same_ac && a.debug_peek(i) == c.debug_peek(i);
  }
  CHECK(same_ab);
  CHECK(a.mode_bit() == b.mode_bit());
  CHECK_FALSE(same_ac);

  WordArena single(1, 64);
  single.fill_garbage(99);  // any value is fine, it just must not throw
}

TEST_CASE("garbage respects the word mask at tight widths") {
  WordArena a(100, 9);
  a.fill_garbage(123);
  for (u64 i = 0; i < 100; ++i) CHECK(a.debug_peek(i) < (Word{1} << 9));
}

TEST_CASE("snapshot captures words and mode bit, not the meter") {
  WordArena a(6, 7);
  a.fill_garbage(5);
  a.store(2, 99);
  a.set_mode_bit(true);
  ArenaSnapshot s = a.snapshot();
  CHECK(s.bit_size() == 6 * 7 + 1);

  a.store(2, 1);  // diverge after the snapshot
  WordArena b = WordArena::restore(s);
  CHECK(b.load(2) == 99);
  CHECK(b.mode_bit());
  CHECK(b.meter().total() == 1);  // only the load above; restored meters start fresh
  for (u64 i = 0; i < 6; ++i)
    if (i != 2) CHECK(b.debug_peek(i) == a.debug_peek(i));
}

TEST_CASE("snapshot bytes pack to exactly n*w+1 bits and round-trip") {
  for (unsigned w : {7u, 11u, 64u}) {
    WordArena a(13, w);
    a.fill_garbage(w);
    a.set_mode_bit(w == 11);
    ArenaSnapshot s = a.snapshot();
    auto bytes = s.to_bytes();
    CHECK(bytes.size() == (13 * w + 1 + 7) / 8);
    ArenaSnapshot back = ArenaSnapshot::from_bytes(13, w, bytes);
    CHECK(back.words == s.words);
    CHECK(back.mode_bit == s.mode_bit);
  }
}

TEST_CASE("meter counts each access once and op_boundary closes windows") {
  WordArena a(16, 64);
  for (int i = 0; i < 5; ++i) a.load(0);
  a.store(1, 1);
  a.store(2, 2);
  CHECK(a.op_boundary() == 7);
  CHECK(a.op_boundary() == 0);
  CHECK(a.meter().loads() == 5);
  CHECK(a.meter().stores() == 2);

  auto spend = [&](int k) { for (int i = 0; i < k; ++i) a.load(0); a.op_boundary(); };
  a.meter().reset();
  spend(3);
  spend(9);
  spend(4);
  CHECK(a.meter().per_op_max() == 9);
}
