#include "fillable/permutation.hpp"

#include <cmath>
#include <cstring>

namespace fillable {

namespace {

using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// v odd, v > 2, v - 1 = d * 2^s with d odd.
bool witness_composite(u64 a, u64 v, u64 d, unsigned s) {
  u64 x = pow_mod(a, d, v);
  if (x == 1 || x == v - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, v);
    if (x == v - 1) return false;
  }
  return true;
}

constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

u64 interval_low(u64 n) {
  u64 f = floor_pow_two_thirds(n);
  u64 lo = n > f + 2 ? n - f : 2;
  return lo;
}

void push_le64(std::vector<std::uint8_t>& out, u64 v) {
  for (unsigned b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

u64 read_le64(const std::vector<std::uint8_t>& in, u64 off) {
  u64 v = 0;
  for (unsigned b = 0; b < 8; ++b) v |= u64(in[off + b]) << (8 * b);
  return v;
}

}  // namespace

bool is_prime_u64(u64 v) {
  if (v < 2) return false;
  for (u64 q : kWitnesses) {
    if (v == q) return true;
    if (v % q == 0) return false;
  }
  u64 d = v - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set decides primality for all inputs below 2^64.
  for (u64 a : kWitnesses)
    if (witness_composite(a, v, d, s)) return false;
  return true;
}

u64 floor_pow_two_thirds(u64 n) {
  if (n <= 1) return n;
  u128 nn = u128(n) * n;
  u64 r = static_cast<u64>(std::pow(static_cast<double>(n), 2.0 / 3.0));
  r = r > 2 ? r - 2 : 0;
  auto cube_ok = [&](u64 c) { return u128(c) * c * c <= nn; };
  while (cube_ok(r + 1)) ++r;
  while (r > 0 && !cube_ok(r)) --r;
  return r;
}

u64 find_prime(u64 n, Rng& rng) {
  require(n >= 3, "find_prime: n too small");
  u64 lo = interval_low(n);
  u64 width = n - lo + 1;
  u64 bits = ceil_log2(n);
  u64 cap = 64 * bits * bits;
  if (cap < 64) cap = 64;
  for (u64 t = 0; t < cap; ++t) {
    u64 c = lo + rng.below(width);
    if (is_prime_u64(c)) return c;
  }
  for (u64 c = n; c >= lo; --c)
    if (is_prime_u64(c)) return c;
  fail("find_prime: interval contains no prime");
}

u64 family_prime(u64 n) {
  require(n >= 3, "family_prime: n too small");
  for (u64 c = n, lo = interval_low(n); c >= lo; --c)
    if (is_prime_u64(c)) return c;
  fail("family_prime: interval contains no prime");
}

u64 eval_affine_stage(u64 n, u64 p, const AffineStage& st, u64 x) {
  u64 s = x + st.shift;
  if (s >= n) s -= n;  // x and shift are both below n
  if (s >= p) return s;
  u64 r = mul_mod(st.mul, s, p) + st.add;
  if (r >= p) r -= p;
  return r;
}

PermutationSeed PermutationSeed::sample(u64 n, Rng& rng) {
  require(n >= 1, "permutation: empty domain");
  PermutationSeed s;
  s.n_ = n;
  if (n < kTableCutoff) {
    s.table_.resize(n);
    for (u64 i = 0; i < n; ++i) s.table_[i] = static_cast<std::uint32_t>(i);
    for (u64 i = n; i > 1; --i)
      std::swap(s.table_[i - 1], s.table_[rng.below(i)]);
    return s;
  }
  s.p_ = family_prime(n);
  for (auto& st : s.stages_) {
    st.shift = rng.below(n);
    st.mul = 1 + rng.below(s.p_ - 1);
    st.add = rng.below(s.p_);
  }
  return s;
}

PermutationSeed PermutationSeed::identity(u64 n) {
  require(n >= 1, "permutation: empty domain");
  PermutationSeed s;
  s.n_ = n;
  if (n < kTableCutoff) {
    s.table_.resize(n);
    for (u64 i = 0; i < n; ++i) s.table_[i] = static_cast<std::uint32_t>(i);
    return s;
  }
  s.p_ = family_prime(n);
  return s;  // all stages default to shift 0, mul 1, add 0
}

u64 PermutationSeed::bit_size() const {
  if (table_mode()) return n_ * u64{ceil_log2(n_)};
  return u64{kStageCount} * (ceil_log2(n_) + 2 * u64{ceil_log2(p_)});
}

std::vector<std::uint8_t> PermutationSeed::to_bytes() const {
  std::vector<std::uint8_t> out;
  if (table_mode()) {
    out.reserve(table_.size() * 8);
    for (std::uint32_t v : table_) push_le64(out, v);
    return out;
  }
  out.reserve(kStageCount * 3 * 8);
  for (const auto& st : stages_) {
    push_le64(out, st.shift);
    push_le64(out, st.mul);
    push_le64(out, st.add);
  }
  return out;
}

PermutationSeed PermutationSeed::from_bytes(u64 n, const std::vector<std::uint8_t>& bytes) {
  require(n >= 1, "permutation: empty domain");
  PermutationSeed s;
  s.n_ = n;
  if (n < kTableCutoff) {
    require(bytes.size() == n * 8, "permutation: bad table seed length");
    s.table_.resize(n);
    std::vector<bool> seen(n, false);
    for (u64 i = 0; i < n; ++i) {
      u64 v = read_le64(bytes, i * 8);
      require(v < n && !seen[v], "permutation: table seed is not a permutation");
      seen[v] = true;
      s.table_[i] = static_cast<std::uint32_t>(v);
    }
    return s;
  }
  require(bytes.size() == u64{kStageCount} * 3 * 8, "permutation: bad seed length");
  s.p_ = family_prime(n);
  for (unsigned i = 0; i < kStageCount; ++i) {
    AffineStage st;
    st.shift = read_le64(bytes, (i * 3 + 0) * 8);
    st.mul = read_le64(bytes, (i * 3 + 1) * 8);
    st.add = read_le64(bytes, (i * 3 + 2) * 8);
    require(st.shift < n, "permutation: stage shift out of range");
    require(st.mul >= 1 && st.mul < s.p_, "permutation: stage multiplier out of range");
    require(st.add < s.p_, "permutation: stage offset out of range");
    s.stages_[i] = st;
  }
  return s;
}

}  // namespace fillable
