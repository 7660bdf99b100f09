#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace fillable {

using Word = std::uint64_t;
using u64 = std::uint64_t;

/// Thrown on broken preconditions and internal invariant violations. Nothing
/// in the library catches it; a violation is a bug, not a recoverable error.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw ContractViolation(msg); }

inline void require(bool cond, const char* msg) {
  if (!cond) fail(msg);
}

/// All-ones mask for a w-bit word; safe to call before w is validated.
inline Word mask_for_width(unsigned w) {
  return w >= 64 ? ~Word{0} : (Word{1} << w) - 1;
}

/// Smallest b with 2^b >= n (n >= 1).
inline unsigned ceil_log2(u64 n) {
  unsigned b = 0;
  u64 v = 1;
  while (v < n) {
    ++b;
    if (b == 64) return 64;
    v <<= 1;
  }
  return b;
}

/// Deterministic RNG. All randomness in the project flows through explicit
/// seeds, so every run is reproducible.
class Rng {
 public:
  explicit Rng(u64 seed) : gen_(seed) {}

  u64 next() { return gen_(); }

  /// Uniform draw from [0, bound), bound >= 1.
  u64 below(u64 bound) {
    require(bound >= 1, "Rng::below: empty range");
    const u64 max = std::numeric_limits<u64>::max();
    u64 rem = (max % bound + 1) % bound;  // 2^64 mod bound
    u64 cut = max - rem;
    u64 v = gen_();
    while (v > cut) v = gen_();
    return v % bound;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace fillable
