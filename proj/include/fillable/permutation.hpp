#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fillable/common.hpp"

namespace fillable {

/// One permutation stage: cyclic shift by `shift`, then an affine map mod p
/// on the points that land below p. Points at or above p stay where the
/// shift put them.
struct AffineStage {
  u64 shift = 0;  // in [0, n)
  u64 mul = 1;    // in [1, p)
  u64 add = 0;    // in [0, p)
};

/// Deterministic primality test, valid for every 64-bit input.
bool is_prime_u64(u64 v);

/// floor(n^(2/3)), computed in integers.
u64 floor_pow_two_thirds(u64 n);

/// Random prime in [n - floor(n^(2/3)), n]. Draws candidates uniformly
/// (expected O(log n) draws) and falls back to a deterministic downward scan
/// after 64 * ceil(log2 n)^2 misses; fails only if the interval holds no
/// prime at all.
u64 find_prime(u64 n, Rng& rng);

/// Deterministic pick from the same interval (the largest prime in it), so
/// that a serialized seed can be reconstructed from n alone.
u64 family_prime(u64 n);

u64 eval_affine_stage(u64 n, u64 p, const AffineStage& stage, u64 x);

/// Compact description of one permutation of [0, n). For n >= kTableCutoff
/// this is kStageCount independent shift+affine stages over a fixed prime;
/// below the cutoff the permutation is stored directly as a shuffled table.
/// Immutable once built; eval is constant time and thread-safe.
class PermutationSeed {
 public:
  static constexpr unsigned kStageCount = 6;
  static constexpr u64 kTableCutoff = 32;

  static PermutationSeed sample(u64 n, Rng& rng);
  static PermutationSeed identity(u64 n);

  u64 domain() const { return n_; }
  u64 prime() const { return p_; }  // 0 in table mode
  bool table_mode() const { return p_ == 0; }

  u64 eval(u64 x) const {
    require(x < n_, "permutation: point outside domain");
    if (p_ == 0) return table_[x];
    for (const auto& st : stages_) x = eval_affine_stage(n_, p_, st, x);
    return x;
  }

  /// Information content in bits (not the in-memory footprint).
  u64 bit_size() const;

  /// Stage fields (or table entries) as little-endian 64-bit values.
  std::vector<std::uint8_t> to_bytes() const;
  static PermutationSeed from_bytes(u64 n, const std::vector<std::uint8_t>& bytes);

  const std::array<AffineStage, kStageCount>& stages() const { return stages_; }
  const std::vector<std::uint32_t>& table() const { return table_; }

 private:
  PermutationSeed() = default;

  u64 n_ = 0;
  u64 p_ = 0;
  std::array<AffineStage, kStageCount> stages_{};
  std::vector<std::uint32_t> table_;
};

}  // namespace fillable
