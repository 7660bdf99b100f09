#pragma once

#include <vector>

#include "fillable/contract.hpp"
#include "fillable/folklore.hpp"
#include "fillable/permutation.hpp"

namespace fillable {

/// Randomized fillable array: entry i lives at word F(i-1) for a seeded
/// permutation F, and linked-list bookkeeping is dismantled gradually, a
/// fixed number of blocks per write, instead of all at once.
///
/// Linked-mode layout (mode bit clear), in word order:
///   word 0       start of the heads store (always 5)
///   word 1       start of the node area
///   word 2       start of the free area (= end of the node area)
///   word 3       start of the converted suffix
///   word 4       last fill value
///   heads store  folklore array of list heads, one per unconverted block
///   node area    4-word nodes (prev, next, position, value), contiguous
///   free area    unused words
///   converted    suffix already holding final word values
/// List pointers are arena word indexes; 0 (inside the pointer block, never
/// a node) is null. Every linked-mode write converts the last
/// kBlocksPerWrite unconverted blocks; when free space runs low or only
/// kMinBlocksLeft blocks remain, one linear pass finishes the conversion.
class RandomizedFillable final : public Fillable {
 public:
  static constexpr u64 kBlockLen = 100;
  static constexpr u64 kBlocksPerWrite = 8;
  static constexpr u64 kMinBlocksLeft = 10;
  // Free-space trigger: |free| <= k * kBlockLen * 19/20.
  static constexpr u64 kFreeNum = 19;
  static constexpr u64 kFreeDen = 20;
  static constexpr u64 kMinLen = 12 * kBlockLen;

  /// Fresh structure; behaves as if filled with 0. O(1) even over garbage.
  static RandomizedFillable create(WordArena& a, PermutationSeed seed) {
    RandomizedFillable s(a, std::move(seed));
    s.fill(0);
    return s;
  }

  /// Adopts existing arena state; (arena, seed) is the whole story.
  static RandomizedFillable attach(WordArena& a, PermutationSeed seed) {
    return RandomizedFillable(a, std::move(seed));
  }

  u64 length() const override { return n_; }
  void fill(Word delta) override;
  void write(u64 i, Word delta) override;
  Word read(u64 i) override;
  u64 conversion_count() const override { return full_convert_k_.size(); }
  std::vector<u64> full_convert_blocks_left() const override { return full_convert_k_; }

  const PermutationSeed& seed() const { return seed_; }

  /// Unconverted block count; 0 once naive. Unmetered, tests only.
  u64 blocks_left() const;
  /// Gap between the heads store and the node area. Unmetered, tests only.
  u64 front_slack() const;
  /// Consistency check over unmetered reads; throws on violation.
  void audit() const;

 private:
  RandomizedFillable(WordArena& a, PermutationSeed seed);

  static constexpr u64 kHeadsPtrWord = 0;
  static constexpr u64 kNodePtrWord = 1;
  static constexpr u64 kFreePtrWord = 2;
  static constexpr u64 kConvertedPtrWord = 3;
  static constexpr u64 kFillValueWord = 4;
  static constexpr u64 kHeadsBase = 5;
  static constexpr u64 kNullPtr = 0;

  static u64 block_count(u64 converted_start) {
    return (converted_start + kBlockLen - 1) / kBlockLen;
  }
  static u64 heads_end(u64 k) { return kHeadsBase + FolkloreRegion::words_needed(k); }
  FolkloreRegion heads(u64 k) const { return FolkloreRegion::attach(*a_, kHeadsBase, k); }

  void convert_step();
  void convert_last_block();
  void remove_node(FolkloreRegion& lists, u64 node);
  void full_convert(u64 k);

  WordArena* a_;
  u64 n_;
  PermutationSeed seed_;
  std::vector<u64> full_convert_k_;
};

}  // namespace fillable
