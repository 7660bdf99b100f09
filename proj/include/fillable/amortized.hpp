#pragma once

#include "fillable/contract.hpp"
#include "fillable/folklore.hpp"

namespace fillable {

/// Deterministic fillable array over an arena of n words plus the mode bit.
///
/// Naive mode (mode bit set): word i-1 holds entry i directly.
///
/// Linked mode: only entries written since the last fill are materialized,
/// as nodes in per-block doubly linked lists.
///   word 0        last fill value
///   word 1        allocated node count
///   words 2..     folklore store of list heads, one per block of 50 indices
///   node area     4-word nodes (prev, next, index, value), floor(n/50) slots
///   remainder     untouched until conversion
/// List pointers are arena word indexes; the value n serves as null. Filling
/// the node area triggers a single linear pass back to naive mode, paid for
/// by the writes that preceded it.
class AmortizedFillable final : public Fillable {
 public:
  static constexpr u64 kBlockLen = 50;
  static constexpr u64 kMinLen = 350;

  /// Fresh structure; behaves as if filled with 0. O(1) even over garbage.
  static AmortizedFillable create(WordArena& a) {
    AmortizedFillable s(a);
    s.fill(0);
    return s;
  }

  /// Adopts whatever consistent state the arena already holds.
  static AmortizedFillable attach(WordArena& a) { return AmortizedFillable(a); }

  u64 length() const override { return n_; }
  void fill(Word delta) override;
  void write(u64 i, Word delta) override;
  Word read(u64 i) override;
  u64 conversion_count() const override { return conversions_; }

  /// Consistency check over unmetered reads; throws on violation.
  void audit() const;

 private:
  explicit AmortizedFillable(WordArena& a);

  FolkloreRegion heads() const { return FolkloreRegion::attach(*a_, kHeadsBase, header_count_); }
  u64 block_of(u64 i) const { return (i - 1) / kBlockLen; }
  void convert_to_naive(u64 live);

  static constexpr u64 kFillValueWord = 0;
  static constexpr u64 kActiveCountWord = 1;
  static constexpr u64 kHeadsBase = 2;

  WordArena* a_;
  u64 n_;
  u64 null_;           // link value meaning "no node"
  u64 header_count_;   // ceil(n / kBlockLen)
  u64 node_cap_;       // floor(n / kBlockLen)
  u64 node_base_;
  u64 node_area_end_;
  u64 conversions_ = 0;
};

}  // namespace fillable
