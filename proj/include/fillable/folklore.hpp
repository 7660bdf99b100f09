#pragma once

#include "fillable/arena.hpp"

namespace fillable {

/// O(1)-fill array with delete-last, living in a caller-designated
/// contiguous sub-range of an arena. Never initialized: attach is free and
/// the structure is usable after the first fill, whatever junk the words
/// held before.
///
/// Layout at `base` for logical length m, 3m + 2 words:
///   base+0        numActive: distinct indices written since the last fill
///   base+1        value installed by the last fill
///   base+2+3t     value of index t
///   base+3+3t     written-index stack, slot t+1
///   base+4+3t     stack slot claimed by index t
///
/// A stack slot s in [1, numActive] vouches for index t iff it stores t;
/// any other slot word, garbage included, reads as "never written". Slots
/// are numbered from 1 so a junk slot word of 0 can never validate.
class FolkloreRegion {
 public:
  static FolkloreRegion attach(WordArena& a, u64 base, u64 m) {
    require(base + words_needed(m) <= a.size(), "folklore: region exceeds arena");
    return FolkloreRegion(&a, base, m);
  }

  static u64 words_needed(u64 m) { return 3 * m + 2; }

  /// Exactly two stores.
  void fill(Word delta) {
    a_->store(count_word(), 0);
    a_->store(fill_word(), delta);
  }

  Word read(u64 t) const {
    require(t < m_, "folklore: read out of range");
    u64 slot = a_->load(slot_word(t));
    u64 active = a_->load(count_word());
    if (slot >= 1 && slot <= active && a_->load(stack_word(slot)) == t)
      return a_->load(value_word(t));
    return a_->load(fill_word());
  }

  void write(u64 t, Word delta) {
    require(t < m_, "folklore: write out of range");
    a_->store(value_word(t), delta);
    u64 slot = a_->load(slot_word(t));
    u64 active = a_->load(count_word());
    if (slot >= 1 && slot <= active && a_->load(stack_word(slot)) == t) return;
    ++active;
    a_->store(stack_word(active), t);
    a_->store(slot_word(t), active);
    a_->store(count_word(), active);
  }

  /// Drops the last index; the region thereafter occupies 3(m-1) + 2 words
  /// and nothing beyond them is written, now or later.
  void delete_last() {
    require(m_ >= 1, "folklore: delete on empty region");
    u64 t = m_ - 1;
    u64 slot = a_->load(slot_word(t));
    u64 active = a_->load(count_word());
    if (slot >= 1 && slot <= active && a_->load(stack_word(slot)) == t) {
      if (slot != active) {
        u64 moved = a_->load(stack_word(active));
        a_->store(stack_word(slot), moved);
        a_->store(slot_word(moved), slot);
      }
      a_->store(count_word(), active - 1);
    }
    --m_;
  }

  /// Unmetered read for audits and tests.
  Word peek(u64 t) const {
    require(t < m_, "folklore: peek out of range");
    u64 slot = a_->debug_peek(slot_word(t));
    u64 active = a_->debug_peek(count_word());
    if (slot >= 1 && slot <= active && a_->debug_peek(stack_word(slot)) == t)
      return a_->debug_peek(value_word(t));
    return a_->debug_peek(fill_word());
  }

  u64 length() const { return m_; }
  u64 base() const { return base_; }
  u64 end() const { return base_ + words_needed(m_); }

 private:
  FolkloreRegion(WordArena* a, u64 base, u64 m) : a_(a), base_(base), m_(m) {}

  u64 count_word() const { return base_; }
  u64 fill_word() const { return base_ + 1; }
  u64 value_word(u64 t) const { return base_ + 2 + 3 * t; }
  u64 stack_word(u64 s) const { return base_ + 3 + 3 * (s - 1); }  // s is 1-based
  u64 slot_word(u64 t) const { return base_ + 4 + 3 * t; }

  WordArena* a_;
  u64 base_;
  u64 m_;
};

}  // namespace fillable
