#pragma once

#include <algorithm>
#include <vector>

#include "fillable/arena.hpp"

namespace fillable {

/// Shared operation surface: 1-based read/write plus whole-array fill.
/// An entry never set by a fill or a write reads as 0.
class Fillable {
 public:
  virtual ~Fillable() = default;

  virtual u64 length() const = 0;
  virtual void fill(Word delta) = 0;
  virtual void write(u64 i, Word delta) = 0;
  virtual Word read(u64 i) = 0;

  /// Mode-conversion instrumentation. Structures without conversions keep
  /// the defaults; the randomized structure also reports the number of
  /// unconverted blocks at each full conversion.
  virtual u64 conversion_count() const { return 0; }
  virtual std::vector<u64> full_convert_blocks_left() const { return {}; }
};

/// Reference implementation: eager O(n) fill, unrestricted memory. Ground
/// truth for differential tests.
class OracleArray final : public Fillable {
 public:
  explicit OracleArray(u64 n, unsigned w = 64)
      : mask_(mask_for_width(w)), values_(n, 0) {
    require(n >= 1, "oracle: n must be positive");
  }

  u64 length() const override { return values_.size(); }

  void fill(Word delta) override {
    require(delta <= mask_, "oracle: value exceeds word width");
    std::fill(values_.begin(), values_.end(), delta);
    touches_ += values_.size();
  }

  void write(u64 i, Word delta) override {
    require(i >= 1 && i <= values_.size(), "oracle: index out of range");
    require(delta <= mask_, "oracle: value exceeds word width");
    values_[i - 1] = delta;
    ++touches_;
  }

  Word read(u64 i) override {
    require(i >= 1 && i <= values_.size(), "oracle: index out of range");
    ++touches_;
    return values_[i - 1];
  }

  /// Element accesses so far; the oracle is not arena-backed, so it keeps
  /// its own counter for cost comparisons.
  u64 touches() const { return touches_; }

 private:
  Word mask_;
  std::vector<Word> values_;
  u64 touches_ = 0;
};

/// Plain array on an arena: O(1) read/write, O(n) fill, zero redundancy.
/// Baseline backend, also used for lengths below the other structures'
/// minimums.
class TrivialArray final : public Fillable {
 public:
  static TrivialArray create(WordArena& a) {
    TrivialArray t(a);
    t.fill(0);
    return t;
  }
  static TrivialArray attach(WordArena& a) { return TrivialArray(a); }

  u64 length() const override { return a_->size(); }

  void fill(Word delta) override {
    for (u64 i = 0; i < a_->size(); ++i) a_->store(i, delta);
  }

  void write(u64 i, Word delta) override {
    require(i >= 1 && i <= a_->size(), "trivial: index out of range");
    a_->store(i - 1, delta);
  }

  Word read(u64 i) override {
    require(i >= 1 && i <= a_->size(), "trivial: index out of range");
    return a_->load(i - 1);
  }

 private:
  explicit TrivialArray(WordArena& a) : a_(&a) {}
  WordArena* a_;
};

}  // namespace fillable
