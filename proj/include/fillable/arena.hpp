#pragma once

#include <cstdint>
#include <vector>

#include "fillable/common.hpp"

namespace fillable {

/// Access counters for one arena. Every word load/store costs one unit;
/// op_boundary() on the arena closes the current per-operation window.
class CostMeter {
 public:
  void on_load() {
    ++loads_;
    ++current_op_;
  }
  void on_store() {
    ++stores_;
    ++current_op_;
  }

  u64 loads() const { return loads_; }
  u64 stores() const { return stores_; }
  u64 total() const { return loads_ + stores_; }
  u64 current_op() const { return current_op_; }
  u64 per_op_max() const { return per_op_max_; }

  u64 close_op() {
    u64 c = current_op_;
    if (c > per_op_max_) per_op_max_ = c;
    current_op_ = 0;
    return c;
  }

  void reset() { loads_ = stores_ = current_op_ = per_op_max_ = 0; }

 private:
  u64 loads_ = 0;
  u64 stores_ = 0;
  u64 current_op_ = 0;
  u64 per_op_max_ = 0;
};

/// Persistent state of an arena: n words of w bits plus the mode bit,
/// n*w + 1 bits in total. The meter is instrumentation and never captured.
struct ArenaSnapshot {
  u64 n = 0;
  unsigned w = 0;
  std::vector<Word> words;
  bool mode_bit = false;

  u64 bit_size() const { return n * static_cast<u64>(w) + 1; }

  /// Bit-packed little-endian encoding, ceil((n*w + 1) / 8) bytes.
  std::vector<std::uint8_t> to_bytes() const;
  static ArenaSnapshot from_bytes(u64 n, unsigned w, const std::vector<std::uint8_t>& bytes);
};

/// Simulated word memory: exactly n w-bit words plus one mode bit.
class WordArena {
 public:
  /// w must leave two bits of headroom over a link value of n.
  WordArena(u64 n, unsigned w = 64)
      : n_(n),
        w_(w),
        mask_(mask_for_width(w)),
        words_(n, 0) {
    require(n >= 1, "arena: n must be positive");
    require(w <= 64, "arena: word width above 64 unsupported");
    require(w >= ceil_log2(n) + 2, "arena: word width too small for link values");
  }

  WordArena(const WordArena&) = delete;
  WordArena& operator=(const WordArena&) = delete;
  WordArena(WordArena&&) = default;
  WordArena& operator=(WordArena&&) = default;

  static WordArena restore(const ArenaSnapshot& s) {
    require(s.words.size() == s.n, "arena: malformed snapshot");
    WordArena a(s.n, s.w);
    a.words_ = s.words;
    a.mode_bit_ = s.mode_bit;
    return a;
  }

  u64 size() const { return n_; }
  unsigned width() const { return w_; }
  Word word_mask() const { return mask_; }

  Word load(u64 idx) const {
    require(idx < n_, "arena: load out of range");
    meter_.on_load();
    return words_[idx];
  }

  void store(u64 idx, Word v) {
    require(idx < n_, "arena: store out of range");
    require(v <= mask_, "arena: value exceeds word width");
    meter_.on_store();
    words_[idx] = v;
  }

  bool mode_bit() const { return mode_bit_; }
  void set_mode_bit(bool b) { mode_bit_ = b; }

  /// Overwrites every word and the mode bit with seeded pseudo-random junk.
  void fill_garbage(u64 seed) {
    Rng rng(seed);
    for (auto& word : words_) word = rng.next() & mask_;
    mode_bit_ = (rng.next() & 1) != 0;
  }

  ArenaSnapshot snapshot() const { return ArenaSnapshot{n_, w_, words_, mode_bit_}; }

  /// Closes the current per-operation access window and returns its cost.
  u64 op_boundary() { return meter_.close_op(); }

  CostMeter& meter() { return meter_; }
  const CostMeter& meter() const { return meter_; }

  /// Unmetered accessors for tests and consistency audits only.
  Word debug_peek(u64 idx) const {
    require(idx < n_, "arena: peek out of range");
    return words_[idx];
  }
  void debug_poke(u64 idx, Word v) {
    require(idx < n_, "arena: poke out of range");
    require(v <= mask_, "arena: poke value exceeds word width");
    words_[idx] = v;
  }

 private:
  u64 n_;
  unsigned w_;
  Word mask_;
  std::vector<Word> words_;
  bool mode_bit_ = false;
  mutable CostMeter meter_;
};

}  // namespace fillable
