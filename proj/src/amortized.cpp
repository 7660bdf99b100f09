#include "fillable/amortized.hpp"

#include <vector>

namespace fillable {

AmortizedFillable::AmortizedFillable(WordArena& a) : a_(&a), n_(a.size()), null_(a.size()) {
  require(n_ >= kMinLen, "amortized: arena below minimum length");
  header_count_ = (n_ + kBlockLen - 1) / kBlockLen;
  node_cap_ = n_ / kBlockLen;
  node_base_ = kHeadsBase + FolkloreRegion::words_needed(header_count_);
  node_area_end_ = node_base_ + 4 * node_cap_;
  require(node_area_end_ < n_, "amortized: bookkeeping would not fit");
}

void AmortizedFillable::fill(Word delta) {
  require(delta <= a_->word_mask(), "amortized: value exceeds word width");
  a_->set_mode_bit(false);
  heads().fill(null_);
  a_->store(kActiveCountWord, 0);
  a_->store(kFillValueWord, delta);
}

Word AmortizedFillable::read(u64 i) {
  require(i >= 1 && i <= n_, "amortized: index out of range");
  if (a_->mode_bit()) return a_->load(i - 1);
  u64 node = heads().read(block_of(i));
  while (node != null_) {
    if (a_->load(node + 2) == i) return a_->load(node + 3);
    node = a_->load(node + 1);
  }
  return a_->load(kFillValueWord);
}

void AmortizedFillable::write(u64 i, Word delta) {
  require(i >= 1 && i <= n_, "amortized: index out of range");
  require(delta <= a_->word_mask(), "amortized: value exceeds word width");
  if (a_->mode_bit()) {
    a_->store(i - 1, delta);
    return;
  }
  u64 j = block_of(i);
  u64 head = heads().read(j);
  for (u64 node = head; node != null_; node = a_->load(node + 1)) {
    if (a_->load(node + 2) == i) {
      a_->store(node + 3, delta);
      return;
    }
  }
  u64 active = a_->load(kActiveCountWord);
  u64 node = node_base_ + 4 * active;
  a_->store(node + 0, null_);
  a_->store(node + 1, head);
  a_->store(node + 2, i);
  a_->store(node + 3, delta);
  if (head != null_) a_->store(head + 0, node);
  heads().write(j, node);
  ++active;
  a_->store(kActiveCountWord, active);
  if (active == node_cap_) convert_to_naive(active);
}

void AmortizedFillable::convert_to_naive(u64 live) {
  FolkloreRegion lists = heads();
  Word blank = a_->load(kFillValueWord);

  // Blank everything past the bookkeeping area. Entries whose final value
  // is the blank itself need no further work.
  for (u64 word = node_area_end_; word < n_; ++word) a_->store(word, blank);

  // Free whole blocks in descending order while their words lie beyond the
  // bookkeeping area; the node area stays compact throughout.
  u64 first_gap_block = (node_area_end_ + kBlockLen - 1) / kBlockLen;
  require(first_gap_block < header_count_, "amortized: bookkeeping spans every block");
  for (u64 j = header_count_; j-- > first_gap_block;) {
    for (u64 node = lists.read(j); node != null_; node = lists.read(j)) {
      u64 next = a_->load(node + 1);
      u64 idx = a_->load(node + 2);
      require(idx >= 1 && idx - 1 >= node_area_end_, "amortized: freed node outside high blocks");
      a_->store(idx - 1, a_->load(node + 3));
      lists.write(j, next);
      if (next != null_) a_->store(next + 0, null_);
      u64 last = node_base_ + 4 * (live - 1);
      if (last != node) {
        u64 prev2 = a_->load(last + 0);
        u64 next2 = a_->load(last + 1);
        u64 idx2 = a_->load(last + 2);
        u64 val2 = a_->load(last + 3);
        a_->store(node + 0, prev2);
        a_->store(node + 1, next2);
        a_->store(node + 2, idx2);
        a_->store(node + 3, val2);
        if (prev2 != null_) a_->store(prev2 + 1, node);
        else lists.write(block_of(idx2), node);
        if (next2 != null_) a_->store(next2 + 0, node);
      }
      --live;
    }
  }

  // Survivors belong to blocks overlapping the bookkeeping area. Park each
  // as (next, index, value) in a gap of three blank words, well past the
  // last block any survivor writes into, then wipe the bookkeeping words.
  u64 gap_floor = first_gap_block * kBlockLen;
  u64 gap_head = null_;
  u64 scan = gap_floor;
  for (u64 s = 0; s < live; ++s) {
    u64 node = node_base_ + 4 * s;
    while (true) {
      require(scan + 3 <= n_, "amortized: ran out of conversion gaps");
      if (a_->load(scan) == blank && a_->load(scan + 1) == blank && a_->load(scan + 2) == blank)
        break;
      ++scan;
    }
    u64 idx = a_->load(node + 2);
    require(idx >= 1 && idx - 1 < gap_floor, "amortized: survivor outside low blocks");
    a_->store(scan + 0, gap_head);
    a_->store(scan + 1, idx);
    a_->store(scan + 2, a_->load(node + 3));
    gap_head = scan;
    scan += 3;
  }

  for (u64 word = 0; word < node_area_end_; ++word) a_->store(word, blank);

  for (u64 g = gap_head; g != null_; g = a_->load(g + 0))
    a_->store(a_->load(g + 1) - 1, a_->load(g + 2));

  for (u64 g = gap_head; g != null_;) {
    u64 next = a_->load(g + 0);
    a_->store(g + 0, blank);
    a_->store(g + 1, blank);
    a_->store(g + 2, blank);
    g = next;
  }

  a_->set_mode_bit(true);
  ++conversions_;
}

void AmortizedFillable::audit() const {
  if (a_->mode_bit()) return;
  u64 active = a_->debug_peek(kActiveCountWord);
  require(active <= node_cap_, "audit: node count above capacity");
  FolkloreRegion lists = heads();
  std::vector<bool> slot_seen(active, false);
  u64 total = 0;
  for (u64 j = 0; j < header_count_; ++j) {
    u64 prev = null_;
    u64 node = lists.peek(j);
    u64 steps = 0;
    while (node != null_) {
      require(++steps <= active, "audit: list longer than node count");
      require(node >= node_base_ && node < node_base_ + 4 * active &&
                  (node - node_base_) % 4 == 0,
              "audit: node address outside allocated slots");
      u64 slot = (node - node_base_) / 4;
      require(!slot_seen[slot], "audit: node linked twice");
      slot_seen[slot] = true;
      require(a_->debug_peek(node + 0) == prev, "audit: prev link mismatch");
      u64 idx = a_->debug_peek(node + 2);
      require(idx >= 1 && idx <= n_ && block_of(idx) == j, "audit: node in wrong block");
      prev = node;
      node = a_->debug_peek(node + 1);
      ++total;
    }
  }
  require(total == active, "audit: node count mismatch");
}

}  // namespace fillable
