#include "fillable/randomized.hpp"

#include <vector>

namespace fillable {

RandomizedFillable::RandomizedFillable(WordArena& a, PermutationSeed seed)
    : a_(&a), n_(a.size()), seed_(std::move(seed)) {
  require(n_ >= kMinLen, "randomized: arena below minimum length");
  require(seed_.domain() == n_, "randomized: seed domain does not match arena");
}

void RandomizedFillable::fill(Word delta) {
  require(delta <= a_->word_mask(), "randomized: value exceeds word width");
  a_->set_mode_bit(false);
  u64 k0 = block_count(n_);
  u64 end = heads_end(k0);
  a_->store(kHeadsPtrWord, kHeadsBase);
  a_->store(kNodePtrWord, end);
  a_->store(kFreePtrWord, end);
  a_->store(kConvertedPtrWord, n_);
  a_->store(kFillValueWord, delta);
  heads(k0).fill(kNullPtr);
}

Word RandomizedFillable::read(u64 i) {
  require(i >= 1 && i <= n_, "randomized: index out of range");
  u64 pos = seed_.eval(i - 1);
  if (a_->mode_bit()) return a_->load(pos);
  u64 converted = a_->load(kConvertedPtrWord);
  if (pos >= converted) return a_->load(pos);
  u64 node = heads(block_count(converted)).read(pos / kBlockLen);
  while (node != kNullPtr) {
    if (a_->load(node + 2) == pos) return a_->load(node + 3);
    node = a_->load(node + 1);
  }
  return a_->load(kFillValueWord);
}

void RandomizedFillable::write(u64 i, Word delta) {
  require(i >= 1 && i <= n_, "randomized: index out of range");
  require(delta <= a_->word_mask(), "randomized: value exceeds word width");
  u64 pos = seed_.eval(i - 1);
  if (a_->mode_bit()) {
    a_->store(pos, delta);
    return;
  }
  u64 converted = a_->load(kConvertedPtrWord);
  if (pos >= converted) {
    a_->store(pos, delta);
    convert_step();
    return;
  }
  FolkloreRegion lists = heads(block_count(converted));
  u64 j = pos / kBlockLen;
  u64 head = lists.read(j);
  for (u64 node = head; node != kNullPtr; node = a_->load(node + 1)) {
    if (a_->load(node + 2) == pos) {
      a_->store(node + 3, delta);
      convert_step();
      return;
    }
  }
  u64 node = a_->load(kFreePtrWord);
  require(node + 4 <= converted, "randomized: node area would overrun converted suffix");
  a_->store(node + 0, kNullPtr);
  a_->store(node + 1, head);
  a_->store(node + 2, pos);
  a_->store(node + 3, delta);
  if (head != kNullPtr) a_->store(head + 0, node);
  lists.write(j, node);
  a_->store(kFreePtrWord, node + 4);
  convert_step();
}

void RandomizedFillable::convert_step() {
  u64 converted = a_->load(kConvertedPtrWord);
  u64 k = block_count(converted);
  u64 node_start = a_->load(kNodePtrWord);
  u64 node_end = a_->load(kFreePtrWord);
  u64 free_words = (node_start - heads_end(k)) + (converted - node_end);
  if (free_words * kFreeDen <= k * kBlockLen * kFreeNum || k <= kMinBlocksLeft) {
    full_convert(k);
    return;
  }
  for (u64 t = 0; t < kBlocksPerWrite; ++t) convert_last_block();
}

void RandomizedFillable::convert_last_block() {
  u64 converted = a_->load(kConvertedPtrWord);
  u64 k = block_count(converted);
  require(k >= 1, "randomized: no blocks left to convert");
  u64 j = k - 1;
  u64 floor_word = j * kBlockLen;
  require(a_->load(kFreePtrWord) <= floor_word,
          "randomized: node area overlaps the block being converted");
  Word blank = a_->load(kFillValueWord);
  for (u64 word = floor_word; word < converted; ++word) a_->store(word, blank);
  a_->store(kConvertedPtrWord, floor_word);

  FolkloreRegion lists = heads(k);
  for (u64 node = lists.read(j); node != kNullPtr; node = lists.read(j)) {
    u64 next = a_->load(node + 1);
    u64 pos = a_->load(node + 2);
    require(pos >= floor_word && pos < converted, "randomized: node outside its block");
    a_->store(pos, a_->load(node + 3));
    lists.write(j, next);
    if (next != kNullPtr) a_->store(next + 0, kNullPtr);
    remove_node(lists, node);
  }
  lists.delete_last();

  // The heads store just shrank by three words; keep the gap to the node
  // area under four by pulling the tail node forward (or snapping empty
  // pointers together).
  u64 lists_end = heads_end(j);
  u64 node_start = a_->load(kNodePtrWord);
  if (node_start - lists_end >= 4) {
    u64 node_end = a_->load(kFreePtrWord);
    if (node_end == node_start) {
      a_->store(kNodePtrWord, lists_end);
      a_->store(kFreePtrWord, lists_end);
    } else {
      u64 last = node_end - 4;
      u64 dst = node_start - 4;
      u64 prev2 = a_->load(last + 0);
      u64 next2 = a_->load(last + 1);
      u64 pos2 = a_->load(last + 2);
      u64 val2 = a_->load(last + 3);
      a_->store(dst + 0, prev2);
      a_->store(dst + 1, next2);
      a_->store(dst + 2, pos2);
      a_->store(dst + 3, val2);
      if (prev2 != kNullPtr) a_->store(prev2 + 1, dst);
      else lists.write(pos2 / kBlockLen, dst);
      if (next2 != kNullPtr) a_->store(next2 + 0, dst);
      a_->store(kNodePtrWord, dst);
      a_->store(kFreePtrWord, node_end - 4);
    }
  }
}

void RandomizedFillable::remove_node(FolkloreRegion& lists, u64 node) {
  u64 node_end = a_->load(kFreePtrWord);
  u64 last = node_end - 4;
  if (last != node) {
    u64 prev2 = a_->load(last + 0);
    u64 next2 = a_->load(last + 1);
    u64 pos2 = a_->load(last + 2);
    u64 val2 = a_->load(last + 3);
    a_->store(node + 0, prev2);
    a_->store(node + 1, next2);
    a_->store(node + 2, pos2);
    a_->store(node + 3, val2);
    if (prev2 != kNullPtr) a_->store(prev2 + 1, node);
    else lists.write(pos2 / kBlockLen, node);
    if (next2 != kNullPtr) a_->store(next2 + 0, node);
  }
  a_->store(kFreePtrWord, node_end - 4);
}

void RandomizedFillable::full_convert(u64 k) {
  full_convert_k_.push_back(k);
  u64 region_len = a_->load(kConvertedPtrWord);
  Word blank = a_->load(kFillValueWord);
  u64 node_start = a_->load(kNodePtrWord);
  u64 node_end = a_->load(kFreePtrWord);
  FolkloreRegion lists = heads(k);

  for (u64 word = node_end; word < region_len; ++word) a_->store(word, blank);

  u64 first_gap_block = (node_end + kBlockLen - 1) / kBlockLen;
  require(first_gap_block < k, "randomized: bookkeeping spans every unconverted block");
  for (u64 j = k; j-- > first_gap_block;) {
    for (u64 node = lists.read(j); node != kNullPtr; node = lists.read(j)) {
      u64 next = a_->load(node + 1);
      u64 pos = a_->load(node + 2);
      require(pos / kBlockLen == j, "randomized: node outside its block");
      a_->store(pos, a_->load(node + 3));
      lists.write(j, next);
      if (next != kNullPtr) a_->store(next + 0, kNullPtr);
      remove_node(lists, node);
    }
  }

  u64 survivors = (a_->load(kFreePtrWord) - node_start) / 4;
  u64 gap_floor = first_gap_block * kBlockLen;
  u64 gap_head = kNullPtr;
  u64 scan = gap_floor;
  for (u64 s = 0; s < survivors; ++s) {
    u64 node = node_start + 4 * s;
    while (true) {
      require(scan + 3 <= region_len, "randomized: ran out of conversion gaps");
      if (a_->load(scan) == blank && a_->load(scan + 1) == blank && a_->load(scan + 2) == blank)
        break;
      ++scan;
    }
    u64 pos = a_->load(node + 2);
    require(pos < gap_floor, "randomized: survivor outside low blocks");
    a_->store(scan + 0, gap_head);
    a_->store(scan + 1, pos);
    a_->store(scan + 2, a_->load(node + 3));
    gap_head = scan;
    scan += 3;
  }

  for (u64 word = 0; word < node_end; ++word) a_->store(word, blank);

  for (u64 g = gap_head; g != kNullPtr; g = a_->load(g + 0))
    a_->store(a_->load(g + 1), a_->load(g + 2));

  for (u64 g = gap_head; g != kNullPtr;) {
    u64 next = a_->load(g + 0);
    a_->store(g + 0, blank);
    a_->store(g + 1, blank);
    a_->store(g + 2, blank);
    g = next;
  }

  a_->set_mode_bit(true);
}

u64 RandomizedFillable::blocks_left() const {
  if (a_->mode_bit()) return 0;
  return block_count(a_->debug_peek(kConvertedPtrWord));
}

u64 RandomizedFillable::front_slack() const {
  if (a_->mode_bit()) return 0;
  u64 k = block_count(a_->debug_peek(kConvertedPtrWord));
  return a_->debug_peek(kNodePtrWord) - heads_end(k);
}

void RandomizedFillable::audit() const {
  if (a_->mode_bit()) return;
  u64 converted = a_->debug_peek(kConvertedPtrWord);
  u64 k = block_count(converted);
  u64 node_start = a_->debug_peek(kNodePtrWord);
  u64 node_end = a_->debug_peek(kFreePtrWord);
  require(a_->debug_peek(kHeadsPtrWord) == kHeadsBase, "audit: heads pointer corrupt");
  require(heads_end(k) <= node_start, "audit: node area overlaps heads store");
  require(node_start - heads_end(k) < 7, "audit: front slack too wide");
  require(node_start <= node_end && node_end <= converted && converted <= n_,
          "audit: regions out of order");
  require((node_end - node_start) % 4 == 0, "audit: ragged node area");
  require(converted == n_ || converted % kBlockLen == 0, "audit: converted start misaligned");

  u64 node_total = (node_end - node_start) / 4;
  std::vector<bool> slot_seen(node_total, false);
  FolkloreRegion lists = heads(k);
  u64 walked = 0;
  for (u64 j = 0; j < k; ++j) {
    u64 prev = kNullPtr;
    u64 node = lists.peek(j);
    u64 steps = 0;
    while (node != kNullPtr) {
      require(++steps <= node_total, "audit: list longer than node count");
      require(node >= node_start && node < node_end && (node - node_start) % 4 == 0,
              "audit: node address outside the node area");
      u64 slot = (node - node_start) / 4;
      require(!slot_seen[slot], "audit: node linked twice");
      slot_seen[slot] = true;
      require(a_->debug_peek(node + 0) == prev, "audit: prev link mismatch");
      u64 pos = a_->debug_peek(node + 2);
      require(pos < converted && pos / kBlockLen == j, "audit: node in wrong block");
      prev = node;
      node = a_->debug_peek(node + 1);
      ++walked;
    }
  }
  require(walked == node_total, "audit: orphaned node slots");
}

}  // namespace fillable
