#include "fillable/arena.hpp"

namespace fillable {

std::vector<std::uint8_t> ArenaSnapshot::to_bytes() const {
  u64 bits = bit_size();
  std::vector<std::uint8_t> out((bits + 7) / 8, 0);
  u64 cursor = 0;
  auto put_bit = [&](bool b) {
    if (b) out[cursor >> 3] |= static_cast<std::uint8_t>(1u << (cursor & 7));
    ++cursor;
  };
  for (Word v : words)
    for (unsigned b = 0; b < w; ++b) put_bit((v >> b) & 1);
  put_bit(mode_bit);
  return out;
}

ArenaSnapshot ArenaSnapshot::from_bytes(u64 n, unsigned w, const std::vector<std::uint8_t>& bytes) {
  ArenaSnapshot s;
  s.n = n;
  s.w = w;
  require(bytes.size() == (s.bit_size() + 7) / 8, "snapshot: byte length mismatch");
  u64 cursor = 0;
  auto get_bit = [&]() -> bool {
    bool b = (bytes[cursor >> 3] >> (cursor & 7)) & 1;
    ++cursor;
    return b;
  };
  s.words.resize(n);
  for (u64 i = 0; i < n; ++i) {
    Word v = 0;
    for (unsigned b = 0; b < w; ++b)
      if (get_bit()) v |= Word{1} << b;
    s.words[i] = v;
  }
  s.mode_bit = get_bit();
  return s;
}

}  // namespace fillable
