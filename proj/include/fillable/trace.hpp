#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fillable/common.hpp"

namespace fillable {

class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(u64 line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
  u64 line;
};

struct TraceOp {
  char kind = 'R';               // 'F', 'W' or 'R'
  u64 index = 0;                 // 1-based, W/R only
  Word value = 0;                // payload of F/W
  std::optional<Word> expected;  // R only
  u64 line = 0;                  // source line, for error reports
};

/// Replayable operation log. Text format: one header line
///   n=<int> backend=<name> seed=<int> [perm=<hex>]
/// followed by one op per line, `F <v>`, `W <i> <v>` or `R <i> [<expected>]`.
/// `#` starts a comment; integers are decimal except the hex perm bytes.
struct OpTrace {
  u64 n = 0;
  std::string backend;
  u64 seed = 0;
  std::optional<std::vector<std::uint8_t>> perm_bytes;
  std::vector<TraceOp> ops;

  static OpTrace parse(std::istream& in);
  static OpTrace parse_text(const std::string& text);
  std::string serialize() const;
};

}  // namespace fillable
