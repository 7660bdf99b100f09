#include "fillable/trace.hpp"

#include <istream>
#include <sstream>

namespace fillable {

namespace {

bool parse_u64(const std::string& s, u64& out) {
  if (s.empty()) return false;
  u64 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    u64 d = static_cast<u64>(c - '0');
    if (v > (~u64{0} - d) / 10) return false;
    v = v * 10 + d;
  }
  out = v;
  return true;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace

OpTrace OpTrace::parse(std::istream& in) {
  OpTrace trace;
  std::string line;
  u64 lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokens_of(strip_comment(line));
    if (toks.empty()) continue;

    if (!have_header) {
      bool have_n = false, have_backend = false, have_seed = false;
      for (const auto& t : toks) {
        auto eq = t.find('=');
        if (eq == std::string::npos)
          throw TraceParseError(lineno, "expected key=value in header, got '" + t + "'");
        std::string key = t.substr(0, eq), val = t.substr(eq + 1);
        if (key == "n") {
          if (!parse_u64(val, trace.n) || trace.n == 0)
            throw TraceParseError(lineno, "bad n value '" + val + "'");
          have_n = true;
        } else if (key == "backend") {
          trace.backend = val;
          have_backend = !val.empty();
        } else if (key == "seed") {
          if (!parse_u64(val, trace.seed))
            throw TraceParseError(lineno, "bad seed value '" + val + "'");
          have_seed = true;
        } else if (key == "perm") {
          if (val.size() % 2 != 0) throw TraceParseError(lineno, "odd-length perm hex");
          std::vector<std::uint8_t> bytes;
          bytes.reserve(val.size() / 2);
          for (size_t i = 0; i < val.size(); i += 2) {
            int hi = hex_digit(val[i]), lo = hex_digit(val[i + 1]);
            if (hi < 0 || lo < 0) throw TraceParseError(lineno, "bad perm hex");
            bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
          }
          trace.perm_bytes = std::move(bytes);
        } else {
          throw TraceParseError(lineno, "unknown header key '" + key + "'");
        }
      }
      if (!have_n || !have_backend || !have_seed)
        throw TraceParseError(lineno, "header needs n=, backend= and seed=");
      have_header = true;
      continue;
    }

    TraceOp op;
    op.line = lineno;
    if (toks[0] == "F") {
      if (toks.size() != 2 || !parse_u64(toks[1], op.value))
        throw TraceParseError(lineno, "expected: F <value>");
      op.kind = 'F';
    } else if (toks[0] == "W") {
      if (toks.size() != 3 || !parse_u64(toks[1], op.index) || !parse_u64(toks[2], op.value))
        throw TraceParseError(lineno, "expected: W <index> <value>");
      op.kind = 'W';
    } else if (toks[0] == "R") {
      if (toks.size() < 2 || toks.size() > 3 || !parse_u64(toks[1], op.index))
        throw TraceParseError(lineno, "expected: R <index> [<expected>]");
      if (toks.size() == 3) {
        Word e = 0;
        if (!parse_u64(toks[2], e)) throw TraceParseError(lineno, "bad expected value");
        op.expected = e;
      }
      op.kind = 'R';
    } else {
      throw TraceParseError(lineno, "unknown op '" + toks[0] + "'");
    }
    if ((op.kind == 'W' || op.kind == 'R') && (op.index < 1 || op.index > trace.n))
      throw TraceParseError(lineno, "index out of range");
    trace.ops.push_back(op);
  }
  if (!have_header) throw TraceParseError(lineno, "missing trace header");
  return trace;
}

OpTrace OpTrace::parse_text(const std::string& text) {
  std::istringstream is(text);
  return parse(is);
}

std::string OpTrace::serialize() const {
  std::ostringstream os;
  os << "n=" << n << " backend=" << backend << " seed=" << seed;
  if (perm_bytes) {
    os << " perm=";
    static const char* hex = "0123456789abcdef";
    for (std::uint8_t b : *perm_bytes) os << hex[b >> 4] << hex[b & 15];
  }
  os << "\n";
  for (const auto& op : ops) {
    switch (op.kind) {
      case 'F': os << "F " << op.value << "\n"; break;
      case 'W': os << "W " << op.index << " " << op.value << "\n"; break;
      default:
        os << "R " << op.index;
        if (op.expected) os << " " << *op.expected;
        os << "\n";
    }
  }
  return os.str();
}

}  // namespace fillable
