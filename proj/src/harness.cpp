#include "fillable/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace fillable {

namespace {

/// Folklore structure behind the 1-based contract, standalone on an arena
/// of 3n + 2 words.
class FolkloreBackend final : public Fillable {
 public:
  static FolkloreBackend create(WordArena& a, u64 n) {
    FolkloreBackend b(a, n);
    b.fill(0);
    return b;
  }
  static FolkloreBackend attach(WordArena& a, u64 n) { return FolkloreBackend(a, n); }

  u64 length() const override { return region_.length(); }
  void fill(Word delta) override { region_.fill(delta); }
  void write(u64 i, Word delta) override {
    require(i >= 1 && i <= region_.length(), "folklore: index out of range");
    region_.write(i - 1, delta);
  }
  Word read(u64 i) override {
    require(i >= 1 && i <= region_.length(), "folklore: index out of range");
    return region_.read(i - 1);
  }

 private:
  FolkloreBackend(WordArena& a, u64 n) : region_(FolkloreRegion::attach(a, 0, n)) {}
  FolkloreRegion region_;
};

std::string format_mean(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void emit_stats(std::ostringstream& os, const char* kind, const OpStats& s) {
  os << kind << "_acc_mean=" << format_mean(s.mean()) << "\n";
  os << kind << "_acc_max=" << s.max << "\n";
}

struct SequenceStats {
  u64 reads = 0, writes = 0, fills = 0;
  u64 mismatches = 0;
  OpStats read_acc, write_acc, fill_acc;
};

/// Runs `ops` generated operations on backend (and oracle when given).
void drive_sequence(Fillable& impl, WordArena* arena, OracleArray* oracle, u64 ops, u64 n,
                    Word mask, const MixRatios& mix, Rng& rng, Dist dist,
                    const std::vector<u64>* write_order, SequenceStats& st) {
  unsigned total = mix.total();
  require(total > 0, "mix ratios sum to zero");
  u64 write_cursor = 0;
  for (u64 t = 0; t < ops; ++t) {
    unsigned roll = static_cast<unsigned>(rng.below(total));
    if (roll < mix.write) {
      u64 i;
      if (dist == Dist::Uniform) {
        i = rng.below(n) + 1;
      } else {
        i = write_order ? (*write_order)[write_cursor % n] : (write_cursor % n) + 1;
        ++write_cursor;
      }
      Word v = rng.next() & mask;
      impl.write(i, v);
      if (oracle) oracle->write(i, v);
      st.write_acc.add(arena ? arena->op_boundary() : 0);
      ++st.writes;
    } else if (roll < mix.write + mix.read) {
      u64 i = rng.below(n) + 1;
      Word got = impl.read(i);
      u64 cost = arena ? arena->op_boundary() : 0;
      if (oracle && got != oracle->read(i)) ++st.mismatches;
      st.read_acc.add(cost);
      ++st.reads;
    } else {
      Word v = rng.next() & mask;
      impl.fill(v);
      if (oracle) oracle->fill(v);
      st.fill_acc.add(arena ? arena->op_boundary() : 0);
      ++st.fills;
    }
  }
}

}  // namespace

std::optional<BackendKind> parse_backend(const std::string& name) {
  if (name == "oracle") return BackendKind::Oracle;
  if (name == "trivial") return BackendKind::Trivial;
  if (name == "folklore") return BackendKind::Folklore;
  if (name == "amortized") return BackendKind::Amortized;
  if (name == "randomized") return BackendKind::Randomized;
  if (name == "auto") return BackendKind::Auto;
  return std::nullopt;
}

const char* backend_name(BackendKind k) {
  switch (k) {
    case BackendKind::Oracle: return "oracle";
    case BackendKind::Trivial: return "trivial";
    case BackendKind::Folklore: return "folklore";
    case BackendKind::Amortized: return "amortized";
    case BackendKind::Randomized: return "randomized";
    case BackendKind::Auto: return "auto";
  }
  return "?";
}

BackendKind resolve_backend(BackendKind k, u64 n) {
  if (k != BackendKind::Auto) return k;
  if (n >= RandomizedFillable::kMinLen) return BackendKind::Randomized;
  if (n >= AmortizedFillable::kMinLen) return BackendKind::Amortized;
  return BackendKind::Trivial;
}

u64 arena_words_for(BackendKind k, u64 n) {
  return k == BackendKind::Folklore ? FolkloreRegion::words_needed(n) : n;
}

BackendInstance make_backend(BackendKind kind, u64 n, unsigned w, bool garbage, u64 garbage_seed,
                             Rng& seed_rng, const std::optional<PermutationSeed>& fixed_seed) {
  require(kind != BackendKind::Auto, "make_backend: unresolved backend");
  if (n < 1) throw UsageError("n must be positive");
  if (kind == BackendKind::Amortized && n < AmortizedFillable::kMinLen)
    throw UsageError("backend 'amortized' needs n >= " + std::to_string(AmortizedFillable::kMinLen));
  if (kind == BackendKind::Randomized && n < RandomizedFillable::kMinLen)
    throw UsageError("backend 'randomized' needs n >= " + std::to_string(RandomizedFillable::kMinLen));

  BackendInstance out;
  if (kind == BackendKind::Oracle) {
    out.impl = std::make_unique<OracleArray>(n, w);
    return out;
  }
  out.arena = std::make_unique<WordArena>(arena_words_for(kind, n), w);
  if (garbage) out.arena->fill_garbage(garbage_seed);
  switch (kind) {
    case BackendKind::Trivial:
      out.impl = std::make_unique<TrivialArray>(TrivialArray::create(*out.arena));
      break;
    case BackendKind::Folklore:
      out.impl = std::make_unique<FolkloreBackend>(FolkloreBackend::create(*out.arena, n));
      break;
    case BackendKind::Amortized:
      out.impl = std::make_unique<AmortizedFillable>(AmortizedFillable::create(*out.arena));
      break;
    case BackendKind::Randomized: {
      PermutationSeed seed = fixed_seed ? *fixed_seed : PermutationSeed::sample(n, seed_rng);
      out.seed = seed;
      out.impl = std::make_unique<RandomizedFillable>(RandomizedFillable::create(*out.arena, std::move(seed)));
      break;
    }
    default: break;
  }
  out.arena->meter().reset();
  return out;
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "cmd=" << cmd << "\n";
  os << "backend=" << backend << "\n";
  os << "n=" << n << "\n";
  os << "w=" << w << "\n";
  os << "seqs=" << seqs << "\n";
  os << "ops=" << ops << "\n";
  os << "reads=" << reads << "\n";
  os << "writes=" << writes << "\n";
  os << "fills=" << fills << "\n";
  os << "oracle_checked=" << (oracle_checked ? 1 : 0) << "\n";
  os << "mismatches=" << mismatches << "\n";
  if (cmd == "replay") {
    os << "expect_failures=" << expect_failures << "\n";
    if (first_failure_line) os << "first_failure_line=" << *first_failure_line << "\n";
  }
  emit_stats(os, "read", read_acc);
  emit_stats(os, "write", write_acc);
  emit_stats(os, "fill", fill_acc);
  os << "full_conversions=" << full_conversions << "\n";
  if (!full_convert_k.empty()) {
    constexpr size_t kListCap = 64;
    os << "full_convert_k=";
    for (size_t i = 0; i < full_convert_k.size() && i < kListCap; ++i) {
      if (i) os << ",";
      os << full_convert_k[i];
    }
    if (full_convert_k.size() > kListCap)
      os << ",(+" << full_convert_k.size() - kListCap << " more)";
    os << "\n";
  }
  return os.str();
}

RunReport run_fuzz(const FuzzOptions& opt) {
  BackendKind kind = resolve_backend(opt.backend, opt.n);
  RunReport rep;
  rep.cmd = "fuzz";
  rep.backend = backend_name(kind);
  rep.n = opt.n;
  rep.w = opt.w;
  rep.seqs = opt.seqs;
  rep.ops = opt.ops * opt.seqs;

  Word mask = mask_for_width(opt.w);
  Rng master(opt.seed);
  for (u64 s = 0; s < opt.seqs; ++s) {
    Rng rng(master.next());
    BackendInstance b = make_backend(kind, opt.n, opt.w, opt.garbage, rng.next(), rng);
    OracleArray oracle(opt.n, opt.w);
    SequenceStats st;
    drive_sequence(*b.impl, b.arena.get(), &oracle, opt.ops, opt.n, mask, opt.mix, rng,
                   Dist::Uniform, nullptr, st);
    rep.reads += st.reads;
    rep.writes += st.writes;
    rep.fills += st.fills;
    rep.mismatches += st.mismatches;
    rep.read_acc.merge(st.read_acc);
    rep.write_acc.merge(st.write_acc);
    rep.fill_acc.merge(st.fill_acc);
    rep.full_conversions += b.impl->conversion_count();
    auto ks = b.impl->full_convert_blocks_left();
    rep.full_convert_k.insert(rep.full_convert_k.end(), ks.begin(), ks.end());
  }
  return rep;
}

std::optional<Dist> parse_dist(const std::string& name) {
  if (name == "uniform") return Dist::Uniform;
  if (name == "sequential") return Dist::Sequential;
  if (name == "lowblock") return Dist::LowBlock;
  return std::nullopt;
}

RunReport run_bench(const BenchOptions& opt) {
  BackendKind kind = resolve_backend(opt.backend, opt.n);
  RunReport rep;
  rep.cmd = "bench";
  rep.backend = backend_name(kind);
  rep.n = opt.n;
  rep.w = opt.w;
  rep.seqs = 1;
  rep.ops = opt.ops;
  rep.oracle_checked = false;

  Word mask = mask_for_width(opt.w);
  Rng rng(opt.seed);
  BackendInstance b = make_backend(kind, opt.n, opt.w, false, 0, rng);

  std::vector<u64> order;
  const std::vector<u64>* order_ptr = nullptr;
  if (opt.dist == Dist::LowBlock) {
    order.resize(opt.n);
    std::iota(order.begin(), order.end(), u64{1});
    if (b.seed) {
      const PermutationSeed& f = *b.seed;
      std::sort(order.begin(), order.end(),
                [&](u64 x, u64 y) { return f.eval(x - 1) < f.eval(y - 1); });
    }
    order_ptr = &order;
  }

  SequenceStats st;
  drive_sequence(*b.impl, b.arena.get(), nullptr, opt.ops, opt.n, mask, opt.mix, rng, opt.dist,
                 order_ptr, st);
  rep.reads = st.reads;
  rep.writes = st.writes;
  rep.fills = st.fills;
  rep.read_acc = st.read_acc;
  rep.write_acc = st.write_acc;
  rep.fill_acc = st.fill_acc;
  rep.full_conversions = b.impl->conversion_count();
  rep.full_convert_k = b.impl->full_convert_blocks_left();
  return rep;
}

RunReport run_replay(const OpTrace& trace, std::optional<BackendKind> backend_override) {
  BackendKind kind;
  if (backend_override) {
    kind = resolve_backend(*backend_override, trace.n);
  } else {
    auto parsed = parse_backend(trace.backend);
    if (!parsed) throw UsageError("unknown backend '" + trace.backend + "' in trace");
    kind = resolve_backend(*parsed, trace.n);
  }

  RunReport rep;
  rep.cmd = "replay";
  rep.backend = backend_name(kind);
  rep.n = trace.n;
  rep.w = 64;
  rep.seqs = 1;
  rep.ops = trace.ops.size();

  std::optional<PermutationSeed> fixed;
  if (trace.perm_bytes) fixed = PermutationSeed::from_bytes(trace.n, *trace.perm_bytes);

  Rng rng(trace.seed);
  BackendInstance b = make_backend(kind, trace.n, 64, true, rng.next(), rng, fixed);
  OracleArray oracle(trace.n, 64);

  for (const auto& op : trace.ops) {
    switch (op.kind) {
      case 'F':
        b.impl->fill(op.value);
        oracle.fill(op.value);
        rep.fill_acc.add(b.arena ? b.arena->op_boundary() : 0);
        ++rep.fills;
        break;
      case 'W':
        b.impl->write(op.index, op.value);
        oracle.write(op.index, op.value);
        rep.write_acc.add(b.arena ? b.arena->op_boundary() : 0);
        ++rep.writes;
        break;
      default: {
        Word got = b.impl->read(op.index);
        rep.read_acc.add(b.arena ? b.arena->op_boundary() : 0);
        if (got != oracle.read(op.index)) ++rep.mismatches;
        if (op.expected && got != *op.expected) {
          ++rep.expect_failures;
          if (!rep.first_failure_line) rep.first_failure_line = op.line;
        }
        ++rep.reads;
      }
    }
  }
  rep.full_conversions = b.impl->conversion_count();
  rep.full_convert_k = b.impl->full_convert_blocks_left();
  return rep;
}

std::string PermTestReport::to_text() const {
  std::ostringstream os;
  os << "cmd=perm-test\n";
  os << "n=" << n << "\n";
  os << "samples=" << samples << "\n";
  os << "prime=" << prime << "\n";
  os << "bijective_failures=" << bijective_failures << "\n";
  os << "pair_deviation=" << format_mean(deviation) << "\n";
  os << "threshold=" << format_mean(threshold) << "\n";
  os << "pass=" << (pass ? 1 : 0) << "\n";
  return os.str();
}

PermTestReport run_perm_test(const PermTestOptions& opt) {
  if (opt.n < 2) throw UsageError("perm-test needs n >= 2");
  PermTestReport rep;
  rep.n = opt.n;
  rep.samples = opt.samples;
  rep.threshold = opt.threshold;
  rep.prime = opt.n >= PermutationSeed::kTableCutoff ? family_prime(opt.n) : 0;

  Rng rng(opt.seed);
  std::vector<bool> hit(opt.n);
  std::unordered_map<u64, u64> pair_counts;
  for (u64 s = 0; s < opt.samples; ++s) {
    PermutationSeed seed = PermutationSeed::sample(opt.n, rng);
    std::fill(hit.begin(), hit.end(), false);
    bool ok = true;
    for (u64 x = 0; x < opt.n; ++x) {
      u64 y = seed.eval(x);
      if (y >= opt.n || hit[y]) {
        ok = false;
        break;
      }
      hit[y] = true;
    }
    if (!ok) ++rep.bijective_failures;
    ++pair_counts[seed.eval(0) * opt.n + seed.eval(1)];
  }

  double target = 1.0 / (static_cast<double>(opt.n) * static_cast<double>(opt.n - 1));
  double dev = 0.0;
  for (const auto& [cell, count] : pair_counts) {
    (void)cell;
    double p = static_cast<double>(count) / static_cast<double>(opt.samples);
    dev = std::max(dev, std::abs(p - target));
  }
  if (pair_counts.size() < opt.n * (opt.n - 1)) dev = std::max(dev, target);
  rep.deviation = dev;
  rep.pass = rep.bijective_failures == 0 && dev <= opt.threshold;
  return rep;
}

}  // namespace fillable
