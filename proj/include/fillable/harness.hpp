#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fillable/amortized.hpp"
#include "fillable/contract.hpp"
#include "fillable/randomized.hpp"
#include "fillable/trace.hpp"

namespace fillable {

/// Bad command-line or trace-level input; maps to exit code 2 in the CLI.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BackendKind { Oracle, Trivial, Folklore, Amortized, Randomized, Auto };

std::optional<BackendKind> parse_backend(const std::string& name);
const char* backend_name(BackendKind k);

/// Auto picks the strongest structure the length admits.
BackendKind resolve_backend(BackendKind k, u64 n);

/// Arena words needed to host `n` logical entries under this backend.
u64 arena_words_for(BackendKind k, u64 n);

struct MixRatios {
  unsigned write = 60;
  unsigned read = 35;
  unsigned fill = 5;
  unsigned total() const { return write + read + fill; }
};

struct OpStats {
  u64 count = 0;
  u64 total = 0;
  u64 max = 0;
  void add(u64 c) {
    ++count;
    total += c;
    if (c > max) max = c;
  }
  void merge(const OpStats& o) {
    count += o.count;
    total += o.total;
    if (o.max > max) max = o.max;
  }
  double mean() const { return count ? static_cast<double>(total) / static_cast<double>(count) : 0.0; }
};

/// Line-oriented key=value report; field order is fixed so runs diff cleanly.
struct RunReport {
  std::string cmd;
  std::string backend;
  u64 n = 0;
  unsigned w = 64;
  u64 seqs = 1;
  u64 ops = 0;
  u64 reads = 0, writes = 0, fills = 0;
  bool oracle_checked = true;
  u64 mismatches = 0;
  u64 expect_failures = 0;
  std::optional<u64> first_failure_line;
  OpStats read_acc, write_acc, fill_acc;
  u64 full_conversions = 0;
  std::vector<u64> full_convert_k;

  std::string to_text() const;
  int exit_code() const { return (mismatches || expect_failures) ? 1 : 0; }
};

/// One arena-backed structure (or the bare oracle) ready for contract ops.
struct BackendInstance {
  std::unique_ptr<WordArena> arena;  // absent for the oracle backend
  std::unique_ptr<Fillable> impl;
  std::optional<PermutationSeed> seed;
};

/// `kind` must already be resolved (not Auto). The randomized seed comes
/// from `fixed_seed` when given, otherwise it is sampled from `seed_rng`.
BackendInstance make_backend(BackendKind kind, u64 n, unsigned w, bool garbage, u64 garbage_seed,
                             Rng& seed_rng, const std::optional<PermutationSeed>& fixed_seed = {});

struct FuzzOptions {
  u64 n = 1000;
  u64 ops = 10000;
  u64 seqs = 10;
  BackendKind backend = BackendKind::Auto;
  u64 seed = 1;
  bool garbage = false;
  MixRatios mix;
  unsigned w = 64;
};

/// Random op sequences against the oracle in lockstep; nonzero mismatches
/// flip the exit code.
RunReport run_fuzz(const FuzzOptions& opt);

enum class Dist { Uniform, Sequential, LowBlock };
std::optional<Dist> parse_dist(const std::string& name);

struct BenchOptions {
  u64 n = 100000;
  u64 ops = 100000;
  BackendKind backend = BackendKind::Auto;
  u64 seed = 1;
  Dist dist = Dist::Uniform;
  MixRatios mix;
  unsigned w = 64;
};

/// Access-count statistics without an oracle. `Sequential` walks write
/// indices in order; `LowBlock` walks them in increasing permuted position,
/// which concentrates writes on the blocks converted last.
RunReport run_bench(const BenchOptions& opt);

/// Replays a trace deterministically: the header seed drives garbage fill
/// and (absent perm= bytes) the permutation; expectations are checked both
/// against the trace and against the oracle.
RunReport run_replay(const OpTrace& trace, std::optional<BackendKind> backend_override = {});

struct PermTestOptions {
  u64 n = 10;
  u64 samples = 1000;
  u64 seed = 1;
  double threshold = 0.01;
};

struct PermTestReport {
  u64 n = 0;
  u64 samples = 0;
  u64 bijective_failures = 0;
  double deviation = 0.0;
  double threshold = 0.01;
  u64 prime = 0;  // 0 when the domain uses the table family
  bool pass = false;

  std::string to_text() const;
  int exit_code() const { return pass ? 0 : 1; }
};

/// Samples seeds, checks each is a permutation by exhaustive image walk,
/// and estimates the worst pointwise deviation of (F(0), F(1)) from uniform
/// over distinct pairs.
PermTestReport run_perm_test(const PermTestOptions& opt);

}  // namespace fillable
