#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fillable/harness.hpp"

namespace {

using namespace fillable;

constexpr int kExitUsage = 2;

BackendKind backend_arg(const std::string& name) {
  auto k = parse_backend(name);
  if (!k) throw UsageError("unknown backend '" + name + "'");
  return *k;
}

MixRatios mix_arg(const std::string& text) {
  MixRatios mix;
  unsigned vals[3];
  size_t pos = 0;
  for (int f = 0; f < 3; ++f) {
    size_t next = f < 2 ? text.find(':', pos) : text.size();
    if (next == std::string::npos) throw UsageError("mix must look like w:r:f, e.g. 60:35:5");
    try {
      vals[f] = static_cast<unsigned>(std::stoul(text.substr(pos, next - pos)));
    } catch (const std::exception&) {
      throw UsageError("mix must look like w:r:f, e.g. 60:35:5");
    }
    pos = next + 1;
  }
  mix.write = vals[0];
  mix.read = vals[1];
  mix.fill = vals[2];
  if (mix.total() == 0) throw UsageError("mix ratios must not all be zero");
  return mix;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fillable arrays: differential fuzzing, cost measurement, trace replay"};
  app.require_subcommand(1);

  std::string backend = "auto";
  std::string mix = "60:35:5";
  std::string dist = "uniform";
  std::string trace_path;
  unsigned long long n = 1000, ops = 10000, seqs = 10, seed = 1, samples = 1000;
  double threshold = 0.01;
  bool garbage = false;

  auto* fuzz = app.add_subcommand("fuzz", "random sequences, checked against the oracle");
  fuzz->add_option("--n", n, "logical array length");
  fuzz->add_option("--ops", ops, "operations per sequence");
  fuzz->add_option("--seqs", seqs, "number of sequences");
  fuzz->add_option("--backend", backend, "oracle|trivial|folklore|amortized|randomized|auto");
  fuzz->add_option("--seed", seed, "master RNG seed");
  fuzz->add_option("--mix", mix, "write:read:fill ratios");
  fuzz->add_flag("--garbage", garbage, "fill the arena with junk before construction");

  auto* bench = app.add_subcommand("bench", "access-count statistics, no oracle");
  bench->add_option("--n", n, "logical array length");
  bench->add_option("--ops", ops, "operation count");
  bench->add_option("--backend", backend, "backend name");
  bench->add_option("--seed", seed, "RNG seed");
  bench->add_option("--mix", mix, "write:read:fill ratios");
  bench->add_option("--dist", dist, "uniform|sequential|lowblock write index pattern");

  auto* replay = app.add_subcommand("replay", "replay a trace file");
  replay->add_option("trace", trace_path, "trace file path")->required();
  replay->add_option("--backend", backend, "override the trace's backend");

  auto* perm = app.add_subcommand("perm-test", "permutation family statistics");
  perm->add_option("--n", n, "domain size");
  perm->add_option("--samples", samples, "seeds to sample");
  perm->add_option("--seed", seed, "RNG seed");
  perm->add_option("--threshold", threshold, "pairwise deviation threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (fuzz->parsed()) {
      FuzzOptions opt;
      opt.n = n;
      opt.ops = ops;
      opt.seqs = seqs;
      opt.backend = backend_arg(backend);
      opt.seed = seed;
      opt.garbage = garbage;
      opt.mix = mix_arg(mix);
      RunReport rep = run_fuzz(opt);
      std::cout << rep.to_text();
      return rep.exit_code();
    }
    if (bench->parsed()) {
      BenchOptions opt;
      opt.n = n;
      opt.ops = ops;
      opt.backend = backend_arg(backend);
      opt.seed = seed;
      opt.mix = mix_arg(mix);
      auto d = parse_dist(dist);
      if (!d) throw UsageError("unknown dist '" + dist + "'");
      opt.dist = *d;
      RunReport rep = run_bench(opt);
      std::cout << rep.to_text();
      return rep.exit_code();
    }
    if (replay->parsed()) {
      std::ifstream in(trace_path);
      if (!in) throw UsageError("cannot open trace file '" + trace_path + "'");
      OpTrace trace = OpTrace::parse(in);
      std::optional<BackendKind> override_kind;
      if (replay->count("--backend")) override_kind = backend_arg(backend);
      RunReport rep = run_replay(trace, override_kind);
      std::cout << rep.to_text();
      return rep.exit_code();
    }
    if (perm->parsed()) {
      PermTestOptions opt;
      opt.n = n;
      opt.samples = samples;
      opt.seed = seed;
      opt.threshold = threshold;
      PermTestReport rep = run_perm_test(opt);
      std::cout << rep.to_text();
      return rep.exit_code();
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TraceParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
