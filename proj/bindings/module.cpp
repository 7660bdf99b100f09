#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fillable/harness.hpp"

namespace py = pybind11;
using namespace fillable;

namespace {

BackendKind backend_from_name(const std::string& name) {
  auto k = parse_backend(name);
  if (!k) throw UsageError("unknown backend '" + name + "'");
  return *k;
}

py::bytes to_py_bytes(const std::vector<std::uint8_t>& v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

std::vector<std::uint8_t> from_py_bytes(const py::bytes& b) {
  std::string s = b;
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fillable arrays with constant-time fill on a metered word arena";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ContractViolation>(m, "ContractViolation");
  py::register_exception<UsageError>(m, "UsageError");

  py::class_<CostMeter>(m, "CostMeter")
      .def_property_readonly("loads", &CostMeter::loads)
      .def_property_readonly("stores", &CostMeter::stores)
      .def_property_readonly("total", &CostMeter::total)
      .def_property_readonly("per_op_max", &CostMeter::per_op_max)
      .def("reset", &CostMeter::reset);

  py::class_<WordArena>(m, "WordArena")
      .def(py::init<u64, unsigned>(), py::arg("n"), py::arg("w") = 64)
      .def_property_readonly("n", &WordArena::size)
      .def_property_readonly("w", &WordArena::width)
      .def_property_readonly("mode_bit", &WordArena::mode_bit)
      .def("load", &WordArena::load)
      .def("store", &WordArena::store)
      .def("fill_garbage", &WordArena::fill_garbage)
      .def("op_boundary", &WordArena::op_boundary)
      .def("meter", py::overload_cast<>(&WordArena::meter), py::return_value_policy::reference_internal)
      .def("snapshot_bytes", [](const WordArena& a) { return to_py_bytes(a.snapshot().to_bytes()); })
      .def("snapshot_bits", [](const WordArena& a) { return a.snapshot().bit_size(); })
      .def_static(
          "restore",
          [](u64 n, unsigned w, const py::bytes& b) {
            return WordArena::restore(ArenaSnapshot::from_bytes(n, w, from_py_bytes(b)));
          },
          py::arg("n"), py::arg("w"), py::arg("snapshot"));

  py::class_<Fillable>(m, "Fillable")
      .def("length", &Fillable::length)
      .def("fill", &Fillable::fill)
      .def("write", &Fillable::write)
      .def("read", &Fillable::read)
      .def("conversion_count", &Fillable::conversion_count)
      .def("full_convert_blocks_left", &Fillable::full_convert_blocks_left);

  py::class_<OracleArray, Fillable>(m, "OracleArray")
      .def(py::init<u64, unsigned>(), py::arg("n"), py::arg("w") = 64)
      .def("touches", &OracleArray::touches);

  py::class_<TrivialArray, Fillable>(m, "TrivialArray")
      .def_static("create", &TrivialArray::create, py::keep_alive<0, 1>())
      .def_static("attach", &TrivialArray::attach, py::keep_alive<0, 1>());

  py::class_<PermutationSeed>(m, "PermutationSeed")
      .def_static("sample", [](u64 n, u64 seed) { Rng rng(seed); return PermutationSeed::sample(n, rng); },
                  py::arg("n"), py::arg("seed"))
      .def_static("identity", &PermutationSeed::identity)
      .def_static("from_bytes",
                  [](u64 n, const py::bytes& b) { return PermutationSeed::from_bytes(n, from_py_bytes(b)); })
      .def_property_readonly("n", &PermutationSeed::domain)
      .def_property_readonly("prime", &PermutationSeed::prime)
      .def_property_readonly("table_mode", &PermutationSeed::table_mode)
      .def("eval", &PermutationSeed::eval)
      .def("bit_size", &PermutationSeed::bit_size)
      .def("to_bytes", [](const PermutationSeed& s) { return to_py_bytes(s.to_bytes()); });

  py::class_<AmortizedFillable, Fillable>(m, "AmortizedFillable")
      .def_static("create", &AmortizedFillable::create, py::keep_alive<0, 1>())
      .def_static("attach", &AmortizedFillable::attach, py::keep_alive<0, 1>())
      .def_readonly_static("BLOCK_LEN", &AmortizedFillable::kBlockLen)
      .def_readonly_static("MIN_LEN", &AmortizedFillable::kMinLen)
      .def("audit", &AmortizedFillable::audit);

  py::class_<RandomizedFillable, Fillable>(m, "RandomizedFillable")
      .def_static("create", &RandomizedFillable::create, py::keep_alive<0, 1>())
      .def_static("attach", &RandomizedFillable::attach, py::keep_alive<0, 1>())
      .def_readonly_static("BLOCK_LEN", &RandomizedFillable::kBlockLen)
      .def_readonly_static("MIN_LEN", &RandomizedFillable::kMinLen)
      .def("blocks_left", &RandomizedFillable::blocks_left)
      .def("front_slack", &RandomizedFillable::front_slack)
      .def("audit", &RandomizedFillable::audit);

  m.def("is_prime", &is_prime_u64);
  m.def("find_prime", [](u64 n, u64 seed) { Rng rng(seed); return find_prime(n, rng); },
        py::arg("n"), py::arg("seed"));
  m.def("family_prime", &family_prime);

  m.def(
      "run_fuzz",
      [](u64 n, u64 ops, u64 seqs, const std::string& backend, u64 seed, bool garbage) {
        FuzzOptions opt;
        opt.n = n;
        opt.ops = ops;
        opt.seqs = seqs;
        opt.backend = backend_from_name(backend);
        opt.seed = seed;
        opt.garbage = garbage;
        RunReport rep = run_fuzz(opt);
        py::dict d;
        d["text"] = rep.to_text();
        d["mismatches"] = rep.mismatches;
        d["exit_code"] = rep.exit_code();
        return d;
      },
      py::arg("n"), py::arg("ops"), py::arg("seqs"), py::arg("backend"), py::arg("seed") = 1,
      py::arg("garbage") = false);

  m.def(
      "run_replay_text",
      [](const std::string& text) {
        RunReport rep = run_replay(OpTrace::parse_text(text));
        py::dict d;
        d["text"] = rep.to_text();
        d["mismatches"] = rep.mismatches;
        d["expect_failures"] = rep.expect_failures;
        d["exit_code"] = rep.exit_code();
        return d;
      },
      py::arg("trace_text"));

  m.def(
      "run_perm_test",
      [](u64 n, u64 samples, u64 seed, double threshold) {
        PermTestOptions opt;
        opt.n = n;
        opt.samples = samples;
        opt.seed = seed;
        opt.threshold = threshold;
        PermTestReport rep = run_perm_test(opt);
        py::dict d;
        d["text"] = rep.to_text();
        d["deviation"] = rep.deviation;
        d["bijective_failures"] = rep.bijective_failures;
        d["pass"] = rep.pass;
        return d;
      },
      py::arg("n"), py::arg("samples"), py::arg("seed") = 1, py::arg("threshold") = 0.01);
}
