#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "clonekit/cli.hpp"
#include "clonekit/clock.hpp"
#include "clonekit/coherent.hpp"
#include "clonekit/entangled.hpp"
#include "clonekit/error.hpp"
#include "clonekit/finiteset.hpp"
#include "clonekit/multiphase.hpp"
#include "clonekit/oracle.hpp"
#include "clonekit/symcomb.hpp"
#include "clonekit/verify.hpp"

namespace py = pybind11;
using namespace clonekit;

namespace {

coherent::Family coherent_family(int d) {
  return d == 0 ? coherent::Family::harmonic_oscillator() : coherent::Family::qudit_pure(d);
}

finiteset::StateSet state_set(const std::vector<CVector>& states, std::vector<double> priors) {
  if (priors.empty()) priors.assign(states.size(), 1.0 / static_cast<double>(states.size()));
  return finiteset::StateSet(states, std::move(priors));
}

finiteset::DiscriminationOptions options(bool worst_case) {
  finiteset::DiscriminationOptions o;
  o.worst_case = worst_case;
  return o;
}

}  // namespace

PYBIND11_MODULE(_clonekit, m) {
  m.doc() = "Optimal cloning fidelities, measure-and-prepare benchmarks and dense cross-checks";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_OverflowError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  // symcomb
  m.def("enumerate_partitions", [](int copies, int levels) {
    std::vector<std::vector<int>> out;
    for (auto& p : enumerate_partitions(copies, levels)) out.push_back(std::move(p.counts));
    return out;
  }, py::arg("copies"), py::arg("levels"));
  m.def("symmetric_dimension", &symmetric_dimension, py::arg("copies"), py::arg("levels"));
  m.def("multinomial_weight", [](int copies, const std::vector<double>& probs, const std::vector<int>& counts) {
    return multinomial_weight(copies, probs, Partition{counts});
  }, py::arg("copies"), py::arg("probs"), py::arg("counts"));
  m.def("angular_weight", [](int copies, int twice_j) { return angular_weight(copies, TwiceJ{twice_j}); },
        py::arg("copies"), py::arg("twice_j"));

  // coherent (d = 0 selects the harmonic oscillator)
  auto coh = m.def_submodule("coherent");
  coh.def("formal_dimension", [](int d, int m) { return coherent::formal_dimension(coherent_family(d), m); },
          py::arg("d"), py::arg("m"));
  coh.def("werner_fidelity", [](int d, int n, int m) { return coherent::werner_fidelity(coherent_family(d), n, m); },
          py::arg("d"), py::arg("n"), py::arg("m"));
  coh.def("naive_mp_worstcase", [](int d, int n, int m) { return coherent::naive_mp_worstcase(coherent_family(d), n, m); },
          py::arg("d"), py::arg("n"), py::arg("m"));
  coh.def("mp_epsilon_bound", [](int d, int n, int m) { return coherent::mp_epsilon_bound(coherent_family(d), n, m); },
          py::arg("d"), py::arg("n"), py::arg("m"));

  // multiphase
  auto mp = m.def_submodule("multiphase");
  mp.def("economical_fidelity", [](int n, int m, const std::vector<double>& probs) {
    return multiphase::economical_fidelity(n, m, multiphase::Family(probs));
  }, py::arg("n"), py::arg("m"), py::arg("probs"));
  mp.def("mp_protocol_fidelity", [](int n, int k, int m, const std::vector<double>& probs) {
    return multiphase::mp_protocol_fidelity(n, k, m, multiphase::Family(probs));
  }, py::arg("n"), py::arg("k"), py::arg("m"), py::arg("probs"));
  mp.def("upper_bound", [](int n, int m, const std::vector<double>& probs) {
    return multiphase::upper_bound(n, m, multiphase::Family(probs));
  }, py::arg("n"), py::arg("m"), py::arg("probs"));
  mp.def("naive_ratio", [](int n, int m, const std::vector<double>& probs) {
    return multiphase::naive_ratio(n, m, multiphase::Family(probs));
  }, py::arg("n"), py::arg("m"), py::arg("probs"));
  mp.def("mode_partition", [](int copies, const std::vector<double>& probs) {
    return multiphase::mode_partition(copies, multiphase::Family(probs)).counts;
  }, py::arg("copies"), py::arg("probs"));

  // clock
  auto ck = m.def_submodule("clock");
  ck.def("economical_fidelity", [](int n, int m, const std::vector<Energy>& spectrum, const std::vector<double>& probs) {
    return clock::economical_fidelity(n, m, clock::Family(spectrum, probs));
  }, py::arg("n"), py::arg("m"), py::arg("spectrum"), py::arg("probs"));
  ck.def("mp_protocol_fidelity", [](int n, int k, int m, const std::vector<Energy>& spectrum, const std::vector<double>& probs) {
    return clock::mp_protocol_fidelity(n, k, m, clock::Family(spectrum, probs));
  }, py::arg("n"), py::arg("k"), py::arg("m"), py::arg("spectrum"), py::arg("probs"));
  ck.def("shift_e0", [](int n, int m, const std::vector<Energy>& spectrum, const std::vector<double>& probs) {
    return clock::shift_e0(n, m, clock::Family(spectrum, probs));
  }, py::arg("n"), py::arg("m"), py::arg("spectrum"), py::arg("probs"));
  ck.def("upper_bound", [](int n, int m, const std::vector<Energy>& spectrum, const std::vector<double>& probs) {
    return clock::upper_bound(n, m, clock::Family(spectrum, probs));
  }, py::arg("n"), py::arg("m"), py::arg("spectrum"), py::arg("probs"));

  // entangled
  auto ent = m.def_submodule("entangled");
  ent.def("economical_fidelity", &entangled::economical_fidelity, py::arg("n"), py::arg("m"));
  ent.def("mp_protocol_fidelity", &entangled::mp_protocol_fidelity, py::arg("n"), py::arg("k"), py::arg("m"),
          py::arg("nodes") = 0);
  ent.def("upper_bound", &entangled::upper_bound, py::arg("n"), py::arg("m"));
  ent.def("naive_ratio", &entangled::naive_ratio, py::arg("n"), py::arg("m"));
  ent.def("protocol_copies", &entangled::protocol_copies, py::arg("m"), py::arg("epsilon"));

  // finite sets: states are complex vectors, priors default to uniform
  auto fin = m.def_submodule("finiteset");
  fin.def("discrimination_success", [](const std::vector<CVector>& states, const std::vector<double>& priors, int n,
                                       bool worst_case) {
    const auto d = finiteset::discrimination_success(state_set(states, priors), n, options(worst_case));
    return py::make_tuple(d.value, d.upper, d.povm);
  }, py::arg("states"), py::arg("priors") = std::vector<double>{}, py::arg("n") = 1, py::arg("worst_case") = false,
     "Returns (value, dual upper bound, POVM on the span of the N-copy states).");
  fin.def("cloning_upper_bound", [](const std::vector<CVector>& states, const std::vector<double>& priors, int n, int m) {
    return finiteset::cloning_upper_bound(state_set(states, priors), n, m);
  }, py::arg("states"), py::arg("priors"), py::arg("n"), py::arg("m"));
  fin.def("naive_mp_fidelity", [](const std::vector<CVector>& states, const std::vector<double>& priors, int n, int m) {
    return finiteset::naive_mp_fidelity(state_set(states, priors), n, m);
  }, py::arg("states"), py::arg("priors"), py::arg("n"), py::arg("m"));
  fin.def("gram_schmidt_with_bound", [](const std::vector<CVector>& states) {
    const auto g = finiteset::gram_schmidt_with_bound(state_set(states, {}));
    return py::make_tuple(g.basis, g.distances, g.bound);
  }, py::arg("states"), "Returns (orthonormal basis, distances, bound).");
  fin.def("seesaw_fidelity", [](const std::vector<CVector>& states, const std::vector<double>& priors, int n, int m,
                                int restarts, std::uint64_t seed) {
    const auto set = state_set(states, priors);
    oracle::SeesawConfig config;
    config.restarts = restarts;
    config.seed = seed;
    const auto warm = oracle::finite_set_naive_channel(set, finiteset::discrimination_success(set, n), m);
    const auto r = oracle::seesaw_optimal_fidelity(oracle::finite_set_fidelity_operator(set, n, m), set.size(),
                                                   set.size(), config, {warm});
    return py::make_tuple(r.value, r.upper);
  }, py::arg("states"), py::arg("priors"), py::arg("n"), py::arg("m"), py::arg("restarts") = 8, py::arg("seed") = 0,
     "Returns (see-saw fidelity, dual certificate).");

  // oracle
  auto orc = m.def_submodule("oracle");
  orc.def("werner_seesaw", [](int restarts, std::uint64_t seed) {
    oracle::SeesawConfig config;
    config.restarts = restarts;
    config.seed = seed;
    const auto r = oracle::seesaw_optimal_fidelity(oracle::fidelity_operator(oracle::qubit_quadrature(1, 2, 4, 6)), 2, 3, config);
    return py::make_tuple(r.value, r.upper);
  }, py::arg("restarts") = 8, py::arg("seed") = 0);
  orc.def("multiphase_trace_distance", [](int n, int m, const std::vector<double>& probs) {
    const multiphase::Family fam(probs);
    const auto r = oracle::trace_distance_econ_vs_mp(oracle::multiphase_economical_channel(n, m, fam),
                                                     oracle::multiphase_naive_mp_channel(n, m, fam));
    return py::make_tuple(r.estimate, r.bound_proven);
  }, py::arg("n"), py::arg("m"), py::arg("probs"));

  m.def("verify", [](std::uint64_t seed) {
    std::vector<py::tuple> out;
    for (const auto& r : verify::run_all(seed)) out.push_back(py::make_tuple(r.module, r.name, r.passed, r.detail));
    return out;
  }, py::arg("seed") = 0, "Runs the invariant suite; list of (module, name, passed, detail).");
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run_command(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line front end; returns (exit code, stdout, stderr).");
}
