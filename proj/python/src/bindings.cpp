#include "impsel/analysis.hpp"
#include "impsel/enumerate.hpp"
#include "impsel/errors.hpp"
#include "impsel/generators.hpp"
#include "impsel/graph_io.hpp"
#include "impsel/mechanisms.hpp"
#include "impsel/report_json.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <span>

namespace py = pybind11;
using namespace impsel;

namespace {

NominationGraph graph_of(const std::vector<Vertex>& targets) { return NominationGraph(targets); }

std::vector<Vertex> targets_of(const NominationGraph& g) { return {g.targets().begin(), g.targets().end()}; }

Mechanism mechanism_named(const std::string& name, int jobs) {
  EnumerationLimits limits;
  limits.jobs = jobs;
  const auto broken = Mechanism::broken_perm(limits);
  if (name == broken.name()) return broken;
  return Mechanism::get(parse_mechanism(name), limits);
}

SweepOptions sweep(int jobs) {
  SweepOptions options;
  options.jobs = resolve_jobs(jobs);
  return options;
}

std::vector<std::string> rationals(std::span<const Rational> values) {
  std::vector<std::string> out;
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

}  // namespace

PYBIND11_MODULE(_impsel, m) {
  m.doc() = "Impartial selection mechanisms on nomination graphs (exact rationals as 'num/den' strings)";
  m.attr("__version__") = IMPSEL_VERSION;

  static py::exception<CapacityError> capacity(m, "CapacityError", PyExc_RuntimeError);
  static py::exception<PreconditionError> precondition(m, "PreconditionError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const CapacityError& e) {
      py::set_error(capacity, e.what());
    } catch (const PreconditionError& e) {
      py::set_error(precondition, e.what());
    }
  });

  m.def("parse_graph", [](const std::string& text) { return targets_of(parse_graph(text)); });
  m.def("format_graph", [](const std::vector<Vertex>& t) { return format_graph(graph_of(t)); });
  m.def("generate", [](const std::string& spec) { return targets_of(generate(parse_family_spec(spec))); },
        py::arg("spec"));
  m.def("random_graph", [](int n, std::uint64_t seed) { return targets_of(random_graph(n, seed)); });
  m.def("lower_bound_family", [](int delta, int nprime) { return targets_of(lower_bound_family(delta, nprime)); });

  m.def("mechanisms", [] {
    std::vector<std::string> names;
    for (auto id : all_mechanisms()) names.emplace_back(traits(id).name);
    return names;
  });

  m.def(
      "exact",
      [](const std::string& mech, const std::vector<Vertex>& t, int jobs) {
        return rationals(mechanism_named(mech, jobs).exact(graph_of(t)).probabilities());
      },
      py::arg("mechanism"), py::arg("targets"), py::arg("jobs") = 1);
  m.def(
      "ratio",
      [](const std::string& mech, const std::vector<Vertex>& t, int jobs) {
        return to_string(ratio(mechanism_named(mech, jobs), graph_of(t)).ratio);
      },
      py::arg("mechanism"), py::arg("targets"), py::arg("jobs") = 1);
  m.def(
      "sample_counts",
      [](const std::string& mech, const std::vector<Vertex>& t, std::uint64_t samples, std::uint64_t seed) {
        const auto f = compare_sampler(mechanism_named(mech, 1), graph_of(t), samples, seed);
        return py::make_tuple(f.counts, f.none);
      },
      py::arg("mechanism"), py::arg("targets"), py::arg("samples"), py::arg("seed"));

  m.def(
      "check_impartial_json",
      [](const std::string& mech, int n, bool sampled, std::uint64_t seed, std::uint64_t samples, int jobs) {
        const auto r = check_impartial(mechanism_named(mech, 1), n, sampled ? CheckMode::Sampled : CheckMode::Exhaustive,
                                       seed, samples, sweep(jobs));
        return to_json(r).dump();
      },
      py::arg("mechanism"), py::arg("n"), py::arg("sampled") = false, py::arg("seed") = 0,
      py::arg("samples") = 1000, py::arg("jobs") = 0);
  m.def(
      "worst_case_json",
      [](const std::string& mech, int n, int jobs) {
        return to_json(worst_case(mechanism_named(mech, 1), n, sweep(jobs))).dump();
      },
      py::arg("mechanism"), py::arg("n"), py::arg("jobs") = 0);
  m.def(
      "verify_ub_chain_json",
      [](const std::string& mech, int n) { return to_json(verify_ub_chain(mechanism_named(mech, 1), n)).dump(); },
      py::arg("mechanism"), py::arg("n") = 6);
  m.def(
      "correlation_json",
      [](const std::vector<Vertex>& t) { return to_json(verify_correlation_lemma(graph_of(t))).dump(); },
      py::arg("targets"));

  m.def("perm_alpha", [](int d) { return to_string(perm_alpha(d)); });
  m.def("prugd_alpha", [](int d) { return to_string(prugd_alpha(d)); });
  m.def("upper_bound", [](int n) { return to_string(upper_bound(n)); });
  m.def("mix_guarantee", [](int delta_max) { return to_string(mix_guarantee(delta_max)); },
        py::arg("delta_max") = 15);
  m.def("figure3_csv", &figure3_csv, py::arg("delta_max") = 15);
}
