#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psigraph/cli.hpp"
#include "psigraph/coset.hpp"
#include "psigraph/cuts.hpp"
#include "psigraph/diagram.hpp"
#include "psigraph/errors.hpp"
#include "psigraph/invariants.hpp"
#include "psigraph/json_io.hpp"
#include "psigraph/locc.hpp"
#include "psigraph/psi_graph.hpp"
#include "psigraph/reports.hpp"
#include "psigraph/state.hpp"

namespace py = pybind11;
using namespace psigraph;

namespace {

using complex_array =
    py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

PsiGraph graph_of(const std::string& graph_json) {
  return parse_psigraph(parse_json(graph_json));
}

StateTensor state_of(const std::vector<int>& dims, const complex_array& amp) {
  const auto buf = amp.request();
  const std::complex<double>* data =
      static_cast<const std::complex<double>*>(buf.ptr);
  return make_state(dims, std::vector<cdouble>(data, data + buf.size));
}

complex_array array_of(const StateTensor& s) {
  complex_array out(static_cast<py::ssize_t>(s.amp.size()));
  std::complex<double>* data =
      static_cast<std::complex<double>*>(out.request().ptr);
  std::copy(s.amp.begin(), s.amp.end(), data);
  return out;
}

}  // namespace

PYBIND11_MODULE(_psigraph, m) {
  m.doc() =
      "Core bindings: psi-graph construction, classification, convexity "
      "certification, invariant evaluation, and LOCC monotonicity testing. "
      "Structured results are canonical JSON strings; the psigraph package "
      "wraps them as dicts.";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  m.def("cayley_json",
        [](const std::string& diagram) {
          return dump_canonical(psigraph_json(
              from_cayley(enumerate_group(parse_diagram(diagram))).graph));
        },
        py::arg("diagram"));

  m.def("group_order",
        [](const std::string& diagram) {
          return group_order(parse_diagram(diagram));
        },
        py::arg("diagram"));

  m.def("enumerate_json",
        [](int n, int q, bool connected_only, bool classify) {
          return dump_canonical(
              build_enumerate_report(n, q, connected_only, classify));
        },
        py::arg("n"), py::arg("q"), py::arg("connected_only") = true,
        py::arg("classify") = false);

  m.def("check_json",
        [](const std::string& graph, const std::string& property,
           unsigned long long seed, int samples) {
          const CheckReportBundle rep =
              build_check_report(graph_of(graph), property, seed, samples);
          return py::make_tuple(dump_canonical(rep.report), rep.ok);
        },
        py::arg("graph"), py::arg("property"), py::arg("seed") = 20240901,
        py::arg("samples") = 50);

  m.def("cuts_json",
        [](const std::string& graph) {
          const PsiGraph z = graph_of(graph);
          ordered_json arr = ordered_json::array();
          for (const ReflectingCut& cut : enumerate_cuts(z))
            arr.push_back(cut_json(z, cut));
          return dump_canonical(arr);
        },
        py::arg("graph"));

  m.def("recognize",
        [](const std::string& graph) -> std::optional<std::string> {
          const std::optional<CDDiagram> d = recognize_coxeter(graph_of(graph));
          if (!d) return std::nullopt;
          return d->spec_string();
        },
        py::arg("graph"));

  m.def("certify_json",
        [](const std::string& diagram, const std::string& method,
           double tol_sum, double tol_psd, int max_sweeps) {
          SolveOptions s;
          s.tol_sum = tol_sum;
          s.tol_psd = tol_psd;
          s.max_sweeps = max_sweeps;
          const CertifyReportBundle rep =
              build_certify_report(parse_diagram(diagram), method, s);
          return py::make_tuple(dump_canonical(rep.report), rep.all_pass);
        },
        py::arg("diagram"), py::arg("method") = "auto",
        py::arg("tol_sum") = 1e-8, py::arg("tol_psd") = 1e-8,
        py::arg("max_sweeps") = 50000,
        py::call_guard<py::gil_scoped_release>());

  m.def("verify_edge_json",
        [](const std::string& graph, const std::string& cert) {
          const PsiGraph z = graph_of(graph);
          const ConvexityVerdict v = verify_edge_convexity(
              z, parse_edge_certificate(z, parse_json(cert)));
          return py::make_tuple(
              dump_canonical(ordered_json{
                  {"pass", v.pass},
                  {"structural_failure", v.structural_failure},
                  {"max_sum_residual", v.max_sum_residual},
                  {"min_eigenvalue", v.min_eigenvalue},
                  {"detail", v.detail}}),
              v.pass);
        },
        py::arg("graph"), py::arg("cert"));

  m.def("coset_json",
        [](const std::string& diagram, const std::vector<int>& subgroup) {
          return dump_canonical(
              build_coset_report(parse_diagram(diagram), subgroup));
        },
        py::arg("diagram"), py::arg("subgroup") = std::vector<int>{});

  m.def("certify_vertex_json",
        [](const std::string& diagram, const std::vector<int>& subgroup,
           double tol_sum, double tol_psd, int max_sweeps) {
          SolveOptions s;
          s.tol_sum = tol_sum;
          s.tol_psd = tol_psd;
          s.max_sweeps = max_sweeps;
          const VertexReportBundle rep = build_certify_vertex_report(
              parse_diagram(diagram), subgroup, s);
          return py::make_tuple(dump_canonical(rep.report), rep.pass);
        },
        py::arg("diagram"), py::arg("subgroup") = std::vector<int>{},
        py::arg("tol_sum") = 1e-8, py::arg("tol_psd") = 1e-8,
        py::arg("max_sweeps") = 50000,
        py::call_guard<py::gil_scoped_release>());

  m.def("verify_vertex_json",
        [](const std::string& diagram, const std::vector<int>& subgroup,
           const std::string& cert) {
          const CayleyGraph zg =
              from_cayley(enumerate_group(parse_diagram(diagram)));
          const CosetGraph cg = build_coset_graph(zg.group, subgroup);
          const std::vector<ReflectingPlane> planes =
              project_cuts_to_planes(zg, cg);
          const ConvexityVerdict v = verify_vertex_convexity(
              cg, planes,
              parse_vertex_certificate(cg.n_vertices, planes,
                                       parse_json(cert)));
          return py::make_tuple(
              dump_canonical(ordered_json{
                  {"pass", v.pass},
                  {"structural_failure", v.structural_failure},
                  {"max_sum_residual", v.max_sum_residual},
                  {"min_eigenvalue", v.min_eigenvalue},
                  {"detail", v.detail}}),
              v.pass);
        },
        py::arg("diagram"), py::arg("subgroup"), py::arg("cert"));

  m.def("evaluate",
        [](const std::string& graph, const std::vector<int>& dims,
           const complex_array& amp) {
          return evaluate(graph_of(graph), state_of(dims, amp));
        },
        py::arg("graph"), py::arg("dims"), py::arg("amp"));

  m.def("normalized_invariant",
        [](const std::string& graph, const std::vector<int>& dims,
           const complex_array& amp) {
          return normalized_invariant(graph_of(graph), state_of(dims, amp));
        },
        py::arg("graph"), py::arg("dims"), py::arg("amp"));

  m.def("monotone_value",
        [](const std::string& graph, const std::vector<int>& dims,
           const complex_array& amp) {
          return monotone_value(graph_of(graph), state_of(dims, amp));
        },
        py::arg("graph"), py::arg("dims"), py::arg("amp"));

  m.def("eval_json",
        [](const std::string& graph, const std::vector<int>& dims,
           const complex_array& amp) {
          return dump_canonical(
              build_eval_report(graph_of(graph), state_of(dims, amp)));
        },
        py::arg("graph"), py::arg("dims"), py::arg("amp"));

  m.def("bell_amplitudes",
        [](int d) { return array_of(bell_state(d)); }, py::arg("d"));

  m.def("random_amplitudes",
        [](const std::vector<int>& dims, unsigned long long seed) {
          Rng rng(seed);
          return array_of(random_state(dims, rng));
        },
        py::arg("dims"), py::arg("seed"));

  m.def("locc_json",
        [](const std::string& graph, const std::vector<int>& dims, int trials,
           unsigned long long seed, int kraus_min, int kraus_max,
           int threads) {
          const MonteCarloReport rep =
              monte_carlo_test(graph_of(graph), dims, trials, kraus_min,
                               kraus_max, seed, threads);
          return py::make_tuple(dump_canonical(locc_report_json(rep)),
                                rep.min_gap);
        },
        py::arg("graph"), py::arg("dims"), py::arg("trials"), py::arg("seed"),
        py::arg("kraus_min") = 2, py::arg("kraus_max") = 4,
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());

  m.def("run_cli",
        [](const std::vector<std::string>& args) { return run(args); },
        py::arg("args"),
        "Run one CLI subcommand in-process; returns the exit code.");
}
