#include "psigraph/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "psigraph/coset.hpp"
#include "psigraph/diagram.hpp"
#include "psigraph/errors.hpp"
#include "psigraph/json_io.hpp"
#include "psigraph/locc.hpp"
#include "psigraph/psi_graph.hpp"
#include "psigraph/reports.hpp"

namespace psigraph {
namespace {

constexpr int kExitPass = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNoConvergence = 3;

void emit(const ordered_json& j, const std::string& out_path) {
  const std::string text = dump_canonical(j);
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

PsiGraph load_graph(const std::string& path) {
  return parse_psigraph(parse_json(read_text_file(path)));
}

int do_verify(const std::string& graph_path, const std::string& cert_path,
              bool vertex, const std::string& diagram,
              const std::vector<int>& subgroup, const std::string& out) {
  ConvexityVerdict v;
  if (vertex) {
    if (diagram.empty())
      throw InputError("--vertex verification requires --diagram");
    const CayleyGraph zg = from_cayley(enumerate_group(parse_diagram(diagram)));
    const CosetGraph cg = build_coset_graph(zg.group, subgroup);
    const std::vector<ReflectingPlane> planes = project_cuts_to_planes(zg, cg);
    const VertexConvexityCertificate cert = parse_vertex_certificate(
        cg.n_vertices, planes, parse_json(read_text_file(cert_path)));
    v = verify_vertex_convexity(cg, planes, cert);
  } else {
    if (graph_path.empty())
      throw InputError("--graph is required (or use --vertex with --diagram)");
    const PsiGraph z = load_graph(graph_path);
    const EdgeConvexityCertificate cert =
        parse_edge_certificate(z, parse_json(read_text_file(cert_path)));
    v = verify_edge_convexity(z, cert);
  }
  emit(ordered_json{{"pass", v.pass},
                    {"structural_failure", v.structural_failure},
                    {"max_sum_residual", v.max_sum_residual},
                    {"min_eigenvalue", v.min_eigenvalue},
                    {"detail", v.detail}},
       out);
  return v.pass ? kExitPass : kExitPropertyFailure;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{
      "psi-graph toolkit: Cayley graph construction, transitivity and "
      "reflection classification, convexity certificates, invariant "
      "evaluation, and LOCC monotonicity testing"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads,
                 "worker threads for parallelizable subcommands; the output "
                 "does not depend on it")
      ->check(CLI::PositiveNumber);

  int rc = kExitPass;

  // cayley
  auto* cay = app.add_subcommand(
      "cayley", "Write the Cayley psi-graph of a finite Coxeter diagram");
  std::string cay_diagram, cay_out;
  cay->add_option("--diagram", cay_diagram, "diagram, e.g. A3 or B2+A1")
      ->required();
  cay->add_option("--out", cay_out, "output file (default: stdout)");
  cay->callback([&] {
    const CayleyGraph zg =
        from_cayley(enumerate_group(parse_diagram(cay_diagram)));
    emit(psigraph_json(zg.graph), cay_out);
    rc = kExitPass;
  });

  // check
  auto* chk = app.add_subcommand(
      "check",
      "Check a graph property; exit 0 when it holds, 1 when it fails");
  std::string chk_graph, chk_property, chk_out;
  unsigned long long chk_seed = 0;
  int chk_samples = 50;
  chk->add_option("--graph", chk_graph, "psi-graph JSON file")->required();
  chk->add_option("--property", chk_property,
                  "edge-reflecting | mirror | transitivity | property-p | "
                  "geodesic")
      ->required()
      ->check(CLI::IsMember({"edge-reflecting", "mirror", "transitivity",
                             "property-p", "geodesic"}));
  auto* chk_seed_opt = chk->add_option(
      "--seed", chk_seed, "RNG seed (required for --property geodesic)");
  chk->add_option("--samples", chk_samples,
                  "random geodesics sampled per vertex pair")
      ->check(CLI::NonNegativeNumber);
  chk->add_option("--out", chk_out, "output file (default: stdout)");
  chk->callback([&] {
    if (chk_property == "geodesic" && chk_seed_opt->count() == 0)
      throw InputError("--seed is required for --property geodesic");
    const CheckReportBundle rep =
        build_check_report(load_graph(chk_graph), chk_property, chk_seed,
                           chk_samples);
    emit(rep.report, chk_out);
    rc = rep.ok ? kExitPass : kExitPropertyFailure;
  });

  // certify
  auto* cert = app.add_subcommand(
      "certify",
      "Produce verified edge-convexity certificates for every color of a "
      "Coxeter diagram's Cayley graph");
  std::string cert_diagram, cert_method = "auto", cert_out;
  double cert_tol_sum = 1e-8, cert_tol_psd = 1e-8;
  int cert_sweeps = 50000;
  cert->add_option("--diagram", cert_diagram, "diagram, e.g. B3")->required();
  cert->add_option("--method", cert_method, "construct | solve | auto")
      ->check(CLI::IsMember({"construct", "solve", "auto"}));
  cert->add_option("--tol-sum", cert_tol_sum, "solver sum tolerance")
      ->check(CLI::PositiveNumber);
  cert->add_option("--tol-psd", cert_tol_psd, "solver PSD tolerance")
      ->check(CLI::PositiveNumber);
  cert->add_option("--max-sweeps", cert_sweeps, "solver sweep cap")
      ->check(CLI::NonNegativeNumber);
  cert->add_option("--out", cert_out, "output file (default: stdout)");
  cert->callback([&] {
    SolveOptions s;
    s.tol_sum = cert_tol_sum;
    s.tol_psd = cert_tol_psd;
    s.max_sweeps = cert_sweeps;
    const CertifyReportBundle rep =
        build_certify_report(parse_diagram(cert_diagram), cert_method, s);
    emit(rep.report, cert_out);
    rc = rep.all_pass ? kExitPass
                      : (rep.structural ? kExitPropertyFailure
                                        : kExitNoConvergence);
  });

  // verify
  auto* ver = app.add_subcommand(
      "verify", "Verify a convexity certificate against its graph");
  std::string ver_graph, ver_cert, ver_diagram, ver_out;
  std::vector<int> ver_subgroup;
  bool ver_vertex = false;
  ver->add_option("--graph", ver_graph, "psi-graph JSON file (edge mode)");
  ver->add_option("--cert", ver_cert, "certificate JSON file")->required();
  ver->add_flag("--vertex", ver_vertex,
                "verify a vertex certificate for a coset graph");
  ver->add_option("--diagram", ver_diagram, "diagram (vertex mode)");
  ver->add_option("--subgroup", ver_subgroup,
                  "parabolic subgroup nodes, comma-separated (vertex mode)")
      ->delimiter(',');
  ver->add_option("--out", ver_out, "output file (default: stdout)");
  ver->callback([&] {
    rc = do_verify(ver_graph, ver_cert, ver_vertex, ver_diagram, ver_subgroup,
                   ver_out);
  });

  // coset
  auto* cos = app.add_subcommand(
      "coset", "Write the parabolic coset graph and its reflecting planes");
  std::string cos_diagram, cos_out;
  std::vector<int> cos_subgroup;
  cos->add_option("--diagram", cos_diagram, "diagram, e.g. B3")->required();
  cos->add_option("--subgroup", cos_subgroup,
                  "parabolic subgroup nodes, comma-separated (default: empty)")
      ->delimiter(',');
  cos->add_option("--out", cos_out, "output file (default: stdout)");
  cos->callback([&] {
    emit(build_coset_report(parse_diagram(cos_diagram), cos_subgroup),
         cos_out);
    rc = kExitPass;
  });

  // certify-vertex
  auto* cv = app.add_subcommand(
      "certify-vertex",
      "Produce a verified vertex-convexity certificate for a coset graph "
      "(named-polytope recipe with solver fallback)");
  std::string cv_diagram, cv_out;
  std::vector<int> cv_subgroup;
  double cv_tol_sum = 1e-8, cv_tol_psd = 1e-8;
  int cv_sweeps = 50000;
  cv->add_option("--diagram", cv_diagram, "diagram, e.g. B3")->required();
  cv->add_option("--subgroup", cv_subgroup,
                 "parabolic subgroup nodes, comma-separated (default: empty)")
      ->delimiter(',');
  cv->add_option("--tol-sum", cv_tol_sum, "solver sum tolerance")
      ->check(CLI::PositiveNumber);
  cv->add_option("--tol-psd", cv_tol_psd, "solver PSD tolerance")
      ->check(CLI::PositiveNumber);
  cv->add_option("--max-sweeps", cv_sweeps, "solver sweep cap")
      ->check(CLI::NonNegativeNumber);
  cv->add_option("--out", cv_out, "output file (default: stdout)");
  cv->callback([&] {
    SolveOptions s;
    s.tol_sum = cv_tol_sum;
    s.tol_psd = cv_tol_psd;
    s.max_sweeps = cv_sweeps;
    const VertexReportBundle rep =
        build_certify_vertex_report(parse_diagram(cv_diagram), cv_subgroup, s);
    emit(rep.report, cv_out);
    if (rep.pass)
      rc = kExitPass;
    else if (rep.no_certificate && !rep.structural)
      rc = kExitNoConvergence;
    else
      rc = kExitPropertyFailure;
  });

  // eval
  auto* ev = app.add_subcommand(
      "eval", "Evaluate Z, the normalized invariant, and the monotone");
  std::string ev_graph, ev_state, ev_out;
  ev->add_option("--graph", ev_graph, "psi-graph JSON file")->required();
  ev->add_option("--state", ev_state, "state JSON file")->required();
  ev->add_option("--out", ev_out, "output file (default: stdout)");
  ev->callback([&] {
    const PsiGraph z = load_graph(ev_graph);
    const StateTensor s =
        parse_state(parse_json(read_text_file(ev_state)));
    emit(build_eval_report(z, s), ev_out);
    rc = kExitPass;
  });

  // locc-test
  auto* lt = app.add_subcommand(
      "locc-test",
      "Monte-Carlo monotonicity test of the invariant under random local "
      "operator families");
  std::string lt_graph, lt_out;
  std::vector<int> lt_dims;
  int lt_trials = 0, lt_kmin = 2, lt_kmax = 4;
  unsigned long long lt_seed = 0;
  double lt_gap_tol = 1e-9;
  lt->add_option("--graph", lt_graph, "psi-graph JSON file")->required();
  lt->add_option("--dims", lt_dims, "per-party dimensions, e.g. 2,2")
      ->required()
      ->delimiter(',');
  lt->add_option("--trials", lt_trials, "number of trials")
      ->required()
      ->check(CLI::PositiveNumber);
  lt->add_option("--seed", lt_seed, "RNG seed (mandatory)")->required();
  lt->add_option("--kraus-min", lt_kmin, "smallest family size")
      ->check(CLI::PositiveNumber);
  lt->add_option("--kraus-max", lt_kmax, "largest family size")
      ->check(CLI::PositiveNumber);
  lt->add_option("--gap-tol", lt_gap_tol,
                 "exit 1 when the minimum gap is below -gap-tol")
      ->check(CLI::PositiveNumber);
  lt->add_option("--out", lt_out, "output file (default: stdout)");
  lt->callback([&] {
    const PsiGraph z = load_graph(lt_graph);
    const MonteCarloReport rep = monte_carlo_test(z, lt_dims, lt_trials,
                                                  lt_kmin, lt_kmax, lt_seed,
                                                  threads);
    emit(locc_report_json(rep), lt_out);
    rc = rep.min_gap < -lt_gap_tol ? kExitPropertyFailure : kExitPass;
  });

  // enumerate
  auto* en = app.add_subcommand("enumerate",
                                "Enumerate psi-graph isomorphism classes");
  int en_n = 0, en_q = 0;
  bool en_all = false, en_classify = false;
  std::string en_out;
  en->add_option("--n", en_n, "white (= black) vertex count")
      ->required()
      ->check(CLI::PositiveNumber);
  en->add_option("--q", en_q, "color count")
      ->required()
      ->check(CLI::PositiveNumber);
  en->add_flag("--all", en_all, "include disconnected graphs");
  en->add_flag("--classify", en_classify,
               "add transitivity, reflection, and recognition results per "
               "connected graph");
  en->add_option("--out", en_out, "output file (default: stdout)");
  en->callback([&] {
    emit(build_enumerate_report(en_n, en_q, !en_all, en_classify), en_out);
    rc = kExitPass;
  });

  // Let global options (--threads) appear after the subcommand name too.
  for (CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; }))
    s->fallthrough();

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? kExitPass : kExitInputError;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return rc;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("psigraph");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace psigraph
