#include "psigraph/reports.hpp"

#include <optional>

#include "psigraph/coset.hpp"
#include "psigraph/cuts.hpp"
#include "psigraph/errors.hpp"
#include "psigraph/invariants.hpp"

namespace psigraph {
namespace {

ordered_json verdict_json(const ConvexityVerdict& v) {
  return ordered_json{{"pass", v.pass},
                      {"structural_failure", v.structural_failure},
                      {"max_sum_residual", v.max_sum_residual},
                      {"min_eigenvalue", v.min_eigenvalue},
                      {"detail", v.detail}};
}

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged:
      return "converged";
    case SolveStatus::InfeasibleStructure:
      return "infeasible-structure";
    default:
      return "no-convergence";
  }
}

ordered_json battery_json(const TransitivityBattery& b) {
  return ordered_json{
      {"vertex_transitive", b.vertex_transitive},
      {"weakly_vertex_transitive", b.weakly_vertex_transitive},
      {"strongly_all_edge_transitive", b.strongly_all_edge_transitive},
      {"all_edge_transitive", b.all_edge_transitive},
      {"cayley_involutive", b.cayley_involutive},
      {"all_equal", b.all_equal()}};
}

}  // namespace

CheckReportBundle build_check_report(const PsiGraph& z,
                                     const std::string& property,
                                     unsigned long long seed, int samples) {
  CheckReportBundle out;
  if (property == "edge-reflecting") {
    out.ok = is_edge_reflecting(z);
    out.report = ordered_json{{"edge_reflecting", out.ok}};
  } else if (property == "mirror") {
    int witness = -1;
    out.ok = is_mirror(z, &witness);
    out.report = ordered_json{{"mirror", out.ok}};
    if (!out.ok)
      out.report["uncovered_edge"] =
          ordered_json::array({z.colors[witness / z.n], witness % z.n});
  } else if (property == "transitivity") {
    const TransitivityBattery b = transitivity_battery(z);
    out.ok = b.vertex_transitive;
    out.report = battery_json(b);
  } else if (property == "property-p") {
    out.ok = property_p_hypercube(z);
    out.report = ordered_json{{"property_p", out.ok}};
  } else if (property == "geodesic") {
    const GeodesicCheck g = check_geodesic_lemma(z, seed, samples);
    out.ok = g.ok;
    out.report =
        ordered_json{{"geodesic", g.ok}, {"seed", seed}, {"samples", samples}};
    if (!g.ok)
      out.report["witness"] =
          ordered_json{{"u", g.u}, {"v", g.v}, {"cut", g.cut_index}};
  } else {
    throw InputError("unknown property '" + property + "'");
  }
  return out;
}

CertifyReportBundle build_certify_report(const CDDiagram& d,
                                         const std::string& method,
                                         const SolveOptions& solver) {
  CertifyOptions opts;
  opts.solver = solver;
  if (method == "construct")
    opts.method = CertifyMethod::Construct;
  else if (method == "solve")
    opts.method = CertifyMethod::Solve;
  else if (method == "auto")
    opts.method = CertifyMethod::Auto;
  else
    throw InputError("unknown method '" + method + "'");

  const CertifyReport rep = certify_coxeter(d, opts);
  CertifyReportBundle out;
  ordered_json colors = ordered_json::array();
  for (const CertifiedColor& c : rep.colors) {
    colors.push_back(ordered_json{
        {"color", c.color},
        {"route", c.route},
        {"verdict", verdict_json(c.verdict)},
        {"certificate",
         edge_certificate_json(rep.graph.graph, c.certificate)}});
    if (!c.verdict.pass && c.verdict.structural_failure) out.structural = true;
  }
  out.all_pass = rep.all_pass();
  out.report = ordered_json{{"diagram", d.spec_string()},
                            {"method", method},
                            {"all_pass", out.all_pass},
                            {"graph", psigraph_json(rep.graph.graph)},
                            {"colors", std::move(colors)}};
  return out;
}

ordered_json build_coset_report(const CDDiagram& d,
                                const std::vector<int>& sub_nodes) {
  const CayleyGraph zg = from_cayley(enumerate_group(d));
  const CosetGraph cg = build_coset_graph(zg.group, sub_nodes);
  const std::vector<ReflectingPlane> planes = project_cuts_to_planes(zg, cg);
  ordered_json j{{"diagram", d.spec_string()}};
  j.update(coset_graph_json(cg, planes));
  return j;
}

VertexReportBundle build_certify_vertex_report(
    const CDDiagram& d, const std::vector<int>& sub_nodes,
    const SolveOptions& opts) {
  const CayleyGraph zg = from_cayley(enumerate_group(d));
  const CosetGraph cg = build_coset_graph(zg.group, sub_nodes);
  const std::vector<ReflectingPlane> planes = project_cuts_to_planes(zg, cg);

  VertexReportBundle out;
  ordered_json j{{"diagram", d.spec_string()},
                 {"sub_nodes", cg.sub_nodes},
                 {"polytope", cg.polytope},
                 {"n_vertices", cg.n_vertices}};
  std::optional<VertexConvexityCertificate> final_cert;
  SolveStatus fail_status = SolveStatus::NoConvergence;
  if (!cg.polytope.empty()) {
    const RecipeReport rr = run_polytope_recipe(cg, planes, opts);
    j["recipe"] = rr.recipe;
    j["candidate"] =
        vertex_certificate_json(cg.n_vertices, planes, rr.candidate);
    j["candidate_verdict"] = verdict_json(rr.candidate_verdict);
    ordered_json audit = ordered_json::array();
    for (const RecipeAuditRow& row : rr.audit)
      audit.push_back(ordered_json{{"v1", row.v1},
                                   {"v2", row.v2},
                                   {"n_separating", row.n_separating},
                                   {"sum", row.sum},
                                   {"ok", row.ok}});
    j["audit"] = std::move(audit);
    j["fallback_used"] = rr.fallback_used;
    j["fallback_status"] = status_name(rr.fallback_status);
    j["sum_residual"] = rr.sum_residual;
    j["min_eigenvalue"] = rr.min_eigenvalue;
    j["sweeps"] = rr.sweeps;
    final_cert = rr.certificate;
    fail_status = rr.fallback_status;
  } else {
    const VertexSolveReport sr = solve_vertex_convexity(cg, planes, opts);
    j["recipe"] = "none";
    j["candidate"] = nullptr;
    j["candidate_verdict"] = nullptr;
    j["audit"] = ordered_json::array();
    j["fallback_used"] = true;
    j["fallback_status"] = status_name(sr.status);
    j["sum_residual"] = sr.sum_residual;
    j["min_eigenvalue"] = sr.min_eigenvalue;
    j["sweeps"] = sr.sweeps;
    final_cert = sr.certificate;
    fail_status = sr.status;
  }
  if (final_cert) {
    const ConvexityVerdict v = verify_vertex_convexity(cg, planes, *final_cert);
    j["certificate"] =
        vertex_certificate_json(cg.n_vertices, planes, *final_cert);
    j["verdict"] = verdict_json(v);
    out.pass = v.pass;
    out.structural = !v.pass && v.structural_failure;
  } else {
    j["certificate"] = nullptr;
    j["verdict"] = nullptr;
    out.no_certificate = true;
    out.structural = fail_status == SolveStatus::InfeasibleStructure;
  }
  out.report = std::move(j);
  return out;
}

ordered_json build_eval_report(const PsiGraph& z, const StateTensor& s) {
  const cdouble zv = evaluate(z, s);
  const cdouble zh = normalized_invariant(z, s);
  bool warn = false;
  const double nu = monotone_value(z, s, &warn);
  return ordered_json{{"z", {{"re", zv.real()}, {"im", zv.imag()}}},
                      {"z_hat", {{"re", zh.real()}, {"im", zh.imag()}}},
                      {"nu_hat", nu},
                      {"imaginary_warning", warn}};
}

ordered_json build_enumerate_report(int n, int q, bool connected_only,
                                    bool classify) {
  const std::vector<PsiGraph> graphs = enumerate_psigraphs(n, q,
                                                           connected_only);
  ordered_json arr = ordered_json::array();
  for (const PsiGraph& z : graphs) {
    const bool connected = is_connected(z);
    ordered_json g{{"graph", psigraph_json(z)}, {"connected", connected}};
    if (classify && connected) {
      g["battery"] = battery_json(transitivity_battery(z));
      g["edge_reflecting"] = is_edge_reflecting(z);
      g["mirror"] = is_mirror(z);
      const std::optional<CDDiagram> d = recognize_coxeter(z);
      g["coxeter"] = d ? ordered_json(d->spec_string()) : ordered_json(nullptr);
    }
    arr.push_back(std::move(g));
  }
  return ordered_json{{"n", n},
                      {"q", q},
                      {"connected_only", connected_only},
                      {"count", static_cast<int>(graphs.size())},
                      {"graphs", std::move(arr)}};
}

}  // namespace psigraph
