#include "psigraph/certify.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psigraph/errors.hpp"

namespace psigraph {

namespace {

CertifiedColor solve_one(const PsiGraph& z, const std::string& color,
                         const CertifyOptions& opts, std::string route) {
  CertifiedColor cc;
  cc.color = color;
  cc.route = std::move(route);
  const EdgeSolveReport sr = solve_edge_convexity(z, color, opts.solver);
  if (sr.certificate) {
    cc.certificate = *sr.certificate;
  } else {
    cc.certificate.color = color;
    cc.certificate.provenance = "solved";
  }
  cc.verdict = verify_edge_convexity(z, cc.certificate);
  return cc;
}

CertifyReport solve_all(CayleyGraph zg, const CertifyOptions& opts,
                        const std::string& route = "solved") {
  CertifyReport rep;
  rep.graph = std::move(zg);
  for (const std::string& color : rep.graph.graph.colors)
    rep.colors.push_back(solve_one(rep.graph.graph, color, opts, route));
  return rep;
}

std::vector<EdgeConvexityCertificate> certs_of(const CertifyReport& rep) {
  std::vector<EdgeConvexityCertificate> out;
  out.reserve(rep.colors.size());
  for (const CertifiedColor& c : rep.colors) out.push_back(c.certificate);
  return out;
}

std::vector<int> all_but(int rank, int t) {
  std::vector<int> k;
  k.reserve(rank - 1);
  for (int a = 0; a < rank; ++a)
    if (a != t) k.push_back(a);
  return k;
}

CertifyReport certify_component(const CDDiagram& d,
                                const CertifyOptions& opts);

// One parabolic induction step: drop node t, certify the subgroup
// recursively, build the named-polytope vertex certificate, and compose.
// Returns nothing when a prerequisite fails (reason receives the detail).
std::optional<CosetComposeReport> induct_drop(const CayleyGraph& zg, int t,
                                              const CertifyOptions& opts,
                                              std::string* route,
                                              std::string* reason) {
  const CosetGraph cg = build_coset_graph(zg.group, all_but(zg.group.rank, t));
  const std::vector<ReflectingPlane> planes = project_cuts_to_planes(zg, cg);
  const RecipeReport rr = run_polytope_recipe(cg, planes, opts.solver);
  *route = "composed:" + rr.recipe;
  if (!rr.certificate) {
    *reason = "no vertex certificate for the coset graph";
    return std::nullopt;
  }
  const SubgroupEmbedding emb = subgroup_embedding(zg.group, cg.sub_nodes);
  const CertifyReport sub = certify_component(emb.subgroup.diagram, opts);
  if (!sub.all_pass()) {
    *reason = "subgroup certification failed";
    return std::nullopt;
  }
  return compose_coset(zg, cg, certs_of(sub), *rr.certificate);
}

CertifyReport certify_component(const CDDiagram& d,
                                const CertifyOptions& opts) {
  CayleyGraph zg = from_cayley(enumerate_group(d));
  const CDDiagram::Component& comp = d.components[0];
  const char fam = comp.family[0];
  const int rank = d.rank;

  const bool inductive = opts.method != CertifyMethod::Solve && rank >= 3 &&
                         (fam == 'A' || fam == 'B' || fam == 'D');
  if (!inductive) return solve_all(std::move(zg), opts);

  // Two drops cover every color:
  //   A_n: either path end (simplex);
  //   B_n: the 4-edge end (hypercube) and the plain end (orthoplex);
  //   D_n: the two fork tips (demihypercube).
  const std::vector<int> drops =
      fam == 'B' ? std::vector<int>{comp.ordered.back(), comp.ordered.front()}
      : fam == 'D'
          ? std::vector<int>{comp.ordered[rank - 2], comp.ordered[rank - 1]}
          : std::vector<int>{comp.ordered.back(), comp.ordered.front()};

  std::vector<std::optional<CertifiedColor>> out(rank);
  for (const int t : drops) {
    std::string route, reason;
    const std::optional<CosetComposeReport> ccr =
        induct_drop(zg, t, opts, &route, &reason);
    if (!ccr) continue;
    for (const ComposedColorReport& cr : ccr->colors) {
      const int node = zg.graph.color_index(cr.color);
      if (node < 0 || out[node]) continue;
      CertifiedColor cc;
      cc.color = cr.color;
      cc.certificate = cr.certificate;
      cc.verdict = cr.verdict;
      cc.route = route;
      out[node] = std::move(cc);
    }
  }

  CertifyReport rep;
  for (int node = 0; node < rank; ++node) {
    const std::string& color = zg.graph.colors[node];
    const bool need_fallback =
        !out[node] ||
        (!out[node]->verdict.pass && opts.method == CertifyMethod::Auto);
    if (need_fallback)
      rep.colors.push_back(
          solve_one(zg.graph, color, opts, "solved:fallback"));
    else
      rep.colors.push_back(std::move(*out[node]));
  }
  rep.graph = std::move(zg);
  return rep;
}

CDDiagram component_diagram(const CDDiagram& d, int ci) {
  const std::vector<int>& nodes = d.components[ci].nodes;
  const int r = static_cast<int>(nodes.size());
  std::vector<std::vector<int>> m(r, std::vector<int>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m[i][j] = d.m[nodes[i]][nodes[j]];
  return diagram_from_matrix(m);
}

}  // namespace

CertifyReport certify_coxeter(const CDDiagram& d, const CertifyOptions& opts) {
  int expect = 0;
  for (const CDDiagram::Component& comp : d.components) {
    for (std::size_t i = 0; i < comp.nodes.size(); ++i)
      if (comp.nodes[i] != expect + static_cast<int>(i))
        throw InputError(
            "diagram components must occupy contiguous node ranges");
    expect += static_cast<int>(comp.nodes.size());
  }
  if (d.components.empty()) throw InputError("empty diagram");

  if (d.components.size() == 1) return certify_component(d, opts);
  if (opts.method == CertifyMethod::Solve)
    return solve_all(from_cayley(enumerate_group(d)), opts);

  CertifyReport acc = certify_component(component_diagram(d, 0), opts);
  for (std::size_t ci = 1; ci < d.components.size(); ++ci) {
    if (!acc.all_pass()) break;
    const CertifyReport nxt =
        certify_component(component_diagram(d, static_cast<int>(ci)), opts);
    if (!nxt.all_pass()) {
      acc.colors.clear();  // forces the fallback below
      break;
    }
    ProductComposeReport pr =
        compose_product(acc.graph, certs_of(acc), nxt.graph, certs_of(nxt));
    CertifyReport merged;
    merged.graph = std::move(pr.graph);
    for (ComposedColorReport& c : pr.colors) {
      CertifiedColor cc;
      cc.color = std::move(c.color);
      cc.certificate = std::move(c.certificate);
      cc.verdict = std::move(c.verdict);
      cc.route = "composed:product";
      merged.colors.push_back(std::move(cc));
    }
    acc = std::move(merged);
  }
  if (!acc.all_pass())
    return solve_all(from_cayley(enumerate_group(d)), opts, "solved:fallback");
  return acc;
}

}  // namespace psigraph
