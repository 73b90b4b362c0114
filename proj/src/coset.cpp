#include "psigraph/coset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>

#include "psigraph/errors.hpp"

namespace psigraph {
namespace {

std::string vertex_pair_name(int i, int j) {
  std::ostringstream os;
  os << "(v" << i << ", v" << j << ")";
  return os.str();
}

// Tag of the quotient by K = S \ {t}.  Only t's diagram component matters:
// every other component lies inside K and is absorbed into the subgroup.
std::string polytope_tag(const CDDiagram& d, int t) {
  const CDDiagram::Component* comp = nullptr;
  for (const auto& c : d.components)
    if (std::find(c.nodes.begin(), c.nodes.end(), t) != c.nodes.end())
      comp = &c;
  if (!comp) return "";
  const char fam = comp->family[0];
  const int r = static_cast<int>(comp->nodes.size());
  if (fam == 'A') {
    // Dropping a path end leaves A_{r-1}: the quotient is the r-simplex.
    if (r == 1 || t == comp->ordered.front() || t == comp->ordered.back())
      return "simplex";
    return "";
  }
  if (fam == 'B') {
    // The 4-labeled edge sits at the back of the canonical order; dropping
    // that end leaves A_{r-1} (hypercube), dropping the other leaves
    // B_{r-1} (orthoplex).  At rank 2 the two ends still differ by order.
    if (t == comp->ordered.back()) return "hypercube";
    if (t == comp->ordered.front()) return "orthoplex";
    return "";
  }
  if (fam == 'D') {
    // Dropping a fork tip leaves the A_{r-1} path (any of the three tips
    // for D4); dropping anything else leaves D_{r-1} or a disconnection.
    std::vector<int> rest;
    for (int x : comp->nodes)
      if (x != t) rest.push_back(x);
    const int s = static_cast<int>(rest.size());
    std::vector<std::vector<int>> m(s, std::vector<int>(s, 2));
    for (int a = 0; a < s; ++a) {
      m[a][a] = 1;
      for (int b = 0; b < s; ++b)
        if (a != b) m[a][b] = d.m[rest[a]][rest[b]];
    }
    const CDDiagram sub = diagram_from_matrix(m);
    if (sub.components.size() == 1 &&
        sub.components[0].family == "A" + std::to_string(r - 1))
      return "demihypercube";
    return "";
  }
  return "";
}

}  // namespace

CosetGraph build_coset_graph(const CoxeterGroup& g,
                             const std::vector<int>& sub_nodes) {
  std::vector<int> K = sub_nodes;
  std::sort(K.begin(), K.end());
  K.erase(std::unique(K.begin(), K.end()), K.end());
  for (int x : K)
    if (x < 0 || x >= g.rank)
      throw InputError("subgroup node " + std::to_string(x) +
                       " outside the diagram");
  if (static_cast<int>(K.size()) == g.rank)
    throw InputError(
        "subgroup uses every generator; nothing remains to collapse");

  CosetGraph cg;
  cg.group = g;
  cg.sub_nodes = K;
  for (int a = 0; a < g.rank; ++a)
    if (!std::binary_search(K.begin(), K.end(), a)) cg.rem_nodes.push_back(a);

  const int order = static_cast<int>(g.order);
  if (K.empty()) {
    cg.n_vertices = order;
    cg.coset_of.resize(order);
    std::iota(cg.coset_of.begin(), cg.coset_of.end(), 0);
    cg.coset_rep = cg.coset_of;
  } else {
    SubgroupEmbedding emb = subgroup_embedding(g, K);
    cg.coset_of = std::move(emb.coset_of);
    cg.coset_rep = std::move(emb.coset_rep);
    cg.n_vertices = static_cast<int>(emb.index);
  }

  std::map<std::tuple<int, int, int>, int> mult;
  for (int a : cg.rem_nodes) {
    for (int x = 0; x < order; ++x) {
      const int y = g.gen_action[a][x];
      if (x >= y) continue;  // each undirected Cayley edge once
      int u = cg.coset_of[x], v = cg.coset_of[y];
      if (u == v)
        throw Error("internal: generator outside K preserves a coset");
      if (u > v) std::swap(u, v);
      ++mult[{a, u, v}];
    }
  }
  for (const auto& [key, m] : mult)
    cg.edges.push_back(
        {std::get<0>(key), std::get<1>(key), std::get<2>(key), m});

  if (cg.rem_nodes.size() == 1)
    cg.polytope = polytope_tag(g.diagram, cg.rem_nodes[0]);
  return cg;
}

std::vector<ReflectingPlane> project_cuts_to_planes(const CayleyGraph& zg,
                                                    const CosetGraph& cg) {
  const std::vector<ReflectingCut> cuts = enumerate_cuts(zg.graph);
  const int order = static_cast<int>(zg.group.order);
  if (static_cast<int>(cg.coset_of.size()) != order)
    throw InputError("coset graph and Cayley graph disagree on group order");

  std::vector<ReflectingPlane> planes;
  for (int c = 0; c < static_cast<int>(cuts.size()); ++c) {
    const ReflectingCut& cut = cuts[c];
    auto img_elt = [&](int x) {
      const int s = zg.side_index[x];
      return zg.group.parity[x] == 0 ? zg.black_elt[cut.automorphism.wmap[s]]
                                     : zg.white_elt[cut.automorphism.bmap[s]];
    };
    auto side_elt = [&](int x) {
      const int s = zg.side_index[x];
      return zg.group.parity[x] == 0 ? cut.white_side[s] : cut.black_side[s];
    };

    std::vector<int> inv(cg.n_vertices, -1);
    for (int x = 0; x < order; ++x) {
      const int v = cg.coset_of[x];
      const int iv = cg.coset_of[img_elt(x)];
      if (inv[v] == -1)
        inv[v] = iv;
      else if (inv[v] != iv)
        throw Error("internal: cut does not descend to the cosets");
    }
    bool all_fixed = true;
    for (int v = 0; v < cg.n_vertices; ++v)
      if (inv[v] != v) {
        all_fixed = false;
        break;
      }
    if (all_fixed) continue;  // identity on cosets: not a plane

    std::vector<int> side(cg.n_vertices, -1);
    for (int x = 0; x < order; ++x) {
      const int v = cg.coset_of[x];
      if (inv[v] == v) {
        side[v] = 2;
        continue;
      }
      const int es = side_elt(x);
      if (side[v] == -1)
        side[v] = es;
      else if (side[v] != es)
        throw Error("internal: coset straddles a cut that moves it");
    }

    bool merged = false;
    for (ReflectingPlane& p : planes)
      if (p.involution == inv && p.side == side) {
        p.source_cuts.push_back(c);
        merged = true;
        break;
      }
    if (merged) continue;

    ReflectingPlane p;
    p.involution = std::move(inv);
    p.side = std::move(side);
    for (int v = 0; v < cg.n_vertices; ++v)
      if (p.side[v] == 2) p.fixed_vertices.push_back(v);
    p.source_cuts = {c};
    planes.push_back(std::move(p));
  }
  return planes;
}

std::vector<ReflectingPlane> vertex_planes(
    const PsiGraph& z, const std::vector<ReflectingCut>& cuts) {
  std::vector<ReflectingPlane> planes;
  for (int c = 0; c < static_cast<int>(cuts.size()); ++c) {
    const ReflectingCut& cut = cuts[c];
    ReflectingPlane p;
    p.involution.resize(2 * z.n);
    p.side.resize(2 * z.n);
    for (int w = 0; w < z.n; ++w) {
      p.involution[w] = z.n + cut.automorphism.wmap[w];
      p.side[w] = cut.white_side[w];
    }
    for (int b = 0; b < z.n; ++b) {
      p.involution[z.n + b] = cut.automorphism.bmap[b];
      p.side[z.n + b] = cut.black_side[b];
    }
    p.source_cuts = {c};
    planes.push_back(std::move(p));
  }
  return planes;
}

std::vector<ReflectingPlane> vertex_planes(const PsiGraph& z) {
  return vertex_planes(z, enumerate_cuts(z));
}

VertexConvexitySystem vertex_system(int n_vertices,
                                    std::vector<ReflectingPlane> planes) {
  VertexConvexitySystem sys;
  sys.n_vertices = n_vertices;
  sys.planes = std::move(planes);
  sys.system.n_items = n_vertices;
  sys.wall_of_plane.assign(sys.planes.size(), -1);
  for (int p = 0; p < static_cast<int>(sys.planes.size()); ++p) {
    const ReflectingPlane& pl = sys.planes[p];
    if (static_cast<int>(pl.involution.size()) != n_vertices ||
        static_cast<int>(pl.side.size()) != n_vertices)
      throw InputError("plane " + std::to_string(p) +
                       " does not match the vertex count");
    if (!pl.extendible) continue;
    Wall w = make_wall(pl.involution, pl.side);
    if (w.r_items.empty()) continue;  // separates nothing
    sys.wall_of_plane[p] = static_cast<int>(sys.system.walls.size());
    sys.plane_of_wall.push_back(p);
    sys.system.walls.push_back(std::move(w));
  }
  return sys;
}

ConvexityVerdict verify_vertex_convexity(
    int n_vertices, const std::vector<ReflectingPlane>& planes,
    const VertexConvexityCertificate& cert) {
  const VertexConvexitySystem sys = vertex_system(n_vertices, planes);

  std::vector<Eigen::MatrixXd> P(sys.system.walls.size());
  for (std::size_t k = 0; k < P.size(); ++k) {
    const int r = static_cast<int>(sys.system.walls[k].r_items.size());
    P[k] = Eigen::MatrixXd::Zero(r, r);
  }
  for (const VertexCertEntry& e : cert.entries) {
    if (e.plane_id < 0 || e.plane_id >= static_cast<int>(sys.planes.size()))
      throw InputError("certificate references unknown plane id " +
                       std::to_string(e.plane_id));
    const int wall = sys.wall_of_plane[e.plane_id];
    if (wall < 0)
      throw InputError("certificate entry for plane " +
                       std::to_string(e.plane_id) +
                       " which is not extendible or separates no vertex pair");
    const int r = static_cast<int>(sys.system.walls[wall].r_items.size());
    if (e.P.rows() != r || e.P.cols() != r)
      throw InputError("certificate matrix for plane " +
                       std::to_string(e.plane_id) + " is " +
                       std::to_string(e.P.rows()) + "x" +
                       std::to_string(e.P.cols()) + ", expected " +
                       std::to_string(r) + "x" + std::to_string(r));
    P[wall] = e.P;
  }

  const ResidualReport rep =
      verify_reflection_system(sys.system, P, cert.tol_sum, cert.tol_psd);
  ConvexityVerdict v;
  v.structural_failure = rep.structural_failure;
  v.max_sum_residual = rep.max_sum_residual;
  v.min_eigenvalue = rep.min_eigenvalue;
  v.pass = rep.ok;
  if (rep.structural_failure) {
    v.detail = "pair " + vertex_pair_name(rep.uncovered_i, rep.uncovered_j) +
               " is separated by no extendible reflecting plane";
  } else if (!rep.ok) {
    std::ostringstream os;
    if (rep.max_sum_residual > cert.tol_sum)
      os << "pair " << vertex_pair_name(rep.worst_i, rep.worst_j)
         << " sum residual " << rep.max_sum_residual << " exceeds "
         << cert.tol_sum;
    if (rep.min_eigenvalue < -cert.tol_psd) {
      if (os.tellp() > 0) os << "; ";
      os << "plane " << sys.plane_of_wall[rep.worst_wall]
         << " matrix eigenvalue " << rep.min_eigenvalue << " below "
         << -cert.tol_psd;
    }
    v.detail = os.str();
  }
  return v;
}

ConvexityVerdict verify_vertex_convexity(
    const CosetGraph& cg, const std::vector<ReflectingPlane>& planes,
    const VertexConvexityCertificate& cert) {
  return verify_vertex_convexity(cg.n_vertices, planes, cert);
}

VertexSolveReport solve_vertex_convexity(
    int n_vertices, const std::vector<ReflectingPlane>& planes,
    const SolveOptions& opts) {
  const VertexConvexitySystem sys = vertex_system(n_vertices, planes);
  const SolveResult res = solve_reflection_system(sys.system, opts);

  VertexSolveReport rep;
  rep.status = res.status;
  rep.sum_residual = res.sum_residual;
  rep.min_eigenvalue = res.min_eigenvalue;
  rep.sweeps = res.sweeps;
  if (res.status == SolveStatus::InfeasibleStructure) return rep;

  VertexConvexityCertificate cert;
  cert.tol_sum = opts.tol_sum;
  cert.tol_psd = opts.tol_psd;
  cert.provenance = "solved";
  for (std::size_t k = 0; k < res.P.size(); ++k)
    cert.entries.push_back({sys.plane_of_wall[k], res.P[k]});
  rep.certificate = std::move(cert);
  return rep;
}

VertexSolveReport solve_vertex_convexity(
    const CosetGraph& cg, const std::vector<ReflectingPlane>& planes,
    const SolveOptions& opts) {
  return solve_vertex_convexity(cg.n_vertices, planes, opts);
}

namespace {

void require_tag(const CosetGraph& cg, const char* tag, const char* which) {
  if (cg.n_vertices == 2) return;  // rank-1 degenerate: all recipes coincide
  if (cg.polytope != tag)
    throw InputError(std::string(which) + " recipe requires a " + tag +
                     "-tagged coset graph (got '" +
                     (cg.polytope.empty() ? "untagged" : cg.polytope) + "')");
}

// Shared by hypercube / orthoplex / demihypercube: the identity on every
// plane's R side associates 1 to every pair of mirror images.
VertexConvexityCertificate mirror_pair_identity(
    const CosetGraph& cg, const std::vector<ReflectingPlane>& planes) {
  const VertexConvexitySystem sys = vertex_system(cg.n_vertices, planes);
  VertexConvexityCertificate cert;
  for (std::size_t k = 0; k < sys.system.walls.size(); ++k) {
    const int r = static_cast<int>(sys.system.walls[k].r_items.size());
    cert.entries.push_back(
        {sys.plane_of_wall[k], Eigen::MatrixXd::Identity(r, r)});
  }
  return cert;
}

}  // namespace

VertexConvexityCertificate simplex_certificate(
    const CosetGraph& cg, const std::vector<ReflectingPlane>& planes) {
  require_tag(cg, "simplex", "simplex");
  const VertexConvexitySystem sys = vertex_system(cg.n_vertices, planes);
  std::vector<Eigen::MatrixXd> P(sys.system.walls.size());
  for (std::size_t k = 0; k < P.size(); ++k) {
    const int r = static_cast<int>(sys.system.walls[k].r_items.size());
    P[k] = Eigen::MatrixXd::Zero(r, r);
  }
  // Unit weight on the plane that swaps each pair of vertices.
  for (int u = 0; u < cg.n_vertices; ++u) {
    for (int v = u + 1; v < cg.n_vertices; ++v) {
      for (std::size_t k = 0; k < sys.system.walls.size(); ++k) {
        const Wall& w = sys.system.walls[k];
        if (w.involution[u] != v) continue;
        const int ritem = w.side[u] == 0 ? u : v;
        P[k](w.r_pos[ritem], w.r_pos[ritem]) = 1.0;
        break;
      }
    }
  }
  VertexConvexityCertificate cert;
  for (std::size_t k = 0; k < P.size(); ++k)
    cert.entries.push_back({sys.plane_of_wall[k], std::move(P[k])});
  return cert;
}

VertexConvexityCertificate hypercube_certificate(
    const CosetGraph& cg, const std::vector<ReflectingPlane>& planes) {
  require_tag(cg, "hypercube", "hypercube");
  return mirror_pair_identity(cg, planes);
}

VertexConvexityCertificate orthoplex_certificate(
    const CosetGraph& cg, const std::vector<ReflectingPlane>& planes) {
  require_tag(cg, "orthoplex", "orthoplex");
  return mirror_pair_identity(cg, planes);
}

VertexConvexityCertificate demihypercube_certificate(
    const CosetGraph& cg, const std::vector<ReflectingPlane>& planes) {
  require_tag(cg, "demihypercube", "demihypercube");
  return mirror_pair_identity(cg, planes);
}

RecipeReport run_polytope_recipe(const CosetGraph& cg,
                                 const std::vector<ReflectingPlane>& planes,
                                 const SolveOptions& opts) {
  RecipeReport rep;
  if (cg.polytope == "simplex") {
    rep.recipe = "simplex";
    rep.candidate = simplex_certificate(cg, planes);
  } else if (cg.polytope == "hypercube") {
    rep.recipe = "hypercube";
    rep.candidate = hypercube_certificate(cg, planes);
  } else if (cg.polytope == "orthoplex") {
    rep.recipe = "orthoplex";
    rep.candidate = orthoplex_certificate(cg, planes);
  } else if (cg.polytope == "demihypercube") {
    rep.recipe = "demihypercube";
    rep.candidate = demihypercube_certificate(cg, planes);
  } else {
    throw InputError("coset graph carries no named-polytope tag");
  }

  const VertexConvexitySystem sys = vertex_system(cg.n_vertices, planes);
  std::vector<Eigen::MatrixXd> P(sys.system.walls.size());
  for (std::size_t k = 0; k < P.size(); ++k) {
    const int r = static_cast<int>(sys.system.walls[k].r_items.size());
    P[k] = Eigen::MatrixXd::Zero(r, r);
  }
  for (const VertexCertEntry& e : rep.candidate.entries)
    P[sys.wall_of_plane[e.plane_id]] = e.P;

  for (int u = 0; u < cg.n_vertices; ++u) {
    for (int v = u + 1; v < cg.n_vertices; ++v) {
      RecipeAuditRow row;
      row.v1 = u;
      row.v2 = v;
      for (std::size_t k = 0; k < sys.system.walls.size(); ++k) {
        const Wall& w = sys.system.walls[k];
        if (!wall_separates(w, u, v)) continue;
        ++row.n_separating;
        row.sum += m_value(w, P[k], u, v);
      }
      row.ok = row.n_separating > 0 &&
               std::abs(row.sum - 1.0) <= rep.candidate.tol_sum;
      rep.audit.push_back(row);
    }
  }

  rep.candidate_verdict = verify_vertex_convexity(cg, planes, rep.candidate);
  if (rep.candidate_verdict.pass) {
    rep.certificate = rep.candidate;
    rep.sum_residual = rep.candidate_verdict.max_sum_residual;
    rep.min_eigenvalue = rep.candidate_verdict.min_eigenvalue;
    return rep;
  }
  rep.fallback_used = true;
  VertexSolveReport sr = solve_vertex_convexity(cg, planes, opts);
  rep.fallback_status = sr.status;
  rep.sum_residual = sr.sum_residual;
  rep.min_eigenvalue = sr.min_eigenvalue;
  rep.sweeps = sr.sweeps;
  if (sr.status == SolveStatus::Converged)
    rep.certificate = std::move(sr.certificate);
  return rep;
}

VertexConvexityCertificate edgevertex_certificate(
    const PsiGraph& z,
    const std::vector<EdgeConvexityCertificate>& edge_certs) {
  const std::vector<ReflectingCut> cuts = enumerate_cuts(z);

  VertexConvexityCertificate out;
  out.tol_sum = 1e-6;
  out.tol_psd = 1e-6;
  out.provenance = "composed";

  if (z.n == 1) {
    // Single-edge bundle: one cut through all its edges, one vertex pair.
    if (cuts.size() != 1)
      throw Error("internal: single-edge graph must have exactly one cut");
    out.entries.push_back({0, Eigen::MatrixXd::Ones(1, 1)});
    return out;
  }
  if (z.q() < 2)
    throw InputError("edge-to-vertex assembly requires at least two colors");

  std::vector<const EdgeConvexityCertificate*> by_color(z.q(), nullptr);
  for (const EdgeConvexityCertificate& c : edge_certs) {
    const int ci = z.color_index(c.color);
    if (ci < 0)
      throw InputError("certificate color '" + c.color +
                       "' not in the graph");
    if (by_color[ci])
      throw InputError("duplicate certificate for color '" + c.color + "'");
    by_color[ci] = &c;
  }
  for (int c = 0; c < z.q(); ++c)
    if (!by_color[c])
      throw InputError("missing certificate for color '" + z.colors[c] + "'");
  for (const EdgeConvexityCertificate& c : edge_certs) {
    const ConvexityVerdict vd = verify_edge_convexity(z, c);
    if (!vd.pass)
      throw InputError("edge certificate for color '" + c.color +
                       "' does not verify: " + vd.detail);
  }

  const int A = 0;
  const EdgeConvexitySystem esys = edge_system(z, A, cuts);
  std::vector<Eigen::MatrixXd> Pe(esys.system.walls.size());
  for (std::size_t k = 0; k < Pe.size(); ++k) {
    const int r = static_cast<int>(esys.system.walls[k].r_items.size());
    Pe[k] = Eigen::MatrixXd::Zero(r, r);
  }
  for (const EdgeCertEntry& e : by_color[A]->entries) {
    const int wall = esys.wall_of_cut[e.cut_id];
    Pe[wall] = 0.5 * (e.P + e.P.transpose());
  }

  const std::vector<ReflectingPlane> planes = vertex_planes(z, cuts);
  const VertexConvexitySystem vsys = vertex_system(2 * z.n, planes);
  std::vector<Eigen::MatrixXd> Pv(vsys.system.walls.size());
  for (std::size_t k = 0; k < Pv.size(); ++k) {
    const int r = static_cast<int>(vsys.system.walls[k].r_items.size());
    Pv[k] = Eigen::MatrixXd::Zero(r, r);
  }

  const auto a_edge = [&](int item) {
    return item < z.n ? item : z.sigma_inv[A][item - z.n];
  };

  for (int u = 0; u < 2 * z.n; ++u) {
    for (int v = u + 1; v < 2 * z.n; ++v) {
      bool adjacent = false;
      int owning_cut = -1;
      if (u < z.n && v >= z.n) {
        const int w = u, b = v - z.n;
        for (int c = 0; c < z.q(); ++c) {
          if (z.sigma[c][w] != b) continue;
          adjacent = true;
          const int eid = z.edge_id(c, w);
          for (int k = 0;
               k < static_cast<int>(cuts.size()) && owning_cut < 0; ++k)
            if (std::binary_search(cuts[k].fixed_edges.begin(),
                                   cuts[k].fixed_edges.end(), eid))
              owning_cut = k;
          if (owning_cut >= 0) break;
        }
      }
      if (adjacent) {
        // The cut owning a connecting edge is the only one separating the
        // pair; the endpoints are its mirror images, so the slot is the
        // diagonal.  An unowned edge leaves the pair uncovered and is
        // reported by the final verification.
        if (owning_cut >= 0) {
          const int wall = vsys.wall_of_plane[owning_cut];
          const Wall& wv = vsys.system.walls[wall];
          const int ritem = wv.side[u] == 0 ? u : v;
          Pv[wall](wv.r_pos[ritem], wv.r_pos[ritem]) = 1.0;
        }
        continue;
      }
      const int au = a_edge(u), av = a_edge(v);
      for (int k = 0; k < static_cast<int>(cuts.size()); ++k) {
        const int wall = vsys.wall_of_plane[k];
        if (wall < 0) continue;
        const Wall& wv = vsys.system.walls[wall];
        if (!wall_separates(wv, u, v)) continue;
        // Cuts separating the pair's first-color edges contribute that
        // edge-matrix entry; cuts separating only the vertices contribute 0.
        double value = 0.0;
        const int ew = esys.wall_of_cut[k];
        if (ew >= 0) {
          const Wall& we = esys.system.walls[ew];
          if (wall_separates(we, au, av)) value = m_value(we, Pe[ew], au, av);
        }
        const int ritem = wv.side[u] == 0 ? u : v;
        const int litem = ritem == u ? v : u;
        Pv[wall](wv.r_pos[ritem], wv.r_pos[wv.involution[litem]]) = value;
      }
    }
  }

  for (std::size_t k = 0; k < Pv.size(); ++k)
    out.entries.push_back({vsys.plane_of_wall[k], std::move(Pv[k])});

  const ConvexityVerdict vd =
      verify_vertex_convexity(2 * z.n, planes, out);
  if (!vd.pass)
    throw Error("internal: assembled vertex certificate failed verification: " +
                vd.detail);
  return out;
}

}  // namespace psigraph
