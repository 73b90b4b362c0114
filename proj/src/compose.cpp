#include "psigraph/compose.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "psigraph/errors.hpp"

namespace psigraph {

namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& P) {
  return 0.5 * (P + P.transpose());
}

// Wall-aligned symmetrized matrices of a verified edge certificate; walls
// without an entry get zeros.
std::vector<Eigen::MatrixXd> edge_wall_matrices(
    const EdgeConvexitySystem& es, const EdgeConvexityCertificate& cert) {
  std::vector<Eigen::MatrixXd> P(es.system.walls.size());
  for (std::size_t w = 0; w < P.size(); ++w) {
    const int r = static_cast<int>(es.system.walls[w].r_items.size());
    P[w] = Eigen::MatrixXd::Zero(r, r);
  }
  for (const EdgeCertEntry& e : cert.entries) {
    const int w = es.wall_of_cut[e.cut_id];
    if (w >= 0) P[w] = symmetrized(e.P);
  }
  return P;
}

std::vector<Eigen::MatrixXd> vertex_wall_matrices(
    const VertexConvexitySystem& vs, const VertexConvexityCertificate& cert) {
  std::vector<Eigen::MatrixXd> P(vs.system.walls.size());
  for (std::size_t w = 0; w < P.size(); ++w) {
    const int r = static_cast<int>(vs.system.walls[w].r_items.size());
    P[w] = Eigen::MatrixXd::Zero(r, r);
  }
  for (const VertexCertEntry& e : cert.entries) {
    const int w = vs.wall_of_plane[e.plane_id];
    if (w >= 0) P[w] = symmetrized(e.P);
  }
  return P;
}

void require_verified(const CayleyGraph& z,
                      const std::vector<EdgeConvexityCertificate>& certs,
                      const std::string& which) {
  const int q = z.graph.q();
  if (static_cast<int>(certs.size()) != q)
    throw InputError(which + ": expected one certificate per color");
  std::vector<char> seen(q, 0);
  for (const EdgeConvexityCertificate& c : certs) {
    const int i = z.graph.color_index(c.color);
    if (i < 0)
      throw InputError(which + ": unknown certificate color '" + c.color + "'");
    if (seen[i])
      throw InputError(which + ": duplicate certificate for color '" + c.color +
                       "'");
    seen[i] = 1;
    const ConvexityVerdict v = verify_edge_convexity(z.graph, c);
    if (!v.pass)
      throw InputError(which + ": certificate for color '" + c.color +
                       "' does not verify: " + v.detail);
  }
}

}  // namespace

CosetComposeReport compose_coset(
    const CayleyGraph& zg, const CosetGraph& cg,
    const std::vector<EdgeConvexityCertificate>& subgroup_certs,
    const VertexConvexityCertificate& vertex_cert) {
  const CoxeterGroup& g = zg.group;
  if (g.order != cg.group.order || g.diagram.m != cg.group.diagram.m)
    throw InputError("coset graph does not belong to the given Cayley graph");
  if (cg.sub_nodes.empty())
    throw InputError("composition requires at least one subgroup generator");

  const SubgroupEmbedding emb = subgroup_embedding(g, cg.sub_nodes);
  const CayleyGraph zh = from_cayley(emb.subgroup);
  const int nk = static_cast<int>(cg.sub_nodes.size());

  std::vector<const EdgeConvexityCertificate*> hcert(nk, nullptr);
  for (const EdgeConvexityCertificate& c : subgroup_certs) {
    const int j = zh.graph.color_index(c.color);
    if (j < 0)
      throw InputError("subgroup certificate color '" + c.color +
                       "' is not a subgroup color");
    if (hcert[j])
      throw InputError("duplicate subgroup certificate for color '" + c.color +
                       "'");
    hcert[j] = &c;
  }
  for (int j = 0; j < nk; ++j) {
    if (!hcert[j])
      throw InputError("missing subgroup certificate for color '" +
                       zh.graph.colors[j] + "'");
    const ConvexityVerdict v = verify_edge_convexity(zh.graph, *hcert[j]);
    if (!v.pass)
      throw InputError("subgroup certificate for color '" +
                       zh.graph.colors[j] + "' does not verify: " + v.detail);
  }

  const std::vector<ReflectingPlane> planes = project_cuts_to_planes(zg, cg);
  {
    const ConvexityVerdict v = verify_vertex_convexity(cg, planes, vertex_cert);
    if (!v.pass)
      throw InputError("coset vertex certificate does not verify: " + v.detail);
  }

  const std::vector<ReflectingCut> cuts_g = enumerate_cuts(zg.graph);
  const std::vector<ReflectingCut> cuts_h = enumerate_cuts(zh.graph);

  const VertexConvexitySystem vsys = vertex_system(cg.n_vertices, planes);
  const std::vector<Eigen::MatrixXd> pc = vertex_wall_matrices(vsys, vertex_cert);

  // Every source cut of a plane separates the same coset pairs, so the
  // plane's matrix is carried by its first source cut and the others
  // contribute zero; otherwise the pair sums would double-count the plane.
  std::vector<int> plane_of_cut(cuts_g.size(), -1);
  std::vector<char> first_source(cuts_g.size(), 0);
  for (std::size_t pi = 0; pi < planes.size(); ++pi) {
    for (int c : planes[pi].source_cuts)
      plane_of_cut[c] = static_cast<int>(pi);
    first_source[planes[pi].source_cuts.front()] = 1;
  }

  std::vector<int> owner_h(static_cast<std::size_t>(zh.graph.n) * nk, -1);
  for (std::size_t kc = 0; kc < cuts_h.size(); ++kc)
    for (int ed : cuts_h[kc].fixed_edges) owner_h[ed] = static_cast<int>(kc);

  std::vector<EdgeConvexitySystem> esys_h;
  std::vector<std::vector<Eigen::MatrixXd>> ph;
  esys_h.reserve(nk);
  for (int j = 0; j < nk; ++j) {
    esys_h.push_back(edge_system(zh.graph, j, cuts_h));
    ph.push_back(edge_wall_matrices(esys_h.back(), *hcert[j]));
  }

  std::vector<int> g2h(g.order, -1);
  for (std::size_t h = 0; h < emb.embed.size(); ++h)
    g2h[emb.embed[h]] = static_cast<int>(h);
  std::vector<int> rep_inv(cg.n_vertices);
  for (int v = 0; v < cg.n_vertices; ++v)
    rep_inv[v] = g.inverse(cg.coset_rep[v]);
  const auto h_of = [&](int x) {
    const int h = g2h[g.multiply(x, rep_inv[cg.coset_of[x]])];
    if (h < 0) throw Error("internal: translated element left the subgroup");
    return h;
  };
  // subgroup white index of the ambient edge (gcolor, alpha)
  const auto h_edge = [&](int gcolor, int alpha) {
    const int hw = h_of(zg.white_elt[alpha]);
    const int hb = h_of(zg.black_elt[zg.graph.sigma[gcolor][alpha]]);
    return emb.subgroup.parity[hw] == 0 ? zh.side_index[hw]
                                        : zh.side_index[hb];
  };

  std::vector<int> pos_in_k(g.rank, -1);
  for (int j = 0; j < nk; ++j) pos_in_k[cg.sub_nodes[j]] = j;

  // Restriction of an ambient cut to a coset it slices: any fixed edge inside
  // the coset translates to a subgroup edge, whose owning cut is the
  // restriction.  Cached per (cut, coset).
  std::map<std::pair<int, int>, int> hcut_cache;
  const auto hcut_of = [&](int k, int v) {
    const auto key = std::make_pair(k, v);
    if (const auto it = hcut_cache.find(key); it != hcut_cache.end())
      return it->second;
    for (int ed : cuts_g[k].fixed_edges) {
      const int gcolor = ed / zg.graph.n;
      const int alpha = ed % zg.graph.n;
      if (cg.coset_of[zg.white_elt[alpha]] != v) continue;
      const int j = pos_in_k[gcolor];
      if (j < 0)
        throw Error("internal: fixed edge inside a coset is not subgroup-colored");
      const int hk = owner_h[zh.graph.edge_id(j, h_edge(gcolor, alpha))];
      if (hk < 0)
        throw Error("internal: subgroup edge owned by no subgroup cut");
      hcut_cache.emplace(key, hk);
      return hk;
    }
    throw Error("internal: cut slices a coset but fixes no edge inside it");
  };

  CosetComposeReport report;
  for (int j = 0; j < nk; ++j) {
    const int gi = cg.sub_nodes[j];
    const EdgeConvexitySystem esys_g = edge_system(zg.graph, gi, cuts_g);
    EdgeConvexityCertificate cert;
    cert.color = zg.graph.colors[gi];
    cert.tol_sum = 1e-6;
    cert.tol_psd = 1e-6;
    cert.provenance = "composed";
    for (std::size_t w = 0; w < esys_g.system.walls.size(); ++w) {
      const Wall& wall = esys_g.system.walls[w];
      const int k = esys_g.cut_of_wall[w];
      const int r = static_cast<int>(wall.r_items.size());
      Eigen::MatrixXd P = Eigen::MatrixXd::Zero(r, r);
      for (int a = 0; a < r; ++a) {
        const int e = wall.r_items[a];
        const int ve = cg.coset_of[zg.white_elt[e]];
        for (int b = 0; b < r; ++b) {
          const int ep = wall.involution[wall.r_items[b]];
          const int vep = cg.coset_of[zg.white_elt[ep]];
          double value = 0.0;
          if (ve == vep) {
            const int hk = hcut_of(k, ve);
            const int wh = esys_h[j].wall_of_cut[hk];
            const int eh = h_edge(gi, e), eph = h_edge(gi, ep);
            if (wh < 0 ||
                !wall_separates(esys_h[j].system.walls[wh], eh, eph))
              throw Error(
                  "internal: restricted cut fails to separate the restricted pair");
            value = m_value(esys_h[j].system.walls[wh], ph[j][wh], eh, eph);
          } else if (plane_of_cut[k] >= 0 && first_source[k]) {
            const int wv = vsys.wall_of_plane[plane_of_cut[k]];
            if (wv >= 0 && wall_separates(vsys.system.walls[wv], ve, vep))
              value = m_value(vsys.system.walls[wv], pc[wv], ve, vep);
          }
          P(a, b) = value;
        }
      }
      cert.entries.push_back({k, std::move(P)});
    }
    ComposedColorReport cr;
    cr.color = cert.color;
    cr.verdict = verify_edge_convexity(zg.graph, cert);
    cr.certificate = std::move(cert);
    report.colors.push_back(std::move(cr));
  }
  return report;
}

VertexConvexityCertificate transport_vertex_certificate(
    const std::vector<ReflectingPlane>& src_planes,
    const VertexConvexityCertificate& src_cert,
    const std::vector<int>& src_vertex,
    const std::vector<ReflectingPlane>& dst_planes) {
  const int nd = static_cast<int>(src_vertex.size());
  const int ns = src_planes.empty()
                     ? nd
                     : static_cast<int>(src_planes[0].involution.size());
  if (nd != ns)
    throw InputError("vertex map must be a bijection onto the source vertices");
  {
    std::vector<char> hit(ns, 0);
    for (int v : src_vertex) {
      if (v < 0 || v >= ns || hit[v])
        throw InputError(
            "vertex map must be a bijection onto the source vertices");
      hit[v] = 1;
    }
  }

  std::vector<Wall> swalls;
  swalls.reserve(src_planes.size());
  for (const ReflectingPlane& p : src_planes)
    swalls.push_back(make_wall(p.involution, p.side));
  std::vector<Eigen::MatrixXd> smat(src_planes.size());
  for (std::size_t i = 0; i < src_planes.size(); ++i) {
    const int r = static_cast<int>(swalls[i].r_items.size());
    smat[i] = Eigen::MatrixXd::Zero(r, r);
  }
  for (const VertexCertEntry& e : src_cert.entries) {
    if (e.plane_id < 0 ||
        e.plane_id >= static_cast<int>(src_planes.size()))
      throw InputError("certificate references an unknown source plane");
    const Wall& w = swalls[e.plane_id];
    const int r = static_cast<int>(w.r_items.size());
    if (e.P.rows() != r || e.P.cols() != r)
      throw InputError("certificate matrix shape mismatch on a source plane");
    smat[e.plane_id] = symmetrized(e.P);
  }

  VertexConvexityCertificate out;
  out.tol_sum = src_cert.tol_sum;
  out.tol_psd = src_cert.tol_psd;
  out.provenance = src_cert.provenance;

  const VertexConvexitySystem dsys = vertex_system(nd, dst_planes);
  for (std::size_t w = 0; w < dsys.system.walls.size(); ++w) {
    const int dp = dsys.plane_of_wall[w];
    const ReflectingPlane& d = dst_planes[dp];
    int match = -1;
    bool flip = false;
    for (std::size_t s = 0; s < src_planes.size() && match < 0; ++s) {
      const ReflectingPlane& sp = src_planes[s];
      bool inv_ok = true;
      for (int v = 0; v < nd && inv_ok; ++v)
        inv_ok = sp.involution[src_vertex[v]] == src_vertex[d.involution[v]];
      if (!inv_ok) continue;
      bool same = true, flipped = true;
      for (int v = 0; v < nd && (same || flipped); ++v) {
        const int ds = d.side[v], ss = sp.side[src_vertex[v]];
        if ((ds == 2) != (ss == 2)) {
          same = flipped = false;
        } else if (ds != 2) {
          if (ds != ss) same = false;
          if (ds != 1 - ss) flipped = false;
        }
      }
      if (same || flipped) {
        match = static_cast<int>(s);
        flip = !same;
      }
    }
    if (match < 0)
      throw InputError("destination plane matches no source plane");
    const Wall& sw = swalls[match];
    const Wall& dw = dsys.system.walls[w];
    const int r = static_cast<int>(dw.r_items.size());
    const auto to_src_r = [&](int dv) {
      const int sv = src_vertex[dv];
      return flip ? sw.involution[sv] : sv;
    };
    Eigen::MatrixXd P(r, r);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        P(a, b) = smat[match](sw.r_pos[to_src_r(dw.r_items[a])],
                              sw.r_pos[to_src_r(dw.r_items[b])]);
    out.entries.push_back({dp, std::move(P)});
  }
  return out;
}

ProductComposeReport compose_product(
    const CayleyGraph& z1, const std::vector<EdgeConvexityCertificate>& certs1,
    const CayleyGraph& z2,
    const std::vector<EdgeConvexityCertificate>& certs2) {
  require_verified(z1, certs1, "first factor");
  require_verified(z2, certs2, "second factor");

  const int r1 = z1.group.rank, r2 = z2.group.rank;
  std::vector<std::vector<int>> m(r1 + r2, std::vector<int>(r1 + r2, 2));
  for (int i = 0; i < r1; ++i)
    for (int j = 0; j < r1; ++j) m[i][j] = z1.group.diagram.m[i][j];
  for (int i = 0; i < r2; ++i)
    for (int j = 0; j < r2; ++j) m[r1 + i][r1 + j] = z2.group.diagram.m[i][j];
  const CoxeterGroup g = enumerate_group(diagram_from_matrix(m));

  ProductComposeReport report;
  report.graph = from_cayley(g);

  const auto one_side = [&](const std::vector<int>& knodes,
                            const std::vector<int>& onodes,
                            const std::vector<EdgeConvexityCertificate>& kcerts,
                            const CayleyGraph& zo,
                            const std::vector<EdgeConvexityCertificate>& ocerts) {
    const CosetGraph cg = build_coset_graph(g, knodes);
    const std::vector<ReflectingPlane> dst_planes =
        project_cuts_to_planes(report.graph, cg);

    const SubgroupEmbedding eo = subgroup_embedding(g, onodes);
    if (eo.subgroup.order != zo.group.order ||
        eo.subgroup.diagram.m != zo.group.diagram.m)
      throw Error("internal: factor subgroup enumeration mismatch");
    // each coset of one factor holds exactly one element of the other
    std::vector<int> src_vertex(cg.n_vertices, -1);
    const int no = zo.graph.n;
    for (int h = 0; h < static_cast<int>(eo.subgroup.order); ++h) {
      const int v = cg.coset_of[eo.embed[h]];
      if (src_vertex[v] != -1)
        throw Error("internal: coset met twice by the complementary factor");
      src_vertex[v] = zo.group.parity[h] == 0 ? zo.side_index[h]
                                              : no + zo.side_index[h];
    }
    for (int v = 0; v < cg.n_vertices; ++v)
      if (src_vertex[v] == -1)
        throw Error("internal: coset missed by the complementary factor");

    const VertexConvexityCertificate vsrc =
        edgevertex_certificate(zo.graph, ocerts);
    const VertexConvexityCertificate vdst = transport_vertex_certificate(
        vertex_planes(zo.graph), vsrc, src_vertex, dst_planes);
    CosetComposeReport side = compose_coset(report.graph, cg, kcerts, vdst);
    for (ComposedColorReport& c : side.colors)
      report.colors.push_back(std::move(c));
  };

  std::vector<int> k1(r1), k2(r2);
  std::iota(k1.begin(), k1.end(), 0);
  std::iota(k2.begin(), k2.end(), r1);
  one_side(k1, k2, certs1, z2, certs2);
  one_side(k2, k1, certs2, z1, certs1);
  return report;
}

}  // namespace psigraph
