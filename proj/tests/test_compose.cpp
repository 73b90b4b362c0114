#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "psigraph/certify.hpp"
#include "psigraph/compose.hpp"
#include "psigraph/convexity.hpp"
#include "psigraph/coset.hpp"
#include "psigraph/coxeter_group.hpp"
#include "psigraph/cuts.hpp"
#include "psigraph/diagram.hpp"
#include "psigraph/errors.hpp"
#include "psigraph/psi_graph.hpp"

using namespace psigraph;

namespace {

CayleyGraph cay(const std::string& d) {
  return from_cayley(enumerate_group(parse_diagram(d)));
}

std::vector<int> all_but(int rank, int t) {
  std::vector<int> k;
  for (int a = 0; a < rank; ++a)
    if (a != t) k.push_back(a);
  return k;
}

// solver certificates for every color; requires convergence
std::vector<EdgeConvexityCertificate> solved_certs(const PsiGraph& z) {
  std::vector<EdgeConvexityCertificate> out;
  for (const std::string& c : z.colors) {
    const EdgeSolveReport r = solve_edge_convexity(z, c);
    REQUIRE(r.status == SolveStatus::Converged);
    out.push_back(*r.certificate);
  }
  return out;
}

}  // namespace

TEST_CASE("vertex certificate transport") {
  const PsiGraph sq = from_sigma(2, {"A", "B"}, {{0, 1}, {1, 0}});
  const std::vector<ReflectingPlane> planes = vertex_planes(sq);
  const VertexConvexityCertificate cert =
      edgevertex_certificate(sq, solved_certs(sq));

  // identity transport reproduces the certificate
  const VertexConvexityCertificate same =
      transport_vertex_certificate(planes, cert, {0, 1, 2, 3}, planes);
  CHECK(verify_vertex_convexity(4, planes, same).pass);
  REQUIRE(same.entries.size() == cert.entries.size());
  for (std::size_t i = 0; i < same.entries.size(); ++i)
    CHECK(same.entries[i].P.isApprox(cert.entries[i].P, 1e-12));

  // a genuine relabeling: swap the two whites and the two blacks
  const std::vector<int> swap_map{1, 0, 3, 2};
  std::vector<ReflectingPlane> moved = planes;
  for (ReflectingPlane& p : moved) {
    ReflectingPlane src = p;
    for (int v = 0; v < 4; ++v) {
      p.involution[v] = [&] {
        const int s = src.involution[swap_map[v]];
        return swap_map[s];
      }();
      p.side[v] = src.side[swap_map[v]];
    }
  }
  const VertexConvexityCertificate relab =
      transport_vertex_certificate(planes, cert, swap_map, moved);
  CHECK(verify_vertex_convexity(4, moved, relab).pass);

  CHECK_THROWS_AS(
      transport_vertex_certificate(planes, cert, {0, 0, 2, 3}, planes),
      InputError);
}

TEST_CASE("coset composition: the A1-in-(A1+A1) square") {
  const CayleyGraph sq = cay("A1+A1");
  const CosetGraph cg = build_coset_graph(sq.group, {0});
  const std::vector<ReflectingPlane> planes = project_cuts_to_planes(sq, cg);
  const RecipeReport rr = run_polytope_recipe(cg, planes);
  REQUIRE(rr.certificate.has_value());

  const SubgroupEmbedding emb = subgroup_embedding(sq.group, {0});
  const CayleyGraph zh = from_cayley(emb.subgroup);
  const CosetComposeReport rep =
      compose_coset(sq, cg, solved_certs(zh.graph), *rr.certificate);
  REQUIRE(rep.colors.size() == 1);
  CHECK(rep.colors[0].color == "A");
  CHECK(rep.colors[0].verdict.pass);
  CHECK(rep.colors[0].certificate.provenance == "composed");
  // the unique 1x1 certificate: weight 1 on the cut fixing the other color
  REQUIRE(rep.colors[0].certificate.entries.size() == 1);
  CHECK(rep.colors[0].certificate.entries[0].P(0, 0) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coset composition: both A2 parabolics of A3") {
  const CayleyGraph a3 = cay("A3");
  std::set<std::string> covered;
  for (const int t : {0, 2}) {
    CAPTURE(t);
    const CosetGraph cg = build_coset_graph(a3.group, all_but(3, t));
    const std::vector<ReflectingPlane> planes = project_cuts_to_planes(a3, cg);
    const RecipeReport rr = run_polytope_recipe(cg, planes);
    REQUIRE(rr.recipe == "simplex");
    REQUIRE(rr.certificate.has_value());
    const SubgroupEmbedding emb = subgroup_embedding(a3.group, cg.sub_nodes);
    const CayleyGraph zh = from_cayley(emb.subgroup);
    const CosetComposeReport rep =
        compose_coset(a3, cg, solved_certs(zh.graph), *rr.certificate);
    REQUIRE(rep.colors.size() == 2);
    for (const ComposedColorReport& c : rep.colors) {
      CHECK(c.verdict.pass);
      CHECK(c.verdict.max_sum_residual <= 1e-6);
      CHECK(c.verdict.min_eigenvalue >= -1e-6);
      covered.insert(c.color);
    }
  }
  CHECK(covered == std::set<std::string>{"A", "B", "C"});
}

TEST_CASE("coset composition: B2 over A1") {
  const CayleyGraph b2 = cay("B2");
  const CosetGraph cg = build_coset_graph(b2.group, {0});
  const std::vector<ReflectingPlane> planes = project_cuts_to_planes(b2, cg);
  const RecipeReport rr = run_polytope_recipe(cg, planes);
  REQUIRE(rr.certificate.has_value());
  const SubgroupEmbedding emb = subgroup_embedding(b2.group, {0});
  const CayleyGraph zh = from_cayley(emb.subgroup);
  const CosetComposeReport rep =
      compose_coset(b2, cg, solved_certs(zh.graph), *rr.certificate);
  REQUIRE(rep.colors.size() == 1);
  CHECK(rep.colors[0].color == "A");
  CHECK(rep.colors[0].verdict.pass);
}

TEST_CASE("coset composition rejects bad inputs") {
  const CayleyGraph sq = cay("A1+A1");
  const CosetGraph cg = build_coset_graph(sq.group, {0});
  const std::vector<ReflectingPlane> planes = project_cuts_to_planes(sq, cg);
  const RecipeReport rr = run_polytope_recipe(cg, planes);
  const SubgroupEmbedding emb = subgroup_embedding(sq.group, {0});
  const CayleyGraph zh = from_cayley(emb.subgroup);
  const std::vector<EdgeConvexityCertificate> good = solved_certs(zh.graph);

  // wrong subgroup color name
  std::vector<EdgeConvexityCertificate> wrong = good;
  wrong[0].color = "Z";
  CHECK_THROWS_AS(compose_coset(sq, cg, wrong, *rr.certificate), InputError);
  // missing certificate
  CHECK_THROWS_AS(compose_coset(sq, cg, {}, *rr.certificate), InputError);
  // failing vertex certificate
  VertexConvexityCertificate zeros;
  CHECK_THROWS_AS(compose_coset(sq, cg, good, zeros), InputError);
  // coset graph from an unrelated group
  const CayleyGraph b2 = cay("B2");
  const CosetGraph foreign = build_coset_graph(b2.group, {0});
  CHECK_THROWS_AS(compose_coset(sq, foreign, good, *rr.certificate),
                  InputError);
}

TEST_CASE("product composition: two segments make the square") {
  const CayleyGraph a1 = cay("A1");
  const std::vector<EdgeConvexityCertificate> c1 = solved_certs(a1.graph);
  const ProductComposeReport rep = compose_product(a1, c1, a1, c1);

  CHECK(rep.graph.graph.n == 2);
  REQUIRE(rep.colors.size() == 2);
  // the hand square certificates: each color puts weight 1 on the single cut
  // fixing the other color's edges
  for (const ComposedColorReport& c : rep.colors) {
    CHECK(c.verdict.pass);
    REQUIRE(c.certificate.entries.size() == 1);
    CHECK(c.certificate.entries[0].P.rows() == 1);
    CHECK(c.certificate.entries[0].P(0, 0) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(rep.colors[0].color == "A");
  CHECK(rep.colors[0].certificate.entries[0].cut_id == 1);
  CHECK(rep.colors[1].color == "B");
  CHECK(rep.colors[1].certificate.entries[0].cut_id == 0);
}

TEST_CASE("product composition: square times square is the 4-cube") {
  const CayleyGraph sq = cay("A1+A1");
  const std::vector<EdgeConvexityCertificate> certs = solved_certs(sq.graph);
  const ProductComposeReport rep = compose_product(sq, certs, sq, certs);
  CHECK(rep.graph.group.order == 16);
  CHECK(rep.graph.graph.q() == 4);
  REQUIRE(rep.colors.size() == 4);
  for (const ComposedColorReport& c : rep.colors) {
    CAPTURE(c.color);
    CHECK(c.verdict.pass);
    CHECK(c.certificate.provenance == "composed");
  }
}

TEST_CASE("product composition: hexagon times segment") {
  const CayleyGraph hexagon = cay("I3");  // I_2(3), the 6-cycle
  const CayleyGraph seg = cay("A1");
  const ProductComposeReport rep =
      compose_product(hexagon, solved_certs(hexagon.graph), seg,
                      solved_certs(seg.graph));
  REQUIRE(rep.colors.size() == 3);
  for (const ComposedColorReport& c : rep.colors) CHECK(c.verdict.pass);

  // unverified factor certificates are rejected
  std::vector<EdgeConvexityCertificate> broken = solved_certs(hexagon.graph);
  broken[0].entries[0].P(0, 0) += 0.5;
  CHECK_THROWS_AS(
      compose_product(hexagon, broken, seg, solved_certs(seg.graph)),
      InputError);
}

TEST_CASE("certification pipeline covers the desk-scale families") {
  struct Expect {
    const char* diagram;
    const char* route_prefix;  // common prefix of every color's route
  };
  for (const Expect& e : {Expect{"A1", "solved"}, Expect{"I3", "solved"},
                          Expect{"I4", "solved"}, Expect{"I5", "solved"},
                          Expect{"I6", "solved"}, Expect{"A2", "solved"},
                          Expect{"B2", "solved"},
                          Expect{"A1+A1", "composed:product"},
                          Expect{"A1+A1+A1", "composed:product"},
                          Expect{"A3", "composed:simplex"},
                          Expect{"D4", "composed:demihypercube"}}) {
    CAPTURE(e.diagram);
    const CertifyReport rep = certify_coxeter(parse_diagram(e.diagram));
    CHECK(rep.all_pass());
    CHECK(static_cast<int>(rep.colors.size()) == rep.graph.graph.q());
    for (const CertifiedColor& c : rep.colors) {
      CAPTURE(c.color);
      CHECK(c.verdict.pass);
      CHECK(c.route.rfind(e.route_prefix, 0) == 0);
      const double tol = c.certificate.provenance == "composed" ? 1e-6 : 1e-8;
      CHECK(c.certificate.tol_sum == tol);
      CHECK(c.verdict.max_sum_residual <= tol);
      CHECK(c.verdict.min_eigenvalue >= -tol);
    }
  }

  // B3 mixes the hypercube and orthoplex embeddings
  const CertifyReport b3 = certify_coxeter(parse_diagram("B3"));
  CHECK(b3.all_pass());
  REQUIRE(b3.colors.size() == 3);
  CHECK(b3.colors[0].route == "composed:hypercube");
  CHECK(b3.colors[1].route == "composed:hypercube");
  CHECK(b3.colors[2].route == "composed:orthoplex");

  // rank-4 simplex induction recurses through A3
  const CertifyReport a4 = certify_coxeter(parse_diagram("A4"));
  CHECK(a4.all_pass());
  for (const CertifiedColor& c : a4.colors)
    CHECK(c.route == "composed:simplex");
}

TEST_CASE("certification method switches") {
  CertifyOptions solve_opts;
  solve_opts.method = CertifyMethod::Solve;
  const CertifyReport rep = certify_coxeter(parse_diagram("B3"), solve_opts);
  CHECK(rep.all_pass());
  for (const CertifiedColor& c : rep.colors) {
    CHECK(c.route == "solved");
    CHECK(c.certificate.provenance == "solved");
  }

  CertifyOptions construct_opts;
  construct_opts.method = CertifyMethod::Construct;
  const CertifyReport rep2 =
      certify_coxeter(parse_diagram("A3"), construct_opts);
  CHECK(rep2.all_pass());
  for (const CertifiedColor& c : rep2.colors)
    CHECK(c.route == "composed:simplex");

  // non-contiguous components are rejected
  std::vector<std::vector<int>> m{{1, 2, 3}, {2, 1, 2}, {3, 2, 1}};
  CHECK_THROWS_AS(certify_coxeter(diagram_from_matrix(m)), InputError);
}
