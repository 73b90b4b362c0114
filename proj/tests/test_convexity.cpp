#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "psigraph/convexity.hpp"
#include "psigraph/cuts.hpp"
#include "psigraph/errors.hpp"
#include "psigraph/psi_graph.hpp"
#include "psigraph/reflection_system.hpp"
#include "psigraph/rng.hpp"

using namespace psigraph;

namespace {

PsiGraph square() { return from_sigma(2, {"A", "B"}, {{0, 1}, {1, 0}}); }
PsiGraph hexagon() { return from_sigma(3, {"A", "B"}, {{0, 1, 2}, {1, 2, 0}}); }
PsiGraph octagon() {
  return from_sigma(4, {"A", "B"}, {{0, 1, 2, 3}, {1, 2, 3, 0}});
}
PsiGraph ring(int m) {  // 2m-cycle
  std::vector<int> id(m), cyc(m);
  for (int i = 0; i < m; ++i) {
    id[i] = i;
    cyc[i] = (i + 1) % m;
  }
  return from_sigma(m, {"A", "B"}, {id, cyc});
}
PsiGraph lopsided() {
  return from_sigma(3, {"A", "B", "C"}, {{0, 1, 2}, {1, 0, 2}, {1, 2, 0}});
}

Eigen::MatrixXd mat1(double v) {
  Eigen::MatrixXd m(1, 1);
  m(0, 0) = v;
  return m;
}

// Relabel white w -> pw[w], black b -> pb[b].
PsiGraph relabeled(const PsiGraph& z, const std::vector<int>& pw,
                   const std::vector<int>& pb) {
  std::vector<std::vector<int>> sig(z.q(), std::vector<int>(z.n));
  for (int c = 0; c < z.q(); ++c)
    for (int w = 0; w < z.n; ++w) sig[c][pw[w]] = pb[z.sigma[c][w]];
  return from_sigma(z.n, z.colors, sig);
}

std::vector<int> random_perm(int n, Rng& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(p[i], p[static_cast<int>(rng.integer(i + 1))]);
  return p;
}

std::vector<int> inverted(const std::vector<int>& p) {
  std::vector<int> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

// Transport a certificate along the relabeling (pw, pb): cuts are matched by
// their relabeled fixed-edge sets and matrix slots follow the R sides, using
// the cut involution to bridge an R/L orientation flip.
EdgeConvexityCertificate transported(const PsiGraph& z1,
                                     const EdgeConvexityCertificate& c1,
                                     const PsiGraph& z2,
                                     const std::vector<int>& pw,
                                     const std::vector<int>& pb) {
  const EdgeConvexitySystem s1 = edge_system(z1, c1.color);
  const EdgeConvexitySystem s2 = edge_system(z2, c1.color);
  const std::vector<int> pw_inv = inverted(pw);

  EdgeConvexityCertificate c2;
  c2.color = c1.color;
  c2.tol_sum = c1.tol_sum;
  c2.tol_psd = c1.tol_psd;
  c2.provenance = c1.provenance;
  for (const EdgeCertEntry& e : c1.entries) {
    std::vector<int> fixed2;
    for (int id : s1.cuts[e.cut_id].fixed_edges)
      fixed2.push_back((id / z1.n) * z1.n + pw[id % z1.n]);
    std::sort(fixed2.begin(), fixed2.end());
    int k2 = -1;
    for (int c = 0; c < static_cast<int>(s2.cuts.size()); ++c)
      if (s2.cuts[c].fixed_edges == fixed2) k2 = c;
    REQUIRE(k2 >= 0);
    const Wall& w1 = s1.system.walls[s1.wall_of_cut[e.cut_id]];
    const Wall& w2 = s2.system.walls[s2.wall_of_cut[k2]];
    const bool flip = w1.side[pw_inv[w2.r_items[0]]] == 1;
    auto to_old_r = [&](int item2) {
      const int item1 = pw_inv[item2];
      return flip ? w1.involution[item1] : item1;
    };
    const int r = static_cast<int>(w2.r_items.size());
    Eigen::MatrixXd P(r, r);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        P(a, b) = e.P(w1.r_pos[to_old_r(w2.r_items[a])],
                      w1.r_pos[to_old_r(w2.r_items[b])]);
    c2.entries.push_back({k2, P});
  }
  std::sort(c2.entries.begin(), c2.entries.end(),
            [](const auto& a, const auto& b) { return a.cut_id < b.cut_id; });
  return c2;
}

}  // namespace

TEST_CASE("wall validation") {
  CHECK_NOTHROW(make_wall({1, 0}, {0, 1}));
  CHECK_NOTHROW(make_wall({0, 2, 1}, {2, 0, 1}));
  CHECK_THROWS_AS(make_wall({1, 0}, {0}), Error);         // length mismatch
  CHECK_THROWS_AS(make_wall({1, 2, 0}, {0, 1, 2}), Error);  // not an involution
  CHECK_THROWS_AS(make_wall({0, 1}, {0, 1}), Error);  // fixed item off the wall
  CHECK_THROWS_AS(make_wall({1, 0}, {2, 2}), Error);  // swapped items on wall
  CHECK_THROWS_AS(make_wall({1, 0}, {0, 0}), Error);  // both items on side R
}

TEST_CASE("single-wall system solves to the forced unit entry") {
  ReflectionSystem sys;
  sys.n_items = 2;
  sys.walls.push_back(make_wall({1, 0}, {0, 1}));
  const SolveResult r = solve_reflection_system(sys);
  REQUIRE(r.status == SolveStatus::Converged);
  REQUIRE(r.P.size() == 1);
  CHECK(r.P[0].rows() == 1);
  CHECK(r.P[0](0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  const ResidualReport rep = verify_reflection_system(sys, r.P, 1e-8, 1e-8);
  CHECK(rep.ok);
  CHECK(rep.max_sum_residual <= 1e-12);
}

TEST_CASE("two parallel walls split the unit weight") {
  ReflectionSystem sys;
  sys.n_items = 2;
  sys.walls.push_back(make_wall({1, 0}, {0, 1}));
  sys.walls.push_back(make_wall({1, 0}, {1, 0}));
  const SolveResult r = solve_reflection_system(sys);
  REQUIRE(r.status == SolveStatus::Converged);
  // Equal-split initialization is already feasible.
  CHECK(r.sweeps == 1);
  CHECK(r.P[0](0, 0) + r.P[1](0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coupled four-item system needs the cone projection") {
  // Wall 0: 0<->1, 2<->3 with R = {0, 2}; wall 1: 0<->3, 1<->2 with
  // R = {0, 1}.  The sum constraints force P0 = [[1, a], [a, 1]] and
  // P1 = [[1-a, 1], [1, 1-a]], feasible exactly for a in [-1, 0].
  ReflectionSystem sys;
  sys.n_items = 4;
  sys.walls.push_back(make_wall({1, 0, 3, 2}, {0, 1, 0, 1}));
  sys.walls.push_back(make_wall({3, 2, 1, 0}, {0, 0, 1, 1}));

  // The equal-split start violates PSD, so a zero-sweep run reports failure.
  SolveOptions zero;
  zero.max_sweeps = 0;
  const SolveResult r0 = solve_reflection_system(sys, zero);
  CHECK(r0.status == SolveStatus::NoConvergence);
  CHECK(r0.min_eigenvalue < -0.4);  // the [[1/2, 1], [1, 1/2]] start

  const SolveResult r = solve_reflection_system(sys);
  REQUIRE(r.status == SolveStatus::Converged);
  const double a = r.P[0](0, 1);
  CHECK(a <= 1e-6);
  CHECK(a >= -1.0 - 1e-6);
  CHECK(r.P[0](0, 0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.P[1](0, 1) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.P[1](0, 0) == doctest::Approx(1.0 - a).epsilon(1e-6));
  CHECK(verify_reflection_system(sys, r.P, 1e-8, 1e-8).ok);
}

TEST_CASE("m_value reads the pair slot regardless of argument order") {
  const Wall w = make_wall({3, 2, 1, 0}, {0, 0, 1, 1});
  Eigen::MatrixXd P(2, 2);
  P << 1.0, 2.0, 2.0, 3.0;
  CHECK(m_value(w, P, 0, 2) == 2.0);  // slot (pos 0, pos k(2)=1)
  CHECK(m_value(w, P, 2, 0) == 2.0);
  CHECK(m_value(w, P, 0, 3) == 1.0);  // diagonal: k(3) = 0
  CHECK(m_value(w, P, 1, 2) == 3.0);
}

TEST_CASE("uncovered pairs are reported as structural infeasibility") {
  ReflectionSystem sys;
  sys.n_items = 2;  // no walls at all
  const SolveResult r = solve_reflection_system(sys);
  CHECK(r.status == SolveStatus::InfeasibleStructure);
  CHECK(r.uncovered_i == 0);
  CHECK(r.uncovered_j == 1);
  const ResidualReport rep = verify_reflection_system(sys, {}, 1e-8, 1e-8);
  CHECK_FALSE(rep.ok);
  CHECK(rep.structural_failure);
  CHECK(rep.uncovered_i == 0);

  ReflectionSystem one;
  one.n_items = 1;  // no pairs: vacuously feasible
  const ResidualReport vac = verify_reflection_system(one, {}, 1e-8, 1e-8);
  CHECK(vac.ok);
  CHECK(vac.max_sum_residual == 0.0);
  CHECK(solve_reflection_system(one).status == SolveStatus::Converged);
}

TEST_CASE("verifier rejects malformed matrix lists") {
  ReflectionSystem sys;
  sys.n_items = 2;
  sys.walls.push_back(make_wall({1, 0}, {0, 1}));
  CHECK_THROWS_AS(verify_reflection_system(sys, {}, 1e-8, 1e-8), Error);
  CHECK_THROWS_AS(
      verify_reflection_system(sys, {Eigen::MatrixXd::Zero(2, 2)}, 1e-8, 1e-8),
      Error);
}

TEST_CASE("square certificates: the unit entry and its failures") {
  const PsiGraph z = square();
  // Cut 1 is the B-fixing cut; it alone separates the single A-edge pair.
  EdgeConvexityCertificate good{"A", {{1, mat1(1.0)}}};
  const ConvexityVerdict vg = verify_edge_convexity(z, good);
  CHECK(vg.pass);
  CHECK(vg.max_sum_residual <= 1e-12);
  CHECK(vg.min_eigenvalue >= -1e-12);

  EdgeConvexityCertificate half{"A", {{1, mat1(0.5)}}};
  const ConvexityVerdict vh = verify_edge_convexity(z, half);
  CHECK_FALSE(vh.pass);
  CHECK_FALSE(vh.structural_failure);
  CHECK(vh.max_sum_residual == doctest::Approx(0.5).epsilon(1e-12));

  EdgeConvexityCertificate neg{"A", {{1, mat1(-1.0)}}};
  const ConvexityVerdict vn = verify_edge_convexity(z, neg);
  CHECK_FALSE(vn.pass);
  CHECK(vn.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));

  // A missing entry counts as a zero matrix: residual 1.
  EdgeConvexityCertificate empty{"A", {}};
  const ConvexityVerdict ve = verify_edge_convexity(z, empty);
  CHECK_FALSE(ve.pass);
  CHECK(ve.max_sum_residual == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("certificate input validation") {
  const PsiGraph z = square();
  CHECK_THROWS_AS(
      verify_edge_convexity(z, EdgeConvexityCertificate{"X", {}}),
      InputError);
  // Cut 5 does not exist.
  CHECK_THROWS_AS(
      verify_edge_convexity(z, EdgeConvexityCertificate{"A", {{5, mat1(1)}}}),
      InputError);
  // Cut 0 fixes both A-edges and separates no A-pair.
  CHECK_THROWS_AS(
      verify_edge_convexity(z, EdgeConvexityCertificate{"A", {{0, mat1(1)}}}),
      InputError);
  // Shape mismatch: the R side of cut 1 holds one A-edge.
  CHECK_THROWS_AS(
      verify_edge_convexity(
          z, EdgeConvexityCertificate{"A", {{1, Eigen::MatrixXd::Zero(2, 2)}}}),
      InputError);
  const PsiGraph two = from_sigma(2, {"A", "B"}, {{0, 1}, {0, 1}});  // E2 pair
  CHECK_THROWS_AS(verify_edge_convexity(two, EdgeConvexityCertificate{"A", {}}),
                  DisconnectedGraphError);
}

TEST_CASE("solver recovers the square certificate exactly") {
  const EdgeSolveReport r = solve_edge_convexity(square(), "A");
  REQUIRE(r.status == SolveStatus::Converged);
  REQUIRE(r.certificate.has_value());
  REQUIRE(r.certificate->entries.size() == 1);
  CHECK(r.certificate->entries[0].cut_id == 1);
  CHECK(r.certificate->entries[0].P(0, 0) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.certificate->provenance == "solved");
  CHECK(verify_edge_convexity(square(), *r.certificate).pass);
}

TEST_CASE("single-edge colors certify vacuously") {
  // One white vertex: a single edge per color, so there is nothing to
  // separate and the empty certificate passes.
  const PsiGraph z = from_sigma(1, {"A"}, {{0}});
  CHECK(verify_edge_convexity(z, EdgeConvexityCertificate{"A", {}}).pass);
  const EdgeSolveReport r = solve_edge_convexity(z, "A");
  CHECK(r.status == SolveStatus::Converged);
  CHECK(r.certificate->entries.empty());
}

TEST_CASE("cycle graphs solve for both colors") {
  for (int m = 2; m <= 6; ++m) {
    CAPTURE(m);
    const PsiGraph z = ring(m);
    for (const std::string color : {"A", "B"}) {
      const EdgeSolveReport r = solve_edge_convexity(z, color);
      REQUIRE(r.status == SolveStatus::Converged);
      CHECK(verify_edge_convexity(z, *r.certificate).pass);
    }
  }
  // Odd cycles pin every pair to a single cut, forcing unit diagonal entries.
  const EdgeSolveReport hex = solve_edge_convexity(hexagon(), "A");
  REQUIRE(hex.status == SolveStatus::Converged);
  CHECK(hex.sweeps == 1);
  for (const EdgeCertEntry& e : hex.certificate->entries) {
    REQUIRE(e.P.rows() == 1);
    CHECK(e.P(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("graphs that are not edge-reflecting are structurally infeasible") {
  const PsiGraph z = lopsided();
  const EdgeSolveReport r = solve_edge_convexity(z, "A");
  CHECK(r.status == SolveStatus::InfeasibleStructure);
  CHECK_FALSE(r.certificate.has_value());

  const ConvexityVerdict v =
      verify_edge_convexity(z, EdgeConvexityCertificate{"A", {}});
  CHECK_FALSE(v.pass);
  CHECK(v.structural_failure);
  CHECK(v.detail.find("not edge-reflecting for A") != std::string::npos);
}

TEST_CASE("census: structural feasibility equals edge-reflecting per color") {
  for (const auto& [n, q] : std::vector<std::pair<int, int>>{
           {2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}}) {
    for (const PsiGraph& z : enumerate_psigraphs(n, q, true)) {
      for (int c = 0; c < z.q(); ++c) {
        CAPTURE(n);
        CAPTURE(q);
        CAPTURE(c);
        const EdgeSolveReport r = solve_edge_convexity(z, z.colors[c]);
        CHECK((r.status == SolveStatus::InfeasibleStructure) ==
              !is_edge_reflecting(z, c));
        // At desk scale every edge-reflecting census graph also solves,
        // consistently with the classification of edge-convex graphs.
        if (is_edge_reflecting(z, c)) {
          CHECK(r.status == SolveStatus::Converged);
          CHECK(verify_edge_convexity(z, *r.certificate).pass);
        }
      }
    }
  }
}

TEST_CASE("certificates transport along relabelings") {
  Rng rng(424242);
  for (const PsiGraph& base : {octagon(), hexagon(), ring(5)}) {
    const EdgeSolveReport r = solve_edge_convexity(base, "A");
    REQUIRE(r.status == SolveStatus::Converged);
    for (int trial = 0; trial < 6; ++trial) {
      const std::vector<int> pw = random_perm(base.n, rng);
      const std::vector<int> pb = random_perm(base.n, rng);
      const PsiGraph z2 = relabeled(base, pw, pb);
      const EdgeConvexityCertificate c2 =
          transported(base, *r.certificate, z2, pw, pb);
      const ConvexityVerdict v = verify_edge_convexity(z2, c2);
      CAPTURE(trial);
      CHECK(v.pass);
    }
  }
}
