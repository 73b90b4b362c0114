#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "psigraph/diagram.hpp"
#include "psigraph/errors.hpp"
#include "psigraph/psi_graph.hpp"
#include "psigraph/rng.hpp"

using namespace psigraph;

namespace {

PsiGraph square() { return from_sigma(2, {"A", "B"}, {{0, 1}, {1, 0}}); }
PsiGraph hexagon() { return from_sigma(3, {"A", "B"}, {{0, 1, 2}, {1, 2, 0}}); }
PsiGraph octagon() {
  return from_sigma(4, {"A", "B"}, {{0, 1, 2, 3}, {1, 2, 3, 0}});
}
PsiGraph cube() {
  return from_sigma(4, {"A", "B", "C"},
                    {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}});
}
// Rigid example: only the identity is even and a single odd map exists.
PsiGraph lopsided() {
  return from_sigma(3, {"A", "B", "C"}, {{0, 1, 2}, {1, 0, 2}, {1, 2, 0}});
}
PsiGraph two_edges() { return from_sigma(2, {"A"}, {{0, 1}}); }

// Independent reference: test every candidate map pair directly against the
// defining equations instead of propagating along edges.
struct FlatAuto {
  bool odd;
  std::vector<int> wmap, bmap;
  auto tie() const { return std::tie(odd, wmap, bmap); }
  bool operator<(const FlatAuto& o) const { return tie() < o.tie(); }
  bool operator==(const FlatAuto& o) const { return tie() == o.tie(); }
};

std::vector<FlatAuto> brute_force_autos(const PsiGraph& z) {
  const int n = z.n;
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> perms;
  std::vector<int> p = base;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<FlatAuto> out;
  for (const auto& pw : perms)
    for (const auto& pb : perms) {
      bool even_ok = true, odd_ok = true;
      for (int A = 0; A < z.q() && (even_ok || odd_ok); ++A)
        for (int x = 0; x < n; ++x) {
          // even: sigma_A(pw(x)) == pb(sigma_A(x))
          if (z.sigma[A][pw[x]] != pb[z.sigma[A][x]]) even_ok = false;
          // odd (tau=pw, upsilon=pb): upsilon(sigma_A(x)) == sigma_A^{-1}(tau(x))
          if (pb[z.sigma[A][x]] != z.sigma_inv[A][pw[x]]) odd_ok = false;
        }
      if (even_ok) out.push_back({false, pw, pb});
      if (odd_ok) out.push_back({true, pw, pb});
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FlatAuto> flatten(const AutomorphismGroup& ag) {
  std::vector<FlatAuto> out;
  for (const auto& a : ag.even) out.push_back({false, a.wmap, a.bmap});
  for (const auto& a : ag.odd) out.push_back({true, a.wmap, a.bmap});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> random_perm(int n, Rng& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(p[i], p[static_cast<int>(rng.integer(i + 1))]);
  return p;
}

PsiGraph relabel(const PsiGraph& z, const std::vector<int>& pw,
                 const std::vector<int>& pb) {
  std::vector<std::vector<int>> sigma(z.q(), std::vector<int>(z.n));
  for (int A = 0; A < z.q(); ++A)
    for (int w = 0; w < z.n; ++w) sigma[A][pw[w]] = pb[z.sigma[A][w]];
  return from_sigma(z.n, z.colors, sigma);
}

}  // namespace

TEST_CASE("construction validates input") {
  CHECK_THROWS_AS(from_sigma(0, {"A"}, {{}}), InputError);
  CHECK_THROWS_AS(from_sigma(2, {}, {}), InputError);
  CHECK_THROWS_AS(from_sigma(2, {"A"}, {{0, 1}, {1, 0}}), InputError);
  CHECK_THROWS_AS(from_sigma(2, {"A", "A"}, {{0, 1}, {1, 0}}), InputError);
  CHECK_THROWS_AS(from_sigma(2, {"A"}, {{0, 0}}), InputError);
  CHECK_THROWS_AS(from_sigma(2, {"A"}, {{0, 2}}), InputError);
  CHECK_THROWS_AS(from_sigma(2, {"A"}, {{0}}), InputError);

  const PsiGraph z = hexagon();
  CHECK(z.q() == 2);
  CHECK(z.color_index("B") == 1);
  CHECK(z.color_index("Z") == -1);
  CHECK(z.edge_id(1, 2) == 5);
  CHECK(z.sigma_inv[1][1] == 0);
}

TEST_CASE("connectivity") {
  CHECK(is_connected(square()));
  CHECK(is_connected(cube()));
  CHECK(is_connected(from_sigma(1, {"A"}, {{0}})));
  CHECK_FALSE(is_connected(two_edges()));
  CHECK_FALSE(is_connected(from_sigma(4, {"A", "B"}, {{0, 1, 2, 3}, {1, 0, 3, 2}})));
}

TEST_CASE("automorphism search agrees with exhaustive check") {
  for (const PsiGraph& z :
       {square(), hexagon(), octagon(), cube(), lopsided()}) {
    CAPTURE(z.n);
    CAPTURE(z.q());
    CHECK(flatten(automorphism_group(z)) == brute_force_autos(z));
  }
  // Random connected graphs, several shapes.
  Rng rng(20240817);
  int tested = 0;
  while (tested < 12) {
    const int n = 2 + static_cast<int>(rng.integer(3));
    const int q = 2 + static_cast<int>(rng.integer(2));
    std::vector<std::string> colors;
    std::vector<std::vector<int>> sigma;
    for (int A = 0; A < q; ++A) {
      colors.push_back(cayley_color_name(A));
      sigma.push_back(random_perm(n, rng));
    }
    PsiGraph z = from_sigma(n, colors, sigma);
    if (!is_connected(z)) continue;
    ++tested;
    CHECK(flatten(automorphism_group(z)) == brute_force_autos(z));
  }
}

TEST_CASE("rigid three-color example") {
  const PsiGraph z = lopsided();
  const AutomorphismGroup ag = automorphism_group(z);
  REQUIRE(ag.even.size() == 1);   // identity only
  REQUIRE(ag.odd.size() == 1);
  CHECK(ag.extended_size() == 2);
  CHECK(ag.odd[0].wmap == std::vector<int>{1, 0, 2});
  CHECK(ag.odd[0].bmap == std::vector<int>{1, 0, 2});

  const TransitivityBattery b = transitivity_battery(z);
  CHECK_FALSE(b.vertex_transitive);
  CHECK_FALSE(b.weakly_vertex_transitive);
  CHECK_FALSE(b.strongly_all_edge_transitive);
  CHECK_FALSE(b.all_edge_transitive);
  CHECK_FALSE(b.cayley_involutive);
  CHECK(b.all_equal());
}

TEST_CASE("transitive examples pass the whole battery") {
  for (const PsiGraph& z : {square(), hexagon(), octagon(), cube()}) {
    CAPTURE(z.n);
    const AutomorphismGroup ag = automorphism_group(z);
    CHECK(ag.even.size() == static_cast<std::size_t>(z.n));
    CHECK(ag.extended_size() == static_cast<std::size_t>(2 * z.n));
    const TransitivityBattery b = transitivity_battery(z);
    CHECK(b.vertex_transitive);
    CHECK(b.weakly_vertex_transitive);
    CHECK(b.strongly_all_edge_transitive);
    CHECK(b.all_edge_transitive);
    CHECK(b.cayley_involutive);
    CHECK(b.all_equal());
  }
}

TEST_CASE("automorphisms compose, invert and close") {
  const PsiGraph z = hexagon();
  const AutomorphismGroup ag = automorphism_group(z);
  std::vector<GraphAutomorphism> all(ag.even);
  all.insert(all.end(), ag.odd.begin(), ag.odd.end());
  REQUIRE(all.size() == 6);
  auto member = [&](const GraphAutomorphism& a) {
    return std::find(all.begin(), all.end(), a) != all.end();
  };
  GraphAutomorphism id;
  id.odd = false;
  id.wmap = {0, 1, 2};
  id.bmap = {0, 1, 2};
  for (const auto& f : all)
    for (const auto& g : all) {
      const GraphAutomorphism fg = compose(z, f, g);
      CHECK(fg.odd == (f.odd != g.odd));
      CHECK(member(fg));
      // Associativity spot check against a third element.
      const GraphAutomorphism h = all[1];
      CHECK(compose(z, compose(z, f, g), h) == compose(z, f, compose(z, g, h)));
    }
  for (const auto& f : all) {
    CHECK(member(inverse_of(f)));
    CHECK(compose(z, f, inverse_of(f)) == id);
    CHECK(compose(z, inverse_of(f), f) == id);
  }
}

TEST_CASE("Cayley graphs of small groups") {
  struct Row {
    const char* diagram;
    PsiGraph expect;
  };
  const Row rows[] = {
      {"A2", hexagon()},
      {"A1+A1", square()},
      {"A1+A1+A1", cube()},
      {"I4", octagon()},
  };
  for (const auto& row : rows) {
    CAPTURE(row.diagram);
    const CayleyGraph cg = from_cayley(enumerate_group(parse_diagram(row.diagram)));
    CHECK(cg.graph.n * 2 == cg.group.order);
    CHECK(isomorphic(cg.graph, row.expect));
    // Element <-> vertex bookkeeping round-trips.
    for (int w = 0; w < cg.graph.n; ++w)
      CHECK(cg.side_index[cg.white_elt[w]] == w);
    for (int b = 0; b < cg.graph.n; ++b)
      CHECK(cg.side_index[cg.black_elt[b]] == b);
    // Group multiplication realizes every battery property.
    CHECK(transitivity_battery(cg.graph).all_equal());
    CHECK(transitivity_battery(cg.graph).cayley_involutive);
  }
  CHECK(cayley_color_name(0) == "A");
  CHECK(cayley_color_name(25) == "Z");
  CHECK(cayley_color_name(26) == "g26");
}

TEST_CASE("hypercube recognition") {
  CHECK(property_p_hypercube(square()));
  CHECK(property_p_hypercube(cube()));
  CHECK_FALSE(property_p_hypercube(hexagon()));
  CHECK_FALSE(property_p_hypercube(octagon()));
  CHECK_FALSE(property_p_hypercube(lopsided()));
  // Fixed points disqualify even when every pair commutes.
  CHECK_FALSE(property_p_hypercube(from_sigma(1, {"A", "B"}, {{0}, {0}})));
  // Structural cross-check: the positive cases are Cayley graphs of
  // products of order-2 groups, hence 2n == 2^q.
  for (const PsiGraph& z : {square(), cube()}) {
    CHECK(2 * z.n == 1 << z.q());
    std::string d = "A1";
    for (int i = 1; i < z.q(); ++i) d += "+A1";
    CHECK(isomorphic(z, from_cayley(enumerate_group(parse_diagram(d))).graph));
  }
}

TEST_CASE("canonical form quotients relabeling but not colors") {
  // Same square under swapped roles of the two permutations.
  CHECK(isomorphic(square(), from_sigma(2, {"A", "B"}, {{1, 0}, {0, 1}})));
  // Color names carry meaning: moving the twist to another color matters.
  const PsiGraph g1 = from_sigma(2, {"A", "B", "C"}, {{0, 1}, {0, 1}, {1, 0}});
  const PsiGraph g2 = from_sigma(2, {"A", "B", "C"}, {{0, 1}, {1, 0}, {0, 1}});
  CHECK_FALSE(isomorphic(g1, g2));
  CHECK(canonical_form(g1) != canonical_form(g2));
  // Different color *names* also distinguish.
  const PsiGraph g3 = from_sigma(2, {"A", "X", "C"}, {{0, 1}, {0, 1}, {1, 0}});
  CHECK_FALSE(isomorphic(g1, g3));

  Rng rng(7);
  for (const PsiGraph& z : {cube(), lopsided(), two_edges()}) {
    for (int trial = 0; trial < 20; ++trial) {
      const PsiGraph rz = relabel(z, random_perm(z.n, rng), random_perm(z.n, rng));
      CHECK(canonical_form(rz) == canonical_form(z));
      CHECK(isomorphic(z, rz));
    }
  }
  CHECK_FALSE(isomorphic(square(), hexagon()));
  CHECK_FALSE(isomorphic(cube(), octagon()));
}

TEST_CASE("connected-only operations reject disconnected input") {
  const PsiGraph z = two_edges();
  CHECK_THROWS_AS(automorphism_group(z), DisconnectedGraphError);
  CHECK_THROWS_AS(transitivity_battery(z), DisconnectedGraphError);
  CHECK_THROWS_AS(property_p_hypercube(z), DisconnectedGraphError);
  CHECK(canonical_form(z).size() > 0);  // canonical form still defined
}

TEST_CASE("enumeration of isomorphism classes") {
  // One-color graphs: n disjoint edges.
  CHECK(enumerate_psigraphs(1, 1, true).size() == 1);
  CHECK(enumerate_psigraphs(2, 1, true).empty());
  CHECK(enumerate_psigraphs(2, 1, false).size() == 1);

  // Two colors, first fixed to the identity: isomorphism reduces to
  // conjugacy of the second permutation, so classes are cycle types
  // (partitions of n) and the connected ones are the single n-cycle type.
  const std::size_t partitions[] = {0, 1, 2, 3, 5, 7};
  for (int n = 2; n <= 5; ++n) {
    CAPTURE(n);
    CHECK(enumerate_psigraphs(n, 2, false).size() == partitions[n]);
    CHECK(enumerate_psigraphs(n, 2, true).size() == 1);
    std::vector<int> id(n), cyc(n);
    std::iota(id.begin(), id.end(), 0);
    for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    const PsiGraph ring = from_sigma(n, {"A", "B"}, {id, cyc});
    CHECK(isomorphic(enumerate_psigraphs(n, 2, true)[0], ring));
  }

  CHECK(enumerate_psigraphs(2, 3, true).size() == 3);
  CHECK(enumerate_psigraphs(2, 3, false).size() == 4);

  // Cross-check a larger case against a direct partition by pairwise
  // isomorphism over every (sigma_B, sigma_C) with sigma_A = id.
  {
    const int n = 3;
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<PsiGraph> all, connected;
    for (const auto& sb : perms)
      for (const auto& sc : perms) {
        PsiGraph z = from_sigma(n, {"A", "B", "C"}, {perms[0], sb, sc});
        if (is_connected(z)) connected.push_back(z);
        all.push_back(std::move(z));
      }
    auto count_classes = [](const std::vector<PsiGraph>& zs) {
      std::vector<PsiGraph> reps;
      for (const auto& z : zs) {
        bool found = false;
        for (const auto& r : reps)
          if (isomorphic(z, r)) {
            found = true;
            break;
          }
        if (!found) reps.push_back(z);
      }
      return reps.size();
    };
    CHECK(enumerate_psigraphs(3, 3, false).size() == count_classes(all));
    CHECK(enumerate_psigraphs(3, 3, true).size() == count_classes(connected));
  }

  // Representatives are pairwise distinct.
  const auto reps = enumerate_psigraphs(4, 2, false);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      CHECK_FALSE(isomorphic(reps[i], reps[j]));

  CHECK_THROWS_AS(enumerate_psigraphs(7, 2, true), SizeCapError);
  CHECK_THROWS_AS(enumerate_psigraphs(2, 4, true), SizeCapError);
  CHECK_THROWS_AS(enumerate_psigraphs(0, 2, true), InputError);
}
