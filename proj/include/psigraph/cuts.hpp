#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psigraph/diagram.hpp"
#include "psigraph/psi_graph.hpp"

namespace psigraph {

// A reflecting cut: an odd involutive automorphism k together with the set
// of edges whose endpoints k swaps; removing those edges leaves exactly two
// components interchanged by k.  Side 0 ("R") contains white vertex 0.
struct ReflectingCut {
  GraphAutomorphism automorphism;
  std::vector<int> fixed_edges;             // sorted edge ids
  std::vector<int> white_side, black_side;  // vertex -> 0 (R) or 1 (L)
};

// All reflecting cuts, ordered by fixed-edge list.  Checks the pairwise
// edge-disjointness invariant.  Throws DisconnectedGraphError.
std::vector<ReflectingCut> enumerate_cuts(const PsiGraph& z);

enum class Separation { Separated, SameSide, OnCut };

// A non-fixed edge lies wholly in one side (its own endpoints stay joined);
// a fixed edge lies in neither, reported as OnCut.
Separation separates_edges(const PsiGraph& z, const ReflectingCut& cut,
                           int edge_a, int edge_b);
bool separates_vertices(const ReflectingCut& cut, bool a_white, int a,
                        bool b_white, int b);

// Every pair of same-color edges (of `color`, or of each color when -1) is
// separated by at least one cut.
bool is_edge_reflecting(const PsiGraph& z, int color = -1);

// Every edge belongs to some cut's fixed set; on failure *witness_edge (when
// given) receives the lowest uncovered edge id.
bool is_mirror(const PsiGraph& z, int* witness_edge = nullptr);

// Recognize the graph as the Cayley graph of a finite Coxeter group: read
// m_AB off the alternating two-color cycle lengths, validate the matrix,
// rebuild and compare up to relabeling (color names reduced to positional
// names for the comparison).  Colors sharing one permutation count as a
// repeated generator: they are merged first, and the diagram carries one
// node per distinct permutation.  On failure returns nothing and, when
// given, fills *diagnostic with the reason.
std::optional<CDDiagram> recognize_coxeter(const PsiGraph& z,
                                           std::string* diagnostic = nullptr);

// Checks that no geodesic meets any cut's fixed set twice.  Per ordered
// vertex pair one breadth-first geodesic plus `samples` random geodesics are
// tested.  Vertex ids: whites 0..n-1, blacks n..2n-1.
struct GeodesicCheck {
  bool ok = true;
  int u = -1, v = -1, cut_index = -1;  // witness on failure
  std::vector<int> path_edges;
};
GeodesicCheck check_geodesic_lemma(const PsiGraph& z,
                                   unsigned long long seed = 20240901,
                                   int samples = 50);

}  // namespace psigraph
