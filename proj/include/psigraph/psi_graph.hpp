#pragma once

#include <string>
#include <vector>

#include "psigraph/coxeter_group.hpp"

namespace psigraph {

// Bipartite q-edge-colored graph on n "state" vertices (white) and n
// "conjugate" vertices (black): color A joins white a to black sigma[A][a].
// Edges are identified as (color, white index); edge id = color*n + white.
struct PsiGraph {
  int n = 0;
  std::vector<std::string> colors;
  std::vector<std::vector<int>> sigma;         // per color: white -> black
  std::vector<std::vector<int>> sigma_inv;     // per color: black -> white

  int q() const { return static_cast<int>(colors.size()); }
  int edge_id(int color, int alpha) const { return color * n + alpha; }
  int color_index(const std::string& name) const;  // -1 when missing
};

// Validating constructor; accepts disconnected graphs.
PsiGraph from_sigma(int n, std::vector<std::string> colors,
                    std::vector<std::vector<int>> sigma);

bool is_connected(const PsiGraph& z);

// from_cayley: white = even elements, black = odd, sigma_A(w) = s_A * w.
// The bundle keeps the element <-> vertex correspondence for later use.
struct CayleyGraph {
  PsiGraph graph;
  CoxeterGroup group;
  std::vector<int> white_elt, black_elt;  // side index -> element id
  std::vector<int> side_index;            // element id -> index within its side
};
CayleyGraph from_cayley(const CoxeterGroup& g);

// Color names used for Cayley graphs: A, B, C, ... per diagram node.
std::string cayley_color_name(int node);

// An automorphism; when odd, wmap sends whites to black indices and bmap
// sends blacks to white indices.
struct GraphAutomorphism {
  bool odd = false;
  std::vector<int> wmap, bmap;
  bool operator==(const GraphAutomorphism&) const = default;
};

GraphAutomorphism compose(const PsiGraph& z, const GraphAutomorphism& f,
                          const GraphAutomorphism& g);  // f after g
GraphAutomorphism inverse_of(const GraphAutomorphism& a);

struct AutomorphismGroup {
  std::vector<GraphAutomorphism> even;  // the replica-symmetry group
  std::vector<GraphAutomorphism> odd;
  std::size_t extended_size() const { return even.size() + odd.size(); }
};

// Exhaustive search seeded by the image of white vertex 0 (an automorphism
// fixing a vertex of a connected graph is the identity, so each seed yields
// at most one automorphism).  Throws DisconnectedGraphError.
AutomorphismGroup automorphism_group(const PsiGraph& z);

struct TransitivityBattery {
  bool vertex_transitive = false;
  bool weakly_vertex_transitive = false;
  bool strongly_all_edge_transitive = false;
  bool all_edge_transitive = false;
  bool cayley_involutive = false;
  bool all_equal() const {
    return vertex_transitive == weakly_vertex_transitive &&
           vertex_transitive == strongly_all_edge_transitive &&
           vertex_transitive == all_edge_transitive &&
           vertex_transitive == cayley_involutive;
  }
};
TransitivityBattery transitivity_battery(const PsiGraph& z);

// True iff every alternating two-color cycle has length 4, i.e. for all
// color pairs sigma_B^{-1} sigma_A is a fixed-point-free involution.
bool property_p_hypercube(const PsiGraph& z);

// Isomorphism-invariant byte encoding.  Quotients white/black relabeling
// only; color names are part of the encoding.  Accepts disconnected graphs.
std::string canonical_form(const PsiGraph& z);
bool isomorphic(const PsiGraph& a, const PsiGraph& b);

// All isomorphism classes with sigma of the first color fixed to the
// identity (black relabeling freedom makes this lossless).
std::vector<PsiGraph> enumerate_psigraphs(int n, int q, bool connected_only);

}  // namespace psigraph
