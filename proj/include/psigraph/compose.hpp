#pragma once

#include <vector>

#include "psigraph/convexity.hpp"
#include "psigraph/coset.hpp"
#include "psigraph/psi_graph.hpp"

namespace psigraph {

// One composed edge certificate together with its verification outcome.  The
// verdict is always filled; composition failures are soft and surface here
// rather than as exceptions.
struct ComposedColorReport {
  std::string color;
  EdgeConvexityCertificate certificate;
  ConvexityVerdict verdict;
};

struct CosetComposeReport {
  std::vector<ComposedColorReport> colors;  // one per subgroup generator
};

// Assembles edge certificates for the subgroup colors of Cay(G, S) out of
//   (a) verified edge certificates for the subgroup's own Cayley graph and
//   (b) a verified vertex certificate for the coset graph.
// A cut that slices a coset within the subgroup-colored subgraph restricts
// to a cut of the subgroup graph and reuses its matrix; a cut that moves
// cosets contributes the projected plane's matrix, carried by the first cut
// of each plane.  Every output is passed through verify_edge_convexity.
// Throws InputError when the inputs are missing, mismatched, or unverified.
CosetComposeReport compose_coset(
    const CayleyGraph& zg, const CosetGraph& cg,
    const std::vector<EdgeConvexityCertificate>& subgroup_certs,
    const VertexConvexityCertificate& vertex_cert);

struct ProductComposeReport {
  CayleyGraph graph;                         // Cay(G1 x G2, S1 u S2)
  std::vector<ComposedColorReport> colors;   // ascending ambient color
};

// Certificates for the product Cayley graph from verified certificates of the
// factors: each factor serves as the subgroup while the other factor's
// edge-to-vertex certificate, transported onto the coset graph, supplies the
// cross-component matrices.
ProductComposeReport compose_product(
    const CayleyGraph& z1, const std::vector<EdgeConvexityCertificate>& certs1,
    const CayleyGraph& z2, const std::vector<EdgeConvexityCertificate>& certs2);

// Rewrites a vertex certificate onto a different plane list.  src_vertex maps
// each destination vertex to its source counterpart; every destination plane
// must match a source plane (same involution and sides through the map, up to
// a global swap of the two sides).  The certificate is assumed verified
// against the source planes.
VertexConvexityCertificate transport_vertex_certificate(
    const std::vector<ReflectingPlane>& src_planes,
    const VertexConvexityCertificate& src_cert,
    const std::vector<int>& src_vertex,
    const std::vector<ReflectingPlane>& dst_planes);

}  // namespace psigraph
