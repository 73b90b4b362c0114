#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "psigraph/convexity.hpp"
#include "psigraph/coxeter_group.hpp"
#include "psigraph/cuts.hpp"
#include "psigraph/psi_graph.hpp"
#include "psigraph/reflection_system.hpp"

namespace psigraph {

// Quotient of a Cayley graph by a standard parabolic subgroup W_K: vertices
// are the right cosets W_K g (labeled in order of their minimal element id)
// and every Cayley edge of a generator outside K collapses to an edge
// between the cosets of its endpoints, with multiplicity counting the
// collapsed parallel edges.  Generators outside K never connect an element
// to its own coset, so the quotient has no loops.
struct CosetEdge {
  int gen = -1;          // generator node, in rem_nodes
  int v1 = -1, v2 = -1;  // cosets, v1 < v2
  int multiplicity = 0;
};

struct CosetGraph {
  CoxeterGroup group;          // the ambient group G
  std::vector<int> sub_nodes;  // K, ascending
  std::vector<int> rem_nodes;  // S \ K, ascending
  int n_vertices = 0;
  std::vector<int> coset_of;   // element id -> coset id (the lift map)
  std::vector<int> coset_rep;  // coset id -> minimal element id
  std::vector<CosetEdge> edges;
  // "simplex" | "hypercube" | "orthoplex" | "demihypercube" when (family, K)
  // matches one of the named polytopes; empty otherwise.
  std::string polytope;
};

// K must be a proper subset of the diagram nodes; K = S (no generator left)
// is rejected with InputError.  K = {} returns the group on its elements.
CosetGraph build_coset_graph(const CoxeterGroup& g,
                             const std::vector<int>& sub_nodes);

// A reflecting cut pushed down to vertices: an involution that may fix
// ("pass through") vertices; the others keep strict sides, swapped by it.
struct ReflectingPlane {
  std::vector<int> involution;      // vertex -> vertex
  std::vector<int> side;            // 0 (R), 1 (L), 2 (on the plane)
  std::vector<int> fixed_vertices;  // ascending vertices with side 2
  std::vector<int> source_cuts;     // ascending cut ids inducing the plane
  bool extendible = true;           // true whenever sourced from a cut
};

// Project every reflecting cut of the Cayley graph onto the cosets.  Planes
// fixing every vertex are dropped; distinct cuts inducing the same
// (involution, side) merge into one plane listing all source cuts.
std::vector<ReflectingPlane> project_cuts_to_planes(const CayleyGraph& zg,
                                                    const CosetGraph& cg);

// Planes of the trivial quotient: one plane per cut (plane id = cut id),
// acting on the 2n vertices of z itself, whites 0..n-1 then blacks n..2n-1.
// Cut automorphisms fix no vertex, so these planes have no fixed vertices.
std::vector<ReflectingPlane> vertex_planes(const PsiGraph& z);
std::vector<ReflectingPlane> vertex_planes(
    const PsiGraph& z, const std::vector<ReflectingCut>& cuts);

// Vertex analogue of the edge certificate: per plane a symmetric matrix over
// the plane's R-side vertices with M^(k)_{v,v'} = P^(k)(v, k(v')), summing
// to 1 over the separating extendible planes of every distinct vertex pair.
struct VertexCertEntry {
  int plane_id = -1;
  Eigen::MatrixXd P;
};

struct VertexConvexityCertificate {
  std::vector<VertexCertEntry> entries;  // ascending plane_id
  double tol_sum = 1e-8;
  double tol_psd = 1e-8;
  std::string provenance = "constructed";  // constructed | solved | composed
};

struct VertexConvexitySystem {
  int n_vertices = 0;
  std::vector<ReflectingPlane> planes;
  ReflectionSystem system;  // one wall per separating extendible plane
  std::vector<int> wall_of_plane;  // plane id -> wall index, or -1
  std::vector<int> plane_of_wall;  // wall index -> plane id
};

VertexConvexitySystem vertex_system(int n_vertices,
                                    std::vector<ReflectingPlane> planes);

// Checks the certificate at its recorded tolerances.  Throws InputError on
// an out-of-range plane id, an entry for a plane that is non-extendible or
// separates no pair, or a matrix shaped unlike the plane's R side.
ConvexityVerdict verify_vertex_convexity(
    int n_vertices, const std::vector<ReflectingPlane>& planes,
    const VertexConvexityCertificate& cert);
ConvexityVerdict verify_vertex_convexity(
    const CosetGraph& cg, const std::vector<ReflectingPlane>& planes,
    const VertexConvexityCertificate& cert);

struct VertexSolveReport {
  SolveStatus status = SolveStatus::NoConvergence;
  std::optional<VertexConvexityCertificate> certificate;
  double sum_residual = 0.0;
  double min_eigenvalue = 0.0;
  int sweeps = 0;
};

VertexSolveReport solve_vertex_convexity(
    int n_vertices, const std::vector<ReflectingPlane>& planes,
    const SolveOptions& opts = {});
VertexSolveReport solve_vertex_convexity(
    const CosetGraph& cg, const std::vector<ReflectingPlane>& planes,
    const SolveOptions& opts = {});

// Named-polytope candidate recipes.  Each demands its tag (any 2-vertex
// coset graph is accepted by all four, every family degenerating to the
// segment at rank 1) and returns the literal construction: the simplex
// recipe puts unit weight on the plane swapping each vertex pair; the other
// three put the identity on every plane's R side, giving weight 1 to every
// mirror-image pair.  Candidates are meant to be verified by the caller.
VertexConvexityCertificate simplex_certificate(
    const CosetGraph& cg, const std::vector<ReflectingPlane>& planes);
VertexConvexityCertificate hypercube_certificate(
    const CosetGraph& cg, const std::vector<ReflectingPlane>& planes);
VertexConvexityCertificate orthoplex_certificate(
    const CosetGraph& cg, const std::vector<ReflectingPlane>& planes);
VertexConvexityCertificate demihypercube_certificate(
    const CosetGraph& cg, const std::vector<ReflectingPlane>& planes);

// Candidate-then-verify driver: runs the tagged recipe, audits every vertex
// pair of the candidate, and falls back to the solver when the candidate
// fails verification.
struct RecipeAuditRow {
  int v1 = -1, v2 = -1;  // vertex pair, v1 < v2
  int n_separating = 0;  // separating extendible planes
  double sum = 0.0;      // candidate's M-sum over them
  bool ok = false;
};

struct RecipeReport {
  std::string recipe;
  VertexConvexityCertificate candidate;
  ConvexityVerdict candidate_verdict;
  std::vector<RecipeAuditRow> audit;  // all distinct vertex pairs
  bool fallback_used = false;
  SolveStatus fallback_status = SolveStatus::Converged;
  std::optional<VertexConvexityCertificate> certificate;  // final outcome
  double sum_residual = 0.0;  // of the final state (candidate or iterate)
  double min_eigenvalue = 0.0;
  int sweeps = 0;
};

RecipeReport run_polytope_recipe(const CosetGraph& cg,
                                 const std::vector<ReflectingPlane>& planes,
                                 const SolveOptions& opts = {});

// Vertex certificate for the trivial quotient of z, assembled from verified
// edge certificates (exactly one per color).  Vertex pairs joined by an edge
// get unit weight on the single cut owning that edge; all other pairs reuse
// the first color's matrix entries.  Requires >= 2 colors except for the
// single-edge graph, which is handled directly.  Plane ids equal cut ids,
// matching vertex_planes(z).
VertexConvexityCertificate edgevertex_certificate(
    const PsiGraph& z, const std::vector<EdgeConvexityCertificate>& edge_certs);

}  // namespace psigraph
