#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "psigraph/cuts.hpp"
#include "psigraph/psi_graph.hpp"
#include "psigraph/reflection_system.hpp"

namespace psigraph {

// A certificate that a psi-graph is edge-convex for one color: per reflecting
// cut a symmetric matrix P^(k) over the cut's strictly-R-side edges of that
// color (ascending white index), such that
//   sum over cuts separating {e, e'} of M^(k)_{e,e'} = 1
// for every unordered pair of distinct same-color edges, with
// M^(k)_{e,e'} = P^(k)(e, k(e')) and every P^(k) positive semi-definite.
struct EdgeCertEntry {
  int cut_id = -1;    // index into enumerate_cuts(z)
  Eigen::MatrixXd P;  // symmetric, r x r with r = #R-side edges of the color
};

struct EdgeConvexityCertificate {
  std::string color;
  std::vector<EdgeCertEntry> entries;  // ascending cut_id
  double tol_sum = 1e-8;
  double tol_psd = 1e-8;
  std::string provenance = "constructed";  // constructed | solved | composed
};

struct ConvexityVerdict {
  bool pass = false;
  bool structural_failure = false;  // some pair separated by no cut
  double max_sum_residual = 0.0;
  double min_eigenvalue = 0.0;
  std::string detail;  // human-readable reason on failure
};

// The edge problem in items/walls form: items are the color's edges keyed by
// white index; walls are the cuts that separate at least one pair of them.
struct EdgeConvexitySystem {
  int color = -1;
  std::vector<ReflectingCut> cuts;
  ReflectionSystem system;
  std::vector<int> wall_of_cut;  // cut id -> wall index, or -1
  std::vector<int> cut_of_wall;  // wall index -> cut id
};

EdgeConvexitySystem edge_system(const PsiGraph& z, const std::string& color);
EdgeConvexitySystem edge_system(const PsiGraph& z, int color,
                                std::vector<ReflectingCut> cuts);

// Checks the certificate at its recorded tolerances.  Throws InputError on an
// unknown color, an out-of-range or non-separating cut id, or a matrix whose
// shape disagrees with the cut's R side.  Throws DisconnectedGraphError.
ConvexityVerdict verify_edge_convexity(const PsiGraph& z,
                                       const EdgeConvexityCertificate& cert);

// Alternating-projection feasibility solve for one color.  The certificate is
// present whenever the structure allows one to be attempted; on
// NoConvergence it holds the best iterate together with its residuals.
struct EdgeSolveReport {
  SolveStatus status = SolveStatus::NoConvergence;
  std::optional<EdgeConvexityCertificate> certificate;
  double sum_residual = 0.0;
  double min_eigenvalue = 0.0;
  int sweeps = 0;
};

EdgeSolveReport solve_edge_convexity(const PsiGraph& z,
                                     const std::string& color,
                                     const SolveOptions& opts = {});

}  // namespace psigraph
