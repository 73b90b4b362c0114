#pragma once

#include <string>
#include <vector>

#include "psigraph/compose.hpp"
#include "psigraph/diagram.hpp"

namespace psigraph {

enum class CertifyMethod { Construct, Solve, Auto };

struct CertifyOptions {
  CertifyMethod method = CertifyMethod::Auto;
  SolveOptions solver;  // used by solver routes and recipe fallbacks
};

struct CertifiedColor {
  std::string color;
  EdgeConvexityCertificate certificate;
  ConvexityVerdict verdict;
  // "solved" | "composed:simplex" | "composed:hypercube" |
  // "composed:orthoplex" | "composed:demihypercube" | "composed:product" |
  // "solved:fallback"
  std::string route;
};

struct CertifyReport {
  CayleyGraph graph;
  std::vector<CertifiedColor> colors;  // ascending color
  bool all_pass() const {
    for (const CertifiedColor& c : colors)
      if (!c.verdict.pass) return false;
    return !colors.empty();
  }
};

// Edge-convexity certification for the Cayley graph of a Coxeter diagram.
//   Construct: rank-1/rank-2 components and exceptional families go through
//     the feasibility solver; A_n, B_n and D_n (n >= 3) are built inductively
//     from a parabolic subgroup certificate and a named-polytope vertex
//     certificate for the coset graph; multiple components fold through the
//     product composition.  Colors a failed route leaves uncovered fall back
//     to the direct solver, reported as such.
//   Solve: the direct solver for every color.
//   Auto: Construct, with per-color solver fallback on any failure.
// Components must occupy contiguous node ranges.  Certification failures are
// soft (reported in the verdicts); malformed input throws InputError.
CertifyReport certify_coxeter(const CDDiagram& d,
                              const CertifyOptions& opts = {});

}  // namespace psigraph
