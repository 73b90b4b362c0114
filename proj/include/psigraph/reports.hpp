#pragma once

#include <string>
#include <vector>

#include "psigraph/certify.hpp"
#include "psigraph/json_io.hpp"

namespace psigraph {

// Report assembly shared by the CLI and the python bindings: every
// subcommand's JSON body is built here, so both surfaces emit identical
// documents.  The bundles carry the outcome flags the CLI maps to exit
// codes.

struct CheckReportBundle {
  ordered_json report;
  bool ok = false;  // the checked property holds
};
// property: edge-reflecting | mirror | transitivity | property-p | geodesic.
CheckReportBundle build_check_report(const PsiGraph& z,
                                     const std::string& property,
                                     unsigned long long seed = 20240901,
                                     int samples = 50);

struct CertifyReportBundle {
  ordered_json report;
  bool all_pass = false;
  bool structural = false;  // some failing color failed structurally
};
// method: construct | solve | auto (also recorded in the report).
CertifyReportBundle build_certify_report(const CDDiagram& d,
                                         const std::string& method,
                                         const SolveOptions& solver);

ordered_json build_coset_report(const CDDiagram& d,
                                const std::vector<int>& sub_nodes);

struct VertexReportBundle {
  ordered_json report;
  bool pass = false;            // final certificate exists and verifies
  bool no_certificate = false;  // recipe + fallback produced nothing
  bool structural = false;      // the failure is structural infeasibility
};
VertexReportBundle build_certify_vertex_report(const CDDiagram& d,
                                               const std::vector<int>& sub_nodes,
                                               const SolveOptions& opts);

ordered_json build_eval_report(const PsiGraph& z, const StateTensor& s);

ordered_json build_enumerate_report(int n, int q, bool connected_only,
                                    bool classify);

}  // namespace psigraph
