#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "psigraph/coset.hpp"
#include "psigraph/convexity.hpp"
#include "psigraph/cuts.hpp"
#include "psigraph/locc.hpp"
#include "psigraph/psi_graph.hpp"
#include "psigraph/state.hpp"

namespace psigraph {

// Insertion-ordered JSON values so serialized key order is fixed by the
// builders below.
using ordered_json = nlohmann::ordered_json;

// Canonical text form: compact separators, every floating-point number
// rendered with 17 significant digits.  The same value always produces the
// same bytes, and 17 digits round-trip any double exactly.
std::string dump_canonical(const ordered_json& j);

// Parse wrapper; malformed text raises InputError instead of a json
// exception.
ordered_json parse_json(const std::string& text);

// ---- builders --------------------------------------------------------------
// {"q":2,"n":2,"colors":["A","B"],"sigma":{"A":[0,1],"B":[1,0]}}
ordered_json psigraph_json(const PsiGraph& z);

// {"tau":[...],"upsilon":[...],"fixed_edges":[["A",0],...]} where tau maps
// white -> black ids and upsilon is its inverse on blacks.
ordered_json cut_json(const PsiGraph& z, const ReflectingCut& cut);

// {"color":"A","tolerances":{"sum":1e-8,"psd":1e-8},
//  "cuts":[{"cut_id":3,"r_edges":[["A",0],["A",2]],"P":[[...]]}],
//  "provenance":"solved"}
// r_edges lists the R-side edges of the cut's wall in the color's system.
ordered_json edge_certificate_json(const PsiGraph& z,
                                   const EdgeConvexityCertificate& cert);

ordered_json plane_json(const ReflectingPlane& plane, int plane_id);

// Coset graph with its reflecting planes:
// {"n_vertices":...,"sub_nodes":[...],"generators":[...],"polytope":"...",
//  "edges":[{"gen":"C","v1":0,"v2":1,"multiplicity":1},...],"planes":[...]}
ordered_json coset_graph_json(const CosetGraph& cg,
                              const std::vector<ReflectingPlane>& planes);

// {"tolerances":{"sum":...,"psd":...},
//  "planes":[{"plane_id":0,"r_vertices":[...],"P":[[...]]}],
//  "provenance":"constructed"}
ordered_json vertex_certificate_json(int n_vertices,
                                     const std::vector<ReflectingPlane>& planes,
                                     const VertexConvexityCertificate& cert);

// {"dims":[2,2],"re":[...],"im":[...]} row-major, party order = color order.
ordered_json state_json(const StateTensor& s);

// Monte-Carlo monotonicity report: seed, trials, gap statistics, and the
// witness state + operator family achieving the minimum gap.
ordered_json locc_report_json(const MonteCarloReport& rep);

// ---- parsers ---------------------------------------------------------------
// All parsers validate and raise InputError on any malformed or inconsistent
// field.  Cut and certificate parsers take the graph (and planes) they are
// relative to, so ids and shapes are checked on the way in.
PsiGraph parse_psigraph(const ordered_json& j);
ReflectingCut parse_cut(const PsiGraph& z, const ordered_json& j);
EdgeConvexityCertificate parse_edge_certificate(const PsiGraph& z,
                                                const ordered_json& j);
VertexConvexityCertificate parse_vertex_certificate(
    int n_vertices, const std::vector<ReflectingPlane>& planes,
    const ordered_json& j);
StateTensor parse_state(const ordered_json& j);

// ---- file helpers ----------------------------------------------------------
std::string read_text_file(const std::string& path);  // InputError on failure
void write_text_file(const std::string& path, const std::string& text);

}  // namespace psigraph
