#include "psigraph/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "psigraph/errors.hpp"

namespace psigraph {
namespace {

void write_value(const ordered_json& j, std::string& out) {
  if (j.is_object()) {
    out += '{';
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ',';
      first = false;
      out += ordered_json(it.key()).dump();
      out += ':';
      write_value(it.value(), out);
    }
    out += '}';
  } else if (j.is_array()) {
    out += '[';
    bool first = true;
    for (const auto& v : j) {
      if (!first) out += ',';
      first = false;
      write_value(v, out);
    }
    out += ']';
  } else if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw Error("non-finite number in JSON output");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  } else {
    out += j.dump();
  }
}

const ordered_json& member(const ordered_json& j, const char* key) {
  if (!j.is_object())
    throw InputError(std::string("expected a JSON object with key '") + key +
                     "'");
  auto it = j.find(key);
  if (it == j.end())
    throw InputError(std::string("missing key '") + key + "'");
  return *it;
}

int as_int(const ordered_json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw InputError(std::string("'") + what + "' must be an integer");
  return j.get<int>();
}

double as_double(const ordered_json& j, const char* what) {
  if (!j.is_number())
    throw InputError(std::string("'") + what + "' must be a number");
  return j.get<double>();
}

std::string as_string(const ordered_json& j, const char* what) {
  if (!j.is_string())
    throw InputError(std::string("'") + what + "' must be a string");
  return j.get<std::string>();
}

std::vector<int> as_int_array(const ordered_json& j, const char* what) {
  if (!j.is_array())
    throw InputError(std::string("'") + what + "' must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(as_int(v, what));
  return out;
}

std::vector<double> as_double_array(const ordered_json& j, const char* what) {
  if (!j.is_array())
    throw InputError(std::string("'") + what + "' must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(as_double(v, what));
  return out;
}

ordered_json matrix_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd parse_matrix(const ordered_json& j, int rows, int cols,
                             const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw InputError(std::string("'") + what + "' must be a " +
                     std::to_string(rows) + "x" + std::to_string(cols) +
                     " matrix");
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const std::vector<double> row = as_double_array(j[r], what);
    if (static_cast<int>(row.size()) != cols)
      throw InputError(std::string("'") + what + "' must be a " +
                       std::to_string(rows) + "x" + std::to_string(cols) +
                       " matrix");
    for (int c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

ordered_json complex_matrix_json(const Eigen::MatrixXcd& m) {
  ordered_json re = ordered_json::array(), im = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json rr = ordered_json::array(), ri = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return ordered_json{{"re", std::move(re)}, {"im", std::move(im)}};
}

// [["A",0],...] <-> sorted edge ids.
ordered_json edge_list_json(const PsiGraph& z, const std::vector<int>& edges) {
  ordered_json out = ordered_json::array();
  for (int e : edges)
    out.push_back(ordered_json::array({z.colors[e / z.n], e % z.n}));
  return out;
}

std::vector<int> parse_edge_list(const PsiGraph& z, const ordered_json& j,
                                 const char* what) {
  if (!j.is_array())
    throw InputError(std::string("'") + what + "' must be an array");
  std::vector<int> out;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw InputError(std::string("'") + what +
                       "' entries must be [color, index] pairs");
    const std::string name = as_string(pair[0], what);
    const int color = z.color_index(name);
    if (color < 0) throw InputError("unknown color '" + name + "'");
    const int alpha = as_int(pair[1], what);
    if (alpha < 0 || alpha >= z.n)
      throw InputError(std::string("'") + what + "' index " +
                       std::to_string(alpha) + " out of range");
    out.push_back(z.edge_id(color, alpha));
  }
  return out;
}

std::string parse_provenance(const ordered_json& j) {
  const std::string p = as_string(j, "provenance");
  if (p != "constructed" && p != "solved" && p != "composed")
    throw InputError(
        "'provenance' must be 'constructed', 'solved' or 'composed'");
  return p;
}

struct Tolerances {
  double sum = 0, psd = 0;
};

Tolerances parse_tolerances(const ordered_json& j) {
  Tolerances t;
  t.sum = as_double(member(j, "sum"), "sum");
  t.psd = as_double(member(j, "psd"), "psd");
  if (!(t.sum > 0) || !(t.psd > 0))
    throw InputError("tolerances must be positive");
  return t;
}

}  // namespace

std::string dump_canonical(const ordered_json& j) {
  std::string out;
  write_value(j, out);
  out += '\n';
  return out;
}

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

ordered_json psigraph_json(const PsiGraph& z) {
  ordered_json sigma = ordered_json::object();
  for (int c = 0; c < z.q(); ++c) sigma[z.colors[c]] = z.sigma[c];
  return ordered_json{{"q", z.q()},
                      {"n", z.n},
                      {"colors", z.colors},
                      {"sigma", std::move(sigma)}};
}

PsiGraph parse_psigraph(const ordered_json& j) {
  const int q = as_int(member(j, "q"), "q");
  const int n = as_int(member(j, "n"), "n");
  const ordered_json& jc = member(j, "colors");
  if (!jc.is_array()) throw InputError("'colors' must be an array");
  std::vector<std::string> colors;
  for (const auto& v : jc) colors.push_back(as_string(v, "colors"));
  if (static_cast<int>(colors.size()) != q)
    throw InputError("'q' does not match the number of colors");
  const ordered_json& js = member(j, "sigma");
  if (!js.is_object()) throw InputError("'sigma' must be an object");
  if (js.size() != colors.size())
    throw InputError("'sigma' must have exactly one entry per color");
  std::vector<std::vector<int>> sigma;
  for (const std::string& name : colors) {
    auto it = js.find(name);
    if (it == js.end())
      throw InputError("'sigma' is missing color '" + name + "'");
    sigma.push_back(as_int_array(*it, "sigma"));
  }
  PsiGraph z = from_sigma(n, std::move(colors), std::move(sigma));
  return z;
}

ordered_json cut_json(const PsiGraph& z, const ReflectingCut& cut) {
  return ordered_json{{"tau", cut.automorphism.wmap},
                      {"upsilon", cut.automorphism.bmap},
                      {"fixed_edges", edge_list_json(z, cut.fixed_edges)}};
}

ReflectingCut parse_cut(const PsiGraph& z, const ordered_json& j) {
  const std::vector<int> tau = as_int_array(member(j, "tau"), "tau");
  const std::vector<int> upsilon =
      as_int_array(member(j, "upsilon"), "upsilon");
  std::vector<int> fixed = parse_edge_list(z, member(j, "fixed_edges"),
                                           "fixed_edges");
  std::sort(fixed.begin(), fixed.end());
  for (const ReflectingCut& cut : enumerate_cuts(z)) {
    if (cut.automorphism.wmap == tau && cut.automorphism.bmap == upsilon &&
        cut.fixed_edges == fixed)
      return cut;
  }
  throw InputError("no reflecting cut of the graph matches the given "
                   "tau/upsilon/fixed_edges");
}

ordered_json edge_certificate_json(const PsiGraph& z,
                                   const EdgeConvexityCertificate& cert) {
  const EdgeConvexitySystem sys = edge_system(z, cert.color);
  ordered_json cuts = ordered_json::array();
  for (const EdgeCertEntry& e : cert.entries) {
    if (e.cut_id < 0 || e.cut_id >= static_cast<int>(sys.cuts.size()) ||
        sys.wall_of_cut[e.cut_id] < 0)
      throw InputError("certificate references cut id " +
                       std::to_string(e.cut_id) +
                       " with no wall in the color's system");
    const Wall& w = sys.system.walls[sys.wall_of_cut[e.cut_id]];
    std::vector<int> r_edges;
    for (int alpha : w.r_items) r_edges.push_back(z.edge_id(sys.color, alpha));
    cuts.push_back(ordered_json{{"cut_id", e.cut_id},
                                {"r_edges", edge_list_json(z, r_edges)},
                                {"P", matrix_json(e.P)}});
  }
  return ordered_json{
      {"color", cert.color},
      {"tolerances", {{"sum", cert.tol_sum}, {"psd", cert.tol_psd}}},
      {"cuts", std::move(cuts)},
      {"provenance", cert.provenance}};
}

EdgeConvexityCertificate parse_edge_certificate(const PsiGraph& z,
                                                const ordered_json& j) {
  EdgeConvexityCertificate cert;
  cert.color = as_string(member(j, "color"), "color");
  if (z.color_index(cert.color) < 0)
    throw InputError("unknown color '" + cert.color + "'");
  const Tolerances tol = parse_tolerances(member(j, "tolerances"));
  cert.tol_sum = tol.sum;
  cert.tol_psd = tol.psd;
  cert.provenance = parse_provenance(member(j, "provenance"));

  const EdgeConvexitySystem sys = edge_system(z, cert.color);
  const ordered_json& jcuts = member(j, "cuts");
  if (!jcuts.is_array()) throw InputError("'cuts' must be an array");
  for (const auto& jc : jcuts) {
    EdgeCertEntry e;
    e.cut_id = as_int(member(jc, "cut_id"), "cut_id");
    if (e.cut_id < 0 || e.cut_id >= static_cast<int>(sys.cuts.size()))
      throw InputError("certificate references unknown cut id " +
                       std::to_string(e.cut_id));
    const int wall = sys.wall_of_cut[e.cut_id];
    if (wall < 0)
      throw InputError("certificate entry for cut " +
                       std::to_string(e.cut_id) + " which separates no " +
                       cert.color + "-edge pair");
    const Wall& w = sys.system.walls[wall];
    std::vector<int> expect;
    for (int alpha : w.r_items) expect.push_back(z.edge_id(sys.color, alpha));
    std::vector<int> given =
        parse_edge_list(z, member(jc, "r_edges"), "r_edges");
    if (given != expect)
      throw InputError("'r_edges' for cut " + std::to_string(e.cut_id) +
                       " does not match the cut's R side");
    const int r = static_cast<int>(w.r_items.size());
    e.P = parse_matrix(member(jc, "P"), r, r, "P");
    cert.entries.push_back(std::move(e));
  }
  std::sort(cert.entries.begin(), cert.entries.end(),
            [](const EdgeCertEntry& a, const EdgeCertEntry& b) {
              return a.cut_id < b.cut_id;
            });
  for (std::size_t i = 1; i < cert.entries.size(); ++i)
    if (cert.entries[i].cut_id == cert.entries[i - 1].cut_id)
      throw InputError("duplicate certificate entry for cut " +
                       std::to_string(cert.entries[i].cut_id));
  return cert;
}

ordered_json plane_json(const ReflectingPlane& plane, int plane_id) {
  return ordered_json{{"plane_id", plane_id},
                      {"involution", plane.involution},
                      {"side", plane.side},
                      {"fixed_vertices", plane.fixed_vertices},
                      {"source_cuts", plane.source_cuts},
                      {"extendible", plane.extendible}};
}

ordered_json coset_graph_json(const CosetGraph& cg,
                              const std::vector<ReflectingPlane>& planes) {
  ordered_json gens = ordered_json::array();
  for (int g : cg.rem_nodes) gens.push_back(cayley_color_name(g));
  ordered_json edges = ordered_json::array();
  for (const CosetEdge& e : cg.edges)
    edges.push_back(ordered_json{{"gen", cayley_color_name(e.gen)},
                                 {"v1", e.v1},
                                 {"v2", e.v2},
                                 {"multiplicity", e.multiplicity}});
  ordered_json jp = ordered_json::array();
  for (std::size_t k = 0; k < planes.size(); ++k)
    jp.push_back(plane_json(planes[k], static_cast<int>(k)));
  return ordered_json{{"n_vertices", cg.n_vertices},
                      {"sub_nodes", cg.sub_nodes},
                      {"generators", std::move(gens)},
                      {"polytope", cg.polytope},
                      {"edges", std::move(edges)},
                      {"planes", std::move(jp)}};
}

ordered_json vertex_certificate_json(int n_vertices,
                                     const std::vector<ReflectingPlane>& planes,
                                     const VertexConvexityCertificate& cert) {
  const VertexConvexitySystem sys = vertex_system(n_vertices, planes);
  ordered_json jp = ordered_json::array();
  for (const VertexCertEntry& e : cert.entries) {
    if (e.plane_id < 0 || e.plane_id >= static_cast<int>(planes.size()) ||
        sys.wall_of_plane[e.plane_id] < 0)
      throw InputError("certificate references plane id " +
                       std::to_string(e.plane_id) +
                       " with no wall in the system");
    const Wall& w = sys.system.walls[sys.wall_of_plane[e.plane_id]];
    jp.push_back(ordered_json{{"plane_id", e.plane_id},
                              {"r_vertices", w.r_items},
                              {"P", matrix_json(e.P)}});
  }
  return ordered_json{
      {"tolerances", {{"sum", cert.tol_sum}, {"psd", cert.tol_psd}}},
      {"planes", std::move(jp)},
      {"provenance", cert.provenance}};
}

VertexConvexityCertificate parse_vertex_certificate(
    int n_vertices, const std::vector<ReflectingPlane>& planes,
    const ordered_json& j) {
  VertexConvexityCertificate cert;
  const Tolerances tol = parse_tolerances(member(j, "tolerances"));
  cert.tol_sum = tol.sum;
  cert.tol_psd = tol.psd;
  cert.provenance = parse_provenance(member(j, "provenance"));

  const VertexConvexitySystem sys = vertex_system(n_vertices, planes);
  const ordered_json& jplanes = member(j, "planes");
  if (!jplanes.is_array()) throw InputError("'planes' must be an array");
  for (const auto& jp : jplanes) {
    VertexCertEntry e;
    e.plane_id = as_int(member(jp, "plane_id"), "plane_id");
    if (e.plane_id < 0 || e.plane_id >= static_cast<int>(planes.size()))
      throw InputError("certificate references unknown plane id " +
                       std::to_string(e.plane_id));
    const int wall = sys.wall_of_plane[e.plane_id];
    if (wall < 0)
      throw InputError("certificate entry for plane " +
                       std::to_string(e.plane_id) +
                       " which separates no vertex pair");
    const Wall& w = sys.system.walls[wall];
    const std::vector<int> given =
        as_int_array(member(jp, "r_vertices"), "r_vertices");
    if (given != w.r_items)
      throw InputError("'r_vertices' for plane " + std::to_string(e.plane_id) +
                       " does not match the plane's R side");
    const int r = static_cast<int>(w.r_items.size());
    e.P = parse_matrix(member(jp, "P"), r, r, "P");
    cert.entries.push_back(std::move(e));
  }
  std::sort(cert.entries.begin(), cert.entries.end(),
            [](const VertexCertEntry& a, const VertexCertEntry& b) {
              return a.plane_id < b.plane_id;
            });
  for (std::size_t i = 1; i < cert.entries.size(); ++i)
    if (cert.entries[i].plane_id == cert.entries[i - 1].plane_id)
      throw InputError("duplicate certificate entry for plane " +
                       std::to_string(cert.entries[i].plane_id));
  return cert;
}

ordered_json state_json(const StateTensor& s) {
  ordered_json re = ordered_json::array(), im = ordered_json::array();
  for (const cdouble& a : s.amp) {
    re.push_back(a.real());
    im.push_back(a.imag());
  }
  return ordered_json{
      {"dims", s.dims}, {"re", std::move(re)}, {"im", std::move(im)}};
}

StateTensor parse_state(const ordered_json& j) {
  const std::vector<int> dims = as_int_array(member(j, "dims"), "dims");
  const std::vector<double> re = as_double_array(member(j, "re"), "re");
  const std::vector<double> im = as_double_array(member(j, "im"), "im");
  if (re.size() != im.size())
    throw InputError("'re' and 'im' must have equal length");
  std::vector<cdouble> amp(re.size());
  for (std::size_t k = 0; k < amp.size(); ++k) amp[k] = {re[k], im[k]};
  return make_state(dims, std::move(amp));
}

ordered_json locc_report_json(const MonteCarloReport& rep) {
  ordered_json ops = ordered_json::array();
  for (const Eigen::MatrixXcd& op : rep.worst_family.ops)
    ops.push_back(complex_matrix_json(op));
  return ordered_json{
      {"seed", rep.seed},
      {"trials", rep.trials},
      {"kraus_min", rep.kraus_min},
      {"kraus_max", rep.kraus_max},
      {"dims", rep.dims},
      {"min_gap", rep.min_gap},
      {"mean_gap", rep.mean_gap},
      {"worst_trial", rep.worst_trial},
      {"worst_gap", rep.worst_gap},
      {"worst_state", state_json(rep.worst_state)},
      {"worst_family",
       {{"party", rep.worst_family.party}, {"ops", std::move(ops)}}}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw InputError("cannot read file '" + path + "'");
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write file '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw InputError("cannot write file '" + path + "'");
}

}  // namespace psigraph
