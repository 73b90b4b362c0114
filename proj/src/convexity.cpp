#include "psigraph/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "psigraph/errors.hpp"

namespace psigraph {
namespace {

std::string pair_name(const PsiGraph& z, int color, int i, int j) {
  std::ostringstream os;
  os << "(" << z.colors[color] << ":" << i << ", " << z.colors[color] << ":"
     << j << ")";
  return os.str();
}

}  // namespace

EdgeConvexitySystem edge_system(const PsiGraph& z, int color,
                                std::vector<ReflectingCut> cuts) {
  if (color < 0 || color >= z.q()) throw InputError("unknown color index");
  EdgeConvexitySystem sys;
  sys.color = color;
  sys.cuts = std::move(cuts);
  sys.system.n_items = z.n;
  sys.wall_of_cut.assign(sys.cuts.size(), -1);
  for (int c = 0; c < static_cast<int>(sys.cuts.size()); ++c) {
    const ReflectingCut& cut = sys.cuts[c];
    std::vector<int> side(z.n), inv(z.n);
    for (int alpha = 0; alpha < z.n; ++alpha) {
      const bool fixed = std::binary_search(cut.fixed_edges.begin(),
                                            cut.fixed_edges.end(),
                                            z.edge_id(color, alpha));
      side[alpha] = fixed ? 2 : cut.white_side[alpha];
      // The image of the edge at white alpha is the edge at the white image
      // of its black endpoint.
      inv[alpha] =
          fixed ? alpha : cut.automorphism.bmap[z.sigma[color][alpha]];
    }
    Wall w = make_wall(std::move(inv), std::move(side));
    bool separates_any = false;
    for (int i = 0; i < z.n && !separates_any; ++i)
      for (int j = i + 1; j < z.n && !separates_any; ++j)
        separates_any = wall_separates(w, i, j);
    if (!separates_any) continue;
    sys.wall_of_cut[c] = static_cast<int>(sys.system.walls.size());
    sys.cut_of_wall.push_back(c);
    sys.system.walls.push_back(std::move(w));
  }
  return sys;
}

EdgeConvexitySystem edge_system(const PsiGraph& z, const std::string& color) {
  const int c = z.color_index(color);
  if (c < 0) throw InputError("unknown color '" + color + "'");
  return edge_system(z, c, enumerate_cuts(z));
}

ConvexityVerdict verify_edge_convexity(const PsiGraph& z,
                                       const EdgeConvexityCertificate& cert) {
  const EdgeConvexitySystem sys = edge_system(z, cert.color);

  std::vector<Eigen::MatrixXd> P(sys.system.walls.size());
  for (std::size_t k = 0; k < P.size(); ++k) {
    const int r = static_cast<int>(sys.system.walls[k].r_items.size());
    P[k] = Eigen::MatrixXd::Zero(r, r);
  }
  for (const EdgeCertEntry& e : cert.entries) {
    if (e.cut_id < 0 || e.cut_id >= static_cast<int>(sys.cuts.size()))
      throw InputError("certificate references unknown cut id " +
                       std::to_string(e.cut_id));
    const int wall = sys.wall_of_cut[e.cut_id];
    if (wall < 0)
      throw InputError("certificate entry for cut " + std::to_string(e.cut_id) +
                       " which separates no " + cert.color + "-edge pair");
    const int r = static_cast<int>(sys.system.walls[wall].r_items.size());
    if (e.P.rows() != r || e.P.cols() != r)
      throw InputError("certificate matrix for cut " +
                       std::to_string(e.cut_id) + " is " +
                       std::to_string(e.P.rows()) + "x" +
                       std::to_string(e.P.cols()) + ", expected " +
                       std::to_string(r) + "x" + std::to_string(r));
    P[wall] = e.P;
  }

  const ResidualReport rep =
      verify_reflection_system(sys.system, P, cert.tol_sum, cert.tol_psd);
  ConvexityVerdict v;
  v.structural_failure = rep.structural_failure;
  v.max_sum_residual = rep.max_sum_residual;
  v.min_eigenvalue = rep.min_eigenvalue;
  v.pass = rep.ok;
  if (rep.structural_failure) {
    v.detail = "not edge-reflecting for " + cert.color + ": pair " +
               pair_name(z, sys.color, rep.uncovered_i, rep.uncovered_j) +
               " is separated by no reflecting cut";
  } else if (!rep.ok) {
    std::ostringstream os;
    if (rep.max_sum_residual > cert.tol_sum)
      os << "pair " << pair_name(z, sys.color, rep.worst_i, rep.worst_j)
         << " sum residual " << rep.max_sum_residual << " exceeds "
         << cert.tol_sum;
    if (rep.min_eigenvalue < -cert.tol_psd) {
      if (os.tellp() > 0) os << "; ";
      os << "cut " << sys.cut_of_wall[rep.worst_wall]
         << " matrix eigenvalue " << rep.min_eigenvalue << " below "
         << -cert.tol_psd;
    }
    v.detail = os.str();
  }
  return v;
}

EdgeSolveReport solve_edge_convexity(const PsiGraph& z,
                                     const std::string& color,
                                     const SolveOptions& opts) {
  const EdgeConvexitySystem sys = edge_system(z, color);
  const SolveResult res = solve_reflection_system(sys.system, opts);

  EdgeSolveReport rep;
  rep.status = res.status;
  rep.sum_residual = res.sum_residual;
  rep.min_eigenvalue = res.min_eigenvalue;
  rep.sweeps = res.sweeps;
  if (res.status == SolveStatus::InfeasibleStructure) return rep;

  EdgeConvexityCertificate cert;
  cert.color = color;
  cert.tol_sum = opts.tol_sum;
  cert.tol_psd = opts.tol_psd;
  cert.provenance = "solved";
  for (std::size_t k = 0; k < res.P.size(); ++k)
    cert.entries.push_back({sys.cut_of_wall[k], res.P[k]});
  rep.certificate = std::move(cert);
  return rep;
}

}  // namespace psigraph
