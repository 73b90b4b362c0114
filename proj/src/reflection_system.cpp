#include "psigraph/reflection_system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psigraph/errors.hpp"

namespace psigraph {
namespace {

// Flat list of the pair constraints touching the walls, precomputed once.
struct PairConstraint {
  int i, j;  // i < j
  // Per separating wall: wall index and the (row, col) slot of P^(k) holding
  // M^(k)_{i,j}; weight 1 on the diagonal, 2 off it.
  struct Term {
    int wall, row, col;
    double inv_weight;
  };
  std::vector<Term> terms;
};

// Slot of M^(k)_{i,j} inside P^(k): row = R-side item, col = image of the
// L-side item.
std::pair<int, int> slot_of_pair(const Wall& w, int i, int j) {
  const int r = w.side[i] == 0 ? i : j;
  const int l = w.side[i] == 0 ? j : i;
  return {w.r_pos[r], w.r_pos[w.involution[l]]};
}

std::vector<PairConstraint> build_pairs(const ReflectionSystem& sys,
                                        int* uncovered_i, int* uncovered_j) {
  std::vector<PairConstraint> pairs;
  for (int i = 0; i < sys.n_items; ++i) {
    for (int j = i + 1; j < sys.n_items; ++j) {
      PairConstraint pc;
      pc.i = i;
      pc.j = j;
      for (int k = 0; k < static_cast<int>(sys.walls.size()); ++k) {
        const Wall& w = sys.walls[k];
        if (!wall_separates(w, i, j)) continue;
        auto [row, col] = slot_of_pair(w, i, j);
        pc.terms.push_back({k, row, col, row == col ? 1.0 : 0.5});
      }
      if (pc.terms.empty()) {
        if (uncovered_i) *uncovered_i = i;
        if (uncovered_j) *uncovered_j = j;
        return {};
      }
      pairs.push_back(std::move(pc));
    }
  }
  return pairs;
}

}  // namespace

Wall make_wall(std::vector<int> involution, std::vector<int> side) {
  const int n = static_cast<int>(involution.size());
  if (static_cast<int>(side.size()) != n)
    throw Error("wall involution and side arrays disagree in length");
  for (int i = 0; i < n; ++i) {
    const int j = involution[i];
    if (j < 0 || j >= n || involution[j] != i)
      throw Error("wall map is not an involution");
    if (side[i] < 0 || side[i] > 2) throw Error("wall side out of range");
    if ((side[i] == 2) != (j == i))
      throw Error("wall fixes exactly the items on it");
    if (side[i] != 2 && side[j] != 1 - side[i])
      throw Error("wall involution must swap the two sides");
  }
  Wall w;
  w.involution = std::move(involution);
  w.side = std::move(side);
  w.r_pos.assign(n, -1);
  for (int i = 0; i < n; ++i)
    if (w.side[i] == 0) {
      w.r_pos[i] = static_cast<int>(w.r_items.size());
      w.r_items.push_back(i);
    }
  return w;
}

double m_value(const Wall& w, const Eigen::MatrixXd& P, int i, int j) {
  auto [row, col] = slot_of_pair(w, i, j);
  return P(row, col);
}

ResidualReport verify_reflection_system(const ReflectionSystem& sys,
                                        const std::vector<Eigen::MatrixXd>& P,
                                        double tol_sum, double tol_psd) {
  if (P.size() != sys.walls.size())
    throw Error("one matrix per wall expected");
  std::vector<Eigen::MatrixXd> sym(P.size());
  for (std::size_t k = 0; k < P.size(); ++k) {
    const int r = static_cast<int>(sys.walls[k].r_items.size());
    if (P[k].rows() != r || P[k].cols() != r)
      throw Error("matrix for wall " + std::to_string(k) + " is " +
                  std::to_string(P[k].rows()) + "x" +
                  std::to_string(P[k].cols()) + ", expected " +
                  std::to_string(r) + "x" + std::to_string(r));
    sym[k] = 0.5 * (P[k] + P[k].transpose());
  }

  ResidualReport rep;
  rep.min_eigenvalue = 0.0;
  bool any_wall = false;
  for (std::size_t k = 0; k < sym.size(); ++k) {
    if (sym[k].rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym[k],
                                                      Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (!any_wall || lo < rep.min_eigenvalue) {
      rep.min_eigenvalue = lo;
      rep.worst_wall = static_cast<int>(k);
    }
    any_wall = true;
  }

  rep.max_sum_residual = 0.0;
  for (int i = 0; i < sys.n_items; ++i) {
    for (int j = i + 1; j < sys.n_items; ++j) {
      double sum = 0.0;
      bool covered = false;
      for (std::size_t k = 0; k < sys.walls.size(); ++k) {
        if (!wall_separates(sys.walls[k], i, j)) continue;
        covered = true;
        sum += m_value(sys.walls[k], sym[k], i, j);
      }
      if (!covered) {
        rep.structural_failure = true;
        rep.uncovered_i = i;
        rep.uncovered_j = j;
        rep.ok = false;
        return rep;
      }
      const double res = std::abs(sum - 1.0);
      if (res > rep.max_sum_residual) {
        rep.max_sum_residual = res;
        rep.worst_i = i;
        rep.worst_j = j;
      }
    }
  }
  rep.ok = rep.max_sum_residual <= tol_sum && rep.min_eigenvalue >= -tol_psd;
  return rep;
}

SolveResult solve_reflection_system(const ReflectionSystem& sys,
                                    const SolveOptions& opts) {
  SolveResult out;
  int ui = -1, uj = -1;
  std::vector<PairConstraint> pairs = build_pairs(sys, &ui, &uj);
  if (ui >= 0) {
    out.status = SolveStatus::InfeasibleStructure;
    out.uncovered_i = ui;
    out.uncovered_j = uj;
    return out;
  }

  const int n_walls = static_cast<int>(sys.walls.size());
  out.P.resize(n_walls);
  for (int k = 0; k < n_walls; ++k) {
    const int r = static_cast<int>(sys.walls[k].r_items.size());
    out.P[k] = Eigen::MatrixXd::Zero(r, r);
  }

  // Equal-split initialization, averaging when two pairs share an entry.
  {
    std::vector<Eigen::MatrixXd> acc(out.P), cnt(out.P);
    for (const PairConstraint& pc : pairs) {
      const double v = 1.0 / static_cast<double>(pc.terms.size());
      for (const auto& t : pc.terms) {
        acc[t.wall](t.row, t.col) += v;
        cnt[t.wall](t.row, t.col) += 1.0;
      }
    }
    for (int k = 0; k < n_walls; ++k)
      for (int a = 0; a < acc[k].rows(); ++a)
        for (int b = 0; b < acc[k].cols(); ++b)
          if (cnt[k](a, b) > 0) out.P[k](a, b) = acc[k](a, b) / cnt[k](a, b);
    for (int k = 0; k < n_walls; ++k)
      out.P[k] = 0.5 * (out.P[k] + out.P[k].transpose()).eval();
  }

  auto sum_residual = [&]() {
    double worst = 0.0;
    for (const PairConstraint& pc : pairs) {
      double sum = 0.0;
      for (const auto& t : pc.terms) sum += out.P[t.wall](t.row, t.col);
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
  };

  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    // Affine half-sweep: project onto each pair's sum hyperplane in turn.
    // Least-squares in the Frobenius metric spreads the residual over the
    // touched entries in proportion to 1/weight.
    for (const PairConstraint& pc : pairs) {
      double sum = 0.0, denom = 0.0;
      for (const auto& t : pc.terms) {
        sum += out.P[t.wall](t.row, t.col);
        denom += t.inv_weight;
      }
      const double step = (1.0 - sum) / denom;
      for (const auto& t : pc.terms) {
        const double d = step * t.inv_weight;
        out.P[t.wall](t.row, t.col) += d;
        if (t.row != t.col) out.P[t.wall](t.col, t.row) += d;
      }
    }
    // Cone half-sweep: clip negative eigenvalues per wall.
    for (int k = 0; k < n_walls; ++k) {
      if (out.P[k].rows() == 0) continue;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.P[k]);
      Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
      out.P[k] = es.eigenvectors() * ev.asDiagonal() *
                 es.eigenvectors().transpose();
      out.P[k] = 0.5 * (out.P[k] + out.P[k].transpose()).eval();
    }
    out.sweeps = sweep;
    if (sum_residual() <= opts.tol_sum) {
      const ResidualReport rep =
          verify_reflection_system(sys, out.P, opts.tol_sum, opts.tol_psd);
      out.sum_residual = rep.max_sum_residual;
      out.min_eigenvalue = rep.min_eigenvalue;
      if (rep.ok) {
        out.status = SolveStatus::Converged;
        return out;
      }
    }
  }
  const ResidualReport rep =
      verify_reflection_system(sys, out.P, opts.tol_sum, opts.tol_psd);
  out.sum_residual = rep.max_sum_residual;
  out.min_eigenvalue = rep.min_eigenvalue;
  out.status = rep.ok ? SolveStatus::Converged : SolveStatus::NoConvergence;
  return out;
}

}  // namespace psigraph
