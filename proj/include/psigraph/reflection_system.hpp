#pragma once

#include <Eigen/Dense>
#include <vector>

namespace psigraph {

// One wall of a reflection feasibility problem: an involution on items
// together with strict sides.  Items with side 2 lie on the wall itself and
// take part in no separation; the involution restricted to sides 0/1 swaps
// them.  Concrete instances: a reflecting cut acting on the same-color edges
// of a psi-graph, or a reflecting plane acting on coset-graph vertices.
struct Wall {
  std::vector<int> involution;  // item -> item; fixed exactly on side 2
  std::vector<int> side;        // item -> 0 (R), 1 (L), 2 (on the wall)
  std::vector<int> r_items;     // items with side 0, ascending
  std::vector<int> r_pos;       // item -> index into r_items, or -1
};

// Validates the wall invariants (involution, side swap, fixed = side 2) and
// fills the derived fields.  Throws Error on violation.
Wall make_wall(std::vector<int> involution, std::vector<int> side);

inline bool wall_separates(const Wall& w, int i, int j) {
  return (w.side[i] == 0 && w.side[j] == 1) ||
         (w.side[i] == 1 && w.side[j] == 0);
}

// The generic feasibility problem: symmetric matrices P^(k), one per wall,
// indexed by the wall's R items, such that for every unordered pair {i, j}
// of distinct items the sum over separating walls of
//   M^(k)_{i,j} = P^(k)(r, k(l))     (r the R-side one, l the L-side one)
// equals 1 and every P^(k) is positive semi-definite.
struct ReflectionSystem {
  int n_items = 0;
  std::vector<Wall> walls;
};

// M^(k)_{i,j} read from P for a pair {i, j} the wall separates.
double m_value(const Wall& w, const Eigen::MatrixXd& P, int i, int j);

struct ResidualReport {
  bool ok = false;
  bool structural_failure = false;  // some pair separated by no wall
  double max_sum_residual = 0.0;    // over separated pairs (0 when none)
  double min_eigenvalue = 0.0;      // over walls with a nonempty R side
  int uncovered_i = -1, uncovered_j = -1;  // witness for structural failure
  int worst_i = -1, worst_j = -1;          // pair attaining max_sum_residual
  int worst_wall = -1;                     // wall attaining min_eigenvalue
};

// Checks the two defining conditions at the given tolerances.  Matrices are
// symmetrized before either check.  Throws Error when a matrix's shape does
// not match its wall's R side.
ResidualReport verify_reflection_system(const ReflectionSystem& sys,
                                        const std::vector<Eigen::MatrixXd>& P,
                                        double tol_sum, double tol_psd);

enum class SolveStatus { Converged, InfeasibleStructure, NoConvergence };

struct SolveOptions {
  double tol_sum = 1e-8;
  double tol_psd = 1e-8;
  int max_sweeps = 50000;
};

struct SolveResult {
  SolveStatus status = SolveStatus::NoConvergence;
  std::vector<Eigen::MatrixXd> P;  // best iterate (empty on structural failure)
  double sum_residual = 0.0;
  double min_eigenvalue = 0.0;
  int sweeps = 0;
  int uncovered_i = -1, uncovered_j = -1;
};

// Alternating projections between the per-pair sum hyperplanes (sequential
// least-squares redistribution in the Frobenius metric, where an off-diagonal
// entry carries weight 2) and the product of PSD cones (eigenvalue clipping).
// Deterministic; initialized with the equal split M = 1/#separating walls.
SolveResult solve_reflection_system(const ReflectionSystem& sys,
                                    const SolveOptions& opts = {});

}  // namespace psigraph
