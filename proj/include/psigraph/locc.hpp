#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "psigraph/psi_graph.hpp"
#include "psigraph/state.hpp"

namespace psigraph {

inline constexpr double kBranchDrop = 1e-12;

// Trace-preserving operator family acting on one party.
struct KrausFamily {
  int party = 0;  // index into the state's party list
  std::vector<Eigen::MatrixXcd> ops;
};

// Max-abs entry of sum E_i^dagger E_i - I.
double kraus_identity_residual(const KrausFamily& fam);

// Slices of the first d columns of a Haar unitary of size (count*d); trace
// preservation holds by construction.
KrausFamily random_kraus(int d, int count, Rng& rng, int party = 0);
KrausFamily random_kraus(int d, int count, unsigned long long seed,
                         int party = 0);

struct Branch {
  double p = 0;
  StateTensor state;  // renormalized
};
struct Ensemble {
  std::vector<Branch> branches;
  double dropped_mass = 0;  // total probability of branches below kBranchDrop
};

Ensemble apply(const StateTensor& psi, const KrausFamily& fam);

// nu(psi) - sum_i p_i nu(psi_i).
double monotonicity_gap(const PsiGraph& z, const StateTensor& psi,
                        const KrausFamily& fam);

struct MonteCarloReport {
  unsigned long long seed = 0;
  int trials = 0;
  int kraus_min = 2, kraus_max = 4;
  std::vector<int> dims;
  double min_gap = 0, mean_gap = 0;
  int worst_trial = -1;
  double worst_gap = 0;
  StateTensor worst_state;
  KrausFamily worst_family;
};

// Independent trials (party, family size, state, family all drawn from a
// per-trial stream), deterministic for fixed arguments regardless of the
// thread count.  Caps: n <= 6, every dim <= 3.
MonteCarloReport monte_carlo_test(const PsiGraph& z,
                                  const std::vector<int>& dims, int trials,
                                  int kraus_min, int kraus_max,
                                  unsigned long long seed, int threads = 1);

}  // namespace psigraph
