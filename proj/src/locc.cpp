#include "psigraph/locc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "psigraph/invariants.hpp"

namespace psigraph {

double kraus_identity_residual(const KrausFamily& fam) {
  if (fam.ops.empty()) throw InputError("empty Kraus family");
  const Eigen::Index d = fam.ops[0].rows();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& e : fam.ops) {
    if (e.rows() != d || e.cols() != d)
      throw InputError("Kraus operators must share one square shape");
    sum += e.adjoint() * e;
  }
  sum -= Eigen::MatrixXcd::Identity(d, d);
  return sum.cwiseAbs().maxCoeff();
}

KrausFamily random_kraus(int d, int count, Rng& rng, int party) {
  if (d < 1 || count < 1) throw InputError("random_kraus needs d,count >= 1");
  const Eigen::MatrixXcd u = random_unitary(d * count, rng);
  KrausFamily fam;
  fam.party = party;
  for (int i = 0; i < count; ++i)
    fam.ops.push_back(u.block(i * d, 0, d, d));
  return fam;
}

KrausFamily random_kraus(int d, int count, unsigned long long seed,
                         int party) {
  Rng rng(seed);
  return random_kraus(d, count, rng, party);
}

Ensemble apply(const StateTensor& psi, const KrausFamily& fam) {
  if (fam.party < 0 || fam.party >= psi.parties())
    throw InputError("Kraus party out of range");
  if (fam.ops.empty() || fam.ops[0].rows() != psi.dims[fam.party])
    throw InputError("Kraus operator dimension does not match party");
  Ensemble out;
  for (const auto& e : fam.ops) {
    StateTensor branch = apply_one_party(psi, fam.party, e);
    const double p = norm_squared(branch);
    if (p <= kBranchDrop) {
      out.dropped_mass += p;
      continue;
    }
    const double scale = 1.0 / std::sqrt(p);
    for (cdouble& a : branch.amp) a *= scale;
    out.branches.push_back({p, std::move(branch)});
  }
  return out;
}

double monotonicity_gap(const PsiGraph& z, const StateTensor& psi,
                        const KrausFamily& fam) {
  const Ensemble ens = apply(psi, fam);
  double after = 0;
  for (const Branch& b : ens.branches)
    after += b.p * monotone_value(z, b.state);
  return monotone_value(z, psi) - after;
}

MonteCarloReport monte_carlo_test(const PsiGraph& z,
                                  const std::vector<int>& dims, int trials,
                                  int kraus_min, int kraus_max,
                                  unsigned long long seed, int threads) {
  if (static_cast<int>(dims.size()) != z.q())
    throw InputError("one dimension per color required");
  if (z.n > 6) throw InputError("Monte-Carlo path capped at n <= 6");
  for (int d : dims)
    if (d < 1 || d > 3)
      throw InputError("Monte-Carlo path capped at dims <= 3");
  if (trials < 1 || kraus_min < 1 || kraus_max < kraus_min)
    throw InputError("bad Monte-Carlo parameters");

  MonteCarloReport report;
  report.seed = seed;
  report.trials = trials;
  report.kraus_min = kraus_min;
  report.kraus_max = kraus_max;
  report.dims = dims;

  std::vector<double> gaps(trials);
  auto run_trial = [&](int t) {
    Rng rng(seed, static_cast<unsigned long long>(t));
    const int party = static_cast<int>(rng.integer(z.q()));
    const int count =
        kraus_min + static_cast<int>(rng.integer(kraus_max - kraus_min + 1));
    const StateTensor psi = random_state(dims, rng);
    const KrausFamily fam = random_kraus(dims[party], count, rng, party);
    gaps[t] = monotonicity_gap(z, psi, fam);
  };

  threads = std::max(1, threads);
  if (threads == 1) {
    for (int t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1))
          run_trial(t);
      });
    for (auto& th : pool) th.join();
  }

  double sum = 0;
  for (int t = 0; t < trials; ++t) {
    sum += gaps[t];
    if (report.worst_trial == -1 || gaps[t] < report.worst_gap) {
      report.worst_trial = t;
      report.worst_gap = gaps[t];
    }
  }
  report.min_gap = report.worst_gap;
  report.mean_gap = sum / trials;
  {  // replay the worst trial to capture its witness
    Rng rng(seed, static_cast<unsigned long long>(report.worst_trial));
    const int party = static_cast<int>(rng.integer(z.q()));
    const int count =
        kraus_min + static_cast<int>(rng.integer(kraus_max - kraus_min + 1));
    report.worst_state = random_state(dims, rng);
    report.worst_family = random_kraus(dims[party], count, rng, party);
  }
  return report;
}

}  // namespace psigraph
