#include "psigraph/state.hpp"

#include <cmath>
#include <numeric>

namespace psigraph {

StateTensor make_state(std::vector<int> dims, std::vector<cdouble> amp) {
  std::size_t expect = 1;
  for (int d : dims) {
    if (d < 1) throw InputError("party dimension must be >= 1");
    expect *= static_cast<std::size_t>(d);
  }
  if (amp.size() != expect)
    throw InputError("amplitude count does not match dimensions");
  StateTensor s;
  s.dims = std::move(dims);
  s.amp = std::move(amp);
  return s;
}

double norm_squared(const StateTensor& s) {
  double n = 0;
  for (const cdouble& a : s.amp) n += std::norm(a);
  return n;
}

bool is_normalized(const StateTensor& s, double tol) {
  return std::abs(norm_squared(s) - 1.0) <= tol;
}

StateTensor normalized_copy(StateTensor s) {
  const double n = std::sqrt(norm_squared(s));
  if (n == 0) throw InputError("cannot normalize the zero state");
  for (cdouble& a : s.amp) a /= n;
  return s;
}

StateTensor random_state(const std::vector<int>& dims, Rng& rng) {
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  std::vector<cdouble> amp(total);
  for (cdouble& a : amp) a = rng.cnormal();
  return normalized_copy(make_state(dims, std::move(amp)));
}

StateTensor factorized_state(
    const std::vector<std::vector<cdouble>>& factors) {
  std::vector<int> dims;
  std::size_t total = 1;
  for (const auto& f : factors) {
    if (f.empty()) throw InputError("empty factor");
    dims.push_back(static_cast<int>(f.size()));
    total *= f.size();
  }
  std::vector<cdouble> amp(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    cdouble v = 1;
    std::size_t rest = idx;
    for (int p = static_cast<int>(factors.size()) - 1; p >= 0; --p) {
      v *= factors[p][rest % factors[p].size()];
      rest /= factors[p].size();
    }
    amp[idx] = v;
  }
  return make_state(std::move(dims), std::move(amp));
}

StateTensor bell_state(int d) {
  if (d < 1) throw InputError("bell_state needs d >= 1");
  std::vector<cdouble> amp(static_cast<std::size_t>(d) * d, 0.0);
  const double c = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) amp[static_cast<std::size_t>(i) * d + i] = c;
  return make_state({d, d}, std::move(amp));
}

StateTensor tensor_product(const StateTensor& a, const StateTensor& b) {
  if (a.parties() != b.parties())
    throw InputError("tensor_product needs equal party counts");
  const int q = a.parties();
  std::vector<int> dims(q);
  for (int p = 0; p < q; ++p) dims[p] = a.dims[p] * b.dims[p];
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  std::vector<cdouble> amp(total);
  std::vector<int> ia(q, 0), ib(q, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    // Decompose idx into per-party combined indices (i_A, j_A).
    std::size_t rest = idx;
    for (int p = q - 1; p >= 0; --p) {
      const int k = static_cast<int>(rest % dims[p]);
      rest /= dims[p];
      ia[p] = k / b.dims[p];
      ib[p] = k % b.dims[p];
    }
    std::size_t la = 0, lb = 0;
    for (int p = 0; p < q; ++p) {
      la = la * a.dims[p] + ia[p];
      lb = lb * b.dims[p] + ib[p];
    }
    amp[idx] = a.amp[la] * b.amp[lb];
  }
  return make_state(std::move(dims), std::move(amp));
}

StateTensor apply_one_party(const StateTensor& s, int party,
                            const Eigen::MatrixXcd& u) {
  if (party < 0 || party >= s.parties()) throw InputError("party out of range");
  const int d = s.dims[party];
  if (u.rows() != d || u.cols() != d)
    throw InputError("operator dimension does not match party");
  std::size_t inner = 1;  // stride of the party index
  for (int p = party + 1; p < s.parties(); ++p)
    inner *= static_cast<std::size_t>(s.dims[p]);
  const std::size_t outer = s.size() / (inner * d);
  StateTensor out = s;
  std::vector<cdouble> fiber(d);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < inner; ++i) {
      const std::size_t base = o * inner * d + i;
      for (int j = 0; j < d; ++j) fiber[j] = s.amp[base + j * inner];
      for (int r = 0; r < d; ++r) {
        cdouble v = 0;
        for (int j = 0; j < d; ++j) v += u(r, j) * fiber[j];
        out.amp[base + r * inner] = v;
      }
    }
  return out;
}

Eigen::MatrixXcd random_unitary(int d, Rng& rng) {
  Eigen::MatrixXcd m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = rng.cnormal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < d; ++c) {
    const cdouble diag = r(c, c);
    const double mag = std::abs(diag);
    const cdouble phase = mag > 0 ? diag / mag : cdouble(1, 0);
    q.col(c) *= phase;
  }
  return q;
}

}  // namespace psigraph
