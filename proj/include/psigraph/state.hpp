#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "psigraph/errors.hpp"
#include "psigraph/rng.hpp"

namespace psigraph {

using cdouble = std::complex<double>;

// Dense pure state of q parties; amplitudes row-major with party 0 slowest.
struct StateTensor {
  std::vector<int> dims;
  std::vector<cdouble> amp;

  int parties() const { return static_cast<int>(dims.size()); }
  std::size_t size() const { return amp.size(); }
};

// Validates that amp length equals the product of dims (all >= 1).
StateTensor make_state(std::vector<int> dims, std::vector<cdouble> amp);

double norm_squared(const StateTensor& s);
bool is_normalized(const StateTensor& s, double tol = 1e-12);
StateTensor normalized_copy(StateTensor s);

// Complex-Gaussian amplitudes, normalized.
StateTensor random_state(const std::vector<int>& dims, Rng& rng);

// Fully factorized state from per-party vectors (each normalized by caller
// or not; the result is the plain outer product).
StateTensor factorized_state(const std::vector<std::vector<cdouble>>& factors);

// (1/sqrt d) sum_i |ii>.
StateTensor bell_state(int d);

// Party-wise tensor product: party A of the result has dimension
// a.dims[A]*b.dims[A], index (i_A, j_A) with i from a slowest.
StateTensor tensor_product(const StateTensor& a, const StateTensor& b);

// Apply a matrix to one party: out = (I x...x U x...x I) psi.
StateTensor apply_one_party(const StateTensor& s, int party,
                            const Eigen::MatrixXcd& u);

// Haar-random unitary via QR of a complex Gaussian matrix with the R-phase
// fix.
Eigen::MatrixXcd random_unitary(int d, Rng& rng);

}  // namespace psigraph
