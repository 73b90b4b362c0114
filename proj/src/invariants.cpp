#include "psigraph/invariants.hpp"

#include <cmath>

#include "psigraph/contraction.hpp"

namespace psigraph {
namespace {

void check_dims(const PsiGraph& z, const StateTensor& psi) {
  if (psi.parties() != z.q())
    throw InputError("state party count does not match graph colors");
}

Tensor vertex_tensor(const PsiGraph& z, const StateTensor& psi, bool white,
                     int idx) {
  Tensor t;
  t.dims = psi.dims;
  for (int A = 0; A < z.q(); ++A)
    t.wires.push_back(white ? z.edge_id(A, idx)
                            : z.edge_id(A, z.sigma_inv[A][idx]));
  t.data.resize(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    t.data[i] = white ? psi.amp[i] : std::conj(psi.amp[i]);
  return t;
}

}  // namespace

cdouble evaluate(const PsiGraph& z, const StateTensor& psi) {
  check_dims(z, psi);
  std::vector<Tensor> net;
  for (int w = 0; w < z.n; ++w) net.push_back(vertex_tensor(z, psi, true, w));
  for (int b = 0; b < z.n; ++b) net.push_back(vertex_tensor(z, psi, false, b));
  const Tensor result = contract_network(std::move(net), kContractionCap);
  return result.data[0];
}

cdouble normalized_invariant(const PsiGraph& z, const StateTensor& psi) {
  const cdouble value = evaluate(z, psi);
  const double inv_n = 1.0 / static_cast<double>(z.n);
  if (std::abs(value.imag()) <= 1e-12 * std::max(1.0, std::abs(value)) &&
      value.real() >= 0)
    return {std::pow(value.real(), inv_n), 0.0};
  return std::pow(value, cdouble(inv_n, 0.0));
}

double monotone_value(const PsiGraph& z, const StateTensor& psi,
                      bool* imaginary_warning) {
  const cdouble zhat = normalized_invariant(z, psi);
  if (imaginary_warning) *imaginary_warning = std::abs(zhat.imag()) > 1e-8;
  return 1.0 - zhat.real();
}

double half_graph_norm(const PsiGraph& z, const ReflectingCut& cut,
                       const StateTensor& psi) {
  check_dims(z, psi);
  std::vector<Tensor> net;
  for (int w = 0; w < z.n; ++w)
    if (cut.white_side[w] == 0) net.push_back(vertex_tensor(z, psi, true, w));
  for (int b = 0; b < z.n; ++b)
    if (cut.black_side[b] == 0) net.push_back(vertex_tensor(z, psi, false, b));
  const Tensor t1 = contract_network(std::move(net), kContractionCap);
  double norm2 = 0;
  for (const cdouble& a : t1.data) norm2 += std::norm(a);
  return norm2;
}

double check_bounded(const PsiGraph& z, const StateTensor& psi) {
  return std::abs(evaluate(z, psi)) - 1.0;
}

double check_factorization(const PsiGraph& z, const StateTensor& psi1,
                           const StateTensor& psi2) {
  const cdouble joint = evaluate(z, tensor_product(psi1, psi2));
  return std::abs(joint - evaluate(z, psi1) * evaluate(z, psi2));
}

}  // namespace psigraph
