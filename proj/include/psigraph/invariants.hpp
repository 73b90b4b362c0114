#pragma once

#include "psigraph/cuts.hpp"
#include "psigraph/psi_graph.hpp"
#include "psigraph/state.hpp"

namespace psigraph {

inline constexpr std::size_t kContractionCap = 100000000;  // 1e8 entries

// Z: contract one psi (conjugate psi) tensor per white (black) vertex along
// the colored edges.  Party order = color order.
cdouble evaluate(const PsiGraph& z, const StateTensor& psi);

// Principal n-th root of Z; real nonnegative Z gives the real root.
cdouble normalized_invariant(const PsiGraph& z, const StateTensor& psi);

// 1 - Re(Z^{1/n}); *imaginary_warning (when given) is set when the root has
// imaginary part above 1e-8.
double monotone_value(const PsiGraph& z, const StateTensor& psi,
                      bool* imaginary_warning = nullptr);

// Squared norm of the open tensor built from the cut's R side with the
// fixed edges left open; equals evaluate(z, psi) for any reflecting cut.
double half_graph_norm(const PsiGraph& z, const ReflectingCut& cut,
                       const StateTensor& psi);

// |Z| - 1 (nonpositive up to roundoff on normalized states).
double check_bounded(const PsiGraph& z, const StateTensor& psi);

// |Z(psi1 x psi2) - Z(psi1) Z(psi2)| with the party-wise tensor product.
double check_factorization(const PsiGraph& z, const StateTensor& psi1,
                           const StateTensor& psi2);

}  // namespace psigraph
