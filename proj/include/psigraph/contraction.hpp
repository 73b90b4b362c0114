#pragma once

#include <vector>

#include "psigraph/state.hpp"

namespace psigraph {

// Dense tensor with globally-identified wires; data row-major with wires[0]
// slowest.  A wire id shared by two tensors is contracted when they meet.
struct Tensor {
  std::vector<int> wires;
  std::vector<int> dims;
  std::vector<cdouble> data;

  std::size_t size() const { return data.size(); }
};

// Reorder wires; order[i] names the current position of new wire i.
Tensor permuted(const Tensor& t, const std::vector<int>& order);

// Contract all wires the two tensors share (outer product when none).
Tensor contract_pair(const Tensor& a, const Tensor& b);

// Greedy pairwise contraction, repeatedly joining the pair with the smallest
// result; throws SizeCapError when a result would exceed cap entries.
Tensor contract_network(std::vector<Tensor> tensors, std::size_t cap);

}  // namespace psigraph
