#include "psigraph/contraction.hpp"

#include <algorithm>

namespace psigraph {
namespace {

std::vector<std::size_t> strides_of(const std::vector<int>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    s[i] = s[i + 1] * static_cast<std::size_t>(dims[i + 1]);
  return s;
}

}  // namespace

Tensor permuted(const Tensor& t, const std::vector<int>& order) {
  Tensor out;
  out.wires.reserve(order.size());
  out.dims.reserve(order.size());
  for (int pos : order) {
    out.wires.push_back(t.wires[pos]);
    out.dims.push_back(t.dims[pos]);
  }
  out.data.resize(t.data.size());
  const auto in_strides = strides_of(t.dims);
  const int r = static_cast<int>(order.size());
  std::vector<int> idx(r, 0);  // odometer over output multi-index
  std::size_t in_pos = 0;
  for (std::size_t o = 0; o < out.data.size(); ++o) {
    out.data[o] = t.data[in_pos];
    for (int a = r - 1; a >= 0; --a) {
      if (++idx[a] < out.dims[a]) {
        in_pos += in_strides[order[a]];
        break;
      }
      in_pos -= in_strides[order[a]] * static_cast<std::size_t>(out.dims[a] - 1);
      idx[a] = 0;
    }
  }
  return out;
}

Tensor contract_pair(const Tensor& a, const Tensor& b) {
  std::vector<int> shared;
  for (int w : a.wires)
    if (std::find(b.wires.begin(), b.wires.end(), w) != b.wires.end())
      shared.push_back(w);

  auto position = [](const Tensor& t, int wire) {
    return static_cast<int>(std::find(t.wires.begin(), t.wires.end(), wire) -
                            t.wires.begin());
  };
  std::vector<int> a_order, b_order;
  for (int i = 0; i < static_cast<int>(a.wires.size()); ++i)
    if (std::find(shared.begin(), shared.end(), a.wires[i]) == shared.end())
      a_order.push_back(i);
  for (int w : shared) a_order.push_back(position(a, w));
  for (int w : shared) b_order.push_back(position(b, w));
  for (int i = 0; i < static_cast<int>(b.wires.size()); ++i)
    if (std::find(shared.begin(), shared.end(), b.wires[i]) == shared.end())
      b_order.push_back(i);

  const Tensor pa = permuted(a, a_order);
  const Tensor pb = permuted(b, b_order);

  std::size_t k = 1;
  for (int w : shared) k *= static_cast<std::size_t>(a.dims[position(a, w)]);
  const std::size_t m = pa.size() / k;
  const std::size_t n = pb.size() / k;

  using RowMajor =
      Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> ma(pa.data.data(), static_cast<Eigen::Index>(m),
                                static_cast<Eigen::Index>(k));
  Eigen::Map<const RowMajor> mb(pb.data.data(), static_cast<Eigen::Index>(k),
                                static_cast<Eigen::Index>(n));
  Tensor out;
  out.data.resize(m * n);
  Eigen::Map<RowMajor> mo(out.data.data(), static_cast<Eigen::Index>(m),
                          static_cast<Eigen::Index>(n));
  mo.noalias() = ma * mb;

  const std::size_t a_keep = pa.wires.size() - shared.size();
  out.wires.assign(pa.wires.begin(), pa.wires.begin() + a_keep);
  out.dims.assign(pa.dims.begin(), pa.dims.begin() + a_keep);
  out.wires.insert(out.wires.end(), pb.wires.begin() + shared.size(),
                   pb.wires.end());
  out.dims.insert(out.dims.end(), pb.dims.begin() + shared.size(),
                  pb.dims.end());
  return out;
}

Tensor contract_network(std::vector<Tensor> tensors, std::size_t cap) {
  if (tensors.empty()) {
    Tensor unit;
    unit.data = {cdouble(1, 0)};
    return unit;
  }
  while (tensors.size() > 1) {
    std::size_t best_size = 0;
    int bi = -1, bj = -1;
    for (int i = 0; i < static_cast<int>(tensors.size()); ++i)
      for (int j = i + 1; j < static_cast<int>(tensors.size()); ++j) {
        std::size_t size = 1;
        for (std::size_t w = 0; w < tensors[i].wires.size(); ++w)
          if (std::find(tensors[j].wires.begin(), tensors[j].wires.end(),
                        tensors[i].wires[w]) == tensors[j].wires.end())
            size *= static_cast<std::size_t>(tensors[i].dims[w]);
        for (std::size_t w = 0; w < tensors[j].wires.size(); ++w)
          if (std::find(tensors[i].wires.begin(), tensors[i].wires.end(),
                        tensors[j].wires[w]) == tensors[i].wires.end())
            size *= static_cast<std::size_t>(tensors[j].dims[w]);
        if (bi == -1 || size < best_size) {
          best_size = size;
          bi = i;
          bj = j;
        }
      }
    if (best_size > cap)
      throw SizeCapError("contraction intermediate would exceed the size cap");
    Tensor merged = contract_pair(tensors[bi], tensors[bj]);
    tensors.erase(tensors.begin() + bj);
    tensors[bi] = std::move(merged);
  }
  return tensors[0];
}

}  // namespace psigraph
