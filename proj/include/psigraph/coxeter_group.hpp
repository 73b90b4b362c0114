#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "psigraph/diagram.hpp"

namespace psigraph {

// Root system of a finite Coxeter diagram in the geometric representation.
// The bilinear form B_ij = -cos(pi/m_ij) has unit diagonal, so every root is
// a unit vector once expressed in an orthonormal basis (computed one-time via
// the Cholesky factor of B).  Simple roots occupy indices 0..rank-1.
struct RootSystem {
  int rank = 0;
  std::vector<Eigen::VectorXd> roots;
  std::vector<std::vector<int>> simple_reflection;  // per generator: root perm
  std::vector<int> negation;                        // index of -root
};

RootSystem root_system(const CDDiagram& d, double match_tol = 1e-9);

// The group enumerated as permutations of the root system.  Element ids are
// BFS order from the identity (id 0); generator g acts by left multiplication
// through gen_action[g].
struct CoxeterGroup {
  CDDiagram diagram;
  RootSystem roots;
  int rank = 0;
  long long order = 0;
  std::vector<std::vector<int>> perm;        // element id -> root permutation
  std::vector<int> length;                   // reduced word length
  std::vector<int> parity;                   // length % 2
  std::vector<std::vector<int>> gen_action;  // gen_action[g][v] = id(s_g * v)
  std::vector<int> parent_gen, parent_elt;   // BFS tree (identity: -1,-1)
  std::vector<int> reflections;              // conjugates of generators, sorted

  // Reduced word for v, leftmost factor first: v = s_w[0] * ... * s_w[k].
  std::vector<int> word(int v) const;
  // Left-multiply v by the word product (rightmost factor applied first).
  int act_word(const std::vector<int>& w, int v) const;
  int multiply(int a, int b) const { return act_word(word(a), b); }
  int inverse(int a) const;
  bool is_involution(int v) const { return v != 0 && multiply(v, v) == 0; }
  bool is_reflection(int v) const;
};

CoxeterGroup enumerate_group(const CDDiagram& d, std::size_t cap = 1000000);

// Standard parabolic subgroup generated by the node subset `sub_nodes`,
// enumerated standalone, together with its embedding into g and the partition
// of g into cosets (orbits of left multiplication by the subgroup, labeled in
// order of their minimal element id).
struct SubgroupEmbedding {
  CoxeterGroup subgroup;
  std::vector<int> sub_nodes;  // ascending node ids of the ambient diagram
  std::vector<int> embed;      // subgroup element id -> ambient element id
  std::vector<int> coset_of;   // ambient element id -> coset id
  std::vector<int> coset_rep;  // coset id -> minimal ambient element id
  long long index = 0;
};

SubgroupEmbedding subgroup_embedding(const CoxeterGroup& g,
                                     const std::vector<int>& sub_nodes);

}  // namespace psigraph
