#include "psigraph/coxeter_group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_map>

namespace psigraph {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

int find_root(const std::vector<Eigen::VectorXd>& roots,
              const Eigen::VectorXd& x, double tol) {
  for (std::size_t i = 0; i < roots.size(); ++i)
    if ((roots[i] - x).lpNorm<Eigen::Infinity>() < tol)
      return static_cast<int>(i);
  return -1;
}

struct PermHash {
  std::size_t operator()(const std::vector<int>& p) const {
    std::size_t h = p.size();
    for (int x : p) h = h * 1000003u + static_cast<std::size_t>(x) + 0x9e3779b9u;
    return h;
  }
};

}  // namespace

RootSystem root_system(const CDDiagram& d, double match_tol) {
  const int q = d.rank;
  Eigen::MatrixXd B(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) B(i, j) = -std::cos(kPi / d.m[i][j]);

  const Eigen::LLT<Eigen::MatrixXd> llt(B);
  if (llt.info() != Eigen::Success)
    throw Error("bilinear form of a finite diagram must be positive definite");
  const Eigen::MatrixXd L = llt.matrixL();

  RootSystem rs;
  rs.rank = q;
  for (int i = 0; i < q; ++i) rs.roots.push_back(L.row(i).transpose());

  // Orbit closure of the simple roots under the simple reflections.
  std::deque<int> work;
  for (int i = 0; i < q; ++i) work.push_back(i);
  const long long expected = root_count(d);
  while (!work.empty()) {
    const Eigen::VectorXd x = rs.roots[work.front()];
    work.pop_front();
    for (int i = 0; i < q; ++i) {
      const Eigen::VectorXd& a = rs.roots[i];
      const Eigen::VectorXd y = x - 2.0 * a.dot(x) * a;
      if (find_root(rs.roots, y, match_tol) == -1) {
        rs.roots.push_back(y);
        work.push_back(static_cast<int>(rs.roots.size()) - 1);
        if (static_cast<long long>(rs.roots.size()) > expected)
          throw Error("root closure exceeded the classical count");
      }
    }
  }
  if (static_cast<long long>(rs.roots.size()) != expected)
    throw Error("root closure produced an unexpected count");

  const int n = static_cast<int>(rs.roots.size());
  rs.negation.resize(n);
  for (int r = 0; r < n; ++r) {
    rs.negation[r] = find_root(rs.roots, -rs.roots[r], match_tol);
    if (rs.negation[r] == -1) throw Error("root system is not symmetric");
  }
  rs.simple_reflection.assign(q, std::vector<int>(n));
  for (int i = 0; i < q; ++i) {
    const Eigen::VectorXd& a = rs.roots[i];
    for (int r = 0; r < n; ++r) {
      const Eigen::VectorXd y = rs.roots[r] - 2.0 * a.dot(rs.roots[r]) * a;
      const int idx = find_root(rs.roots, y, match_tol);
      if (idx == -1) throw Error("simple reflection does not permute roots");
      rs.simple_reflection[i][r] = idx;
    }
  }
  return rs;
}

CoxeterGroup enumerate_group(const CDDiagram& d, std::size_t cap) {
  CoxeterGroup g;
  g.diagram = d;
  g.roots = root_system(d);
  g.rank = d.rank;
  const int nr = static_cast<int>(g.roots.roots.size());
  const long long expected_order = group_order(d);
  if (expected_order > static_cast<long long>(cap))
    throw SizeCapError("group order " + std::to_string(expected_order) +
                       " exceeds enumeration cap " + std::to_string(cap));

  std::unordered_map<std::vector<int>, int, PermHash> id_of;
  std::vector<int> identity(nr);
  for (int i = 0; i < nr; ++i) identity[i] = i;
  g.perm.push_back(identity);
  id_of.emplace(identity, 0);
  g.length.push_back(0);
  g.parent_gen.push_back(-1);
  g.parent_elt.push_back(-1);
  g.gen_action.assign(d.rank, {});

  std::deque<int> work{0};
  while (!work.empty()) {
    const int v = work.front();
    work.pop_front();
    for (int i = 0; i < d.rank; ++i) {
      std::vector<int> q(nr);
      const std::vector<int>& si = g.roots.simple_reflection[i];
      const std::vector<int>& pv = g.perm[v];
      for (int r = 0; r < nr; ++r) q[r] = si[pv[r]];
      auto [it, inserted] = id_of.emplace(std::move(q), g.perm.size());
      if (inserted) {
        g.perm.push_back(it->first);
        g.length.push_back(g.length[v] + 1);
        g.parent_gen.push_back(i);
        g.parent_elt.push_back(v);
        work.push_back(it->second);
      }
      for (int gg = 0; gg < d.rank; ++gg)
        g.gen_action[gg].resize(g.perm.size(), -1);
      g.gen_action[i][v] = it->second;
    }
  }
  g.order = static_cast<long long>(g.perm.size());
  if (g.order != expected_order)
    throw Error("group enumeration disagrees with the classical order");
  g.parity.resize(g.order);
  for (long long v = 0; v < g.order; ++v) g.parity[v] = g.length[v] % 2;

  // Reflections: closure of the generators under conjugation by generators.
  std::set<int> refl;
  std::deque<int> rwork;
  for (int i = 0; i < d.rank; ++i) {
    const int s = g.gen_action[i][0];
    if (refl.insert(s).second) rwork.push_back(s);
  }
  while (!rwork.empty()) {
    const int r = rwork.front();
    rwork.pop_front();
    for (int i = 0; i < d.rank; ++i) {
      // s_i r s_i as a permutation composition.
      const std::vector<int>& si = g.roots.simple_reflection[i];
      const std::vector<int>& pr = g.perm[r];
      std::vector<int> c(nr);
      for (int x = 0; x < nr; ++x) c[x] = si[pr[si[x]]];
      const auto it = id_of.find(c);
      if (it == id_of.end()) throw Error("conjugation left the group");
      if (refl.insert(it->second).second) rwork.push_back(it->second);
    }
  }
  g.reflections.assign(refl.begin(), refl.end());
  if (static_cast<int>(g.reflections.size()) * 2 != nr)
    throw Error("reflection count disagrees with the positive root count");
  return g;
}

std::vector<int> CoxeterGroup::word(int v) const {
  std::vector<int> w;
  while (v != 0) {
    w.push_back(parent_gen[v]);
    v = parent_elt[v];
  }
  return w;
}

int CoxeterGroup::act_word(const std::vector<int>& w, int v) const {
  for (auto it = w.rbegin(); it != w.rend(); ++it) v = gen_action[*it][v];
  return v;
}

int CoxeterGroup::inverse(int a) const {
  const std::vector<int> w = word(a);
  int v = 0;
  for (int ggen : w) v = gen_action[ggen][v];
  return v;
}

bool CoxeterGroup::is_reflection(int v) const {
  return std::binary_search(reflections.begin(), reflections.end(), v);
}

SubgroupEmbedding subgroup_embedding(const CoxeterGroup& g,
                                     const std::vector<int>& sub_nodes) {
  SubgroupEmbedding se;
  se.sub_nodes = sub_nodes;
  std::sort(se.sub_nodes.begin(), se.sub_nodes.end());
  for (int ndx : se.sub_nodes)
    if (ndx < 0 || ndx >= g.rank)
      throw InputError("subgroup node index out of range");
  if (std::unique(se.sub_nodes.begin(), se.sub_nodes.end()) !=
      se.sub_nodes.end())
    throw InputError("duplicate subgroup node index");

  const int k = static_cast<int>(se.sub_nodes.size());
  std::vector<std::vector<int>> sub_m(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      sub_m[i][j] = g.diagram.m[se.sub_nodes[i]][se.sub_nodes[j]];
  se.subgroup = enumerate_group(diagram_from_matrix(sub_m));

  se.embed.resize(se.subgroup.order);
  for (long long h = 0; h < se.subgroup.order; ++h) {
    std::vector<int> w = se.subgroup.word(static_cast<int>(h));
    for (int& gen : w) gen = se.sub_nodes[gen];
    se.embed[h] = g.act_word(w, 0);
  }

  se.coset_of.assign(g.order, -1);
  for (long long v = 0; v < g.order; ++v) {
    if (se.coset_of[v] != -1) continue;
    const int c = static_cast<int>(se.coset_rep.size());
    se.coset_rep.push_back(static_cast<int>(v));
    std::deque<int> work{static_cast<int>(v)};
    se.coset_of[v] = c;
    while (!work.empty()) {
      const int x = work.front();
      work.pop_front();
      for (int ndx : se.sub_nodes) {
        const int y = g.gen_action[ndx][x];
        if (se.coset_of[y] == -1) {
          se.coset_of[y] = c;
          work.push_back(y);
        }
      }
    }
  }
  se.index = static_cast<long long>(se.coset_rep.size());
  if (se.index * se.subgroup.order != g.order)
    throw Error("coset partition size mismatch");
  return se;
}

}  // namespace psigraph
