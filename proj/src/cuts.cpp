#include "psigraph/cuts.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "psigraph/rng.hpp"

namespace psigraph {
namespace {

bool is_identity_even(const GraphAutomorphism& a) {
  if (a.odd) return false;
  for (int i = 0; i < static_cast<int>(a.wmap.size()); ++i)
    if (a.wmap[i] != i || a.bmap[i] != i) return false;
  return true;
}

// Component labels (0/1) of z minus the fixed edges; empty when the number
// of components is not exactly two.
struct Sides {
  std::vector<int> white, black;
  bool ok = false;
};

Sides two_sides(const PsiGraph& z, const std::vector<char>& fixed) {
  const int n = z.n;
  Sides s;
  s.white.assign(n, -1);
  s.black.assign(n, -1);
  int comps = 0;
  for (int start = 0; start < 2 * n; ++start) {
    const bool start_white = start < n;
    const int start_idx = start_white ? start : start - n;
    if ((start_white ? s.white : s.black)[start_idx] != -1) continue;
    if (comps == 2) return s;  // a third component exists
    const int c = comps++;
    std::deque<std::pair<bool, int>> work{{start_white, start_idx}};
    (start_white ? s.white : s.black)[start_idx] = c;
    while (!work.empty()) {
      auto [white, idx] = work.front();
      work.pop_front();
      for (int A = 0; A < z.q(); ++A) {
        if (white) {
          if (fixed[z.edge_id(A, idx)]) continue;
          const int b = z.sigma[A][idx];
          if (s.black[b] == -1) {
            s.black[b] = c;
            work.emplace_back(false, b);
          }
        } else {
          const int w = z.sigma_inv[A][idx];
          if (fixed[z.edge_id(A, w)]) continue;
          if (s.white[w] == -1) {
            s.white[w] = c;
            work.emplace_back(true, w);
          }
        }
      }
    }
  }
  s.ok = comps == 2;
  return s;
}

}  // namespace

std::vector<ReflectingCut> enumerate_cuts(const PsiGraph& z) {
  const AutomorphismGroup ag = automorphism_group(z);
  const int n = z.n;
  const int q = z.q();
  std::vector<ReflectingCut> cuts;
  for (const auto& k : ag.odd) {
    if (!is_identity_even(compose(z, k, k))) continue;
    std::vector<char> fixed(n * q, 0);
    std::vector<int> fixed_ids;
    for (int A = 0; A < q; ++A)
      for (int w = 0; w < n; ++w)
        if (k.wmap[w] == z.sigma[A][w]) {
          fixed[z.edge_id(A, w)] = 1;
          fixed_ids.push_back(z.edge_id(A, w));
        }
    if (fixed_ids.empty()) continue;
    Sides s = two_sides(z, fixed);
    if (!s.ok) continue;
    bool swapped = true;
    for (int w = 0; w < n && swapped; ++w)
      if (s.white[w] == s.black[k.wmap[w]]) swapped = false;
    for (int b = 0; b < n && swapped; ++b)
      if (s.black[b] == s.white[k.bmap[b]]) swapped = false;
    if (!swapped) continue;
    ReflectingCut cut;
    cut.automorphism = k;
    std::sort(fixed_ids.begin(), fixed_ids.end());
    cut.fixed_edges = std::move(fixed_ids);
    const int r = s.white[0];
    cut.white_side.resize(n);
    cut.black_side.resize(n);
    for (int w = 0; w < n; ++w) cut.white_side[w] = s.white[w] == r ? 0 : 1;
    for (int b = 0; b < n; ++b) cut.black_side[b] = s.black[b] == r ? 0 : 1;
    cuts.push_back(std::move(cut));
  }
  std::sort(cuts.begin(), cuts.end(),
            [](const ReflectingCut& a, const ReflectingCut& b) {
              return a.fixed_edges < b.fixed_edges;
            });
  std::vector<char> used(n * q, 0);
  for (const auto& c : cuts)
    for (int e : c.fixed_edges) {
      if (used[e]) throw Error("two reflecting cuts share an edge");
      used[e] = 1;
    }
  return cuts;
}

Separation separates_edges(const PsiGraph& z, const ReflectingCut& cut,
                           int edge_a, int edge_b) {
  auto on_cut = [&](int e) {
    return std::binary_search(cut.fixed_edges.begin(), cut.fixed_edges.end(),
                              e);
  };
  if (on_cut(edge_a) || on_cut(edge_b)) return Separation::OnCut;
  const int side_a = cut.white_side[edge_a % z.n];
  const int side_b = cut.white_side[edge_b % z.n];
  return side_a == side_b ? Separation::SameSide : Separation::Separated;
}

bool separates_vertices(const ReflectingCut& cut, bool a_white, int a,
                        bool b_white, int b) {
  const int sa = a_white ? cut.white_side[a] : cut.black_side[a];
  const int sb = b_white ? cut.white_side[b] : cut.black_side[b];
  return sa != sb;
}

bool is_edge_reflecting(const PsiGraph& z, int color) {
  const auto cuts = enumerate_cuts(z);
  const int n = z.n;
  const int first = color < 0 ? 0 : color;
  const int last = color < 0 ? z.q() - 1 : color;
  if (color >= z.q()) throw InputError("color index out of range");
  for (int A = first; A <= last; ++A)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        bool found = false;
        for (const auto& cut : cuts)
          if (separates_edges(z, cut, z.edge_id(A, a), z.edge_id(A, b)) ==
              Separation::Separated) {
            found = true;
            break;
          }
        if (!found) return false;
      }
  return true;
}

bool is_mirror(const PsiGraph& z, int* witness_edge) {
  const auto cuts = enumerate_cuts(z);
  std::vector<char> covered(z.n * z.q(), 0);
  for (const auto& c : cuts)
    for (int e : c.fixed_edges) covered[e] = 1;
  for (int e = 0; e < static_cast<int>(covered.size()); ++e)
    if (!covered[e]) {
      if (witness_edge) *witness_edge = e;
      return false;
    }
  return true;
}

std::optional<CDDiagram> recognize_coxeter(const PsiGraph& z,
                                           std::string* diagnostic) {
  auto fail = [&](const std::string& why) -> std::optional<CDDiagram> {
    if (diagnostic) *diagnostic = why;
    return std::nullopt;
  };
  if (!is_connected(z))
    throw DisconnectedGraphError("recognize_coxeter requires a connected graph");
  // Colors with identical permutations are a repeated generator; merge them
  // (cuts and the mirror property are insensitive to the duplication) and
  // recognize the reduced graph, one diagram node per distinct permutation.
  {
    std::vector<std::vector<int>> unique_sigma;
    for (const auto& s : z.sigma)
      if (std::find(unique_sigma.begin(), unique_sigma.end(), s) ==
          unique_sigma.end())
        unique_sigma.push_back(s);
    if (unique_sigma.size() < z.sigma.size()) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < unique_sigma.size(); ++i)
        names.push_back(cayley_color_name(static_cast<int>(i)));
      return recognize_coxeter(from_sigma(z.n, names, unique_sigma),
                               diagnostic);
    }
  }
  const int q = z.q();
  const int n = z.n;
  std::vector<std::vector<int>> m(q, std::vector<int>(q, 1));
  for (int A = 0; A < q; ++A)
    for (int B = A + 1; B < q; ++B) {
      // Alternating AB cycles project to cycles of sigma_B^{-1} sigma_A on
      // white vertices; m_AB is their common length.
      std::vector<int> seen(n, 0);
      int common = -1;
      for (int w0 = 0; w0 < n; ++w0) {
        if (seen[w0]) continue;
        int len = 0, w = w0;
        do {
          seen[w] = 1;
          ++len;
          w = z.sigma_inv[B][z.sigma[A][w]];
        } while (w != w0);
        if (common == -1) common = len;
        if (len != common)
          return fail("inconsistent alternating cycle lengths for colors " +
                      z.colors[A] + "," + z.colors[B]);
      }
      m[A][B] = m[B][A] = common;
    }
  if (!is_edge_reflecting(z)) return fail("not edge-reflecting");
  CDDiagram d;
  try {
    d = diagram_from_matrix(m);
  } catch (const InputError& e) {
    return fail(std::string("matrix is not a finite Coxeter matrix "
                            "(possible bug: graph is edge-reflecting): ") +
                e.what());
  }
  if (group_order(d) != 2LL * n)
    return fail("group order mismatch (possible bug): expected " +
                std::to_string(2 * n) + ", diagram gives " +
                std::to_string(group_order(d)));
  const CayleyGraph cay = from_cayley(enumerate_group(d));
  std::vector<std::string> names;
  for (int A = 0; A < q; ++A) names.push_back(cayley_color_name(A));
  const PsiGraph renamed = from_sigma(n, names, z.sigma);
  if (!isomorphic(renamed, cay.graph))
    return fail("reconstruction mismatch (possible bug)");
  return d;
}

GeodesicCheck check_geodesic_lemma(const PsiGraph& z, unsigned long long seed,
                                   int samples) {
  const auto cuts = enumerate_cuts(z);
  GeodesicCheck result;
  if (cuts.empty()) return result;
  const int n = z.n;
  const int nv = 2 * n;
  // Adjacency with edge ids; vertex v<n is white v, else black v-n.
  std::vector<std::vector<std::pair<int, int>>> adj(nv);
  for (int A = 0; A < z.q(); ++A)
    for (int w = 0; w < n; ++w) {
      const int b = n + z.sigma[A][w];
      adj[w].emplace_back(b, z.edge_id(A, w));
      adj[b].emplace_back(w, z.edge_id(A, w));
    }
  std::vector<char> on_cut_edge(n * z.q(), 0);
  std::vector<int> owner(n * z.q(), -1);
  for (int c = 0; c < static_cast<int>(cuts.size()); ++c)
    for (int e : cuts[c].fixed_edges) {
      on_cut_edge[e] = 1;
      owner[e] = c;
    }
  auto check_path = [&](int u, int v,
                        const std::vector<int>& edges) -> bool {
    std::vector<int> hits(cuts.size(), 0);
    for (int e : edges)
      if (on_cut_edge[e] && ++hits[owner[e]] > 1) {
        result.ok = false;
        result.u = u;
        result.v = v;
        result.cut_index = owner[e];
        result.path_edges = edges;
        return false;
      }
    return true;
  };
  Rng rng(seed);
  std::vector<int> dist(nv);
  for (int u = 0; u < nv; ++u) {
    std::fill(dist.begin(), dist.end(), -1);
    std::vector<int> parent_edge(nv, -1), parent(nv, -1);
    std::deque<int> work{u};
    dist[u] = 0;
    while (!work.empty()) {
      const int x = work.front();
      work.pop_front();
      for (auto [y, e] : adj[x])
        if (dist[y] == -1) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          parent_edge[y] = e;
          work.push_back(y);
        }
    }
    for (int v = 0; v < nv; ++v) {
      if (v == u) continue;
      std::vector<int> path;
      for (int x = v; x != u; x = parent[x]) path.push_back(parent_edge[x]);
      if (!check_path(u, v, path)) return result;
      for (int s = 0; s < samples; ++s) {
        path.clear();
        int x = v;
        while (x != u) {
          std::vector<std::pair<int, int>> options;
          for (auto [y, e] : adj[x])
            if (dist[y] == dist[x] - 1) options.emplace_back(y, e);
          const auto [y, e] = options[rng.integer(options.size())];
          path.push_back(e);
          x = y;
        }
        if (!check_path(u, v, path)) return result;
      }
    }
  }
  return result;
}

}  // namespace psigraph
