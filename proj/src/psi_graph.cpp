#include "psigraph/psi_graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace psigraph {
namespace {

bool is_permutation(const std::vector<int>& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int x : p) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

std::vector<int> invert(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

void require_connected(const PsiGraph& z, const char* op) {
  if (!is_connected(z))
    throw DisconnectedGraphError(std::string(op) +
                                 " requires a connected graph");
}

// Try to extend the seed "white 0 -> target" to a full automorphism by
// propagating along edges; returns false on any conflict.
bool propagate(const PsiGraph& z, bool odd, int target, GraphAutomorphism* out) {
  const int n = z.n;
  const int q = z.q();
  GraphAutomorphism a;
  a.odd = odd;
  a.wmap.assign(n, -1);
  a.bmap.assign(n, -1);
  a.wmap[0] = target;
  std::deque<std::pair<bool, int>> work{{true, 0}};
  while (!work.empty()) {
    auto [white, idx] = work.front();
    work.pop_front();
    if (white) {
      const int img = a.wmap[idx];
      for (int A = 0; A < q; ++A) {
        const int nb = z.sigma[A][idx];
        const int val = odd ? z.sigma_inv[A][img] : z.sigma[A][img];
        if (a.bmap[nb] == -1) {
          a.bmap[nb] = val;
          work.emplace_back(false, nb);
        } else if (a.bmap[nb] != val) {
          return false;
        }
      }
    } else {
      const int img = a.bmap[idx];
      for (int A = 0; A < q; ++A) {
        const int nw = z.sigma_inv[A][idx];
        const int val = odd ? z.sigma[A][img] : z.sigma_inv[A][img];
        if (a.wmap[nw] == -1) {
          a.wmap[nw] = val;
          work.emplace_back(true, nw);
        } else if (a.wmap[nw] != val) {
          return false;
        }
      }
    }
  }
  if (!is_permutation(a.wmap, n) || !is_permutation(a.bmap, n)) return false;
  *out = std::move(a);
  return true;
}

}  // namespace

int PsiGraph::color_index(const std::string& name) const {
  for (int i = 0; i < q(); ++i)
    if (colors[i] == name) return i;
  return -1;
}

PsiGraph from_sigma(int n, std::vector<std::string> colors,
                    std::vector<std::vector<int>> sigma) {
  if (n < 1) throw InputError("n must be >= 1");
  if (colors.empty()) throw InputError("at least one color required");
  if (colors.size() != sigma.size())
    throw InputError("one permutation required per color");
  std::set<std::string> names(colors.begin(), colors.end());
  if (names.size() != colors.size())
    throw InputError("duplicate color name");
  PsiGraph z;
  z.n = n;
  z.colors = std::move(colors);
  for (auto& p : sigma) {
    if (!is_permutation(p, n))
      throw InputError("sigma entry is not a permutation of 0..n-1");
    z.sigma_inv.push_back(invert(p));
    z.sigma.push_back(std::move(p));
  }
  return z;
}

bool is_connected(const PsiGraph& z) {
  const int n = z.n;
  std::vector<char> wseen(n, 0), bseen(n, 0);
  std::deque<std::pair<bool, int>> work{{true, 0}};
  wseen[0] = 1;
  int count = 1;
  while (!work.empty()) {
    auto [white, idx] = work.front();
    work.pop_front();
    for (int A = 0; A < z.q(); ++A) {
      if (white) {
        const int b = z.sigma[A][idx];
        if (!bseen[b]) {
          bseen[b] = 1;
          ++count;
          work.emplace_back(false, b);
        }
      } else {
        const int w = z.sigma_inv[A][idx];
        if (!wseen[w]) {
          wseen[w] = 1;
          ++count;
          work.emplace_back(true, w);
        }
      }
    }
  }
  return count == 2 * n;
}

std::string cayley_color_name(int node) {
  if (node < 26) return std::string(1, static_cast<char>('A' + node));
  return "g" + std::to_string(node);
}

CayleyGraph from_cayley(const CoxeterGroup& g) {
  CayleyGraph cg;
  cg.group = g;
  cg.side_index.assign(g.order, -1);
  for (long long v = 0; v < g.order; ++v) {
    if (g.parity[v] == 0) {
      cg.side_index[v] = static_cast<int>(cg.white_elt.size());
      cg.white_elt.push_back(static_cast<int>(v));
    } else {
      cg.side_index[v] = static_cast<int>(cg.black_elt.size());
      cg.black_elt.push_back(static_cast<int>(v));
    }
  }
  const int n = static_cast<int>(cg.white_elt.size());
  std::vector<std::string> colors;
  std::vector<std::vector<int>> sigma(g.rank, std::vector<int>(n));
  for (int A = 0; A < g.rank; ++A) {
    colors.push_back(cayley_color_name(A));
    for (int w = 0; w < n; ++w)
      sigma[A][w] = cg.side_index[g.gen_action[A][cg.white_elt[w]]];
  }
  cg.graph = from_sigma(n, std::move(colors), std::move(sigma));
  return cg;
}

GraphAutomorphism compose(const PsiGraph&, const GraphAutomorphism& f,
                          const GraphAutomorphism& g) {
  GraphAutomorphism r;
  r.odd = f.odd != g.odd;
  const int n = static_cast<int>(g.wmap.size());
  r.wmap.resize(n);
  r.bmap.resize(n);
  for (int i = 0; i < n; ++i) {
    r.wmap[i] = g.odd ? f.bmap[g.wmap[i]] : f.wmap[g.wmap[i]];
    r.bmap[i] = g.odd ? f.wmap[g.bmap[i]] : f.bmap[g.bmap[i]];
  }
  return r;
}

GraphAutomorphism inverse_of(const GraphAutomorphism& a) {
  GraphAutomorphism r;
  r.odd = a.odd;
  if (a.odd) {
    r.wmap = invert(a.bmap);
    r.bmap = invert(a.wmap);
  } else {
    r.wmap = invert(a.wmap);
    r.bmap = invert(a.bmap);
  }
  return r;
}

AutomorphismGroup automorphism_group(const PsiGraph& z) {
  require_connected(z, "automorphism_group");
  AutomorphismGroup ag;
  GraphAutomorphism a;
  for (int t = 0; t < z.n; ++t) {
    if (propagate(z, false, t, &a)) ag.even.push_back(a);
    if (propagate(z, true, t, &a)) ag.odd.push_back(a);
  }
  return ag;
}

TransitivityBattery transitivity_battery(const PsiGraph& z) {
  require_connected(z, "transitivity_battery");
  const AutomorphismGroup ag = automorphism_group(z);
  const int n = z.n;
  const int q = z.q();
  TransitivityBattery b;

  std::set<int> even_images, odd_images;
  for (const auto& a : ag.even) even_images.insert(a.wmap[0]);
  for (const auto& a : ag.odd) odd_images.insert(a.wmap[0]);
  b.vertex_transitive = static_cast<int>(even_images.size()) == n &&
                        static_cast<int>(odd_images.size()) == n;
  b.weakly_vertex_transitive = static_cast<int>(even_images.size()) == n;

  b.strongly_all_edge_transitive = true;
  b.all_edge_transitive = true;
  for (int A = 0; A < q; ++A) {
    std::set<int> even_orbit, full_orbit;
    for (const auto& a : ag.even) {
      even_orbit.insert(a.wmap[0]);
      full_orbit.insert(a.wmap[0]);
    }
    for (const auto& a : ag.odd) full_orbit.insert(a.bmap[z.sigma[A][0]]);
    if (static_cast<int>(even_orbit.size()) != n)
      b.strongly_all_edge_transitive = false;
    if (static_cast<int>(full_orbit.size()) != n)
      b.all_edge_transitive = false;
  }

  // Regular-action criterion: the extended group acts freely (automatic for
  // connected graphs) and transitively, and each color class is the orbit of
  // a single edge flipped by an involution.  Under a regular action the
  // latter says: the unique odd automorphism taking white 0 to its
  // A-neighbor squares to the identity, for every color A.
  b.cayley_involutive = ag.extended_size() == 2 * static_cast<std::size_t>(n);
  if (b.cayley_involutive) {
    GraphAutomorphism identity;
    identity.odd = false;
    identity.wmap.resize(n);
    identity.bmap.resize(n);
    std::iota(identity.wmap.begin(), identity.wmap.end(), 0);
    std::iota(identity.bmap.begin(), identity.bmap.end(), 0);
    for (int A = 0; A < q && b.cayley_involutive; ++A) {
      bool found = false;
      for (const auto& a : ag.odd)
        if (a.wmap[0] == z.sigma[A][0]) {
          found = compose(z, a, a) == identity;
          break;
        }
      b.cayley_involutive = found;
    }
  }
  return b;
}

bool property_p_hypercube(const PsiGraph& z) {
  require_connected(z, "property_p_hypercube");
  for (int A = 0; A < z.q(); ++A)
    for (int B = A + 1; B < z.q(); ++B) {
      for (int w = 0; w < z.n; ++w) {
        const int c = z.sigma_inv[B][z.sigma[A][w]];
        if (c == w) return false;                          // 2-cycle
        if (z.sigma_inv[B][z.sigma[A][c]] != w) return false;  // longer cycle
      }
    }
  return true;
}

namespace {

struct Component {
  std::vector<int> whites, blacks;  // ascending original ids
};

std::vector<Component> components_of(const PsiGraph& z) {
  std::vector<int> wcomp(z.n, -1), bcomp(z.n, -1);
  std::vector<Component> comps;
  for (int start = 0; start < z.n; ++start) {
    if (wcomp[start] != -1) continue;
    const int c = static_cast<int>(comps.size());
    comps.emplace_back();
    std::deque<std::pair<bool, int>> work{{true, start}};
    wcomp[start] = c;
    while (!work.empty()) {
      auto [white, idx] = work.front();
      work.pop_front();
      if (white) {
        comps[c].whites.push_back(idx);
        for (int A = 0; A < z.q(); ++A) {
          const int b = z.sigma[A][idx];
          if (bcomp[b] == -1) {
            bcomp[b] = c;
            work.emplace_back(false, b);
          }
        }
      } else {
        comps[c].blacks.push_back(idx);
        for (int A = 0; A < z.q(); ++A) {
          const int w = z.sigma_inv[A][idx];
          if (wcomp[w] == -1) {
            wcomp[w] = c;
            work.emplace_back(true, w);
          }
        }
      }
    }
    std::sort(comps[c].whites.begin(), comps[c].whites.end());
    std::sort(comps[c].blacks.begin(), comps[c].blacks.end());
  }
  return comps;
}

// Canonical encoding of one component: BFS labeling from each anchor white
// (deterministic because neighbors are visited in color order), minimized
// over anchors.
std::string canonical_component(const PsiGraph& z, const Component& comp) {
  const int q = z.q();
  const int k = static_cast<int>(comp.whites.size());
  std::vector<int> wlocal(z.n, -1), blocal(z.n, -1);
  for (int i = 0; i < k; ++i) wlocal[comp.whites[i]] = i;
  for (int i = 0; i < k; ++i) blocal[comp.blacks[i]] = i;

  std::string best;
  for (int anchor = 0; anchor < k; ++anchor) {
    std::vector<int> wlab(k, -1), blab(k, -1);
    int wn = 0, bn = 0;
    wlab[anchor] = wn++;
    std::deque<std::pair<bool, int>> work{{true, anchor}};
    while (!work.empty()) {
      auto [white, idx] = work.front();
      work.pop_front();
      for (int A = 0; A < q; ++A) {
        if (white) {
          const int b = blocal[z.sigma[A][comp.whites[idx]]];
          if (blab[b] == -1) {
            blab[b] = bn++;
            work.emplace_back(false, b);
          }
        } else {
          const int w = wlocal[z.sigma_inv[A][comp.blacks[idx]]];
          if (wlab[w] == -1) {
            wlab[w] = wn++;
            work.emplace_back(true, w);
          }
        }
      }
    }
    std::string enc = std::to_string(k) + ":";
    for (int A = 0; A < q; ++A) {
      std::vector<int> s(k);
      for (int w = 0; w < k; ++w)
        s[wlab[w]] = blab[blocal[z.sigma[A][comp.whites[w]]]];
      for (int x : s) enc += std::to_string(x) + ",";
      enc += ";";
    }
    if (best.empty() || enc < best) best = enc;
  }
  return best;
}

}  // namespace

std::string canonical_form(const PsiGraph& z) {
  std::string head = "n" + std::to_string(z.n) + "q" + std::to_string(z.q());
  for (const auto& c : z.colors) head += "|" + c;
  std::vector<std::string> parts;
  for (const auto& comp : components_of(z))
    parts.push_back(canonical_component(z, comp));
  std::sort(parts.begin(), parts.end());
  for (const auto& p : parts) head += "#" + p;
  return head;
}

bool isomorphic(const PsiGraph& a, const PsiGraph& b) {
  return canonical_form(a) == canonical_form(b);
}

std::vector<PsiGraph> enumerate_psigraphs(int n, int q, bool connected_only) {
  if (n < 1 || q < 1) throw InputError("n and q must be >= 1");
  if (n > 6 || q > 3)
    throw SizeCapError("enumeration capped at n <= 6, q <= 3");

  std::vector<std::string> colors;
  for (int A = 0; A < q; ++A) colors.push_back(cayley_color_name(A));

  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<PsiGraph> out;
  std::set<std::string> seen;
  std::vector<std::size_t> pick(q - 1 >= 0 ? q - 1 : 0, 0);
  const std::vector<int> identity = perms[0];
  bool done = false;
  while (!done) {
    std::vector<std::vector<int>> sigma{identity};
    for (std::size_t i = 0; i < pick.size(); ++i) sigma.push_back(perms[pick[i]]);
    PsiGraph z = from_sigma(n, colors, std::move(sigma));
    if (!connected_only || is_connected(z)) {
      if (seen.insert(canonical_form(z)).second) out.push_back(std::move(z));
    }
    // Odometer over the q-1 free permutations.
    done = true;
    for (std::size_t i = 0; i < pick.size(); ++i) {
      if (++pick[i] < perms.size()) {
        done = false;
        break;
      }
      pick[i] = 0;
    }
  }
  return out;
}

}  // namespace psigraph
