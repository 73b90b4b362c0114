#include "psigraph/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace psigraph {
namespace {

long long factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

struct FamilyData {
  long long order;
  long long roots;
};

FamilyData family_data(const std::string& family) {
  const char letter = family[0];
  const int n = std::stoi(family.substr(1));
  switch (letter) {
    case 'A':
      return {factorial(n + 1), 2LL * n * (n + 1) / 2};
    case 'B':
      return {(1LL << n) * factorial(n), 2LL * n * n};
    case 'D':
      return {(1LL << (n - 1)) * factorial(n), 2LL * n * (n - 1)};
    case 'I':
      return {2LL * n, 2LL * n};
    case 'H':
      return n == 3 ? FamilyData{120, 30} : FamilyData{14400, 120};
    case 'F':
      return {1152, 48};
    case 'E':
      if (n == 6) return {51840, 72};
      if (n == 7) return {2903040, 126};
      return {696729600, 240};
  }
  throw InputError("unknown family " + family);
}

// Classify one connected component of a Coxeter matrix, producing the
// canonical family name and node order, or throw InputError.
CDDiagram::Component classify_component(const std::vector<std::vector<int>>& m,
                                        std::vector<int> nodes) {
  std::sort(nodes.begin(), nodes.end());
  const int r = static_cast<int>(nodes.size());
  CDDiagram::Component comp;
  comp.nodes = nodes;

  if (r == 1) {
    comp.ordered = nodes;
    comp.family = "A1";
    return comp;
  }

  auto label = [&](int a, int b) { return m[a][b]; };
  auto adjacent = [&](int a, int b) { return m[a][b] >= 3; };

  std::map<int, std::vector<int>> adj;
  int edge_count = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (adjacent(nodes[i], nodes[j])) {
        adj[nodes[i]].push_back(nodes[j]);
        adj[nodes[j]].push_back(nodes[i]);
        ++edge_count;
      }
  if (edge_count != r - 1)
    throw InputError("diagram component with a cycle is not finite");

  std::vector<int> deg3;
  for (int v : nodes) {
    if (adj[v].size() >= 4)
      throw InputError("diagram node of degree >= 4 is not finite");
    if (adj[v].size() == 3) deg3.push_back(v);
  }
  if (deg3.size() >= 2)
    throw InputError("diagram with two branch nodes is not finite");

  if (deg3.empty()) {
    // Path-shaped component.
    std::vector<int> ends;
    for (int v : nodes)
      if (adj[v].size() == 1) ends.push_back(v);
    std::vector<int> path{std::min(ends[0], ends[1])};
    while (static_cast<int>(path.size()) < r) {
      for (int w : adj[path.back()])
        if (path.size() < 2 || w != path[path.size() - 2]) {
          path.push_back(w);
          break;
        }
    }
    std::vector<int> labels;
    for (int i = 0; i + 1 < r; ++i)
      labels.push_back(label(path[i], path[i + 1]));

    if (r == 2) {
      const int mm = labels[0];
      comp.ordered = path;
      comp.family = mm == 3 ? "A2" : (mm == 4 ? "B2" : "I" + std::to_string(mm));
      return comp;
    }

    const int big = static_cast<int>(
        std::count_if(labels.begin(), labels.end(), [](int x) { return x > 3; }));
    if (big == 0) {
      comp.ordered = path;
      comp.family = "A" + std::to_string(r);
      return comp;
    }
    if (big > 1) throw InputError("diagram with two labeled edges is not finite");
    const int pos =
        static_cast<int>(std::find_if(labels.begin(), labels.end(),
                                      [](int x) { return x > 3; }) -
                         labels.begin());
    const int value = labels[pos];
    if (value == 4) {
      if (pos == 0 || pos == r - 2) {
        // Canonical order puts the 4-edge at the end.
        if (pos == 0) std::reverse(path.begin(), path.end());
        comp.ordered = path;
        comp.family = "B" + std::to_string(r);
        return comp;
      }
      if (r == 4 && pos == 1) {
        comp.ordered = path;
        comp.family = "F4";
        return comp;
      }
      throw InputError("interior 4-labeled edge only occurs in F4");
    }
    if (value == 5 && (pos == 0 || pos == r - 2) && (r == 3 || r == 4)) {
      // Canonical order puts the 5-edge at the start.
      if (pos == r - 2) std::reverse(path.begin(), path.end());
      comp.ordered = path;
      comp.family = "H" + std::to_string(r);
      return comp;
    }
    throw InputError("labeled edge of order " + std::to_string(value) +
                     " at rank " + std::to_string(r) + " is not finite");
  }

  // Branch-shaped component: all edges must be unlabeled.
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (m[nodes[i]][nodes[j]] >= 4)
        throw InputError("branched diagram with a labeled edge is not finite");
  const int center = deg3[0];
  std::vector<std::vector<int>> arms;
  for (int start : adj[center]) {
    std::vector<int> arm{start};
    int prev = center;
    while (adj[arm.back()].size() == 2) {
      for (int w : adj[arm.back()])
        if (w != prev) {
          prev = arm.back();
          arm.push_back(w);
          break;
        }
    }
    arms.push_back(arm);
  }
  std::sort(arms.begin(), arms.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a[0] < b[0];
  });
  const std::vector<std::size_t> lens{arms[0].size(), arms[1].size(),
                                      arms[2].size()};
  if (lens[0] == 1 && lens[1] == 1) {
    // D_n: longest arm leading into the center, then the two fork tips.
    comp.ordered = arms[2];
    std::reverse(comp.ordered.begin(), comp.ordered.end());
    comp.ordered.push_back(center);
    comp.ordered.push_back(std::min(arms[0][0], arms[1][0]));
    comp.ordered.push_back(std::max(arms[0][0], arms[1][0]));
    comp.family = "D" + std::to_string(r);
    return comp;
  }
  if (lens[0] == 1 && lens[1] == 2 && lens[2] >= 2 && lens[2] <= 4) {
    comp.ordered = arms[2];
    std::reverse(comp.ordered.begin(), comp.ordered.end());
    comp.ordered.push_back(center);
    comp.ordered.insert(comp.ordered.end(), arms[1].begin(), arms[1].end());
    comp.ordered.push_back(arms[0][0]);
    comp.family = "E" + std::to_string(r);
    return comp;
  }
  throw InputError("branched diagram with arm lengths (" +
                   std::to_string(lens[0]) + "," + std::to_string(lens[1]) +
                   "," + std::to_string(lens[2]) + ") is not finite");
}

CDDiagram finish(std::vector<std::vector<int>> m) {
  const int rank = static_cast<int>(m.size());
  for (int i = 0; i < rank; ++i) {
    if (static_cast<int>(m[i].size()) != rank)
      throw InputError("Coxeter matrix is not square");
    if (m[i][i] != 1) throw InputError("Coxeter matrix diagonal must be 1");
    for (int j = 0; j < rank; ++j) {
      if (i != j && m[i][j] < 2)
        throw InputError("off-diagonal Coxeter matrix entries must be >= 2");
      if (m[i][j] != m[j][i]) throw InputError("Coxeter matrix not symmetric");
    }
  }

  CDDiagram d;
  d.rank = rank;
  d.m = std::move(m);

  std::vector<int> comp_of(rank, -1);
  int n_comp = 0;
  for (int i = 0; i < rank; ++i) {
    if (comp_of[i] != -1) continue;
    std::vector<int> stack{i};
    comp_of[i] = n_comp;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < rank; ++w)
        if (w != v && d.m[v][w] >= 3 && comp_of[w] == -1) {
          comp_of[w] = n_comp;
          stack.push_back(w);
        }
    }
    ++n_comp;
  }
  for (int c = 0; c < n_comp; ++c) {
    std::vector<int> nodes;
    for (int i = 0; i < rank; ++i)
      if (comp_of[i] == c) nodes.push_back(i);
    d.components.push_back(classify_component(d.m, nodes));
  }
  std::sort(d.components.begin(), d.components.end(),
            [](const auto& a, const auto& b) { return a.nodes[0] < b.nodes[0]; });
  return d;
}

}  // namespace

std::string CDDiagram::spec_string() const {
  std::vector<std::string> names;
  for (const auto& c : components) names.push_back(c.family);
  std::sort(names.begin(), names.end());
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += "+";
    out += names[i];
  }
  return out;
}

CDDiagram parse_diagram(const std::string& text) {
  std::vector<std::pair<char, int>> tokens;
  std::string token;
  std::stringstream ss(text);
  bool any = false;
  while (std::getline(ss, token, '+')) {
    any = true;
    std::string t;
    for (char c : token)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.size() < 2 || !std::isalpha(static_cast<unsigned char>(t[0])))
      throw InputError("bad diagram token '" + token + "'");
    for (std::size_t i = 1; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        throw InputError("bad diagram token '" + token + "'");
    const char letter = static_cast<char>(std::toupper(t[0]));
    const int n = std::stoi(t.substr(1));
    const bool ok = (letter == 'A' && n >= 1) || (letter == 'B' && n >= 2) ||
                    (letter == 'D' && n >= 4) || (letter == 'I' && n >= 2) ||
                    (letter == 'H' && (n == 3 || n == 4)) ||
                    (letter == 'F' && n == 4) ||
                    (letter == 'E' && n >= 6 && n <= 8);
    if (!ok)
      throw InputError("diagram token '" + t +
                       "' is not a finite family (write D2/D3 as A1+A1/A3)");
    tokens.emplace_back(letter, n);
  }
  if (!any || (ss.eof() && !text.empty() && text.back() == '+'))
    throw InputError("empty diagram token");

  int rank = 0;
  for (auto& [letter, n] : tokens) rank += (letter == 'I') ? 2 : n;
  std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 2));
  for (int i = 0; i < rank; ++i) m[i][i] = 1;

  auto set_edge = [&](int a, int b, int v) { m[a][b] = m[b][a] = v; };
  int base = 0;
  for (auto& [letter, n] : tokens) {
    const int r = (letter == 'I') ? 2 : n;
    auto path = [&](int upto) {
      for (int i = 0; i + 1 < upto; ++i) set_edge(base + i, base + i + 1, 3);
    };
    switch (letter) {
      case 'A':
        path(n);
        break;
      case 'B':
        path(n - 1);
        set_edge(base + n - 2, base + n - 1, 4);
        break;
      case 'D':
        path(n - 2);
        set_edge(base + n - 3, base + n - 2, 3);
        set_edge(base + n - 3, base + n - 1, 3);
        break;
      case 'I':
        set_edge(base, base + 1, n);
        break;
      case 'H':
        set_edge(base, base + 1, 5);
        for (int i = 1; i + 1 < n; ++i) set_edge(base + i, base + i + 1, 3);
        break;
      case 'F':
        set_edge(base, base + 1, 3);
        set_edge(base + 1, base + 2, 4);
        set_edge(base + 2, base + 3, 3);
        break;
      case 'E':
        // Chain of n-1 nodes with the last node attached third from the end.
        path(n - 1);
        set_edge(base + n - 4, base + n - 1, 3);
        break;
    }
    base += r;
  }
  return finish(std::move(m));
}

CDDiagram diagram_from_matrix(const std::vector<std::vector<int>>& m) {
  return finish(m);
}

bool diagram_isomorphic(const CDDiagram& a, const CDDiagram& b) {
  return a.spec_string() == b.spec_string();
}

long long group_order(const CDDiagram& d) {
  long long r = 1;
  for (const auto& c : d.components) r *= family_data(c.family).order;
  return r;
}

long long root_count(const CDDiagram& d) {
  long long r = 0;
  for (const auto& c : d.components) r += family_data(c.family).roots;
  return r;
}

}  // namespace psigraph
