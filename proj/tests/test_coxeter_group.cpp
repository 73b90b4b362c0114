#include "psigraph/coxeter_group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"

using namespace psigraph;

namespace {

// Independent oracle: a permutation model closed by BFS.  Elements are the
// value tuples of signed permutations (entry i = image of i+1, sign carried);
// generators act by relabeling values, i.e. left multiplication.
using State = std::vector<int>;
using GenFn = std::function<int(int)>;

int apply_state(const State& u, int x) {
  return x > 0 ? u[x - 1] : -u[-x - 1];
}

struct ModelResult {
  long long order;
  long long reflections;
};

ModelResult close_model(int n, const std::vector<GenFn>& gens) {
  State identity(n);
  for (int i = 0; i < n; ++i) identity[i] = i + 1;
  std::map<State, int> ids;
  std::vector<State> elems{identity};
  ids[identity] = 0;
  std::deque<int> work{0};
  std::vector<std::vector<int>> action(gens.size());
  while (!work.empty()) {
    const int v = work.front();
    work.pop_front();
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      State next(n);
      for (int i = 0; i < n; ++i) next[i] = gens[gi](elems[v][i]);
      auto [it, inserted] = ids.emplace(next, elems.size());
      if (inserted) {
        elems.push_back(next);
        work.push_back(it->second);
      }
      action[gi].resize(elems.size() + 8, -1);
      action[gi][v] = it->second;
    }
  }
  // Reflections: conjugation closure of the generators.
  auto compose = [&](const State& u, const State& v) {
    State r(n);
    for (int i = 0; i < n; ++i) r[i] = apply_state(u, v[i]);
    return r;
  };
  std::set<int> refl;
  std::deque<int> rwork;
  std::vector<State> gen_states;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    State s(n);
    for (int i = 0; i < n; ++i) s[i] = gens[gi](i + 1);
    gen_states.push_back(s);
    const int id = ids.at(s);
    if (refl.insert(id).second) rwork.push_back(id);
  }
  while (!rwork.empty()) {
    const int r = rwork.front();
    rwork.pop_front();
    for (const State& s : gen_states) {
      const State c = compose(s, compose(elems[r], s));
      const int id = ids.at(c);
      if (refl.insert(id).second) rwork.push_back(id);
    }
  }
  return {static_cast<long long>(elems.size()),
          static_cast<long long>(refl.size())};
}

GenFn swap_fn(int a, int b) {  // transposition of 1-based values a,b
  return [a, b](int x) {
    if (x == a) return b;
    if (x == b) return a;
    if (x == -a) return -b;
    if (x == -b) return -a;
    return x;
  };
}

GenFn flip_fn(int a) {  // sign flip of value a
  return [a](int x) { return (x == a || x == -a) ? -x : x; };
}

GenFn negswap_fn(int a, int b) {  // a -> -b, b -> -a
  return [a, b](int x) {
    if (x == a) return -b;
    if (x == b) return -a;
    if (x == -a) return b;
    if (x == -b) return a;
    return x;
  };
}

}  // namespace

TEST_CASE("root systems have the classical sizes and symmetry") {
  for (const char* name : {"A2", "A3", "B2", "B3", "D4", "I5", "H3"}) {
    CAPTURE(name);
    const CDDiagram d = parse_diagram(name);
    const RootSystem rs = root_system(d);
    CHECK(static_cast<long long>(rs.roots.size()) == root_count(d));
    for (std::size_t r = 0; r < rs.roots.size(); ++r) {
      CHECK(rs.roots[r].norm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(rs.negation[rs.negation[r]] == static_cast<int>(r));
    }
    for (int i = 0; i < d.rank; ++i) {
      // Simple reflections are involutions on root indices.
      const auto& p = rs.simple_reflection[i];
      for (std::size_t r = 0; r < p.size(); ++r)
        CHECK(p[p[r]] == static_cast<int>(r));
    }
  }
}

TEST_CASE("group enumeration matches closed-form orders and reflections") {
  struct Row {
    const char* name;
    long long order;
    long long refl;
    int longest;
  };
  for (const Row& row : {Row{"A2", 6, 3, 3}, Row{"A3", 24, 6, 6},
                         Row{"A4", 120, 10, 10}, Row{"B2", 8, 4, 4},
                         Row{"B3", 48, 9, 9}, Row{"D4", 192, 12, 12},
                         Row{"I5", 10, 5, 5}, Row{"I6", 12, 6, 6},
                         Row{"A1+A1+A1", 8, 3, 3}}) {
    CAPTURE(row.name);
    const CoxeterGroup g = enumerate_group(parse_diagram(row.name));
    CHECK(g.order == row.order);
    CHECK(static_cast<long long>(g.reflections.size()) == row.refl);
    CHECK(*std::max_element(g.length.begin(), g.length.end()) == row.longest);
    long long even = 0;
    for (long long v = 0; v < g.order; ++v)
      if (g.parity[v] == 0) ++even;
    CHECK(even * 2 == g.order);
  }
}

TEST_CASE("independent permutation models agree (order and reflections)") {
  // A_n as S_{n+1} with adjacent transpositions.
  for (int n : {2, 3, 4}) {
    std::vector<GenFn> gens;
    for (int i = 1; i <= n; ++i) gens.push_back(swap_fn(i, i + 1));
    const ModelResult mr = close_model(n + 1, gens);
    const CoxeterGroup g = enumerate_group(parse_diagram("A" + std::to_string(n)));
    CHECK(mr.order == g.order);
    CHECK(mr.reflections == static_cast<long long>(g.reflections.size()));
  }
  // B_n as signed permutations: adjacent swaps + last-coordinate flip.
  for (int n : {2, 3, 4}) {
    std::vector<GenFn> gens;
    for (int i = 1; i < n; ++i) gens.push_back(swap_fn(i, i + 1));
    gens.push_back(flip_fn(n));
    const ModelResult mr = close_model(n, gens);
    const CoxeterGroup g = enumerate_group(parse_diagram("B" + std::to_string(n)));
    CHECK(mr.order == g.order);
    CHECK(mr.reflections == static_cast<long long>(g.reflections.size()));
  }
  // D4 as even-signed permutations.
  {
    const std::vector<GenFn> gens{swap_fn(1, 2), swap_fn(2, 3), swap_fn(3, 4),
                                  negswap_fn(3, 4)};
    const ModelResult mr = close_model(4, gens);
    const CoxeterGroup g = enumerate_group(parse_diagram("D4"));
    CHECK(mr.order == g.order);
    CHECK(mr.reflections == static_cast<long long>(g.reflections.size()));
  }
}

TEST_CASE("generator pair products have order m_AB") {
  for (const char* name : {"A3", "B3", "I6", "D4", "A1+A1"}) {
    CAPTURE(name);
    const CoxeterGroup g = enumerate_group(parse_diagram(name));
    for (int a = 0; a < g.rank; ++a)
      for (int b = 0; b < g.rank; ++b) {
        if (a == b) continue;
        int v = 0;
        int ord = 0;
        do {
          v = g.gen_action[a][g.gen_action[b][v]];
          ++ord;
        } while (v != 0);
        CHECK(ord == g.diagram.m[a][b]);
      }
  }
}

TEST_CASE("reflections act as hyperplane reflections on roots") {
  const CoxeterGroup g = enumerate_group(parse_diagram("B3"));
  const int nr = static_cast<int>(g.roots.roots.size());
  auto negated_pairs = [&](int v) {
    int c = 0;
    for (int r = 0; r < nr; ++r)
      if (g.perm[v][r] == g.roots.negation[r]) ++c;
    return c;
  };
  for (int r : g.reflections) {
    CHECK(g.is_involution(r));
    CHECK(g.parity[r] == 1);
    CHECK(negated_pairs(r) == 2);  // exactly one +/- root pair
  }
  // The longest element of B3 is an involution that negates all 18 roots,
  // so it is not a reflection and the geometric test separates it.
  int longest = 0;
  for (long long v = 0; v < g.order; ++v)
    if (g.length[v] > g.length[longest]) longest = static_cast<int>(v);
  CHECK(g.is_involution(longest));
  CHECK(negated_pairs(longest) == 18);
  CHECK(!g.is_reflection(longest));
}

TEST_CASE("word/multiply/inverse are consistent") {
  const CoxeterGroup g = enumerate_group(parse_diagram("B3"));
  for (int v : {0, 1, 5, 17, 40, 47}) {
    CHECK(g.act_word(g.word(v), 0) == v);
    CHECK(g.multiply(v, g.inverse(v)) == 0);
    CHECK(g.multiply(g.inverse(v), v) == 0);
  }
  // Associativity spot check: (ab)c == a(bc).
  const int a = 7, b = 23, c = 41;
  CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
}

TEST_CASE("parabolic subgroup embeddings") {
  const CoxeterGroup a3 = enumerate_group(parse_diagram("A3"));
  const SubgroupEmbedding e1 = subgroup_embedding(a3, {0, 1});
  CHECK(e1.subgroup.diagram.spec_string() == "A2");
  CHECK(e1.index == 4);

  const CoxeterGroup b3 = enumerate_group(parse_diagram("B3"));
  // Dropping the node at the 4-edge leaves A2 with index 8 (cube),
  // dropping the far end leaves B2 with index 6 (octahedron).
  const SubgroupEmbedding cube = subgroup_embedding(b3, {0, 1});
  CHECK(cube.subgroup.diagram.spec_string() == "A2");
  CHECK(cube.index == 8);
  const SubgroupEmbedding octa = subgroup_embedding(b3, {1, 2});
  CHECK(octa.subgroup.diagram.spec_string() == "B2");
  CHECK(octa.index == 6);

  const CoxeterGroup sq = enumerate_group(parse_diagram("A1+A1"));
  CHECK(subgroup_embedding(sq, {0}).index == 2);

  const CoxeterGroup d4 = enumerate_group(parse_diagram("D4"));
  const SubgroupEmbedding demi = subgroup_embedding(d4, {0, 1, 2});
  CHECK(demi.subgroup.diagram.spec_string() == "A3");
  CHECK(demi.index == 8);

  // The embedding is a homomorphism and preserves length (parabolic).
  for (int h1 : {0, 1, 3, 5}) {
    CHECK(octa.subgroup.length[h1] ==
          b3.length[octa.embed[h1]]);
    for (int h2 : {0, 2, 4}) {
      const int lhs = octa.embed[octa.subgroup.multiply(h1, h2)];
      const int rhs = b3.multiply(octa.embed[h1], octa.embed[h2]);
      CHECK(lhs == rhs);
    }
  }
  // Cosets are exactly the subgroup-orbit partition.
  for (long long v = 0; v < b3.order; ++v)
    for (int ndx : {1, 2})
      CHECK(octa.coset_of[b3.gen_action[ndx][v]] == octa.coset_of[v]);
  std::vector<int> sizes(octa.index, 0);
  for (long long v = 0; v < b3.order; ++v) ++sizes[octa.coset_of[v]];
  for (int s : sizes) CHECK(s == octa.subgroup.order);
  CHECK_THROWS_AS(subgroup_embedding(b3, {0, 7}), InputError);
}

TEST_CASE("enumeration cap raises a distinct error") {
  CHECK_THROWS_AS(enumerate_group(parse_diagram("E8")), SizeCapError);
  CHECK_THROWS_AS(enumerate_group(parse_diagram("A4"), 100), SizeCapError);
}
