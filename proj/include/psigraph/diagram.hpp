#pragma once

#include <string>
#include <vector>

#include "psigraph/errors.hpp"

namespace psigraph {

// A finite Coxeter diagram: nodes = generators, off-diagonal matrix entry
// m[i][j] is the order of s_i s_j (2 = no edge, 3 = plain edge, n >= 4 =
// labeled edge).  Only diagrams whose every connected component belongs to the
// finite families A_n (n>=1), B_n (n>=2), D_n (n>=4), I_2(m) (m>=2), H3, H4,
// F4, E6, E7, E8 are representable; construction validates this.
struct CDDiagram {
  struct Component {
    std::vector<int> nodes;    // ascending node ids
    std::vector<int> ordered;  // nodes in family-canonical order (see .cpp)
    std::string family;        // canonical name, e.g. "A3", "B2", "I5", "D4"
  };

  int rank = 0;
  std::vector<std::vector<int>> m;    // rank x rank Coxeter matrix
  std::vector<Component> components;  // ordered by smallest node id

  // Canonical text form: component family names sorted, joined with '+'.
  std::string spec_string() const;
};

// Parse a '+'-separated token string such as "A3+B2+I5".
// Throws InputError on bad grammar or out-of-range families.
CDDiagram parse_diagram(const std::string& text);

// Validate an arbitrary Coxeter matrix against the finite families.
// Throws InputError when some component is not one of them.
CDDiagram diagram_from_matrix(const std::vector<std::vector<int>>& m);

// Diagrams are isomorphic iff their component family multisets agree.
bool diagram_isomorphic(const CDDiagram& a, const CDDiagram& b);

// Group order / root count from the classical closed forms, componentwise.
long long group_order(const CDDiagram& d);
long long root_count(const CDDiagram& d);

}  // namespace psigraph
