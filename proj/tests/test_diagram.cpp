#include "psigraph/diagram.hpp"

#include <map>

#include "doctest.h"

using namespace psigraph;

// Orders and root counts below are the classical closed forms
// ((n+1)!, 2^n n!, 2^(n-1) n!, 2m, and the fixed exceptional values),
// frozen here independently of the construction code.

TEST_CASE("single families parse with correct rank, order and roots") {
  struct Row {
    const char* text;
    int rank;
    long long order;
    long long roots;
  };
  const Row rows[] = {
      {"A1", 1, 2, 2},           {"A2", 2, 6, 6},
      {"A3", 3, 24, 12},         {"A4", 4, 120, 20},
      {"B2", 2, 8, 8},           {"B3", 3, 48, 18},
      {"B4", 4, 384, 32},        {"D4", 4, 192, 24},
      {"D5", 5, 1920, 40},       {"I3", 2, 6, 6},
      {"I4", 2, 8, 8},           {"I5", 2, 10, 10},
      {"I6", 2, 12, 12},         {"I7", 2, 14, 14},
      {"H3", 3, 120, 30},        {"H4", 4, 14400, 120},
      {"F4", 4, 1152, 48},       {"E6", 6, 51840, 72},
      {"E7", 7, 2903040, 126},   {"E8", 8, 696729600, 240},
  };
  for (const auto& r : rows) {
    CAPTURE(r.text);
    const CDDiagram d = parse_diagram(r.text);
    CHECK(d.rank == r.rank);
    CHECK(d.components.size() == 1);
    CHECK(group_order(d) == r.order);
    CHECK(root_count(d) == r.roots);
  }
}

TEST_CASE("sums of components multiply orders and add roots") {
  const CDDiagram d = parse_diagram("A3+B2+I5");
  CHECK(d.rank == 7);
  CHECK(d.components.size() == 3);
  CHECK(group_order(d) == 24 * 8 * 10);
  CHECK(root_count(d) == 12 + 8 + 10);
  CHECK(d.spec_string() == "A3+B2+I5");

  const CDDiagram cube = parse_diagram("A1+A1+A1");
  CHECK(cube.rank == 3);
  CHECK(group_order(cube) == 8);
  CHECK(parse_diagram("H3+I5").spec_string() == "H3+I5");
}

TEST_CASE("I2 parses to two rank-1 components") {
  const CDDiagram d = parse_diagram("I2");
  CHECK(d.rank == 2);
  CHECK(d.components.size() == 2);
  CHECK(d.spec_string() == "A1+A1");
  CHECK(diagram_isomorphic(d, parse_diagram("A1+A1")));
}

TEST_CASE("rank-2 aliases are isomorphic") {
  CHECK(diagram_isomorphic(parse_diagram("I3"), parse_diagram("A2")));
  CHECK(diagram_isomorphic(parse_diagram("I4"), parse_diagram("B2")));
  CHECK(!diagram_isomorphic(parse_diagram("I5"), parse_diagram("A2")));
  CHECK(diagram_isomorphic(parse_diagram("A3+B2"), parse_diagram("B2+A3")));
}

TEST_CASE("bad tokens are rejected") {
  for (const char* bad :
       {"", "A", "3A", "A0", "B1", "B0", "D2", "D3", "D1", "I1", "I0", "H2",
        "H5", "F3", "F5", "E5", "E9", "Z3", "A3+", "+A3", "A3++B2", "A-3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_diagram(bad), InputError);
  }
}

TEST_CASE("diagram_from_matrix classifies valid matrices") {
  auto M = [](std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::vector<int>> m;
    for (auto& r : rows) m.emplace_back(r);
    return m;
  };

  CHECK(diagram_from_matrix(M({{1, 3, 2}, {3, 1, 3}, {2, 3, 1}})).spec_string() ==
        "A3");
  CHECK(diagram_from_matrix(M({{1, 3, 2}, {3, 1, 4}, {2, 4, 1}})).spec_string() ==
        "B3");
  CHECK(diagram_from_matrix(M({{1, 5, 2}, {5, 1, 3}, {2, 3, 1}})).spec_string() ==
        "H3");
  CHECK(diagram_from_matrix(
            M({{1, 3, 2, 2}, {3, 1, 4, 2}, {2, 4, 1, 3}, {2, 2, 3, 1}}))
            .spec_string() == "F4");
  CHECK(diagram_from_matrix(
            M({{1, 3, 2, 2}, {3, 1, 3, 3}, {2, 3, 1, 2}, {2, 3, 2, 1}}))
            .spec_string() == "D4");
  CHECK(diagram_from_matrix(M({{1, 2}, {2, 1}})).spec_string() == "A1+A1");
  CHECK(diagram_from_matrix(M({{1, 7}, {7, 1}})).spec_string() == "I7");
}

TEST_CASE("diagram_from_matrix rejects non-finite or malformed matrices") {
  auto M = [](std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::vector<int>> m;
    for (auto& r : rows) m.emplace_back(r);
    return m;
  };
  // 6-label at rank 3.
  CHECK_THROWS_AS(diagram_from_matrix(M({{1, 6, 2}, {6, 1, 3}, {2, 3, 1}})),
                  InputError);
  // Cycle (affine A2-tilde).
  CHECK_THROWS_AS(diagram_from_matrix(M({{1, 3, 3}, {3, 1, 3}, {3, 3, 1}})),
                  InputError);
  // Two labeled edges (affine C-tilde).
  CHECK_THROWS_AS(
      diagram_from_matrix(M({{1, 4, 2}, {4, 1, 4}, {2, 4, 1}})),
      InputError);
  // Degree-4 node.
  CHECK_THROWS_AS(diagram_from_matrix(M({{1, 3, 3, 3, 3},
                                         {3, 1, 2, 2, 2},
                                         {3, 2, 1, 2, 2},
                                         {3, 2, 2, 1, 2},
                                         {3, 2, 2, 2, 1}})),
                  InputError);
  // Branch with a labeled edge.
  CHECK_THROWS_AS(diagram_from_matrix(M({{1, 3, 2, 2},
                                         {3, 1, 3, 4},
                                         {2, 3, 1, 2},
                                         {2, 4, 2, 1}})),
                  InputError);
  // Malformed: asymmetric, bad diagonal, off-diagonal 1.
  CHECK_THROWS_AS(diagram_from_matrix(M({{1, 3}, {4, 1}})), InputError);
  CHECK_THROWS_AS(diagram_from_matrix(M({{2, 3}, {3, 1}})), InputError);
  CHECK_THROWS_AS(diagram_from_matrix(M({{1, 1}, {1, 1}})), InputError);
}

TEST_CASE("canonical component order places special edges deterministically") {
  const CDDiagram b4 = parse_diagram("B4");
  const auto& c = b4.components[0];
  // The 4-labeled edge sits between the last two ordered nodes.
  CHECK(b4.m[c.ordered[2]][c.ordered[3]] == 4);
  const CDDiagram h4 = parse_diagram("H4");
  CHECK(h4.m[h4.components[0].ordered[0]][h4.components[0].ordered[1]] == 5);
  const CDDiagram d5 = parse_diagram("D5");
  const auto& dc = d5.components[0];
  // Fork tips are the two last ordered nodes, both attached to the center.
  CHECK(d5.m[dc.ordered[2]][dc.ordered[3]] == 3);
  CHECK(d5.m[dc.ordered[2]][dc.ordered[4]] == 3);
  CHECK(d5.m[dc.ordered[3]][dc.ordered[4]] == 2);
}
