#include "doctest.h"
#include "fixtures.hpp"
#include "slimlat/builders.hpp"
#include "slimlat/diagram.hpp"
#include "slimlat/enumerate.hpp"

using namespace slimlat;

namespace {

PlanarDiagram s7_natural() {
  return PlanarDiagram::attach(fixtures::s7(),
                               {{1, 2}, {3, 4}, {4, 5}, {6}, {6}, {6}, {}});
}

}  // namespace

TEST_CASE("attach validates the square and reads off boundaries") {
  auto d = PlanarDiagram::attach(fixtures::b4(), {{1, 2}, {3}, {3}, {}});
  CHECK(d.left_boundary() == std::vector<int>{0, 1, 3});
  CHECK(d.right_boundary() == std::vector<int>{0, 2, 3});
}

TEST_CASE("attach accepts the natural seven-element drawing") {
  auto d = s7_natural();
  CHECK(d.left_boundary() == std::vector<int>{0, 1, 3, 6});
  CHECK(d.right_boundary() == std::vector<int>{0, 2, 5, 6});
}

TEST_CASE("attach rejects a crossing drawing") {
  // Drawing m left of l above zl forces the edge zl-l across zr-m.
  try {
    PlanarDiagram::attach(fixtures::s7(), {{1, 2}, {4, 3}, {4, 5}, {6}, {6}, {6}, {}});
    CHECK(false);
  } catch (const LatticeError& e) {
    CHECK(e.code == LatticeError::Code::CrossingDetected);
  }
}

TEST_CASE("attach rejects non slim semimodular input and bad orders") {
  try {
    PlanarDiagram::attach(fixtures::m3(), {{1, 2, 3}, {4}, {4}, {4}, {}});
    CHECK(false);
  } catch (const LatticeError& e) {
    CHECK(e.code == LatticeError::Code::NotSlimSemimodular);
  }
  try {
    PlanarDiagram::attach(fixtures::b4(), {{1, 1}, {3}, {3}, {}});
    CHECK(false);
  } catch (const LatticeError& e) {
    CHECK(e.code == LatticeError::Code::InconsistentOrder);
  }
}

TEST_CASE("infer finds the lexicographically first diagram") {
  auto c3 = PlanarDiagram::infer(fixtures::chain(3));
  CHECK(c3.left_boundary() == std::vector<int>{0, 1, 2});
  auto b4 = PlanarDiagram::infer(fixtures::b4());
  CHECK(b4.upper_order(0) == std::vector<int>{1, 2});
  auto s7 = PlanarDiagram::infer(fixtures::s7());
  auto irr = irreducibles(fixtures::s7());
  Bits bnd = s7.boundary_set();
  CHECK((irr.dirr & ~bnd) == 0);  // doubly irreducibles sit on the boundary
}

TEST_CASE("boundary chains of the grid") {
  auto g = grid(1, 2);
  CHECK(g.left_boundary() == std::vector<int>{0, 1, 3, 5});
  CHECK(g.right_boundary() == std::vector<int>{0, 2, 4, 5});
  auto c2 = PlanarDiagram::infer(fixtures::chain(2));
  CHECK(c2.left_boundary() == c2.right_boundary());
}

TEST_CASE("four cells of the fixtures") {
  auto b4 = PlanarDiagram::infer(fixtures::b4());
  REQUIRE(b4.four_cells().size() == 1);
  CHECK(b4.four_cells()[0] == FourCell{0, 1, 2, 3});

  auto s7 = s7_natural();
  REQUIRE(s7.four_cells().size() == 3);
  CHECK(s7.four_cells()[0] == FourCell{0, 1, 2, 4});
  CHECK(s7.four_cells()[1] == FourCell{1, 3, 4, 6});
  CHECK(s7.four_cells()[2] == FourCell{2, 4, 5, 6});

  CHECK(grid(1, 2).four_cells().size() == 2);
  CHECK(grid(2, 2).four_cells().size() == 4);
}

TEST_CASE("cell at edge resolves the staircase neighbours") {
  auto s7 = s7_natural();
  auto c = s7.cell_at_edge(1, 4, EdgeRole::UpperLeft);  // (zl, m)
  REQUIRE(c.has_value());
  CHECK(*c == FourCell{0, 1, 2, 4});
  CHECK_FALSE(s7.cell_at_edge(1, 3, EdgeRole::UpperRight).has_value());
  auto b4 = PlanarDiagram::infer(fixtures::b4());
  CHECK_FALSE(b4.cell_at_edge(0, 1, EdgeRole::UpperRight).has_value());
  CHECK_THROWS_AS(s7.cell_at_edge(0, 6, EdgeRole::UpperLeft), LatticeError);
}

TEST_CASE("cells tile the diagram interior") {
  Universe u = generate_universe(9, ClassFilter::SlimSemimodular);
  for (const auto& m : u.members) {
    const PlanarDiagram& d = *m.diagram;
    Bits boundary = d.boundary_set();
    for (auto [x, y] : m.lattice.cover_pairs()) {
      int incident = 0;
      for (const FourCell& c : d.four_cells()) {
        bool side = (c.bottom == x && (c.left == y || c.right == y)) ||
                    (c.top == y && (c.left == x || c.right == x));
        if (side) ++incident;
      }
      bool on_boundary = false;
      auto consecutive = [&](const std::vector<int>& chain) {
        for (size_t i = 0; i + 1 < chain.size(); ++i)
          if (chain[i] == x && chain[i + 1] == y) return true;
        return false;
      };
      on_boundary = consecutive(d.left_boundary()) || consecutive(d.right_boundary());
      (void)boundary;
      if (m.lattice.size() == 1) continue;
      CHECK(incident == (on_boundary ? (consecutive(d.left_boundary()) &&
                                                consecutive(d.right_boundary())
                                            ? 0
                                            : 1)
                                     : 2));
    }
  }
}

TEST_CASE("mirroring swaps the boundary chains") {
  auto s7 = s7_natural();
  auto m = s7.mirrored();
  CHECK(m.left_boundary() == s7.right_boundary());
  CHECK(m.right_boundary() == s7.left_boundary());
  // Re-validating an inferred diagram succeeds.
  auto again = PlanarDiagram::attach(s7.lattice(), s7.upper_order());
  CHECK(again.upper_order() == s7.upper_order());
}
