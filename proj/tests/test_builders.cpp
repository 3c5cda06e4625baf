#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "slimlat/builders.hpp"
#include "slimlat/classify.hpp"
#include "slimlat/enumerate.hpp"

using namespace slimlat;

namespace {

// The eleven-element fork of the seven-element fixture at its upper-left
// cell, derived by hand from the trajectory rule: the left trajectory
// subdivides zl<l, the right one subdivides zl<m and then 0<zr.
FiniteLattice fork_of_s7_by_hand() {
  // 0, zl=1, b2=2, a1=3, b1=4, zr=5, l=6, m'=7, m=8, r=9, 1=10
  return FiniteLattice::build(11, {{0, 1},
                                   {0, 2},
                                   {1, 3},
                                   {1, 4},
                                   {2, 4},
                                   {2, 5},
                                   {3, 6},
                                   {3, 7},
                                   {4, 7},
                                   {4, 8},
                                   {5, 8},
                                   {5, 9},
                                   {6, 10},
                                   {7, 10},
                                   {8, 10},
                                   {9, 10}});
}

PlanarDiagram s7_natural() {
  return PlanarDiagram::attach(fixtures::s7(),
                               {{1, 2}, {3, 4}, {4, 5}, {6}, {6}, {6}, {}});
}

}  // namespace

TEST_CASE("grids come out with the natural indexing") {
  auto g11 = grid(1, 1);
  CHECK(g11.lattice().cover_pairs() == fixtures::b4().cover_pairs());
  auto g12 = grid(1, 2);
  CHECK(g12.lattice().cover_pairs() == fixtures::g23().cover_pairs());
  CHECK(g12.lattice().length() == 3);
  auto g22 = grid(2, 2);
  CHECK(g22.lattice().size() == 9);
  CHECK(g22.four_cells().size() == 4);
  CHECK(is_slim_semimodular(g22.lattice()));
}

TEST_CASE("forking the square yields the seven-element patch lattice") {
  auto b4 = PlanarDiagram::infer(fixtures::b4());
  auto [next, rec] = add_fork(b4, b4.four_cells().front());
  CHECK(next.lattice().size() == 7);
  CHECK(rec.left_new.size() == 1);
  CHECK(rec.right_new.size() == 1);
  CHECK(canonical_form(next.lattice()) == canonical_form(fixtures::s7()));
  // The source persists as a {0,1}-sublattice.
  const FiniteLattice& K = next.lattice();
  const FiniteLattice& L = b4.lattice();
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      CHECK(rec.old_to_new[L.meet(x, y)] ==
            K.meet(rec.old_to_new[x], rec.old_to_new[y]));
      CHECK(rec.old_to_new[L.join(x, y)] ==
            K.join(rec.old_to_new[x], rec.old_to_new[y]));
    }
}

TEST_CASE("forking the patch lattice follows both trajectories") {
  auto s7 = s7_natural();
  // Upper-left cell (zl; l, m; 1).
  auto [next, rec] = add_fork(s7, FourCell{1, 3, 4, 6});
  CHECK(next.lattice().size() == 11);
  CHECK(rec.left_edges == std::vector<std::pair<int, int>>{{1, 3}});
  CHECK(rec.right_edges == std::vector<std::pair<int, int>>{{1, 4}, {0, 2}});
  CHECK(canonical_form(next.lattice()) == canonical_form(fork_of_s7_by_hand()));
  CHECK(next.lattice().length() == 4);
}

TEST_CASE("forking the grid grows by the trajectory lengths") {
  auto g = grid(1, 2);
  auto cells = g.four_cells();
  REQUIRE(cells.size() == 2);
  auto [bottom_fork, rec1] = add_fork(g, cells[0]);
  CHECK(bottom_fork.lattice().size() == 9);
  auto [top_fork, rec2] = add_fork(g, cells[1]);
  CHECK(top_fork.lattice().size() == 10);
  CHECK(is_slim_semimodular(bottom_fork.lattice()));
  CHECK(is_slim_semimodular(top_fork.lattice()));
}

TEST_CASE("add_fork rejects a non-cell") {
  auto s7 = s7_natural();
  CHECK_THROWS_AS(add_fork(s7, FourCell{0, 1, 2, 6}), LatticeError);
}

TEST_CASE("removing a fork undoes adding one") {
  auto s7 = s7_natural();
  auto res = remove_fork_once(s7);
  REQUIRE(res.has_value());
  CHECK(canonical_form(res->reduced.lattice()) == canonical_form(fixtures::b4()));
  CHECK_FALSE(remove_fork_once(grid(1, 2)).has_value());
  auto forked = add_fork(grid(1, 2), grid(1, 2).four_cells()[1]).first;
  auto back = remove_fork_once(forked);
  REQUIRE(back.has_value());
  CHECK(canonical_form(back->reduced.lattice()) ==
        canonical_form(fixtures::g23()));
}

TEST_CASE("fork round trips over random rectangular members") {
  Universe rects = generate_universe(12, ClassFilter::Rectangular);
  std::mt19937_64 rng(11);
  int rounds = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& m = rects.members[rng() % rects.members.size()];
    const auto& cells = m.diagram->four_cells();
    const FourCell& cell = cells[rng() % cells.size()];
    auto [next, rec] = add_fork(*m.diagram, cell);
    auto back = remove_fork_once(next);
    REQUIRE(back.has_value());
    // The contraction candidate search may pick a different fork, but
    // the reduced lattice of the replayed certificate matches some fork
    // removal; round-trip equality holds up to isomorphism.
    auto redo = add_fork(back->reduced, back->cell);
    CHECK(canonical_form(redo.first.lattice()) == canonical_form(next.lattice()));
    ++rounds;
  }
  CHECK(rounds == 200);
}

TEST_CASE("corner removal on the fixtures") {
  auto b4 = PlanarDiagram::infer(fixtures::b4());
  CHECK(canonical_form(remove_corner(b4, 1).lattice()) ==
        canonical_form(fixtures::chain(3)));
  auto s7 = s7_natural();
  // l is doubly irreducible but not a corner: the top covers three
  // elements, so the removal precondition fails...
  try {
    remove_corner(s7, 3);
    CHECK(false);
  } catch (const LatticeError& e) {
    CHECK(e.code == LatticeError::Code::NotACorner);
  }
  // ...even though the induced sublattice without l happens to stay in
  // the class (it is the grid): patch lattices are corner-free, not
  // sublattice-rigid.
  FiniteLattice no_l = FiniteLattice::build(
      6, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}, {4, 5}});
  CHECK(is_slim_semimodular(no_l));
  CHECK(canonical_form(no_l) == canonical_form(fixtures::g23()));
  try {
    remove_corner(s7, 4);
    CHECK(false);
  } catch (const LatticeError& e) {
    CHECK(e.code == LatticeError::Code::NotACorner);
  }
}

TEST_CASE("corner addition on the fixtures") {
  auto c3 = PlanarDiagram::infer(fixtures::chain(3));
  auto added = add_corner(c3, Side::Left, 1);
  REQUIRE(added.has_value());
  CHECK(canonical_form(added->extended.lattice()) == canonical_form(fixtures::b4()));

  // Adding beside (1,1) of the grid realizes the insertion below the top.
  auto g = grid(1, 2);
  auto w = add_corner(g, Side::Left, 3);
  REQUIRE(w.has_value());
  const FiniteLattice& K = w->extended.lattice();
  CHECK(K.size() == 7);
  CHECK(is_slim_semimodular(K));
  int d = w->new_element;
  CHECK(K.lower_covers(d) == std::vector<int>{w->old_to_new[1]});
  CHECK(K.upper_covers(d) == std::vector<int>{K.top()});

  auto b4 = PlanarDiagram::infer(fixtures::b4());
  CHECK_FALSE(add_corner(b4, Side::Left, 1).has_value());
  CHECK_THROWS_AS(add_corner(b4, Side::Left, 0), LatticeError);
}

TEST_CASE("corner removal and addition invert each other") {
  Universe u = generate_universe(9, ClassFilter::SlimSemimodular);
  for (const auto& m : u.members) {
    auto irr = irreducibles(m.lattice);
    for (int x : bits_to_vector(irr.dirr)) {
      const FiniteLattice& L = m.lattice;
      if (L.lower_covers(L.upper_covers(x)[0]).size() != 2) continue;
      if (L.upper_covers(L.lower_covers(x)[0]).size() != 2) continue;
      PlanarDiagram smaller = remove_corner(*m.diagram, x);
      CHECK(smaller.lattice().length() == L.length());
      // Some corner addition leads back.
      bool recovered = false;
      for (Side side : {Side::Left, Side::Right}) {
        const auto& chain = side == Side::Left ? smaller.left_boundary()
                                               : smaller.right_boundary();
        for (size_t i = 1; i + 1 < chain.size() && !recovered; ++i) {
          auto back = add_corner(smaller, side, chain[i]);
          if (back && canonical_form(back->extended.lattice()) == m.cf)
            recovered = true;
        }
      }
      CHECK(recovered);
    }
  }
}

TEST_CASE("proper extension witnesses") {
  CHECK_FALSE(proper_extension_witness(s7_natural()).has_value());
  CHECK_FALSE(proper_extension_witness(PlanarDiagram::infer(fixtures::b4())));
  CHECK_FALSE(proper_extension_witness(PlanarDiagram::infer(fixtures::chain(2))));

  auto c3 = proper_extension_witness(PlanarDiagram::infer(fixtures::chain(3)));
  REQUIRE(c3.has_value());
  CHECK(canonical_form(c3->extended.lattice()) == canonical_form(fixtures::b4()));

  auto g = proper_extension_witness(grid(1, 2));
  REQUIRE(g.has_value());
  CHECK(g->extended.lattice().size() == 7);
  CHECK(g->kind == WitnessKind::FilterInsertion);
  // The new element sits between (1,0)'s image and the top.
  const FiniteLattice& K = g->extended.lattice();
  int fresh = -1;
  for (int x = 0; x < K.size(); ++x) {
    bool hit = false;
    for (int y = 0; y < 6; ++y) hit = hit || g->embedding[y] == x;
    if (!hit) fresh = x;
  }
  REQUIRE(fresh >= 0);
  CHECK(K.lower_covers(fresh) == std::vector<int>{g->embedding[1]});
  CHECK(K.upper_covers(fresh) == std::vector<int>{K.top()});
}
