#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "slimlat/diagram.hpp"

namespace slimlat {

/// Direct product of the (p+1)- and (q+1)-element chains with its natural
/// diagram, first factor drawn leftward.
PlanarDiagram grid(int p, int q);

/// Bookkeeping for one fork insertion.  Element indices in `cell` and the
/// `*_edges` lists refer to the source lattice; `new_top`, `left_new`,
/// `right_new` and `old_to_new` refer to the extension.
struct ForkRecord {
  FourCell cell;
  int new_top = -1;                 // the new meet-irreducible below cell.top
  std::vector<int> left_new;        // a_1..a_k, top down along the left trajectory
  std::vector<int> right_new;       // b_1..b_j
  std::vector<std::pair<int, int>> left_edges, right_edges;  // subdivided covers
  std::vector<int> old_to_new;      // inclusion map (a {0,1}-embedding)
};

/// Fork insertion at a 4-cell.  A new element is placed under the cell
/// top; the two lower edges of the cell are subdivided, and the
/// subdivision propagates through the staircase of cells below-left and
/// below-right (each subdivided upper edge forces the opposite lower edge
/// of the adjacent cell, with the new points linked).  The source lattice
/// persists as a {0,1}-sublattice; length grows by one.
std::pair<PlanarDiagram, ForkRecord> add_fork(const PlanarDiagram& d,
                                              const FourCell& cell);

struct UnforkResult {
  PlanarDiagram reduced;
  /// Cell of `reduced` whose fork reproduces the input (up to isomorphism
  /// via the reduced diagram itself).
  FourCell cell;
  std::vector<int> removed;  // input labels: new_top, then left chain, then right
};

/// Undoes one fork on a slim rectangular diagram; nullopt iff the input
/// is a grid.  The candidate search tries every meet-irreducible with two
/// lower covers and validates by replaying the fork.
std::optional<UnforkResult> remove_fork_once(const PlanarDiagram& d);

/// Deletes a corner (a doubly irreducible element whose neighbours have
/// cover-degree two on the relevant sides) together with its two edges.
PlanarDiagram remove_corner(const PlanarDiagram& d, int u);

struct CornerAddition {
  PlanarDiagram extended;
  int new_element;
  std::vector<int> old_to_new;
};

/// Inserts a new element parallel to z across the boundary triple
/// x < z < y of the chosen boundary chain, outside the boundary.  Returns
/// nullopt when the candidate fails the class predicates.
std::optional<CornerAddition> add_corner(const PlanarDiagram& d, Side side, int z);

enum class WitnessKind { CornerAdded, FilterInsertion };

struct ExtensionWitness {
  PlanarDiagram extended;
  std::vector<int> embedding;  // length-preserving {0,1}-embedding (inclusion)
  WitnessKind kind;
};

/// Searches all one-element length-preserving extensions (corner
/// additions over both boundaries, the coatom positions of a rectangular
/// non-patch diagram first).  nullopt means none exists, i.e. the lattice
/// is maximal at one-element granularity.
std::optional<ExtensionWitness> proper_extension_witness(const PlanarDiagram& d);

}  // namespace slimlat
