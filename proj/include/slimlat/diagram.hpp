#pragma once

#include <optional>
#include <vector>

#include "slimlat/lattice.hpp"

namespace slimlat {

/// A cover-preserving boolean square of a diagram: bottom covered by
/// left and right, both covered by top, with meet(left,right) = bottom
/// and join(left,right) = top.  Left/right follow the diagram.
struct FourCell {
  int bottom, left, right, top;
  friend bool operator==(const FourCell&, const FourCell&) = default;
  friend auto operator<=>(const FourCell&, const FourCell&) = default;
};

enum class EdgeRole { UpperRight, UpperLeft };
enum class Side { Left, Right };

/// A fixed planar diagram of a slim semimodular lattice: left-to-right
/// orderings of every element's covers plus the induced layered drawing
/// (one layer per height, exact integer positions).  Immutable.
class PlanarDiagram {
 public:
  PlanarDiagram() = default;  // empty state

  /// Validates the given cover orderings: they must permute the cover
  /// sets and induce a layered drawing with zero edge crossings.
  static PlanarDiagram attach(FiniteLattice lattice,
                              std::vector<std::vector<int>> upper_order);

  /// Finds the lexicographically first valid diagram by backtracking over
  /// the per-element cover orderings.  Cheap: only elements with two
  /// upper covers branch.
  static PlanarDiagram infer(FiniteLattice lattice);

  const FiniteLattice& lattice() const { return lat_; }
  const std::vector<std::vector<int>>& upper_order() const { return upper_order_; }
  const std::vector<std::vector<int>>& lower_order() const { return lower_order_; }
  const std::vector<int>& upper_order(int x) const { return upper_order_[x]; }
  const std::vector<int>& lower_order(int x) const { return lower_order_[x]; }
  /// Elements of each height layer, left to right.
  const std::vector<std::vector<int>>& levels() const { return levels_; }
  int position(int x) const { return pos_[x]; }

  /// Left/right boundary chains as element lists from bottom to top.
  const std::vector<int>& left_boundary() const { return lbound_; }
  const std::vector<int>& right_boundary() const { return rbound_; }
  Bits boundary_set() const;

  const std::vector<FourCell>& four_cells() const { return cells_; }

  /// The unique 4-cell having (x,y) as its upper-right (resp. upper-left)
  /// side edge; nullopt when the edge borders the outer face on that side
  /// or the adjacent face has its bottom at x.
  std::optional<FourCell> cell_at_edge(int x, int y, EdgeRole role) const;

  /// The same lattice drawn with every ordering reversed.
  PlanarDiagram mirrored() const;

 private:
  void finish();  // derives levels, lower orders, boundaries, cells

  FiniteLattice lat_;
  std::vector<std::vector<int>> upper_order_, lower_order_;
  std::vector<std::vector<int>> levels_;
  std::vector<int> pos_;
  std::vector<int> lbound_, rbound_;
  std::vector<FourCell> cells_;
};

std::pair<Bits, Bits> boundary_chains(const PlanarDiagram& d);

}  // namespace slimlat
