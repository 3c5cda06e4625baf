#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slimlat/diagram.hpp"

namespace slimlat {

/// Doubly irreducible elements on the two boundary chains.  On a chain
/// both sides see the same element; counts are reported so callers can
/// tell "none" from "ambiguous".
struct WeakCorners {
  std::optional<int> lc, rc;
  int left_count = 0, right_count = 0;
};
WeakCorners weak_corners(const PlanarDiagram& d);

struct RectangularityReport {
  bool rectangular = false;
  WeakCorners corners;
  std::string reason;
};
RectangularityReport is_rectangular(const PlanarDiagram& d);

struct ClassReport {
  bool slim = false;
  bool semimodular = false;
  bool rectangular = false;
  bool is_patch_def11 = false;  // two doubly irreducible coatoms meeting at 0
  bool is_patch_24 = false;     // rectangular with lc, rc coatoms
  bool diagram_checked = false;
  std::optional<int> lc, rc;
  SlimnessReport slim_witness;
  SemimodularityReport semi_witness;
  std::string reason;
};

/// Evaluates both patch definitions; the second one only when a diagram
/// is supplied or can be inferred.
ClassReport is_patch(const FiniteLattice& L, const PlanarDiagram* d = nullptr);

/// A replayable construction: grid, then forks, then corner removals.
/// All element indices are in replay-time labels; replaying reproduces
/// the certified lattice exactly for generated members and up to
/// isomorphism in general.
struct GridCertificate {
  bool degenerate = false;  // one- or two-element lattice, no grid base
  int trivial_size = 0;
  int p = 0, q = 0;
  std::vector<FourCell> forks;
  std::vector<bool> fork_mirror;  // reflect the diagram before this fork
  std::vector<int> corners;       // removal order
};

PlanarDiagram replay_certificate(const GridCertificate& cert);

/// Derives a certificate for an arbitrary slim semimodular diagram:
/// re-adds corners until rectangular, strips forks down to a grid, then
/// reconstructs the whole path in replay labels, verifying each step by
/// canonical form.
GridCertificate grid_certificate(const PlanarDiagram& d);

}  // namespace slimlat
