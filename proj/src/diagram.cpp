#include "slimlat/diagram.hpp"

#include <algorithm>

namespace slimlat {

using Code = LatticeError::Code;

namespace {

// Order for the layer above `level`, forced by planarity: sort by the
// position of the leftmost lower cover, ties by that parent's cover
// ordering.  Crossing-freeness is verified separately.
std::vector<int> next_level_order(const FiniteLattice& L,
                                  const std::vector<std::vector<int>>& upper_order,
                                  const std::vector<int>& level,
                                  const std::vector<int>& pos, int target_height) {
  std::vector<std::tuple<int, int, int>> keyed;  // (parent pos, index in parent, elem)
  Bits seen = 0;
  for (int x : level) {
    const auto& ups = upper_order[x];
    for (size_t i = 0; i < ups.size(); ++i) {
      int u = ups[i];
      if (L.height(u) != target_height) continue;
      if (has_bit(seen, u)) continue;
      // Only key u by its leftmost parent in this level.
      bool leftmost = true;
      for (int w : level) {
        if (w == x) break;
        if (L.covers_rel(w, u)) {
          leftmost = false;
          break;
        }
      }
      if (!leftmost) continue;
      seen |= bit(u);
      keyed.emplace_back(pos[x], static_cast<int>(i), u);
    }
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> out;
  out.reserve(keyed.size());
  for (auto& [p, i, u] : keyed) out.push_back(u);
  return out;
}

// Zero-crossing test between two consecutive layers; returns a crossing
// edge pair or nullopt.
std::optional<std::array<int, 4>> find_crossing(
    const FiniteLattice& L, const std::vector<int>& lower,
    const std::vector<int>& upper, const std::vector<int>& pos) {
  std::vector<std::pair<int, int>> edges;  // (lower elem, upper elem)
  for (int x : lower)
    for (int u : L.upper_covers(x)) edges.emplace_back(x, u);
  for (size_t i = 0; i < edges.size(); ++i)
    for (size_t j = i + 1; j < edges.size(); ++j) {
      auto [x, u] = edges[i];
      auto [y, v] = edges[j];
      if (x == y || u == v) continue;
      if ((pos[x] < pos[y] && pos[u] > pos[v]) ||
          (pos[x] > pos[y] && pos[u] < pos[v]))
        return std::array<int, 4>{x, u, y, v};
    }
  (void)upper;
  return std::nullopt;
}

}  // namespace

PlanarDiagram PlanarDiagram::attach(FiniteLattice lattice,
                                    std::vector<std::vector<int>> upper_order) {
  if (!is_slim_semimodular(lattice))
    throw LatticeError(Code::NotSlimSemimodular,
                       "diagrams are only defined for slim semimodular lattices");
  int n = lattice.size();
  if (static_cast<int>(upper_order.size()) != n)
    throw LatticeError(Code::InconsistentOrder, "upper_order has wrong arity");
  for (int x = 0; x < n; ++x) {
    auto sorted = upper_order[x];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != lattice.upper_covers(x))
      throw LatticeError(Code::InconsistentOrder,
                         "upper_order is not a permutation of the cover set", x);
  }

  PlanarDiagram d;
  d.lat_ = std::move(lattice);
  d.upper_order_ = std::move(upper_order);
  d.finish();
  return d;
}

void PlanarDiagram::finish() {
  const FiniteLattice& L = lat_;
  int n = L.size();
  levels_.assign(L.length() + 1, {});
  pos_.assign(n, 0);
  levels_[0] = {0};
  for (int h = 0; h < L.length(); ++h) {
    levels_[h + 1] = next_level_order(L, upper_order_, levels_[h], pos_, h + 1);
    for (size_t i = 0; i < levels_[h + 1].size(); ++i) pos_[levels_[h + 1][i]] = i;
    if (auto cross = find_crossing(L, levels_[h], levels_[h + 1], pos_))
      throw LatticeError(Code::CrossingDetected, "edges cross in the layered drawing",
                         (*cross)[0] * kMaxElements + (*cross)[1],
                         (*cross)[2] * kMaxElements + (*cross)[3]);
  }
  int placed = 0;
  for (auto& lv : levels_) placed += static_cast<int>(lv.size());
  if (placed != n)
    throw LatticeError(Code::InconsistentOrder, "layer sweep did not place all elements");

  lower_order_.assign(n, {});
  for (auto& lv : levels_)
    for (int x : lv)
      for (int y : upper_order_[x]) lower_order_[y].push_back(x);
  for (int y = 0; y < n; ++y)
    std::sort(lower_order_[y].begin(), lower_order_[y].end(),
              [&](int a, int b) { return pos_[a] < pos_[b]; });

  lbound_.clear();
  rbound_.clear();
  for (int x = 0;;) {
    lbound_.push_back(x);
    if (L.upper_covers(x).empty()) break;
    x = upper_order_[x].front();
  }
  for (int x = 0;;) {
    rbound_.push_back(x);
    if (L.upper_covers(x).empty()) break;
    x = upper_order_[x].back();
  }

  // In a slim semimodular lattice every element has at most two upper
  // covers, so each element with exactly two spans exactly one cell.
  cells_.clear();
  for (int b = 0; b < n; ++b) {
    if (upper_order_[b].size() != 2) continue;
    int u = upper_order_[b][0], v = upper_order_[b][1];
    int t = L.join(u, v);
    cells_.push_back({b, u, v, t});
  }
}

PlanarDiagram PlanarDiagram::infer(FiniteLattice lattice) {
  if (!is_slim_semimodular(lattice))
    throw LatticeError(Code::NotSlimSemimodular,
                       "diagrams are only defined for slim semimodular lattices");
  int n = lattice.size();
  std::vector<int> branchy;  // elements with two upper covers
  for (int x = 0; x < n; ++x)
    if (lattice.upper_covers(x).size() == 2) branchy.push_back(x);

  std::vector<std::vector<int>> order(n);
  for (int x = 0; x < n; ++x) order[x] = lattice.upper_covers(x);

  // Lexicographic DFS over the 2^|branchy| orientation choices; each
  // candidate is validated by the full layer sweep.  Slim semimodular
  // diagrams are rigid enough that this never visits many nodes.
  int k = static_cast<int>(branchy.size());
  std::vector<int> choice(k, 0);
  for (;;) {
    for (int i = 0; i < k; ++i) {
      int x = branchy[i];
      order[x] = lattice.upper_covers(x);
      if (choice[i]) std::swap(order[x][0], order[x][1]);
    }
    try {
      return attach(lattice, order);
    } catch (const LatticeError& e) {
      if (e.code != Code::CrossingDetected) throw;
    }
    int i = k - 1;
    while (i >= 0 && choice[i] == 1) choice[i--] = 0;
    if (i < 0) break;
    choice[i] = 1;
  }
  throw LatticeError(Code::InternalValidationFailed,
                     "no planar diagram found for a slim semimodular lattice");
}

Bits PlanarDiagram::boundary_set() const {
  return vector_to_bits(lbound_) | vector_to_bits(rbound_);
}

std::optional<FourCell> PlanarDiagram::cell_at_edge(int x, int y, EdgeRole role) const {
  if (!lat_.covers_rel(x, y))
    throw LatticeError(Code::IndexOutOfRange, "not an edge of the diagram", x, y);
  for (const FourCell& c : cells_) {
    if (c.top != y) continue;
    if (role == EdgeRole::UpperRight && c.right == x) return c;
    if (role == EdgeRole::UpperLeft && c.left == x) return c;
  }
  return std::nullopt;
}

PlanarDiagram PlanarDiagram::mirrored() const {
  auto order = upper_order_;
  for (auto& v : order) std::reverse(v.begin(), v.end());
  return attach(lat_, std::move(order));
}

std::pair<Bits, Bits> boundary_chains(const PlanarDiagram& d) {
  return {vector_to_bits(d.left_boundary()), vector_to_bits(d.right_boundary())};
}

}  // namespace slimlat
