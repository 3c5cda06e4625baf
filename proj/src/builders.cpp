#include "slimlat/builders.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "slimlat/classify.hpp"
#include "slimlat/enumerate.hpp"

namespace slimlat {

using Code = LatticeError::Code;

PlanarDiagram grid(int p, int q) {
  if (p < 1 || q < 1)
    throw LatticeError(Code::ConfigInvalid, "grid factors need length >= 1");
  // Rank pairs by (height, second coordinate); the first factor runs
  // down-left, so within a level larger i sits further left.
  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> order;
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= q; ++j) order.push_back({i, j});
  std::sort(order.begin(), order.end(), [](auto a, auto b) {
    return std::pair(a.first + a.second, a.second) <
           std::pair(b.first + b.second, b.second);
  });
  for (size_t k = 0; k < order.size(); ++k) id[order[k]] = static_cast<int>(k);

  std::vector<std::pair<int, int>> covers;
  int n = (p + 1) * (q + 1);
  std::vector<std::vector<int>> upper(n);
  for (auto [i, j] : order) {
    if (i < p) covers.emplace_back(id[{i, j}], id[{i + 1, j}]);
    if (j < q) covers.emplace_back(id[{i, j}], id[{i, j + 1}]);
    if (i < p) upper[id[{i, j}]].push_back(id[{i + 1, j}]);
    if (j < q) upper[id[{i, j}]].push_back(id[{i, j + 1}]);
  }
  return PlanarDiagram::attach(FiniteLattice::build(n, covers), upper);
}

namespace {

struct Relabeling {
  std::vector<int> to_new;  // provisional id -> final index
};

// Final indices sorted by (height, provisional id); heights are taken in
// the new cover graph, so the result is a linear extension.
Relabeling relabel_by_height(int count, const std::vector<std::pair<int, int>>& covers) {
  std::vector<int> h(count, 0);
  // Longest-path heights; provisional ids are not topologically sorted,
  // so iterate to a fixpoint (graphs here are tiny).
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [x, y] : covers)
      if (h[y] < h[x] + 1) {
        h[y] = h[x] + 1;
        changed = true;
      }
  }
  std::vector<int> ids(count);
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(),
                   [&](int a, int b) { return std::pair(h[a], a) < std::pair(h[b], b); });
  Relabeling r;
  r.to_new.assign(count, -1);
  for (int k = 0; k < count; ++k) r.to_new[ids[k]] = k;
  return r;
}

std::pair<PlanarDiagram, std::vector<int>> rebuild(
    int count, std::vector<std::pair<int, int>> covers,
    std::vector<std::vector<int>> upper, Code failure_code) {
  auto rl = relabel_by_height(count, covers);
  for (auto& [x, y] : covers) {
    x = rl.to_new[x];
    y = rl.to_new[y];
  }
  std::vector<std::vector<int>> upper2(count);
  for (int i = 0; i < count; ++i) {
    upper2[rl.to_new[i]] = std::move(upper[i]);
    for (int& u : upper2[rl.to_new[i]]) u = rl.to_new[u];
  }
  FiniteLattice L = FiniteLattice::build(count, std::move(covers));
  if (!is_slim_semimodular(L))
    throw LatticeError(failure_code, "result is not slim semimodular");
  return {PlanarDiagram::attach(std::move(L), std::move(upper2)), rl.to_new};
}

// Follows the staircase of cells, collecting the covers to subdivide.
std::vector<std::pair<int, int>> trajectory(const PlanarDiagram& d, int x, int y,
                                            EdgeRole role) {
  std::vector<std::pair<int, int>> edges{{x, y}};
  for (;;) {
    auto c = d.cell_at_edge(x, y, role);
    if (!c) break;
    x = c->bottom;
    y = role == EdgeRole::UpperRight ? c->left : c->right;
    edges.push_back({x, y});
  }
  return edges;
}

void replace_entry(std::vector<int>& v, int from, int to) {
  for (int& e : v)
    if (e == from) e = to;
}

}  // namespace

std::pair<PlanarDiagram, ForkRecord> add_fork(const PlanarDiagram& d,
                                              const FourCell& cell) {
  const FiniteLattice& L = d.lattice();
  const auto& cells = d.four_cells();
  if (std::find(cells.begin(), cells.end(), cell) == cells.end())
    throw LatticeError(Code::NotACell, "not a 4-cell of the diagram");

  auto left = trajectory(d, cell.bottom, cell.left, EdgeRole::UpperRight);
  auto right = trajectory(d, cell.bottom, cell.right, EdgeRole::UpperLeft);
  int k = static_cast<int>(left.size()), j = static_cast<int>(right.size());

  int n = L.size();
  int m = n;                       // provisional ids
  auto a = [&](int i) { return n + 1 + i; };      // a_1.. at i=0..k-1
  auto b = [&](int i) { return n + 1 + k + i; };  // b_1.. at i=0..j-1
  int count = n + 1 + k + j;
  if (count > kMaxElements)
    throw LatticeError(Code::SizeLimit, "fork extension exceeds 64 elements");

  std::vector<std::pair<int, int>> covers;
  {
    auto cut = [&](std::pair<int, int> e) {
      return std::find(left.begin(), left.end(), e) != left.end() ||
             std::find(right.begin(), right.end(), e) != right.end();
    };
    for (auto e : L.cover_pairs())
      if (!cut(e)) covers.push_back(e);
  }
  covers.emplace_back(m, cell.top);
  for (int i = 0; i < k; ++i) {
    covers.emplace_back(a(i), left[i].second);   // a_i < y_i
    covers.emplace_back(left[i].first, a(i));    // x_i < a_i
    if (i + 1 < k) covers.emplace_back(a(i + 1), a(i));
  }
  for (int i = 0; i < j; ++i) {
    covers.emplace_back(b(i), right[i].second);
    covers.emplace_back(right[i].first, b(i));
    if (i + 1 < j) covers.emplace_back(b(i + 1), b(i));
  }
  covers.emplace_back(a(0), m);
  covers.emplace_back(b(0), m);

  // Cover orderings: new points inherit the slot of the edge they
  // subdivide; the fork top goes between the two cell sides.
  std::vector<std::vector<int>> upper(count);
  for (int x = 0; x < n; ++x) upper[x] = d.upper_order(x);
  for (int i = 0; i < k; ++i) replace_entry(upper[left[i].first], left[i].second, a(i));
  for (int i = 0; i < j; ++i) replace_entry(upper[right[i].first], right[i].second, b(i));
  upper[m] = {cell.top};
  for (int i = 0; i < k; ++i)
    upper[a(i)] = i == 0 ? std::vector<int>{left[0].second, m}
                         : std::vector<int>{left[i].second, a(i - 1)};
  for (int i = 0; i < j; ++i)
    upper[b(i)] = i == 0 ? std::vector<int>{m, right[0].second}
                         : std::vector<int>{b(i - 1), right[i].second};

  auto [diagram, to_new] = rebuild(count, std::move(covers), std::move(upper),
                                   Code::InternalValidationFailed);

  ForkRecord rec;
  rec.cell = cell;
  rec.new_top = to_new[m];
  for (int i = 0; i < k; ++i) rec.left_new.push_back(to_new[a(i)]);
  for (int i = 0; i < j; ++i) rec.right_new.push_back(to_new[b(i)]);
  rec.left_edges = left;
  rec.right_edges = right;
  rec.old_to_new.assign(to_new.begin(), to_new.begin() + n);
  return {std::move(diagram), std::move(rec)};
}

std::optional<UnforkResult> remove_fork_once(const PlanarDiagram& d) {
  if (!is_rectangular(d).rectangular)
    throw LatticeError(Code::NotRectangular, "fork removal expects a rectangular diagram");
  const FiniteLattice& L = d.lattice();
  int n = L.size();
  CanonicalForm want = canonical_form(L);

  for (int m = 0; m < n; ++m) {
    if (L.upper_covers(m).size() != 1 || L.lower_covers(m).size() != 2) continue;
    int t = L.upper_covers(m)[0];

    // Walk both trajectories; any structural mismatch disqualifies m.
    auto walk = [&](bool leftside) -> std::optional<std::vector<std::pair<int, int>>> {
      std::vector<std::pair<int, int>> chain;  // (a_i, y_i)
      int cur = leftside ? d.lower_order(m)[0] : d.lower_order(m)[1];
      int prev = m;
      for (;;) {
        const auto& ups = d.upper_order(cur);
        if (ups.size() != 2) return std::nullopt;
        int expect_prev = leftside ? ups[1] : ups[0];
        int y = leftside ? ups[0] : ups[1];
        if (expect_prev != prev) return std::nullopt;
        chain.push_back({cur, y});
        const auto& lows = d.lower_order(cur);
        if (lows.size() == 1) return chain;
        if (lows.size() != 2) return std::nullopt;
        prev = cur;
        cur = leftside ? lows[0] : lows[1];
      }
    };
    auto lc = walk(true);
    auto rc = walk(false);
    if (!lc || !rc) continue;
    int k = static_cast<int>(lc->size()), jj = static_cast<int>(rc->size());

    auto x_of = [&](const std::vector<std::pair<int, int>>& chain, int i,
                    bool leftside) {
      const auto& lows = d.lower_order(chain[i].first);
      if (lows.size() == 1) return lows[0];
      return leftside ? lows[1] : lows[0];
    };
    int bottom_l = x_of(*lc, k - 1, true), bottom_r = x_of(*rc, jj - 1, false);
    (void)bottom_l;
    (void)bottom_r;
    int cell_bottom_l = x_of(*lc, 0, true), cell_bottom_r = x_of(*rc, 0, false);
    if (cell_bottom_l != cell_bottom_r) continue;
    int cb = cell_bottom_l;

    Bits removed = bit(m);
    bool clash = false;
    for (auto& [ai, yi] : *lc) {
      if (has_bit(removed, ai)) clash = true;
      removed |= bit(ai);
    }
    for (auto& [bi, yi] : *rc) {
      if (has_bit(removed, bi)) clash = true;
      removed |= bit(bi);
    }
    if (clash) continue;

    // Contract: drop the fork elements, refuse the subdivided covers.
    std::vector<std::pair<int, int>> covers;
    for (auto [x, y] : L.cover_pairs())
      if (!has_bit(removed, x) && !has_bit(removed, y)) covers.push_back({x, y});
    std::vector<std::vector<int>> upper(n);
    for (int x = 0; x < n; ++x) {
      if (has_bit(removed, x)) continue;
      upper[x] = d.upper_order(x);
    }
    bool bad = false;
    for (int i = 0; i < k && !bad; ++i) {
      int ai = (*lc)[i].first, yi = (*lc)[i].second, xi = x_of(*lc, i, true);
      if (has_bit(removed, xi) || has_bit(removed, yi)) bad = true;
      covers.push_back({xi, yi});
      replace_entry(upper[xi], ai, yi);
    }
    for (int i = 0; i < jj && !bad; ++i) {
      int bi = (*rc)[i].first, yi = (*rc)[i].second, xi = x_of(*rc, i, false);
      if (has_bit(removed, xi) || has_bit(removed, yi)) bad = true;
      covers.push_back({xi, yi});
      replace_entry(upper[xi], bi, yi);
    }
    if (bad) continue;

    // Compact the labels.
    std::vector<int> to_new(n, -1);
    int nn = 0;
    for (int x = 0; x < n; ++x)
      if (!has_bit(removed, x)) to_new[x] = nn++;
    for (auto& [x, y] : covers) {
      x = to_new[x];
      y = to_new[y];
    }
    std::vector<std::vector<int>> upper2(nn);
    for (int x = 0; x < n; ++x) {
      if (to_new[x] < 0) continue;
      upper2[to_new[x]] = upper[x];
      for (int& u : upper2[to_new[x]]) u = to_new[u];
    }

    try {
      FiniteLattice F = FiniteLattice::build(nn, covers);
      if (!is_slim_semimodular(F)) continue;
      PlanarDiagram fd = PlanarDiagram::attach(std::move(F), upper2);
      FourCell cell{to_new[cb], to_new[(*lc)[0].second], to_new[(*rc)[0].second],
                    to_new[t]};
      auto [redone, rec] = add_fork(fd, cell);
      if (canonical_form(redone.lattice()) != want) continue;
      UnforkResult res;
      res.reduced = std::move(fd);
      res.cell = cell;
      res.removed.push_back(m);
      for (auto& [ai, yi] : *lc) res.removed.push_back(ai);
      for (auto& [bi, yi] : *rc) res.removed.push_back(bi);
      return res;
    } catch (const LatticeError&) {
      continue;
    }
  }
  return std::nullopt;
}

PlanarDiagram remove_corner(const PlanarDiagram& d, int u) {
  const FiniteLattice& L = d.lattice();
  L.check_index(u);
  auto irr = irreducibles(L);
  if (!has_bit(irr.dirr, u))
    throw LatticeError(Code::NotACorner, "element is not doubly irreducible", u);
  int up = L.upper_covers(u)[0], lo = L.lower_covers(u)[0];
  if (L.lower_covers(up).size() != 2)
    throw LatticeError(Code::NotACorner, "upper cover does not cover exactly two", u);
  if (L.upper_covers(lo).size() != 2)
    throw LatticeError(Code::NotACorner, "lower cover is not covered by exactly two", u);

  int n = L.size();
  std::vector<std::pair<int, int>> covers;
  for (auto [x, y] : L.cover_pairs())
    if (x != u && y != u) covers.push_back({x, y});
  std::vector<int> to_new(n, -1);
  int nn = 0;
  for (int x = 0; x < n; ++x)
    if (x != u) to_new[x] = nn++;
  for (auto& [x, y] : covers) {
    x = to_new[x];
    y = to_new[y];
  }
  std::vector<std::vector<int>> upper(nn);
  for (int x = 0; x < n; ++x) {
    if (x == u) continue;
    for (int w : d.upper_order(x))
      if (w != u) upper[to_new[x]].push_back(to_new[w]);
  }
  FiniteLattice F = FiniteLattice::build(nn, std::move(covers));
  if (!is_slim_semimodular(F))
    throw LatticeError(Code::InternalValidationFailed,
                       "corner removal left the class");
  return PlanarDiagram::attach(std::move(F), std::move(upper));
}

std::optional<CornerAddition> add_corner(const PlanarDiagram& d, Side side, int z) {
  const auto& chain = side == Side::Left ? d.left_boundary() : d.right_boundary();
  auto it = std::find(chain.begin(), chain.end(), z);
  if (it == chain.end() || it == chain.begin() || it + 1 == chain.end())
    throw LatticeError(Code::NotOnBoundary,
                       "element is not interior to the chosen boundary chain", z);
  int x = *(it - 1), y = *(it + 1);

  const FiniteLattice& L = d.lattice();
  int n = L.size();
  if (n + 1 > kMaxElements) return std::nullopt;
  std::vector<std::pair<int, int>> covers(L.cover_pairs());
  covers.emplace_back(x, n);
  covers.emplace_back(n, y);
  std::vector<std::vector<int>> upper(n + 1);
  for (int e = 0; e < n; ++e) upper[e] = d.upper_order(e);
  if (side == Side::Left)
    upper[x].insert(upper[x].begin(), n);
  else
    upper[x].push_back(n);
  upper[n] = {y};

  try {
    auto [diagram, to_new] = rebuild(n + 1, std::move(covers), std::move(upper),
                                     Code::NotSlimSemimodular);
    CornerAddition res;
    res.new_element = to_new[n];
    res.old_to_new.assign(to_new.begin(), to_new.begin() + n);
    res.extended = std::move(diagram);
    return res;
  } catch (const LatticeError&) {
    return std::nullopt;
  }
}

std::optional<ExtensionWitness> proper_extension_witness(const PlanarDiagram& d) {
  const FiniteLattice& L = d.lattice();
  if (L.size() <= 2) return std::nullopt;

  std::vector<std::pair<Side, int>> candidates;
  auto push = [&](Side s, int z) {
    if (std::find(candidates.begin(), candidates.end(), std::pair(s, z)) ==
        candidates.end())
      candidates.push_back({s, z});
  };
  auto rect = is_rectangular(d);
  if (rect.rectangular && !is_patch(L, &d).is_patch_def11) {
    // Insertion just below the top of the boundary filter, the canonical
    // witness for a rectangular non-patch lattice.
    if (d.left_boundary().size() >= 3)
      push(Side::Left, d.left_boundary()[d.left_boundary().size() - 2]);
    if (d.right_boundary().size() >= 3)
      push(Side::Right, d.right_boundary()[d.right_boundary().size() - 2]);
  }
  for (size_t i = 1; i + 1 < d.left_boundary().size(); ++i)
    push(Side::Left, d.left_boundary()[i]);
  for (size_t i = 1; i + 1 < d.right_boundary().size(); ++i)
    push(Side::Right, d.right_boundary()[i]);

  for (auto [side, z] : candidates) {
    auto added = add_corner(d, side, z);
    if (!added) continue;
    ExtensionWitness w;
    int y = added->extended.lattice().top();
    w.kind = added->extended.lattice().upper_covers(added->new_element) ==
                     std::vector<int>{y}
                 ? WitnessKind::FilterInsertion
                 : WitnessKind::CornerAdded;
    w.embedding = added->old_to_new;
    w.extended = std::move(added->extended);
    return w;
  }
  return std::nullopt;
}

}  // namespace slimlat
