#include "slimlat/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_set>

#include "slimlat/builders.hpp"

namespace slimlat {

using Code = LatticeError::Code;

namespace {

// --- canonical form -------------------------------------------------------

struct Refiner {
  const FiniteLattice* L;
  int n;

  // Re-ranks colors by their refinement signatures until stable.  The
  // initial coloring leads with height, and signatures lead with the old
  // color, so color order always extends the height order and the final
  // labelling is a linear extension.
  void refine(std::vector<int>& color) const {
    for (;;) {
      std::vector<std::pair<std::vector<int>, int>> sig(n);
      for (int x = 0; x < n; ++x) {
        std::vector<int> s{color[x]};
        std::vector<int> up, down;
        for (int u : L->upper_covers(x)) up.push_back(color[u]);
        for (int u : L->lower_covers(x)) down.push_back(color[u]);
        std::sort(up.begin(), up.end());
        std::sort(down.begin(), down.end());
        s.push_back(-1);
        s.insert(s.end(), up.begin(), up.end());
        s.push_back(-1);
        s.insert(s.end(), down.begin(), down.end());
        sig[x] = {std::move(s), x};
      }
      auto sorted = sig;
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> next(n);
      int rank = -1;
      for (int i = 0; i < n; ++i) {
        if (i == 0 || sorted[i].first != sorted[i - 1].first) ++rank;
        next[sorted[i].second] = rank;
      }
      if (next == color) return;
      color = std::move(next);
    }
  }

  CanonicalForm encode(const std::vector<int>& color) const {
    // color is discrete here: new_index = color rank.
    std::vector<int> at(n);
    for (int x = 0; x < n; ++x) at[color[x]] = x;
    CanonicalForm out;
    out.push_back(static_cast<char>(n));
    int bits = 0, acc = 0;
    for (int i = 0; i < n; ++i)
      for (int jj = i + 1; jj < n; ++jj) {
        acc = (acc << 1) | (L->covers_rel(at[i], at[jj]) ? 1 : 0);
        if (++bits == 8) {
          out.push_back(static_cast<char>(acc));
          bits = acc = 0;
        }
      }
    if (bits) out.push_back(static_cast<char>(acc << (8 - bits)));
    return out;
  }

  void search(std::vector<int> color, CanonicalForm& best) const {
    refine(color);
    int cell_color = -1, cell_size = 0;
    for (int c = 0;; ++c) {
      cell_size = 0;
      for (int x = 0; x < n; ++x) cell_size += color[x] == c;
      if (cell_size == 0) {
        cell_color = -1;
        break;
      }
      if (cell_size > 1) {
        cell_color = c;
        break;
      }
    }
    if (cell_color < 0) {
      CanonicalForm f = encode(color);
      if (best.empty() || f < best) best = std::move(f);
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (color[x] != cell_color) continue;
      // Individualize x: pull it just below its cell, shift the rest.
      std::vector<int> c2(n);
      for (int y = 0; y < n; ++y)
        c2[y] = 2 * color[y] + (color[y] == cell_color && y != x ? 1 : 0);
      search(std::move(c2), best);
    }
  }
};

}  // namespace

CanonicalForm canonical_form(const FiniteLattice& L) {
  int n = L.size();
  std::vector<std::tuple<int, int, int, int>> key(n);
  for (int x = 0; x < n; ++x)
    key[x] = {L.height(x), static_cast<int>(L.upper_covers(x).size()),
              static_cast<int>(L.lower_covers(x).size()), x};
  auto sorted = key;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> color(n);
  int rank = -1;
  for (int i = 0; i < n; ++i) {
    auto [h, u, d, x] = sorted[i];
    if (i == 0 || std::tuple(h, u, d) !=
                      std::tuple(std::get<0>(sorted[i - 1]), std::get<1>(sorted[i - 1]),
                                 std::get<2>(sorted[i - 1])))
      ++rank;
    color[x] = rank;
  }
  Refiner r{&L, n};
  CanonicalForm best;
  r.search(std::move(color), best);
  return best;
}

std::optional<std::vector<int>> find_isomorphism(const FiniteLattice& a,
                                                 const FiniteLattice& b) {
  int n = a.size();
  if (b.size() != n || a.cover_pairs().size() != b.cover_pairs().size())
    return std::nullopt;
  auto profile = [](const FiniteLattice& l, int x) {
    return std::tuple(l.height(x), l.upper_covers(x).size(), l.lower_covers(x).size());
  };
  std::vector<int> map(n, -1);
  Bits used = 0;
  // Assign in index order; covers go both ways against assigned elements.
  auto dfs = [&](auto&& self, int x) -> bool {
    if (x == n) return true;
    for (int y = 0; y < n; ++y) {
      if (has_bit(used, y) || profile(a, x) != profile(b, y)) continue;
      bool ok = true;
      for (int z = 0; z < x && ok; ++z) {
        if (a.covers_rel(z, x) != b.covers_rel(map[z], y)) ok = false;
        if (a.covers_rel(x, z) != b.covers_rel(y, map[z])) ok = false;
        if (a.leq(z, x) != b.leq(map[z], y) || a.leq(x, z) != b.leq(y, map[z]))
          ok = false;
      }
      if (!ok) continue;
      map[x] = y;
      used |= bit(y);
      if (self(self, x + 1)) return true;
      used &= ~bit(y);
      map[x] = -1;
    }
    return false;
  };
  if (dfs(dfs, 0)) return map;
  return std::nullopt;
}

// --- universes -------------------------------------------------------------

void Universe::finalize() {
  std::sort(members.begin(), members.end(),
            [](const UniverseMember& a, const UniverseMember& b) {
              return std::pair(a.lattice.size(), a.cf) <
                     std::pair(b.lattice.size(), b.cf);
            });
  index.clear();
  for (size_t i = 0; i < members.size(); ++i)
    index[members[i].cf] = static_cast<int>(i);
}

namespace {

UniverseMember make_member(PlanarDiagram d, GridCertificate cert) {
  UniverseMember m;
  m.cf = canonical_form(d.lattice());
  m.slim_semimodular = true;
  auto rect = is_rectangular(d);
  m.rectangular = rect.rectangular;
  if (m.rectangular) {
    const FiniteLattice& L = d.lattice();
    m.patch = L.covers_rel(*rect.corners.lc, L.top()) &&
              L.covers_rel(*rect.corners.rc, L.top());
  }
  m.lattice = d.lattice();
  m.diagram = std::move(d);
  m.certificate = std::move(cert);
  return m;
}

}  // namespace

Universe generate_universe(int max_size, ClassFilter filter,
                           const GenerateOptions& opts) {
  if (max_size < 1 || max_size > opts.ceiling)
    throw LatticeError(Code::CeilingExceeded,
                       "generation ceiling exceeded (default 14)");
  if (filter == ClassFilter::AllLattices)
    throw LatticeError(Code::ConfigInvalid,
                       "generation builds class members; use brute_force_universe");

  bool rect_only =
      filter == ClassFilter::Rectangular || filter == ClassFilter::Patch;
  int cap = opts.intermediate_cap;
  if (cap == 0) cap = rect_only ? max_size : std::max(2 * (max_size - 1), max_size);
  cap = std::min(cap, kMaxElements);

  struct Node {
    PlanarDiagram diagram;
    GridCertificate cert;
  };
  std::map<CanonicalForm, Node> rects;  // phase A, keyed for determinism

  std::deque<CanonicalForm> frontier;
  for (int p = 1; (p + 1) * 2 <= cap; ++p) {
    for (int q = p; (p + 1) * (q + 1) <= cap; ++q) {
      PlanarDiagram g = grid(p, q);
      GridCertificate cert;
      cert.p = p;
      cert.q = q;
      CanonicalForm cf = canonical_form(g.lattice());
      if (rects.emplace(cf, Node{std::move(g), std::move(cert)}).second)
        frontier.push_back(cf);
    }
  }
  std::sort(frontier.begin(), frontier.end());
  while (!frontier.empty()) {
    CanonicalForm cf = std::move(frontier.front());
    frontier.pop_front();
    Node node = rects.at(cf);  // copy: rects may rehash on insert
    for (const FourCell& c : node.diagram.four_cells()) {
      if (node.diagram.lattice().size() + 3 > cap) continue;
      auto [next, rec] = add_fork(node.diagram, c);
      if (next.lattice().size() > cap) continue;
      CanonicalForm ncf = canonical_form(next.lattice());
      if (rects.count(ncf)) continue;
      GridCertificate cert = node.cert;
      cert.forks.push_back(c);
      cert.fork_mirror.push_back(false);
      rects.emplace(ncf, Node{std::move(next), std::move(cert)});
      frontier.push_back(ncf);
    }
  }

  Universe u;
  u.max_size = max_size;
  u.filter = filter;

  std::unordered_set<CanonicalForm> visited;
  auto consider = [&](const CanonicalForm& cf, const PlanarDiagram& d,
                      const GridCertificate& cert) {
    if (d.lattice().size() > max_size) return;
    switch (filter) {
      case ClassFilter::SlimSemimodular:
        break;
      case ClassFilter::Rectangular:
        if (!is_rectangular(d).rectangular) return;
        break;
      case ClassFilter::Patch: {
        auto rep = is_patch(d.lattice(), &d);
        if (!rep.is_patch_def11) return;
        break;
      }
      case ClassFilter::AllLattices:
        return;
    }
    UniverseMember m = make_member(d, cert);
    m.cf = cf;
    u.members.push_back(std::move(m));
  };

  for (auto& [cf, node] : rects) {
    visited.insert(cf);
    consider(cf, node.diagram, node.cert);
  }

  if (!rect_only) {
    // Phase B: corner-removal closure, depth first from every phase-A
    // node.  Intermediates above max_size are kept only as search states.
    auto descend = [&](auto&& self, const PlanarDiagram& d,
                       const GridCertificate& cert) -> void {
      auto irr = irreducibles(d.lattice());
      for (int x : bits_to_vector(irr.dirr)) {
        int up = d.lattice().upper_covers(x)[0];
        int lo = d.lattice().lower_covers(x)[0];
        if (d.lattice().lower_covers(up).size() != 2) continue;
        if (d.lattice().upper_covers(lo).size() != 2) continue;
        PlanarDiagram next = remove_corner(d, x);
        CanonicalForm cf = canonical_form(next.lattice());
        if (!visited.insert(cf).second) continue;
        GridCertificate c2 = cert;
        c2.corners.push_back(x);
        consider(cf, next, c2);
        self(self, next, c2);
      }
    };
    for (auto& [cf, node] : rects) descend(descend, node.diagram, node.cert);

    // Seeds that no grid reaches.
    for (int s = 1; s <= 2 && s <= max_size; ++s) {
      GridCertificate cert;
      cert.degenerate = true;
      cert.trivial_size = s;
      PlanarDiagram d = replay_certificate(cert);
      CanonicalForm cf = canonical_form(d.lattice());
      if (visited.insert(cf).second) consider(cf, d, cert);
    }
  }

  u.finalize();
  return u;
}

// Exhaustive labelled search: element y picks an antichain of lower
// covers among 0..y-1.  Meets are checked as soon as both elements exist;
// join ambiguity (two minimal common upper bounds) prunes immediately,
// since later elements sit above everything and can never repair it.
Universe brute_force_universe(int max_size, int ceiling) {
  if (max_size < 1 || max_size > ceiling)
    throw LatticeError(Code::CeilingExceeded,
                       "brute-force ceiling exceeded (default 8)");
  Universe u;
  u.max_size = max_size;
  u.filter = ClassFilter::AllLattices;
  std::set<CanonicalForm> seen;

  for (int n = 1; n <= max_size; ++n) {
    std::vector<Bits> down(n);
    std::vector<std::pair<int, int>> covers;
    down[0] = bit(0);

    auto record = [&]() {
      try {
        FiniteLattice L = FiniteLattice::build(n, covers);
        CanonicalForm cf = canonical_form(L);
        if (!seen.insert(cf).second) return;
        UniverseMember m;
        m.cf = cf;
        m.slim_semimodular = is_slim_semimodular(L);
        if (m.slim_semimodular) {
          m.diagram = PlanarDiagram::infer(L);
          auto rect = is_rectangular(*m.diagram);
          m.rectangular = rect.rectangular;
          if (m.rectangular)
            m.patch = L.covers_rel(*rect.corners.lc, L.top()) &&
                      L.covers_rel(*rect.corners.rc, L.top());
        }
        m.lattice = std::move(L);
        u.members.push_back(std::move(m));
      } catch (const LatticeError&) {
      }
    };

    // Pairwise join ambiguity check among the first `count` elements.
    auto joins_ok = [&](int count) {
      for (int x = 0; x < count; ++x)
        for (int y = x + 1; y < count; ++y) {
          if (has_bit(down[y], x) || has_bit(down[x], y)) continue;
          int minimals = 0;
          for (int z = 0; z < count && minimals < 2; ++z) {
            if (!has_bit(down[z], x) || !has_bit(down[z], y)) continue;
            bool minimal = true;
            for (int w = 0; w < count && minimal; ++w)
              if (w != z && has_bit(down[z], w) && has_bit(down[w], x) &&
                  has_bit(down[w], y))
                minimal = false;
            if (minimal) ++minimals;
          }
          if (minimals > 1) return false;
        }
      return true;
    };
    auto meets_ok = [&](int count) {
      int y = count - 1;
      for (int x = 0; x < y; ++x) {
        Bits common = down[x] & down[y];
        if (common == 0) return false;  // 0 is below everything anyway
        int top_common = 63 - __builtin_clzll(common);
        if ((common & ~down[top_common]) != 0) return false;
      }
      return true;
    };

    auto dfs = [&](auto&& self, int y) -> void {
      if (y == n) {
        // Top must dominate everything.
        if (popcount(down[n - 1]) == n) record();
        return;
      }
      // Choose the lower-cover antichain for y among 0..y-1.
      for (Bits a = 1; a < bit(y); ++a) {
        bool antichain = true;
        for_each_bit(a, [&](int i) {
          if (!antichain) return;
          for_each_bit(a, [&](int jj) {
            if (i != jj && has_bit(down[jj], i)) antichain = false;
          });
        });
        if (!antichain) continue;
        down[y] = bit(y);
        for_each_bit(a, [&](int i) { down[y] |= down[i]; });
        if (y == n - 1 && popcount(down[y]) != n) continue;
        size_t mark = covers.size();
        for_each_bit(a, [&](int i) { covers.emplace_back(i, y); });
        if (meets_ok(y + 1) && joins_ok(y + 1)) self(self, y + 1);
        covers.resize(mark);
      }
      down[y] = 0;
    };
    if (n == 1) {
      covers.clear();
      record();
    } else {
      dfs(dfs, 1);
    }
  }
  u.finalize();
  return u;
}

}  // namespace slimlat
