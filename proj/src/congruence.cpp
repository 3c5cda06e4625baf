#include "slimlat/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "slimlat/classify.hpp"

namespace slimlat {

using Code = LatticeError::Code;

namespace {

// Tiny union-find over element indices.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x > y) std::swap(x, y);  // keep the least index as root
    parent[y] = x;
    return true;
  }
};

Congruence from_union_find(UnionFind& uf) {
  int n = static_cast<int>(uf.parent.size());
  std::vector<int> rep(n);
  for (int x = 0; x < n; ++x) rep[x] = uf.find(x);
  return Congruence(std::move(rep));
}

// Closes a union-find under meet/join compatibility.
Congruence close_compatible(const FiniteLattice& L, UnionFind uf) {
  int n = L.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) {
        if (uf.find(x) != uf.find(y)) continue;
        for (int z = 0; z < n; ++z) {
          changed |= uf.unite(L.meet(x, z), L.meet(y, z));
          changed |= uf.unite(L.join(x, z), L.join(y, z));
        }
      }
    }
  }
  return from_union_find(uf);
}

}  // namespace

Congruence::Congruence(std::vector<int> rep) : rep_(std::move(rep)) {
  std::set<int> s(rep_.begin(), rep_.end());
  blocks_ = static_cast<int>(s.size());
}

Congruence Congruence::diagonal(int n) {
  std::vector<int> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  return Congruence(std::move(rep));
}

Congruence Congruence::full(int n) { return Congruence(std::vector<int>(n, 0)); }

Bits Congruence::block_of(int x) const {
  Bits b = 0;
  for (int y = 0; y < size(); ++y)
    if (rep_[y] == rep_[x]) b |= bit(y);
  return b;
}

bool is_congruence(const FiniteLattice& L, const Congruence& c) {
  int n = L.size();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (!c.same(x, y)) continue;
      for (int z = 0; z < n; ++z) {
        if (!c.same(L.meet(x, z), L.meet(y, z))) return false;
        if (!c.same(L.join(x, z), L.join(y, z))) return false;
      }
    }
  // Convexity of blocks.
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z) {
      if (!c.same(x, z) || !L.leq(x, z)) continue;
      for (int y = 0; y < n; ++y)
        if (L.leq(x, y) && L.leq(y, z) && !c.same(x, y)) return false;
    }
  return true;
}

Congruence principal_congruence(const FiniteLattice& L, int a, int b) {
  L.check_index(a);
  L.check_index(b);
  UnionFind uf(L.size());
  uf.unite(a, b);
  return close_compatible(L, std::move(uf));
}

Congruence congruence_meet(const FiniteLattice& L, const Congruence& x,
                           const Congruence& y) {
  (void)L;
  int n = x.size();
  // Common refinement; pairs (rep,rep) renumbered to least members.
  std::vector<int> rep(n, -1);
  for (int i = 0; i < n; ++i) {
    if (rep[i] >= 0) continue;
    for (int j = i; j < n; ++j)
      if (x.same(i, j) && y.same(i, j)) rep[j] = i;
  }
  return Congruence(std::move(rep));
}

Congruence congruence_join(const FiniteLattice& L, const Congruence& x,
                           const Congruence& y) {
  // Transitive closure of the union of two congruences is compatible.
  (void)L;
  int n = x.size();
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    uf.unite(i, x.rep(i));
    uf.unite(i, y.rep(i));
  }
  return from_union_find(uf);
}

std::vector<Congruence> all_congruences(const FiniteLattice& L, int bound) {
  int n = L.size();
  if (n > bound)
    throw LatticeError(Code::SizeBoundExceeded,
                       "congruence enumeration bound exceeded");
  std::set<Congruence> found;
  found.insert(Congruence::diagonal(n));
  std::vector<Congruence> principals;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      auto c = principal_congruence(L, a, b);
      if (found.insert(c).second) principals.push_back(c);
    }
  // Close under joins; every congruence is a join of principal ones.
  std::vector<Congruence> queue(found.begin(), found.end());
  while (!queue.empty()) {
    Congruence c = std::move(queue.back());
    queue.pop_back();
    for (const Congruence& p : principals) {
      Congruence j = congruence_join(L, c, p);
      if (found.insert(j).second) queue.push_back(j);
    }
  }
  return {found.begin(), found.end()};
}

std::pair<FiniteLattice, std::vector<int>> quotient(const FiniteLattice& L,
                                                    const Congruence& theta) {
  int n = L.size();
  std::vector<int> roots;
  for (int x = 0; x < n; ++x)
    if (theta.rep(x) == x) roots.push_back(x);
  int m = static_cast<int>(roots.size());
  // Blocks inherit the order; block indices follow the least elements,
  // which already form a linear extension.
  std::vector<int> idx(n, -1);
  for (int i = 0; i < m; ++i) idx[roots[i]] = i;
  auto bleq = [&](int i, int j) {
    Bits bi = theta.block_of(roots[i]), bj = theta.block_of(roots[j]);
    bool le = false;
    for_each_bit(bi, [&](int x) {
      if ((L.up_set(x) & bj) != 0) le = true;
    });
    return le;
  };
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j || !bleq(i, j)) continue;
      bool direct = true;
      for (int k = 0; k < m && direct; ++k)
        if (k != i && k != j && bleq(i, k) && bleq(k, j)) direct = false;
      if (direct) covers.emplace_back(i, j);
    }
  FiniteLattice Q = FiniteLattice::build(m, covers);
  std::vector<int> proj(n);
  for (int x = 0; x < n; ++x) proj[x] = idx[theta.rep(x)];
  return {std::move(Q), std::move(proj)};
}

bool chain_determination_check(const FiniteLattice& L, Bits chain, int bound) {
  if (!is_maximal_chain(L, chain))
    throw LatticeError(Code::NotMaximalChain, "restriction needs a maximal chain");
  auto elems = bits_to_vector(chain);
  std::set<std::vector<int>> restrictions;
  for (const Congruence& c : all_congruences(L, bound)) {
    std::vector<int> sig;
    sig.reserve(elems.size());
    for (int x : elems) {
      int first = -1;
      for (size_t i = 0; i < sig.size() && first < 0; ++i)
        if (c.same(elems[i], x)) first = static_cast<int>(i);
      sig.push_back(first < 0 ? static_cast<int>(sig.size()) : first);
    }
    if (!restrictions.insert(sig).second) return false;
  }
  return true;
}

PrimeIdealResult prime_ideal_congruence(const FiniteLattice& L, Bits ideal) {
  PrimeIdealResult r;
  int n = L.size();
  Bits universe = n == 64 ? ~Bits{0} : (bit(n) - 1);
  if (ideal == 0 || (ideal & ~universe) != 0 || ideal == universe)
    throw LatticeError(Code::NotPrime, "ideal must be a proper nonempty subset");
  if (!is_down_closed(L, ideal))
    throw LatticeError(Code::NotPrime, "subset is not down-closed");

  auto in = [&](int x) { return has_bit(ideal, x); };
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      if (in(x) && in(y) && !in(L.join(x, y))) {
        r.witness_x = x;
        r.witness_y = y;
        r.join_side = true;
        return r;
      }
      if (!in(x) && !in(y) && in(L.meet(x, y))) {
        r.witness_x = x;
        r.witness_y = y;
        r.join_side = false;
        return r;
      }
    }
  std::vector<int> rep(n);
  int f = __builtin_ctzll(~ideal & universe);
  for (int x = 0; x < n; ++x) rep[x] = in(x) ? 0 : f;
  r.congruence = Congruence(std::move(rep));
  return r;
}

BooleanRetraction boolean_retraction(const PlanarDiagram& k, int u_hat, int v_hat) {
  const FiniteLattice& K = k.lattice();
  K.check_index(u_hat);
  K.check_index(v_hat);
  auto rect = is_rectangular(k);
  if (!rect.rectangular)
    throw LatticeError(Code::NotRectangular, "retraction needs a rectangular lattice");
  if (K.meet(u_hat, v_hat) != K.bottom() || K.join(u_hat, v_hat) != K.top() ||
      u_hat == K.bottom() || u_hat == K.top() || v_hat == K.bottom() ||
      v_hat == K.top())
    throw LatticeError(Code::NotComplementaryPair,
                       "elements are not a nontrivial complementary pair", u_hat,
                       v_hat);

  int lc = *rect.corners.lc, rc = *rect.corners.rc;
  Bits I = K.down_set(lc), J = K.down_set(rc);
  auto gamma_class = [&](int x) {
    return (has_bit(I, x) ? 1 : 0) | (has_bit(J, x) ? 2 : 0);
  };
  // Blocks of gamma = alpha /\ beta: I&J, I-J, J-I, rest; all four must
  // be inhabited (0, lc, rc and the top witness them).
  std::array<int, 4> first{-1, -1, -1, -1};
  for (int x = 0; x < K.size(); ++x) {
    int c = gamma_class(x);
    if (first[c] < 0) first[c] = x;
  }
  if (first[0] < 0 || first[1] < 0 || first[2] < 0 || first[3] < 0)
    throw LatticeError(Code::ClassificationFailed, "gamma has fewer than four blocks");

  bool u_left = has_bit(I, u_hat) && !has_bit(J, u_hat) && has_bit(J, v_hat) &&
                !has_bit(I, v_hat);
  bool u_right = has_bit(J, u_hat) && !has_bit(I, u_hat) && has_bit(I, v_hat) &&
                 !has_bit(J, v_hat);
  if (!u_left && !u_right)
    throw LatticeError(Code::ClassificationFailed,
                       "complementary pair does not split across the corner ideals",
                       u_hat, v_hat);

  BooleanRetraction out;
  out.map.assign(K.size(), -1);
  std::vector<int> rep(K.size());
  for (int x = 0; x < K.size(); ++x) {
    int c = gamma_class(x);
    rep[x] = first[c];
    switch (c) {
      case 3: out.map[x] = 0; break;              // I & J = {0}
      case 1: out.map[x] = u_left ? 1 : 2; break;  // lc side
      case 2: out.map[x] = u_left ? 2 : 1; break;  // rc side
      case 0: out.map[x] = 3; break;               // top block
    }
  }
  out.gamma = Congruence(std::move(rep));
  return out;
}

std::vector<int> two_element_retraction(const PlanarDiagram& k) {
  auto rect = is_rectangular(k);
  if (!rect.rectangular)
    throw LatticeError(Code::NotRectangular, "retraction needs a rectangular lattice");
  Bits I = k.lattice().down_set(*rect.corners.lc);
  std::vector<int> map(k.lattice().size());
  for (int x = 0; x < k.lattice().size(); ++x) map[x] = has_bit(I, x) ? 0 : 1;
  return map;
}

}  // namespace slimlat
