#include "slimlat/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace slimlat {

int popcount(Bits s) { return __builtin_popcountll(s); }

std::vector<int> bits_to_vector(Bits s) {
  std::vector<int> v;
  for_each_bit(s, [&](int i) { v.push_back(i); });
  return v;
}

Bits vector_to_bits(const std::vector<int>& v) {
  Bits s = 0;
  for (int i : v) s |= bit(i);
  return s;
}

FiniteLattice FiniteLattice::build(int n, std::vector<std::pair<int, int>> covers,
                                   bool full_checks) {
  using Code = LatticeError::Code;
  if (n < 1 || n > kMaxElements)
    throw LatticeError(Code::SizeLimit, "element count must be in 1..64");
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
  for (auto [x, y] : covers) {
    if (x < 0 || y < 0 || x >= n || y >= n)
      throw LatticeError(Code::IndexOutOfRange, "cover pair out of range", x, y);
    if (x >= y)
      throw LatticeError(Code::NotLinearExtension,
                         "cover pair does not respect the linear extension", x, y);
  }

  FiniteLattice L;
  L.n_ = n;
  L.covers_ = covers;
  L.up_.assign(n, 0);
  L.down_.assign(n, 0);
  L.cover_up_.assign(n, 0);
  L.ucov_.assign(n, {});
  L.lcov_.assign(n, {});

  // Reachability along covers gives the order relation.
  for (int x = 0; x < n; ++x) L.down_[x] = bit(x);
  for (auto [x, y] : covers) L.cover_up_[x] |= bit(y);
  for (int y = 0; y < n; ++y) {
    for (auto [x, yy] : covers) {
      if (yy == y) L.down_[y] |= L.down_[x];
    }
  }
  for (int x = 0; x < n; ++x)
    for_each_bit(L.down_[x], [&](int y) { L.up_[y] |= bit(x); });

  // A cover pair implied by transitivity through a third element is a
  // redundancy in the input.
  for (auto [x, y] : covers) {
    for (int z = x + 1; z < y; ++z) {
      if (has_bit(L.down_[z], x) && has_bit(L.down_[y], z) && z != x && z != y)
        throw LatticeError(Code::NotReduced, "cover pair is implied transitively",
                           x, y);
    }
  }

  for (auto [x, y] : covers) {
    L.ucov_[x].push_back(y);
    L.lcov_[y].push_back(x);
  }
  for (int x = 0; x < n; ++x) {
    std::sort(L.ucov_[x].begin(), L.ucov_[x].end());
    std::sort(L.lcov_[x].begin(), L.lcov_[x].end());
  }

  // The designated bottom/top must at least touch the order.
  if (n >= 2 && L.ucov_[0].empty())
    throw LatticeError(Code::NoBounds, "element 0 is not a unique bottom", 0);
  if (n >= 2 && L.lcov_[n - 1].empty())
    throw LatticeError(Code::NoBounds, "last element is not a unique top", n - 1);

  // Meets and joins.  In a linear extension the meet of x,y, when it
  // exists, is the highest-index common lower bound; existence requires
  // every common lower bound to sit below it.
  L.meet_.assign(n * n, -1);
  L.join_.assign(n * n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y <= x; ++y) {
      Bits common = L.down_[x] & L.down_[y];
      if (common == 0)
        throw LatticeError(Code::NotALattice, "pair has no common lower bound", x, y);
      int m = 63 - __builtin_clzll(common);
      if ((common & ~L.down_[m]) != 0)
        throw LatticeError(Code::NotALattice, "pair has no meet", x, y);
      L.meet_[x * n + y] = L.meet_[y * n + x] = m;

      Bits commonu = L.up_[x] & L.up_[y];
      if (commonu == 0)
        throw LatticeError(Code::NotALattice, "pair has no common upper bound", x, y);
      int j = __builtin_ctzll(commonu);
      if ((commonu & ~L.up_[j]) != 0)
        throw LatticeError(Code::NotALattice, "pair has no join", x, y);
      L.join_[x * n + y] = L.join_[y * n + x] = j;
    }
  }

  L.height_.assign(n, 0);
  for (auto [x, y] : covers) L.height_[y] = std::max(L.height_[y], L.height_[x] + 1);
  L.length_ = L.height_[n - 1];

  if (full_checks) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (L.meet(x, y) != L.meet(y, x) || L.join(x, y) != L.join(y, x))
          throw LatticeError(Code::NotALattice, "tables not commutative", x, y);
        if (L.meet(x, L.join(x, y)) != x || L.join(x, L.meet(x, y)) != x)
          throw LatticeError(Code::NotALattice, "absorption fails", x, y);
      }
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          if (L.meet(L.meet(x, y), z) != L.meet(x, L.meet(y, z)))
            throw LatticeError(Code::NotALattice, "meet not associative", x, y);
          if (L.join(L.join(x, y), z) != L.join(x, L.join(y, z)))
            throw LatticeError(Code::NotALattice, "join not associative", x, y);
        }
  }
  return L;
}

int order_query(const FiniteLattice& L, OrderQueryKind kind, int x, int y) {
  L.check_index(x);
  if (kind != OrderQueryKind::Height) L.check_index(y);
  switch (kind) {
    case OrderQueryKind::Leq:
      return L.leq(x, y) ? 1 : 0;
    case OrderQueryKind::Meet:
      return L.meet(x, y);
    case OrderQueryKind::Join:
      return L.join(x, y);
    case OrderQueryKind::Height:
      return L.height(x);
  }
  return -1;
}

SemimodularityReport is_semimodular(const FiniteLattice& L) {
  int n = L.size();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (L.covers_rel(L.meet(x, y), x) && !L.covers_rel(y, L.join(x, y)))
        return {false, x, y};
    }
  }
  return {};
}

SlimnessReport is_slim(const FiniteLattice& L) {
  auto irr = irreducibles(L);
  auto jir = bits_to_vector(irr.jir);
  int k = static_cast<int>(jir.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (L.leq(jir[i], jir[j]) || L.leq(jir[j], jir[i])) continue;
      for (int l = j + 1; l < k; ++l) {
        if (!L.leq(jir[i], jir[l]) && !L.leq(jir[l], jir[i]) &&
            !L.leq(jir[j], jir[l]) && !L.leq(jir[l], jir[j]))
          return {false, {jir[i], jir[j], jir[l]}};
      }
    }
  return {};
}

bool is_slim_semimodular(const FiniteLattice& L) {
  return is_semimodular(L).ok && is_slim(L).ok;
}

IrreducibleSets irreducibles(const FiniteLattice& L) {
  IrreducibleSets r;
  int n = L.size();
  for (int x = 1; x < n; ++x)
    if (L.lower_covers(x).size() == 1) r.jir |= bit(x);
  for (int x = 0; x < n - 1; ++x)
    if (L.upper_covers(x).size() == 1) r.mir |= bit(x);
  r.dirr = r.jir & r.mir;
  return r;
}

PrincipalSet principal(const FiniteLattice& L, int u, PrincipalKind kind) {
  L.check_index(u);
  PrincipalSet r;
  r.members = kind == PrincipalKind::Ideal ? L.down_set(u) : L.up_set(u);
  r.is_chain = is_chain_set(L, r.members);
  return r;
}

bool is_chain_set(const FiniteLattice& L, Bits s) {
  auto v = bits_to_vector(s);
  for (size_t i = 0; i + 1 < v.size(); ++i)
    if (!L.leq(v[i], v[i + 1])) return false;  // sorted indices: chain iff consecutive comparable upward
  return true;
}

bool is_down_closed(const FiniteLattice& L, Bits s) {
  bool ok = true;
  for_each_bit(s, [&](int x) {
    if ((L.down_set(x) & ~s) != 0) ok = false;
  });
  return ok;
}

bool is_up_closed(const FiniteLattice& L, Bits s) {
  bool ok = true;
  for_each_bit(s, [&](int x) {
    if ((L.up_set(x) & ~s) != 0) ok = false;
  });
  return ok;
}

bool is_maximal_chain(const FiniteLattice& L, Bits s) {
  if (!is_chain_set(L, s)) return false;
  if (!has_bit(s, L.bottom()) || !has_bit(s, L.top())) return false;
  return popcount(s) == L.length() + 1;
}

bool two_chain_cover(const FiniteLattice& L, Bits s, Bits& chain1, Bits& chain2) {
  chain1 = chain2 = 0;
  auto elems = bits_to_vector(s);  // index order is a linear extension
  int k = static_cast<int>(elems.size());
  Bits c1 = 0, c2 = 0;
  // Greedy with a two-way fallback: each element extends one of the two
  // chains, branching only when both tops fit.
  auto dfs = [&](auto&& self, int i, int top1, int top2) -> bool {
    if (i == k) {
      chain1 = c1;
      chain2 = c2;
      return true;
    }
    int x = elems[i];
    if (top1 == -1 || L.leq(top1, x)) {
      c1 |= bit(x);
      if (self(self, i + 1, x, top2)) return true;
      c1 &= ~bit(x);
    }
    if (top2 == -1 || L.leq(top2, x)) {
      c2 |= bit(x);
      if (self(self, i + 1, top1, x)) return true;
      c2 &= ~bit(x);
    }
    return false;
  };
  return dfs(dfs, 0, -1, -1);
}

FiniteLattice relabel(const FiniteLattice& L, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> covers;
  covers.reserve(L.cover_pairs().size());
  for (auto [x, y] : L.cover_pairs()) covers.emplace_back(perm[x], perm[y]);
  return FiniteLattice::build(L.size(), std::move(covers));
}

}  // namespace slimlat
