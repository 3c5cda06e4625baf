#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slimlat {

/// Element subsets are bitmasks over the element indices; lattices are
/// capped at 64 elements so a subset always fits in one word.
using Bits = std::uint64_t;

inline constexpr int kMaxElements = 64;

constexpr Bits bit(int i) { return Bits{1} << i; }
constexpr bool has_bit(Bits s, int i) { return (s >> i) & 1; }
int popcount(Bits s);
/// Calls fn(i) for every set bit, ascending.
template <typename Fn>
void for_each_bit(Bits s, Fn&& fn) {
  while (s) {
    int i = __builtin_ctzll(s);
    fn(i);
    s &= s - 1;
  }
}
std::vector<int> bits_to_vector(Bits s);
Bits vector_to_bits(const std::vector<int>& v);

struct LatticeError : std::runtime_error {
  enum class Code {
    SizeLimit,
    NotLinearExtension,
    NotReduced,
    NoBounds,
    NotALattice,
    IndexOutOfRange,
    NotSlimSemimodular,
    InconsistentOrder,
    CrossingDetected,
    NotACell,
    InternalValidationFailed,
    NotRectangular,
    NotACorner,
    NotOnBoundary,
    NotMaximalChain,
    NotPrime,
    NotComplementaryPair,
    ClassificationFailed,
    NotMono,
    SizeBoundExceeded,
    BudgetExceeded,
    CeilingExceeded,
    CertificateSearchFailed,
    ParseError,
    ConfigInvalid,
  };
  Code code;
  int a = -1, b = -1;  // witness elements/edge, when meaningful
  LatticeError(Code c, const std::string& msg, int a_ = -1, int b_ = -1)
      : std::runtime_error(msg), code(c), a(a_), b(b_) {}
};

/// Finite bounded lattice on elements 0..n-1.  Indices form a linear
/// extension (x covered by y implies x < y), element 0 is the bottom and
/// n-1 the top.  All order data is precomputed at construction; instances
/// are immutable and safe to share across threads.
class FiniteLattice {
 public:
  /// Validates and builds.  `full_checks` additionally asserts
  /// commutativity/absorption of the derived tables and associativity on
  /// all triples; the structural checks (linear extension, reduced cover
  /// set, unique bounds, existence of all meets and joins) always run.
  static FiniteLattice build(int n, std::vector<std::pair<int, int>> covers,
                             bool full_checks = false);

  int size() const { return n_; }
  int length() const { return length_; }
  int height(int x) const { return height_[x]; }
  bool leq(int x, int y) const { return has_bit(up_[x], y); }
  bool covers_rel(int x, int y) const { return has_bit(cover_up_[x], y); }
  int meet(int x, int y) const { return meet_[x * n_ + y]; }
  int join(int x, int y) const { return join_[x * n_ + y]; }
  Bits up_set(int x) const { return up_[x]; }      // {y : y >= x}
  Bits down_set(int x) const { return down_[x]; }  // {y : y <= x}
  int bottom() const { return 0; }
  int top() const { return n_ - 1; }

  const std::vector<int>& upper_covers(int x) const { return ucov_[x]; }
  const std::vector<int>& lower_covers(int x) const { return lcov_[x]; }
  const std::vector<std::pair<int, int>>& cover_pairs() const { return covers_; }

  FiniteLattice() = default;  // empty state; build() makes real instances

  void check_index(int x) const {
    if (x < 0 || x >= n_)
      throw LatticeError(LatticeError::Code::IndexOutOfRange,
                         "element index out of range", x);
  }

 private:
  int n_ = 0;
  int length_ = 0;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> ucov_, lcov_;
  std::vector<Bits> up_, down_, cover_up_;
  std::vector<int> meet_, join_;
  std::vector<int> height_;
};

enum class OrderQueryKind { Leq, Meet, Join, Height };

/// Uniform query entry point used by the CLI; y is ignored for Height.
int order_query(const FiniteLattice& L, OrderQueryKind kind, int x, int y = -1);

struct SemimodularityReport {
  bool ok = true;
  int x = -1, y = -1;  // violating pair when !ok
};
SemimodularityReport is_semimodular(const FiniteLattice& L);

struct SlimnessReport {
  bool ok = true;
  std::array<int, 3> antichain{-1, -1, -1};  // 3-antichain in Jir when !ok
};
SlimnessReport is_slim(const FiniteLattice& L);

bool is_slim_semimodular(const FiniteLattice& L);

struct IrreducibleSets {
  Bits jir = 0;   // non-zero elements with exactly one lower cover
  Bits mir = 0;   // non-top elements with exactly one upper cover
  Bits dirr = 0;  // jir & mir
};
IrreducibleSets irreducibles(const FiniteLattice& L);

enum class PrincipalKind { Ideal, Filter };
struct PrincipalSet {
  Bits members = 0;
  bool is_chain = false;
};
PrincipalSet principal(const FiniteLattice& L, int u, PrincipalKind kind);

/// True when the members of `s` are pairwise comparable.
bool is_chain_set(const FiniteLattice& L, Bits s);
bool is_down_closed(const FiniteLattice& L, Bits s);
bool is_up_closed(const FiniteLattice& L, Bits s);
/// True for a maximal chain: a chain containing 0 and n-1 whose size is
/// length+1 (valid for graded lattices, the only place this is used).
bool is_maximal_chain(const FiniteLattice& L, Bits s);

/// Greedily splits a width-<=2 poset given as a bitmask into two chains.
/// Used by diagram inference; returns false if the set has a 3-antichain.
bool two_chain_cover(const FiniteLattice& L, Bits s, Bits& chain1, Bits& chain2);

/// Relabels elements through `perm` (new_index = perm[old_index]); perm
/// must map the order onto a linear extension.
FiniteLattice relabel(const FiniteLattice& L, const std::vector<int>& perm);

}  // namespace slimlat
