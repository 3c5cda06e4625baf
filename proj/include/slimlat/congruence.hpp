#pragma once

#include <optional>
#include <vector>

#include "slimlat/diagram.hpp"

namespace slimlat {

/// A lattice congruence stored as a canonical block labelling:
/// rep(x) = least element of x's block.  Equality of labellings is
/// equality of congruences, which makes sets of congruences cheap.
class Congruence {
 public:
  Congruence() = default;
  explicit Congruence(std::vector<int> rep);
  static Congruence diagonal(int n);
  static Congruence full(int n);

  int size() const { return static_cast<int>(rep_.size()); }
  int rep(int x) const { return rep_[x]; }
  bool same(int x, int y) const { return rep_[x] == rep_[y]; }
  int num_blocks() const { return blocks_; }
  Bits block_of(int x) const;
  const std::vector<int>& reps() const { return rep_; }

  friend bool operator==(const Congruence&, const Congruence&) = default;
  friend auto operator<=>(const Congruence&, const Congruence&) = default;

 private:
  std::vector<int> rep_;
  int blocks_ = 0;
};

/// Compatibility check (and convexity of blocks); used as an invariant
/// guard and by the brute-force oracle in the tests.
bool is_congruence(const FiniteLattice& L, const Congruence& c);

/// Least congruence collapsing (a, b).
Congruence principal_congruence(const FiniteLattice& L, int a, int b);

/// The meet of two congruences is the common refinement; their join is
/// the transitive closure of the union.
Congruence congruence_meet(const FiniteLattice& L, const Congruence& x,
                           const Congruence& y);
Congruence congruence_join(const FiniteLattice& L, const Congruence& x,
                           const Congruence& y);

inline constexpr int kCongruenceSizeBound = 12;

/// All congruences as joins of principal ones, deterministically ordered.
std::vector<Congruence> all_congruences(const FiniteLattice& L,
                                        int bound = kCongruenceSizeBound);

/// Quotient lattice plus the projection map (a surjective homomorphism
/// with the given kernel).
std::pair<FiniteLattice, std::vector<int>> quotient(const FiniteLattice& L,
                                                    const Congruence& theta);

/// True when distinct congruences restrict to distinct partitions of the
/// maximal chain `chain`.
bool chain_determination_check(const FiniteLattice& L, Bits chain,
                               int bound = kCongruenceSizeBound);

struct PrimeIdealResult {
  std::optional<Congruence> congruence;  // two blocks: ideal and filter
  int witness_x = -1, witness_y = -1;    // pair breaking primality
  bool join_side = false;                // witness is a join escaping the ideal
};
PrimeIdealResult prime_ideal_congruence(const FiniteLattice& L, Bits ideal);

/// The four-block retraction onto the boolean square induced by the
/// principal ideals of the two weak corners of a rectangular lattice.
/// The target is the fixture B4 (0, atoms 1 and 2, top 3) and the map
/// sends u_hat to 1 and v_hat to 2.
struct BooleanRetraction {
  std::vector<int> map;  // K -> B4
  Congruence gamma;
};
BooleanRetraction boolean_retraction(const PlanarDiagram& k, int u_hat, int v_hat);

/// Two-block retraction onto the two-element chain via the left weak
/// corner's ideal.
std::vector<int> two_element_retraction(const PlanarDiagram& k);

}  // namespace slimlat
