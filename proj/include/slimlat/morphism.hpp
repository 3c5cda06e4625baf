#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slimlat/enumerate.hpp"

namespace slimlat {

/// The three morphism classes used throughout: all lattice homomorphisms,
/// {0,1}-preserving homomorphisms, and length-preserving embeddings
/// ({0,1}-embeddings preserving and reflecting covers).
enum class Category { All, ZeroOne, LengthPreserving };

std::string category_name(Category c);

struct MorphismViolation {
  enum class Kind {
    Arity,
    Range,
    Meet,
    Join,
    Bounds,
    NotInjective,
    CoverNotPreserved,
    CoverNotReflected,
    Length,
  };
  Kind kind;
  int x = -1, y = -1;
};

/// Checks the category contract for f : L -> K; nullopt means f belongs.
std::optional<MorphismViolation> check_morphism(const FiniteLattice& L,
                                                const FiniteLattice& K,
                                                const std::vector<int>& f,
                                                Category cat);

/// Monomorphisms coincide with injective morphisms in these categories.
bool is_mono(const FiniteLattice& L, const FiniteLattice& K,
             const std::vector<int>& f, Category cat);

struct HomSearchOptions {
  const std::vector<int>* pinned = nullptr;  // partial map over L, -1 = free
  bool mono_only = false;                    // restrict to injective maps
  long long budget = -1;                     // search nodes; -1 = unlimited
};

/// Exhaustive, duplicate-free, deterministic enumeration of the category
/// morphisms L -> K by backtracking along the linear extension of L with
/// meet/join consistency propagation.  The callback returns false to stop.
void enumerate_homs(const FiniteLattice& L, const FiniteLattice& K, Category cat,
                    const std::function<bool(const std::vector<int>&)>& emit,
                    const HomSearchOptions& opts = {});

std::vector<std::vector<int>> collect_homs(const FiniteLattice& L,
                                           const FiniteLattice& K, Category cat,
                                           const HomSearchOptions& opts = {});

long long count_homs(const FiniteLattice& L, const FiniteLattice& K, Category cat,
                     const HomSearchOptions& opts = {});

/// First morphism rho : K -> L of the category with rho(iota(x)) = x, or
/// nullopt after exhausting the search space.
std::optional<std::vector<int>> find_retraction(const FiniteLattice& L,
                                                const FiniteLattice& K,
                                                const std::vector<int>& iota,
                                                Category cat);

/// Like find_retraction but rho only needs to be a lattice homomorphism,
/// the weakest reading used by the rigidity argument.
std::optional<std::vector<int>> find_retraction_any(const FiniteLattice& L,
                                                    const FiniteLattice& K,
                                                    const std::vector<int>& iota);

struct VerdictWitness {
  int universe_index = -1;               // target inside the universe, or -1
  std::optional<PlanarDiagram> built;    // constructed target otherwise
  std::vector<int> map;                  // the monomorphism L -> K
  std::string note;
};

struct Verdict {
  bool positive = true;
  std::optional<VerdictWitness> witness;
};

/// Maximality relative to the universe: no length-preserving embedding
/// into a strictly larger member of equal length, cross-checked against
/// the direct one-element extension search.
Verdict maximality_verdict(const UniverseMember& member, const Universe& u);

struct RetractVerdictOptions {
  int max_target_size = kMaxElements;
};

/// Absolute-retract verdict relative to the universe: every monomorphism
/// into a member (and into the constructed witness extensions) admits a
/// retraction in the category.
Verdict absolute_retract_verdict(const UniverseMember& member, const Universe& u,
                                 Category cat, const RetractVerdictOptions& opts = {});

/// The fork extension at the upper-left cell of the final fork's seven
/// element sublattice; defined for members whose certificate ends with a
/// fork (every patch lattice with at least five elements qualifies).
std::optional<std::pair<PlanarDiagram, std::vector<int>>> fork_counterexample(
    const UniverseMember& member);

}  // namespace slimlat
