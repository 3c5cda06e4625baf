#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slimlat/classify.hpp"

namespace slimlat {

/// Canonical byte string: equal forms iff isomorphic lattices.  Computed
/// by individualization-refinement seeded with (height, up-degree,
/// down-degree), minimizing the packed cover matrix.
using CanonicalForm = std::string;
CanonicalForm canonical_form(const FiniteLattice& L);

/// Explicit cover-preserving bijection a -> b, or nullopt.  Exhaustive
/// backtracking; serves as the independent oracle for canonical_form.
std::optional<std::vector<int>> find_isomorphism(const FiniteLattice& a,
                                                 const FiniteLattice& b);

enum class ClassFilter { AllLattices, SlimSemimodular, Rectangular, Patch };

struct UniverseMember {
  FiniteLattice lattice;
  std::optional<PlanarDiagram> diagram;  // present for slim semimodular members
  CanonicalForm cf;
  std::optional<GridCertificate> certificate;
  bool slim_semimodular = false;
  bool rectangular = false;
  bool patch = false;
};

/// An isomorph-free indexed family of lattices, sorted by (size, form).
struct Universe {
  int max_size = 0;
  ClassFilter filter = ClassFilter::SlimSemimodular;
  std::vector<UniverseMember> members;
  std::map<CanonicalForm, int> index;

  const UniverseMember* find(const CanonicalForm& cf) const {
    auto it = index.find(cf);
    return it == index.end() ? nullptr : &members[it->second];
  }
  void finalize();  // sorts and rebuilds the index
};

inline constexpr int kGenerateCeiling = 14;
inline constexpr int kBruteForceCeiling = 8;

struct GenerateOptions {
  int ceiling = kGenerateCeiling;
  /// Cap for intermediate lattices during closure.  Reaching every
  /// member of size <= N requires rectangular extensions up to 2(N-1)
  /// elements (chains are the extreme case), so the default allows that.
  int intermediate_cap = 0;  // 0: derived from max_size
};

/// Closure of the grids under fork extension, then under corner removal,
/// with canonical-form deduplication; every member carries a replayable
/// certificate.  Deterministic.
Universe generate_universe(int max_size, ClassFilter filter,
                           const GenerateOptions& opts = {});

/// Every lattice up to isomorphism by exhaustive cover-set search; the
/// independent oracle for the generated universe.  The default ceiling
/// keeps the search at desk scale; raising it is on the caller.
Universe brute_force_universe(int max_size, int ceiling = kBruteForceCeiling);

}  // namespace slimlat
