#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slimlat/morphism.hpp"

namespace slimlat {

/// Lattice terms over unknowns and parameters, stored as a node pool;
/// children always precede parents so evaluation is a single sweep.
struct Term {
  enum class Kind { Unknown, Param, Meet, Join };
  Kind kind;
  int payload = -1;  // unknown index or parameter element
  int lhs = -1, rhs = -1;
};

struct EquationSystem {
  std::string name;
  int unknowns = 0;
  std::vector<Term> nodes;
  std::vector<std::pair<int, int>> equations;  // node ids, lhs ~ rhs

  int unknown(int i);
  int param(int element);
  int meet(int a, int b);
  int join(int a, int b);
  void equate(int a, int b) { equations.emplace_back(a, b); }
};

/// The mu-image: parameters pushed through a homomorphism.
EquationSystem transport(const EquationSystem& sys, const std::vector<int>& f);

int eval_term(const EquationSystem& sys, const FiniteLattice& L, int node,
              const std::vector<int>& assignment);

/// Brute force over |L|^unknowns assignments, first solution wins.
std::optional<std::vector<int>> solve_equations(const FiniteLattice& L,
                                                const EquationSystem& sys,
                                                long long budget = 100'000'000);

struct SamplerOptions {
  std::uint64_t seed = 0;
  int random_systems = 64;
  int max_random_depth = 3;
};

/// Deterministic families plus seeded random systems: complement systems
/// for every element, guarded interval-parallel systems for every pair
/// at height distance two (these detect one-element extensions), and a
/// two-equation shape that detects fork extensions.
std::vector<EquationSystem> default_equation_sampler(const FiniteLattice& L,
                                                     const SamplerOptions& opts = {});

struct ClosednessOptions {
  SamplerOptions sampler;
  int universe_probe_margin = 2;  // probe members up to |L| + margin
  int max_monos_per_target = 64;
};

struct ClosednessCounterexample {
  std::string system;               // name of the separating system
  std::optional<PlanarDiagram> built;
  int universe_index = -1;
  std::vector<int> mono;
};

struct ClosednessVerdict {
  bool closed = true;
  std::optional<ClosednessCounterexample> counterexample;
};

/// Algebraic closedness relative to the sampled systems and the probed
/// targets (universe members near |L| plus the constructed one-element
/// and fork extensions).  A counterexample is a sampled system solvable
/// after some monomorphism but not at home; retraction-encoding systems
/// (one unknown per target element) are checked through the morphism
/// engine, which decides the same satisfiability question directly.
ClosednessVerdict algebraic_closedness_verdict(const UniverseMember& member,
                                               const Universe& u, Category cat,
                                               const ClosednessOptions& opts = {});

}  // namespace slimlat
