#include "slimlat/equations.hpp"

#include <algorithm>
#include <random>

#include "slimlat/builders.hpp"

namespace slimlat {

using Code = LatticeError::Code;

int EquationSystem::unknown(int i) {
  unknowns = std::max(unknowns, i + 1);
  nodes.push_back({Term::Kind::Unknown, i, -1, -1});
  return static_cast<int>(nodes.size()) - 1;
}

int EquationSystem::param(int element) {
  nodes.push_back({Term::Kind::Param, element, -1, -1});
  return static_cast<int>(nodes.size()) - 1;
}

int EquationSystem::meet(int a, int b) {
  nodes.push_back({Term::Kind::Meet, -1, a, b});
  return static_cast<int>(nodes.size()) - 1;
}

int EquationSystem::join(int a, int b) {
  nodes.push_back({Term::Kind::Join, -1, a, b});
  return static_cast<int>(nodes.size()) - 1;
}

EquationSystem transport(const EquationSystem& sys, const std::vector<int>& f) {
  EquationSystem out = sys;
  for (Term& t : out.nodes)
    if (t.kind == Term::Kind::Param) t.payload = f[t.payload];
  return out;
}

int eval_term(const EquationSystem& sys, const FiniteLattice& L, int node,
              const std::vector<int>& assignment) {
  // Nodes are created children-first, so a forward sweep suffices.
  std::vector<int> value(sys.nodes.size(), -1);
  for (int i = 0; i <= node; ++i) {
    const Term& t = sys.nodes[i];
    switch (t.kind) {
      case Term::Kind::Unknown: value[i] = assignment[t.payload]; break;
      case Term::Kind::Param: value[i] = t.payload; break;
      case Term::Kind::Meet: value[i] = L.meet(value[t.lhs], value[t.rhs]); break;
      case Term::Kind::Join: value[i] = L.join(value[t.lhs], value[t.rhs]); break;
    }
  }
  return value[node];
}

namespace {

bool satisfied(const EquationSystem& sys, const FiniteLattice& L,
               const std::vector<int>& assignment) {
  std::vector<int> value(sys.nodes.size(), -1);
  for (size_t i = 0; i < sys.nodes.size(); ++i) {
    const Term& t = sys.nodes[i];
    switch (t.kind) {
      case Term::Kind::Unknown: value[i] = assignment[t.payload]; break;
      case Term::Kind::Param: value[i] = t.payload; break;
      case Term::Kind::Meet: value[i] = L.meet(value[t.lhs], value[t.rhs]); break;
      case Term::Kind::Join: value[i] = L.join(value[t.lhs], value[t.rhs]); break;
    }
  }
  for (auto [a, b] : sys.equations)
    if (value[a] != value[b]) return false;
  return true;
}

}  // namespace

std::optional<std::vector<int>> solve_equations(const FiniteLattice& L,
                                                const EquationSystem& sys,
                                                long long budget) {
  int n = L.size();
  long long space = 1;
  for (int i = 0; i < sys.unknowns; ++i) {
    space *= n;
    if (space > budget)
      throw LatticeError(Code::BudgetExceeded, "equation search space too large");
  }
  std::vector<int> a(sys.unknowns, 0);
  for (long long code = 0; code < space; ++code) {
    long long c = code;
    for (int i = 0; i < sys.unknowns; ++i) {
      a[i] = static_cast<int>(c % n);
      c /= n;
    }
    if (satisfied(sys, L, a)) return a;
  }
  if (sys.unknowns == 0 && satisfied(sys, L, {})) return std::vector<int>{};
  return std::nullopt;
}

std::vector<EquationSystem> default_equation_sampler(const FiniteLattice& L,
                                                     const SamplerOptions& opts) {
  std::vector<EquationSystem> out;
  int n = L.size();

  // Complement systems: x ^ p = 0, x v p = 1.
  for (int p = 0; p < n; ++p) {
    EquationSystem s;
    s.name = "complement(" + std::to_string(p) + ")";
    int x = s.unknown(0);
    s.equate(s.meet(x, s.param(p)), s.param(L.bottom()));
    int x2 = s.unknown(0);
    s.equate(s.join(x2, s.param(p)), s.param(L.top()));
    out.push_back(std::move(s));
  }

  // Interval-parallel systems for (p, t) at height distance two: the
  // equations say x meets like p outside the filter of t and joins like
  // t outside the ideal of p.  A one-element extension inserting d with
  // p < d < t solves the transported system; at home the self-equations
  // force x = p and the unique-cover equation kills it.
  for (int p = 0; p < n; ++p)
    for (int t = 0; t < n; ++t) {
      if (!L.leq(p, t) || L.height(t) != L.height(p) + 2) continue;
      EquationSystem s;
      s.name = "parallel(" + std::to_string(p) + "," + std::to_string(t) + ")";
      for (int w = 0; w < n; ++w) {
        if (!L.leq(t, w)) {
          int x = s.unknown(0);
          s.equate(s.meet(x, s.param(w)), s.param(L.meet(p, w)));
        }
        if (!L.leq(w, p)) {
          int x = s.unknown(0);
          s.equate(s.join(x, s.param(w)), s.param(L.join(t, w)));
        }
      }
      out.push_back(std::move(s));
    }

  // Relative complement systems over the irreducible pool:
  // x ^ p = q, x v p = r.
  auto irr = irreducibles(L);
  Bits pool = irr.jir | irr.mir | bit(L.bottom()) | bit(L.top());
  for (int p : bits_to_vector(pool))
    for (int q : bits_to_vector(pool)) {
      if (!L.leq(q, p) || q == p) continue;
      EquationSystem s;
      s.name = "relcomplement(" + std::to_string(p) + "," + std::to_string(q) + ")";
      int x = s.unknown(0);
      s.equate(s.meet(x, s.param(p)), s.param(q));
      int x2 = s.unknown(0);
      s.equate(s.join(x2, s.param(p)), s.param(L.top()));
      out.push_back(std::move(s));
    }

  // Seeded random systems with at most two equations, two unknowns and
  // depth three.
  std::mt19937_64 rng(opts.seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull);
  auto rnd = [&](int m) { return static_cast<int>(rng() % m); };
  for (int i = 0; i < opts.random_systems; ++i) {
    EquationSystem s;
    s.name = "random(" + std::to_string(i) + ")";
    int unknowns = 1 + rnd(2);
    int eqs = 1 + rnd(2);
    auto build = [&](auto&& self, int depth) -> int {
      if (depth == 0 || rnd(3) == 0)
        return rnd(2) ? s.unknown(rnd(unknowns)) : s.param(rnd(n));
      int a = self(self, depth - 1), b = self(self, depth - 1);
      return rnd(2) ? s.meet(a, b) : s.join(a, b);
    };
    for (int e = 0; e < eqs; ++e) {
      int lhs = build(build, opts.max_random_depth);
      // Right-hand sides stay shallow so systems are frequently solvable
      // somewhere, which is what makes a sample informative.
      int rhs = rnd(2) ? s.param(rnd(n)) : s.unknown(rnd(unknowns));
      s.equate(lhs, rhs);
    }
    if (s.unknowns == 0) continue;
    out.push_back(std::move(s));
  }
  return out;
}

ClosednessVerdict algebraic_closedness_verdict(const UniverseMember& member,
                                               const Universe& u, Category cat,
                                               const ClosednessOptions& opts) {
  const FiniteLattice& L = member.lattice;
  ClosednessVerdict verdict;

  // Collect probe targets (diagram, mono) pairs.
  struct Probe {
    const PlanarDiagram* diagram;
    std::optional<PlanarDiagram> owned;
    std::vector<int> mono;
    int universe_index = -1;
    std::string note;
  };
  std::vector<Probe> probes;

  if (member.diagram) {
    if (auto w = proper_extension_witness(*member.diagram)) {
      Probe p;
      p.owned = std::move(w->extended);
      p.mono = w->embedding;
      p.note = "one-element extension";
      probes.push_back(std::move(p));
    }
    if (cat == Category::ZeroOne) {
      if (auto fk = fork_counterexample(member)) {
        Probe p;
        p.owned = std::move(fk->first);
        p.mono = std::move(fk->second);
        p.note = "fork extension";
        probes.push_back(std::move(p));
      }
    }
  }
  HomSearchOptions mono_opts;
  mono_opts.mono_only = true;
  for (size_t i = 0; i < u.members.size(); ++i) {
    const UniverseMember& target = u.members[i];
    if (!target.slim_semimodular || !target.diagram) continue;
    if (target.lattice.size() <= L.size() ||
        target.lattice.size() > L.size() + opts.universe_probe_margin)
      continue;
    if (cat == Category::LengthPreserving &&
        target.lattice.length() != L.length())
      continue;
    int budget = opts.max_monos_per_target;
    enumerate_homs(L, target.lattice, cat,
                   [&](const std::vector<int>& f) {
                     Probe p;
                     p.universe_index = static_cast<int>(i);
                     p.diagram = &*target.diagram;
                     p.mono = f;
                     probes.push_back(std::move(p));
                     return --budget > 0;
                   },
                   mono_opts);
  }
  for (Probe& p : probes)
    if (p.owned) p.diagram = &*p.owned;

  // Retraction-encoding systems: one unknown per target element, the
  // equations pin the unknowns over the image and say "homomorphism".
  // Solvable at home iff a plain-homomorphism retraction exists, which
  // the pinned search decides directly.
  for (const Probe& p : probes) {
    if (!find_retraction_any(L, p.diagram->lattice(), p.mono)) {
      verdict.closed = false;
      ClosednessCounterexample ce;
      ce.system = "retraction-system(" + p.note + ")";
      ce.mono = p.mono;
      ce.universe_index = p.universe_index;
      if (p.owned) ce.built = *p.owned;
      verdict.counterexample = std::move(ce);
      return verdict;
    }
  }

  // Sampled explicit systems.
  auto systems = default_equation_sampler(L, opts.sampler);
  for (const EquationSystem& sys : systems) {
    if (solve_equations(L, sys)) continue;  // solvable at home: no issue
    for (const Probe& p : probes) {
      EquationSystem moved = transport(sys, p.mono);
      if (solve_equations(p.diagram->lattice(), moved)) {
        verdict.closed = false;
        ClosednessCounterexample ce;
        ce.system = sys.name;
        ce.mono = p.mono;
        ce.universe_index = p.universe_index;
        if (p.owned) ce.built = *p.owned;
        verdict.counterexample = std::move(ce);
        return verdict;
      }
    }
  }
  return verdict;
}

}  // namespace slimlat
