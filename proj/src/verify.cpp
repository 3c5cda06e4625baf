#include "slimlat/verify.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "slimlat/builders.hpp"
#include "slimlat/congruence.hpp"
#include "slimlat/equations.hpp"
#include "slimlat/io.hpp"
#include "slimlat/morphism.hpp"
#include "slimlat/parallel.hpp"

namespace slimlat {

namespace {

FiniteLattice make_chain(int n) {
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return FiniteLattice::build(n, covers);
}

FiniteLattice make_b4() {
  return FiniteLattice::build(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

FiniteLattice make_s7() {
  return FiniteLattice::build(
      7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 6}, {4, 6}, {5, 6}});
}

std::vector<Bits> maximal_chains(const FiniteLattice& L) {
  std::vector<Bits> out;
  auto dfs = [&](auto&& self, int x, Bits acc) -> void {
    acc |= bit(x);
    if (x == L.top()) {
      out.push_back(acc);
      return;
    }
    for (int u : L.upper_covers(x)) self(self, u, acc);
  };
  dfs(dfs, 0, 0);
  return out;
}

// Runs `fn` over member indices in parallel; the lowest-index failure
// message wins, keeping reports deterministic.
std::string first_failure(int count, int jobs,
                          const std::function<std::string(int)>& fn) {
  std::vector<std::string> slots(count);
  parallel_for(count, jobs, [&](int i) { slots[i] = fn(i); });
  for (auto& s : slots)
    if (!s.empty()) return s;
  return "";
}

std::string describe_counts(const Universe& u) {
  std::map<int, int> counts;
  for (const auto& m : u.members) ++counts[m.lattice.size()];
  std::ostringstream os;
  for (auto [n, c] : counts) os << "n=" << n << ":" << c << " ";
  return os.str();
}

}  // namespace

VerifyContext::VerifyContext(std::uint64_t seed, int jobs, std::string cache_dir)
    : seed_(seed), jobs_(jobs), cache_dir_(std::move(cache_dir)) {}

const Universe& VerifyContext::universe(int max_size, ClassFilter filter) {
  auto key = std::pair(max_size, static_cast<int>(filter));
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  std::string path;
  if (!cache_dir_.empty()) {
    path = cache_dir_ + "/universe-" + std::to_string(max_size) + "-" +
           std::to_string(static_cast<int>(filter)) + ".jsonl";
    std::ifstream in(path);
    if (in) {
      Universe u = read_universe_jsonl(in, max_size, filter);
      return cache_.emplace(key, std::move(u)).first->second;
    }
  }
  Universe u = generate_universe(max_size, filter);
  if (!path.empty()) {
    std::filesystem::create_directories(cache_dir_);
    std::ofstream out(path);
    write_universe_jsonl(out, u);
  }
  return cache_.emplace(key, std::move(u)).first->second;
}

CriterionResult criterion_oracle_equivalence(VerifyContext& ctx, int max_n) {
  CriterionResult r{"structure-theorem-oracle", true, ""};
  Universe brute = brute_force_universe(max_n);
  const Universe& gen = ctx.universe(max_n, ClassFilter::SlimSemimodular);
  std::set<CanonicalForm> oracle, generated;
  for (const auto& m : brute.members)
    if (m.slim_semimodular) oracle.insert(m.cf);
  for (const auto& m : gen.members) generated.insert(m.cf);
  if (oracle != generated) {
    r.pass = false;
    std::ostringstream os;
    os << "canonical-form sets differ: oracle " << oracle.size() << " vs generated "
       << generated.size();
    r.detail = os.str();
    return r;
  }
  r.detail = "agree on " + std::to_string(oracle.size()) +
             " classes; " + describe_counts(gen);
  return r;
}

CriterionResult criterion_fork_closure(VerifyContext& ctx, int samples,
                                       int max_size) {
  CriterionResult r{"fork-closure", true, ""};
  const Universe& rects = ctx.universe(max_size, ClassFilter::Rectangular);
  std::mt19937_64 rng(ctx.seed() ^ 0xf0f0f0f0ull);
  for (int i = 0; i < samples; ++i) {
    const UniverseMember& m =
        rects.members[rng() % rects.members.size()];
    const auto& cells = m.diagram->four_cells();
    const FourCell& cell = cells[rng() % cells.size()];
    try {
      auto [next, rec] = add_fork(*m.diagram, cell);
      const FiniteLattice& K = next.lattice();
      if (!is_slim_semimodular(K)) throw LatticeError(
          LatticeError::Code::InternalValidationFailed, "predicates fail");
      if (K.length() != m.lattice.length() + 1)
        throw LatticeError(LatticeError::Code::InternalValidationFailed,
                           "length did not grow by one");
      // Exactly one new element is a meet-irreducible with two lower
      // covers: the fork top.
      std::vector<int> fresh{rec.new_top};
      fresh.insert(fresh.end(), rec.left_new.begin(), rec.left_new.end());
      fresh.insert(fresh.end(), rec.right_new.begin(), rec.right_new.end());
      int qualifying = 0;
      for (int x : fresh)
        if (x != K.top() && K.upper_covers(x).size() == 1 &&
            K.lower_covers(x).size() == 2)
          ++qualifying;
      if (qualifying != 1)
        throw LatticeError(LatticeError::Code::InternalValidationFailed,
                           "fork top count off");
      if (K.upper_covers(rec.new_top).size() != 1 ||
          K.lower_covers(rec.new_top).size() != 2)
        throw LatticeError(LatticeError::Code::InternalValidationFailed,
                           "fork top is not doubly special");
    } catch (const LatticeError& e) {
      r.pass = false;
      r.detail = "sample " + std::to_string(i) + ": " + e.what();
      return r;
    }
  }
  r.detail = std::to_string(samples) + " random forks validated";
  return r;
}

CriterionResult criterion_theorem_main(VerifyContext& ctx, int max_size) {
  CriterionResult r{"theorem-main-equivalence", true, ""};
  const Universe& u = ctx.universe(max_size, ClassFilter::SlimSemimodular);
  int count = static_cast<int>(u.members.size());
  std::string fail = first_failure(count, ctx.jobs(), [&](int i) -> std::string {
    const UniverseMember& m = u.members[i];
    bool small_or_patch = m.patch || m.lattice.size() <= 2;
    bool maximal = maximality_verdict(m, u).positive;
    RetractVerdictOptions opts;
    opts.max_target_size = max_size;
    bool ar = absolute_retract_verdict(m, u, Category::LengthPreserving, opts)
                  .positive;
    bool witness_maximal = !m.diagram ||
                           !proper_extension_witness(*m.diagram).has_value();
    if (maximal != small_or_patch || ar != small_or_patch ||
        witness_maximal != small_or_patch) {
      std::ostringstream os;
      os << "member " << i << " (n=" << m.lattice.size() << ")"
         << " patch/small=" << small_or_patch << " maximal=" << maximal
         << " ar=" << ar << " witness-maximal=" << witness_maximal;
      return os.str();
    }
    return "";
  });
  if (!fail.empty()) {
    r.pass = false;
    r.detail = fail;
    return r;
  }
  r.detail = "three characterizations coincide on " + std::to_string(count) +
             " members";
  return r;
}

CriterionResult criterion_retraction_rigidity(VerifyContext& ctx, int max_size) {
  CriterionResult r{"retraction-rigidity", true, ""};
  const Universe& u = ctx.universe(max_size, ClassFilter::SlimSemimodular);
  struct Pair {
    int small, big;
  };
  std::vector<Pair> pairs;
  for (size_t i = 0; i < u.members.size(); ++i)
    for (size_t j = 0; j < u.members.size(); ++j) {
      if (u.members[i].lattice.length() != u.members[j].lattice.length()) continue;
      if (u.members[i].lattice.size() >= u.members[j].lattice.size()) continue;
      pairs.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  std::string fail = first_failure(
      static_cast<int>(pairs.size()), ctx.jobs(), [&](int k) -> std::string {
        const FiniteLattice& L = u.members[pairs[k].small].lattice;
        const FiniteLattice& K = u.members[pairs[k].big].lattice;
        std::string bad;
        enumerate_homs(L, K, Category::LengthPreserving,
                       [&](const std::vector<int>& iota) {
                         if (find_retraction_any(L, K, iota)) {
                           std::ostringstream os;
                           os << "retraction onto member " << pairs[k].small
                              << " inside member " << pairs[k].big;
                           bad = os.str();
                           return false;
                         }
                         return true;
                       });
        return bad;
      });
  if (!fail.empty()) {
    r.pass = false;
    r.detail = fail;
    return r;
  }
  r.detail = "no proper length-preserving embedding admits a retraction (" +
             std::to_string(pairs.size()) + " ordered pairs)";
  return r;
}

CriterionResult criterion_prop_zo(VerifyContext& ctx, int max_size) {
  CriterionResult r{"proposition-zo-retracts", true, ""};
  const Universe& u = ctx.universe(max_size, ClassFilter::SlimSemimodular);
  std::set<CanonicalForm> boolean_forms{
      canonical_form(make_chain(1)), canonical_form(make_chain(2)),
      canonical_form(make_b4())};
  int count = static_cast<int>(u.members.size());
  std::string fail = first_failure(count, ctx.jobs(), [&](int i) -> std::string {
    const UniverseMember& m = u.members[i];
    bool boolean_small = boolean_forms.count(m.cf) > 0;
    if (!boolean_small && m.lattice.size() > 9) return "";
    RetractVerdictOptions opts;
    opts.max_target_size = max_size;
    Verdict v = absolute_retract_verdict(m, u, Category::ZeroOne, opts);
    if (v.positive != boolean_small) {
      std::ostringstream os;
      os << "member " << i << " (n=" << m.lattice.size()
         << "): zo-AR=" << v.positive << " expected " << boolean_small;
      return os.str();
    }
    if (m.patch && m.lattice.size() >= 5) {
      auto fk = fork_counterexample(m);
      if (!fk) return "patch member " + std::to_string(i) + " has no fork witness";
      if (find_retraction_any(m.lattice, fk->first.lattice(), fk->second))
        return "fork witness of member " + std::to_string(i) +
               " unexpectedly retracts";
    }
    return "";
  });
  if (!fail.empty()) {
    r.pass = false;
    r.detail = fail;
    return r;
  }
  r.detail = "zo absolute retracts are exactly the small boolean members";
  return r;
}

CriterionResult criterion_chain_determination(VerifyContext& ctx, int max_size) {
  CriterionResult r{"chain-determination", true, ""};
  const Universe& u = ctx.universe(max_size, ClassFilter::SlimSemimodular);
  int count = static_cast<int>(u.members.size());
  std::string fail = first_failure(count, ctx.jobs(), [&](int i) -> std::string {
    const FiniteLattice& L = u.members[i].lattice;
    for (Bits chain : maximal_chains(L))
      if (!chain_determination_check(L, chain))
        return "congruence not determined on a chain of member " +
               std::to_string(i);
    return "";
  });
  if (!fail.empty()) {
    r.pass = false;
    r.detail = fail;
    return r;
  }
  r.detail = "all congruences determined by all maximal chains (" +
             std::to_string(count) + " members)";
  return r;
}

CriterionResult criterion_rectangular_facts(VerifyContext& ctx, int max_size) {
  CriterionResult r{"rectangular-facts", true, ""};
  const Universe& u = ctx.universe(max_size, ClassFilter::Rectangular);
  int count = static_cast<int>(u.members.size());
  std::string fail = first_failure(count, ctx.jobs(), [&](int i) -> std::string {
    const UniverseMember& m = u.members[i];
    const FiniteLattice& L = m.lattice;
    const PlanarDiagram& d = *m.diagram;
    auto w = weak_corners(d);
    if (!w.lc || !w.rc) return "member " + std::to_string(i) + ": corners missing";
    int lc = *w.lc, rc = *w.rc;
    if (L.meet(lc, rc) != L.bottom() || L.join(lc, rc) != L.top())
      return "member " + std::to_string(i) + ": corners not complementary";
    auto irr = irreducibles(L);
    for (int c : {lc, rc}) {
      auto ideal = principal(L, c, PrincipalKind::Ideal);
      auto filter = principal(L, c, PrincipalKind::Filter);
      if (!ideal.is_chain || !filter.is_chain)
        return "member " + std::to_string(i) + ": principal sets not chains";
      if ((filter.members & ~bit(L.top()) & ~irr.mir) != 0)
        return "member " + std::to_string(i) + ": filter escapes Mir";
      if ((ideal.members & ~bit(L.bottom()) & ~irr.jir) != 0)
        return "member " + std::to_string(i) + ": ideal escapes Jir";
    }
    for (int x = 0; x < L.size(); ++x)
      if (L.upper_covers(x).size() > 2)
        return "member " + std::to_string(i) + ": element with three covers";
    for (int c : {lc, rc}) {
      Bits f = L.up_set(c) & ~bit(L.top());
      bool bad = false;
      for_each_bit(f, [&](int p) {
        auto res = prime_ideal_congruence(L, L.down_set(p));
        if (!res.congruence) bad = true;
      });
      if (bad)
        return "member " + std::to_string(i) + ": non-prime boundary ideal";
    }
    return "";
  });
  if (!fail.empty()) {
    r.pass = false;
    r.detail = fail;
    return r;
  }
  r.detail = "boundary facts hold on " + std::to_string(count) +
             " rectangular members";
  return r;
}

CriterionResult criterion_patch_equivalence(VerifyContext& ctx, int max_size) {
  CriterionResult r{"patch-definition-equivalence", true, ""};
  const Universe& u = ctx.universe(max_size, ClassFilter::SlimSemimodular);
  int count = static_cast<int>(u.members.size());
  std::string fail = first_failure(count, ctx.jobs(), [&](int i) -> std::string {
    const UniverseMember& m = u.members[i];
    PlanarDiagram mirror = m.diagram->mirrored();
    ClassReport a = is_patch(m.lattice, &*m.diagram);
    ClassReport b = is_patch(m.lattice, &mirror);
    if (a.is_patch_def11 != a.is_patch_24 || b.is_patch_def11 != b.is_patch_24 ||
        a.is_patch_def11 != b.is_patch_def11)
      return "member " + std::to_string(i) + ": definitions disagree";
    return "";
  });
  if (!fail.empty()) {
    r.pass = false;
    r.detail = fail;
    return r;
  }
  r.detail = "both patch definitions agree on " + std::to_string(count) +
             " members and their mirrors";
  return r;
}

CriterionResult criterion_retraction_construction(VerifyContext& ctx, int max_size) {
  CriterionResult r{"boolean-retraction-construction", true, ""};
  const Universe& u = ctx.universe(max_size, ClassFilter::Rectangular);
  FiniteLattice b4 = make_b4();
  CanonicalForm b4cf = canonical_form(b4);
  int count = static_cast<int>(u.members.size());
  std::string fail = first_failure(count, ctx.jobs(), [&](int i) -> std::string {
    const UniverseMember& m = u.members[i];
    const FiniteLattice& K = m.lattice;
    for (int uh = 1; uh < K.size() - 1; ++uh)
      for (int vh = 1; vh < K.size() - 1; ++vh) {
        if (uh == vh) continue;
        if (K.meet(uh, vh) != K.bottom() || K.join(uh, vh) != K.top()) continue;
        try {
          BooleanRetraction br = boolean_retraction(*m.diagram, uh, vh);
          if (br.gamma.num_blocks() != 4)
            return "member " + std::to_string(i) + ": gamma block count";
          auto [q, proj] = quotient(K, br.gamma);
          if (canonical_form(q) != b4cf)
            return "member " + std::to_string(i) + ": quotient not boolean";
          if (br.map[K.bottom()] != 0 || br.map[uh] != 1 || br.map[vh] != 2 ||
              br.map[K.top()] != 3)
            return "member " + std::to_string(i) + ": retraction misses identity";
          if (check_morphism(K, b4, br.map, Category::ZeroOne))
            return "member " + std::to_string(i) + ": map not a zo-morphism";
        } catch (const LatticeError& e) {
          return "member " + std::to_string(i) + ": " + e.what();
        }
      }
    return "";
  });
  if (!fail.empty()) {
    r.pass = false;
    r.detail = fail;
    return r;
  }
  r.detail = "all complementary pairs retract onto the boolean square (" +
             std::to_string(count) + " rectangular members)";
  return r;
}

CriterionResult criterion_corollaries(VerifyContext& ctx, int max_size) {
  CriterionResult r{"corollaries-closedness", true, ""};
  const Universe& u = ctx.universe(max_size, ClassFilter::SlimSemimodular);
  std::set<CanonicalForm> boolean_forms{
      canonical_form(make_chain(1)), canonical_form(make_chain(2)),
      canonical_form(make_b4())};
  int count = static_cast<int>(u.members.size());
  std::string fail = first_failure(count, ctx.jobs(), [&](int i) -> std::string {
    const UniverseMember& m = u.members[i];
    ClosednessOptions opts;
    opts.sampler.seed = ctx.seed();
    bool len_expected = m.patch || m.lattice.size() <= 2;
    bool zo_expected = boolean_forms.count(m.cf) > 0;
    auto len = algebraic_closedness_verdict(m, u, Category::LengthPreserving, opts);
    if (len.closed != len_expected) {
      std::ostringstream os;
      os << "member " << i << " (n=" << m.lattice.size() << "): len-closed "
         << len.closed << " expected " << len_expected;
      if (len.counterexample) os << " via " << len.counterexample->system;
      return os.str();
    }
    auto zo = algebraic_closedness_verdict(m, u, Category::ZeroOne, opts);
    if (zo.closed != zo_expected) {
      std::ostringstream os;
      os << "member " << i << " (n=" << m.lattice.size() << "): zo-closed "
         << zo.closed << " expected " << zo_expected;
      if (zo.counterexample) os << " via " << zo.counterexample->system;
      return os.str();
    }
    return "";
  });
  if (!fail.empty()) {
    r.pass = false;
    r.detail = fail;
    return r;
  }
  r.detail = "closedness verdicts match the characterizations on " +
             std::to_string(count) + " members";
  return r;
}

CriterionResult criterion_fixture_regressions(VerifyContext& ctx) {
  (void)ctx;
  CriterionResult r{"fixture-regressions", true, ""};
  try {
    FiniteLattice b4 = make_b4();
    FiniteLattice s7 = make_s7();
    FiniteLattice c3 = make_chain(3);
    PlanarDiagram db4 = PlanarDiagram::infer(b4);

    auto [forked, rec] = add_fork(db4, db4.four_cells().front());
    if (canonical_form(forked.lattice()) != canonical_form(s7)) {
      r.pass = false;
      r.detail = "fork of the boolean square is not the seven-element fixture";
      return r;
    }
    if (canonical_form(remove_corner(db4, 1).lattice()) != canonical_form(c3)) {
      r.pass = false;
      r.detail = "corner removal from the square is not the three-chain";
      return r;
    }
    PlanarDiagram dc3 = PlanarDiagram::infer(c3);
    auto added = add_corner(dc3, Side::Left, 1);
    if (!added ||
        canonical_form(added->extended.lattice()) != canonical_form(b4)) {
      r.pass = false;
      r.detail = "corner addition to the three-chain is not the square";
      return r;
    }
    PlanarDiagram ds7 = PlanarDiagram::infer(s7);
    BooleanRetraction br = boolean_retraction(ds7, 3, 5);
    std::vector<int> expect{0, 1, 2, 1, 3, 2, 3};
    if (br.map != expect) {
      r.pass = false;
      r.detail = "explicit four-block retraction differs";
      return r;
    }
  } catch (const LatticeError& e) {
    r.pass = false;
    r.detail = e.what();
    return r;
  }
  r.detail = "fixture constructions reproduce the expected lattices";
  return r;
}

std::vector<CriterionResult> run_acceptance(VerifyContext& ctx) {
  std::vector<CriterionResult> out;
  out.push_back(criterion_oracle_equivalence(ctx, 8));
  out.push_back(criterion_fork_closure(ctx, 1000, 14));
  out.push_back(criterion_theorem_main(ctx, 12));
  out.push_back(criterion_retraction_rigidity(ctx, 11));
  out.push_back(criterion_prop_zo(ctx, 11));
  out.push_back(criterion_chain_determination(ctx, 10));
  out.push_back(criterion_rectangular_facts(ctx, 14));
  out.push_back(criterion_patch_equivalence(ctx, 12));
  out.push_back(criterion_retraction_construction(ctx, 12));
  out.push_back(criterion_corollaries(ctx, 10));
  out.push_back(criterion_fixture_regressions(ctx));
  return out;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  VerifyContext ctx(cfg.seed, cfg.jobs, cfg.cache_dir);
  SuiteReport rep;
  rep.suite = cfg.suite;
  int ms = cfg.max_size;
  auto clamp = [&](int dflt, int hard) {
    return ms == 0 ? dflt : std::min(ms, hard);
  };
  if (cfg.suite == "thm-main") {
    rep.criteria.push_back(criterion_theorem_main(ctx, clamp(12, kGenerateCeiling)));
    rep.criteria.push_back(criterion_retraction_rigidity(ctx, clamp(11, 11)));
  } else if (cfg.suite == "prop-zo") {
    rep.criteria.push_back(criterion_prop_zo(ctx, clamp(11, 11)));
    rep.criteria.push_back(
        criterion_retraction_construction(ctx, clamp(12, kGenerateCeiling)));
  } else if (cfg.suite == "cor-closed") {
    rep.criteria.push_back(criterion_corollaries(ctx, clamp(10, 10)));
  } else if (cfg.suite == "lemmas-sec2") {
    rep.criteria.push_back(criterion_oracle_equivalence(ctx, clamp(8, 8)));
    rep.criteria.push_back(
        criterion_fork_closure(ctx, 1000, clamp(14, kGenerateCeiling)));
    rep.criteria.push_back(criterion_chain_determination(ctx, clamp(10, 10)));
    rep.criteria.push_back(
        criterion_rectangular_facts(ctx, clamp(14, kGenerateCeiling)));
    rep.criteria.push_back(
        criterion_patch_equivalence(ctx, clamp(12, kGenerateCeiling)));
    rep.criteria.push_back(criterion_fixture_regressions(ctx));
  } else {
    throw LatticeError(LatticeError::Code::ConfigInvalid,
                       "unknown suite: " + cfg.suite);
  }
  for (const auto& c : rep.criteria) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace slimlat
