// Acceptance suite: runs every criterion at its stated size and prints
// one pass/fail line per criterion.  Exit code 0 iff everything passes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "slimlat/verify.hpp"

int main() {
  using namespace slimlat;
  using clock = std::chrono::steady_clock;
  const char* cache = std::getenv("SLIMLAT_CACHE");
  VerifyContext ctx(/*seed=*/0, /*jobs=*/0, cache ? cache : "");

  std::pair<int, std::function<CriterionResult()>> steps[] = {
      {1, [&] { return criterion_oracle_equivalence(ctx, 8); }},
      {2, [&] { return criterion_fork_closure(ctx, 1000, 14); }},
      {3, [&] { return criterion_theorem_main(ctx, 12); }},
      {4, [&] { return criterion_retraction_rigidity(ctx, 11); }},
      {5, [&] { return criterion_prop_zo(ctx, 11); }},
      {6, [&] { return criterion_chain_determination(ctx, 10); }},
      {7, [&] { return criterion_rectangular_facts(ctx, 14); }},
      {8, [&] { return criterion_patch_equivalence(ctx, 12); }},
      {9, [&] { return criterion_retraction_construction(ctx, 12); }},
      {10, [&] { return criterion_corollaries(ctx, 10); }},
      {11, [&] { return criterion_fixture_regressions(ctx); }},
  };

  bool all = true;
  for (auto& [num, fn] : steps) {
    auto t0 = clock::now();
    CriterionResult r = fn();
    auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0)
            .count();
    std::printf("[%s] criterion %d (%s): %s (%.1fs)\n", r.pass ? "PASS" : "FAIL",
                num, r.id.c_str(), r.detail.c_str(), ms / 1000.0);
    std::fflush(stdout);
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
  return all ? 0 : 1;
}
