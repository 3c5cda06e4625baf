#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slimlat/enumerate.hpp"

namespace slimlat {

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string detail;
};

/// Shared universe cache for the verification suites; optionally backed
/// by a directory of JSONL files (SLIMLAT_CACHE).
class VerifyContext {
 public:
  VerifyContext(std::uint64_t seed = 0, int jobs = 0, std::string cache_dir = "");
  const Universe& universe(int max_size, ClassFilter filter);
  std::uint64_t seed() const { return seed_; }
  int jobs() const { return jobs_; }

 private:
  std::uint64_t seed_;
  int jobs_;
  std::string cache_dir_;
  std::map<std::pair<int, int>, Universe> cache_;
};

CriterionResult criterion_oracle_equivalence(VerifyContext& ctx, int max_n = 8);
CriterionResult criterion_fork_closure(VerifyContext& ctx, int samples = 1000,
                                       int max_size = 14);
CriterionResult criterion_theorem_main(VerifyContext& ctx, int max_size = 12);
CriterionResult criterion_retraction_rigidity(VerifyContext& ctx, int max_size = 11);
CriterionResult criterion_prop_zo(VerifyContext& ctx, int max_size = 11);
CriterionResult criterion_chain_determination(VerifyContext& ctx, int max_size = 10);
CriterionResult criterion_rectangular_facts(VerifyContext& ctx, int max_size = 14);
CriterionResult criterion_patch_equivalence(VerifyContext& ctx, int max_size = 12);
CriterionResult criterion_retraction_construction(VerifyContext& ctx,
                                                  int max_size = 12);
CriterionResult criterion_corollaries(VerifyContext& ctx, int max_size = 10);
CriterionResult criterion_fixture_regressions(VerifyContext& ctx);

struct SuiteConfig {
  std::string suite;  // thm-main | prop-zo | cor-closed | lemmas-sec2
  int max_size = 0;   // 0 = per-criterion defaults
  std::uint64_t seed = 0;
  int jobs = 0;
  std::string cache_dir;
};

struct SuiteReport {
  std::string suite;
  bool pass = true;
  std::vector<CriterionResult> criteria;
};

SuiteReport run_suite(const SuiteConfig& cfg);

/// All eleven acceptance criteria at their stated sizes.
std::vector<CriterionResult> run_acceptance(VerifyContext& ctx);

}  // namespace slimlat
