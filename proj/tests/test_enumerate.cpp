#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "slimlat/builders.hpp"
#include "slimlat/enumerate.hpp"

using namespace slimlat;

TEST_CASE("canonical forms quotient by isomorphism on the fixtures") {
  auto b4 = fixtures::b4();
  FiniteLattice swapped = relabel(b4, {0, 2, 1, 3});
  CHECK(canonical_form(b4) == canonical_form(swapped));

  auto s7 = fixtures::s7();
  FiniteLattice mirror = relabel(s7, {0, 2, 1, 5, 4, 3, 6});
  CHECK(canonical_form(s7) == canonical_form(mirror));

  CHECK(canonical_form(b4) != canonical_form(fixtures::chain(4)));
}

TEST_CASE("canonical equality agrees with explicit isomorphism search") {
  Universe u = brute_force_universe(6);
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int round = 0; round < 500; ++round) {
    const auto& a = u.members[rng() % u.members.size()];
    const auto& b = u.members[rng() % u.members.size()];
    bool same = a.cf == b.cf;
    // Relabel one side randomly to decouple the comparison from labels.
    const FiniteLattice& L = a.lattice;
    std::vector<int> order(L.size());
    for (int i = 0; i < L.size(); ++i) order[i] = i;
    for (int i = 0; i + 1 < L.size(); ++i)
      if (L.height(order[i]) == L.height(order[i + 1]) && rng() % 2)
        std::swap(order[i], order[i + 1]);
    std::vector<int> perm(L.size());
    for (int i = 0; i < L.size(); ++i) perm[order[i]] = i;
    FiniteLattice scrambled = relabel(L, perm);
    CHECK(canonical_form(scrambled) == a.cf);
    CHECK(find_isomorphism(scrambled, b.lattice).has_value() == same);
    if (auto iso = find_isomorphism(scrambled, b.lattice)) {
      for (auto [x, y] : scrambled.cover_pairs())
        CHECK(b.lattice.covers_rel((*iso)[x], (*iso)[y]));
    }
    ++checked;
  }
  CHECK(checked == 500);
}

TEST_CASE("brute force finds exactly the small lattices") {
  Universe u = brute_force_universe(4);
  std::map<int, int> counts;
  for (const auto& m : u.members) ++counts[m.lattice.size()];
  CHECK(counts[1] == 1);
  CHECK(counts[2] == 1);
  CHECK(counts[3] == 1);
  CHECK(counts[4] == 2);  // the 4-chain and the square
  std::set<CanonicalForm> four;
  for (const auto& m : u.members)
    if (m.lattice.size() == 4) four.insert(m.cf);
  CHECK(four.count(canonical_form(fixtures::b4())) == 1);
  CHECK(four.count(canonical_form(fixtures::chain(4))) == 1);
  CHECK(brute_force_universe(1).members.size() == 1);
}

TEST_CASE("slim semimodular counts match the published lattice census") {
  // Unlabelled lattices on n elements: 1, 1, 1, 2, 5, 15, 53 for n=1..7.
  Universe u = brute_force_universe(7);
  std::map<int, int> all;
  for (const auto& m : u.members) ++all[m.lattice.size()];
  CHECK(all[5] == 5);
  CHECK(all[6] == 15);
  CHECK(all[7] == 53);
}

TEST_CASE("generation agrees with the brute-force oracle") {
  Universe brute = brute_force_universe(6);
  Universe gen = generate_universe(6, ClassFilter::SlimSemimodular);
  std::set<CanonicalForm> oracle, generated;
  for (const auto& m : brute.members)
    if (m.slim_semimodular) oracle.insert(m.cf);
  for (const auto& m : gen.members) generated.insert(m.cf);
  CHECK(oracle == generated);
}

TEST_CASE("generated universes contain the expected members") {
  Universe u = generate_universe(7, ClassFilter::SlimSemimodular);
  CHECK(u.find(canonical_form(fixtures::s7())) != nullptr);
  CHECK(u.find(canonical_form(fixtures::chain(7))) != nullptr);
  CHECK(u.find(canonical_form(fixtures::g23())) != nullptr);
  CHECK(u.find(canonical_form(fixtures::m3())) == nullptr);

  Universe patches = generate_universe(7, ClassFilter::Patch);
  // Patch members of length two: exactly the boolean square.
  std::set<CanonicalForm> len2;
  for (const auto& m : patches.members)
    if (m.lattice.length() == 2) len2.insert(m.cf);
  CHECK(len2 == std::set<CanonicalForm>{canonical_form(fixtures::b4())});
}

TEST_CASE("generation is deterministic") {
  Universe a = generate_universe(8, ClassFilter::SlimSemimodular);
  Universe b = generate_universe(8, ClassFilter::SlimSemimodular);
  REQUIRE(a.members.size() == b.members.size());
  for (size_t i = 0; i < a.members.size(); ++i) {
    CHECK(a.members[i].cf == b.members[i].cf);
    CHECK(a.members[i].lattice.cover_pairs() == b.members[i].lattice.cover_pairs());
  }
}

TEST_CASE("rectangular universes are fork-reachable and patch implies rectangular") {
  Universe rects = generate_universe(10, ClassFilter::Rectangular);
  for (const auto& m : rects.members) {
    CHECK(m.rectangular);
    REQUIRE(m.certificate.has_value());
    CHECK(m.certificate->corners.empty());
  }
  Universe patches = generate_universe(10, ClassFilter::Patch);
  Universe slim = generate_universe(10, ClassFilter::SlimSemimodular);
  for (const auto& m : patches.members) {
    CHECK(m.patch);
    const UniverseMember* in_slim = slim.find(m.cf);
    REQUIRE(in_slim != nullptr);
    CHECK(in_slim->patch);
  }
}

TEST_CASE("brute force reproduces the published census at size eight") {
  Universe u = brute_force_universe(8);
  std::map<int, int> all;
  for (const auto& m : u.members) ++all[m.lattice.size()];
  CHECK(all[8] == 222);
}

TEST_CASE("generation stays complete past the oracle ceiling") {
  // The acceptance gate pins n <= 8; this pushes the same comparison to
  // n = 10 to exercise the oversize-intermediate closure (chains of ten
  // need an eighteen-element rectangular ancestor).
  Universe brute = brute_force_universe(10, /*ceiling=*/10);
  Universe gen = generate_universe(10, ClassFilter::SlimSemimodular);
  std::set<CanonicalForm> oracle, generated;
  for (const auto& m : brute.members)
    if (m.slim_semimodular) oracle.insert(m.cf);
  for (const auto& m : gen.members) generated.insert(m.cf);
  CHECK(oracle.size() == generated.size());
  CHECK(oracle == generated);
}
