#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "slimlat/builders.hpp"
#include "slimlat/io.hpp"

using namespace slimlat;

TEST_CASE("lattice and diagram JSON round trips") {
  auto s7 = fixtures::s7();
  Json j = lattice_to_json(s7);
  FiniteLattice back = lattice_from_json(j);
  CHECK(back.cover_pairs() == s7.cover_pairs());

  PlanarDiagram d = PlanarDiagram::infer(s7);
  Json dj = diagram_to_json(d);
  PlanarDiagram dback = diagram_from_json(dj);
  CHECK(dback.upper_order() == d.upper_order());
  CHECK(diagram_from_json_or_infer(j).lattice().cover_pairs() == s7.cover_pairs());
}

TEST_CASE("certificate JSON round trips") {
  GridCertificate cert = grid_certificate(PlanarDiagram::infer(fixtures::s7()));
  GridCertificate back = certificate_from_json(certificate_to_json(cert));
  CHECK(back.p == cert.p);
  CHECK(back.q == cert.q);
  CHECK(back.forks == cert.forks);
  CHECK(back.corners == cert.corners);
  CHECK(canonical_form(replay_certificate(back).lattice()) ==
        canonical_form(fixtures::s7()));
}

TEST_CASE("dot export is byte-stable with one edge per cover") {
  PlanarDiagram d = PlanarDiagram::infer(fixtures::s7());
  std::string dot = dot_export(d);
  CHECK(dot == dot_export(d));
  size_t edges = 0, nodes = 0;
  for (size_t pos = 0; (pos = dot.find(" -> ", pos)) != std::string::npos; ++pos)
    ++edges;
  for (size_t pos = 0; (pos = dot.find("label=", pos)) != std::string::npos; ++pos)
    ++nodes;
  CHECK(edges == 9);
  CHECK(nodes == 7);

  std::string b4dot = dot_export(PlanarDiagram::infer(fixtures::b4()));
  size_t e4 = 0;
  for (size_t pos = 0; (pos = b4dot.find(" -> ", pos)) != std::string::npos; ++pos)
    ++e4;
  CHECK(e4 == 4);
}

TEST_CASE("parse errors surface as ParseError") {
  try {
    parse_json("{not json");
    CHECK(false);
  } catch (const LatticeError& e) {
    CHECK(e.code == LatticeError::Code::ParseError);
  }
  try {
    lattice_from_json(parse_json("{\"n\": 2}"));
    CHECK(false);
  } catch (const LatticeError& e) {
    CHECK(e.code == LatticeError::Code::ParseError);
  }
}

TEST_CASE("universe JSONL round trips") {
  Universe u = generate_universe(6, ClassFilter::SlimSemimodular);
  std::stringstream ss;
  write_universe_jsonl(ss, u);
  Universe back = read_universe_jsonl(ss, 6, ClassFilter::SlimSemimodular);
  REQUIRE(back.members.size() == u.members.size());
  for (size_t i = 0; i < u.members.size(); ++i) {
    CHECK(back.members[i].cf == u.members[i].cf);
    CHECK(back.members[i].lattice.cover_pairs() ==
          u.members[i].lattice.cover_pairs());
    CHECK(back.members[i].certificate.has_value());
  }
}
