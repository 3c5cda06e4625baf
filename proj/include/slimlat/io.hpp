#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "slimlat/classify.hpp"
#include "slimlat/enumerate.hpp"

namespace slimlat {

using Json = nlohmann::ordered_json;

/// Lattice interchange format: {"n": int, "covers": [[x,y],...]}.
Json lattice_to_json(const FiniteLattice& L);
FiniteLattice lattice_from_json(const Json& j);

/// Diagram format: lattice JSON plus {"upper_order": [[...],...]}.
Json diagram_to_json(const PlanarDiagram& d);
PlanarDiagram diagram_from_json(const Json& j);

/// Accepts either format; infers a diagram when only a lattice is given.
PlanarDiagram diagram_from_json_or_infer(const Json& j);

Json certificate_to_json(const GridCertificate& c);
GridCertificate certificate_from_json(const Json& j);

Json class_report_to_json(const ClassReport& r);

/// Byte-stable DOT export; rank = height, left-to-right order from the
/// diagram, explicit coordinates.
std::string dot_export(const PlanarDiagram& d);

/// Universe persistence: one member per line, lattice plus certificate.
void write_universe_jsonl(std::ostream& os, const Universe& u);
Universe read_universe_jsonl(std::istream& is, int max_size, ClassFilter filter);

Json parse_json(const std::string& text);   // wraps errors as ParseError
Json load_json_file(const std::string& path);

}  // namespace slimlat
