#include "slimlat/io.hpp"

#include <fstream>
#include <sstream>

namespace slimlat {

using Code = LatticeError::Code;

Json lattice_to_json(const FiniteLattice& L) {
  Json j;
  j["n"] = L.size();
  Json covers = Json::array();
  for (auto [x, y] : L.cover_pairs()) covers.push_back(Json::array({x, y}));
  j["covers"] = std::move(covers);
  return j;
}

FiniteLattice lattice_from_json(const Json& j) {
  try {
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> covers;
    for (const auto& e : j.at("covers"))
      covers.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return FiniteLattice::build(n, std::move(covers), true);
  } catch (const Json::exception& e) {
    throw LatticeError(Code::ParseError, std::string("bad lattice JSON: ") + e.what());
  }
}

Json diagram_to_json(const PlanarDiagram& d) {
  Json j = lattice_to_json(d.lattice());
  j["upper_order"] = d.upper_order();
  return j;
}

PlanarDiagram diagram_from_json(const Json& j) {
  FiniteLattice L = lattice_from_json(j);
  try {
    auto order = j.at("upper_order").get<std::vector<std::vector<int>>>();
    return PlanarDiagram::attach(std::move(L), std::move(order));
  } catch (const Json::exception& e) {
    throw LatticeError(Code::ParseError, std::string("bad diagram JSON: ") + e.what());
  }
}

PlanarDiagram diagram_from_json_or_infer(const Json& j) {
  if (j.contains("upper_order")) return diagram_from_json(j);
  return PlanarDiagram::infer(lattice_from_json(j));
}

Json certificate_to_json(const GridCertificate& c) {
  Json j;
  j["degenerate"] = c.degenerate;
  if (c.degenerate) {
    j["size"] = c.trivial_size;
    return j;
  }
  j["grid"] = Json::array({c.p, c.q});
  Json forks = Json::array();
  for (size_t i = 0; i < c.forks.size(); ++i) {
    const FourCell& f = c.forks[i];
    Json e;
    e["cell"] = Json::array({f.bottom, f.left, f.right, f.top});
    e["mirror"] = static_cast<bool>(c.fork_mirror[i]);
    forks.push_back(std::move(e));
  }
  j["forks"] = std::move(forks);
  j["corners"] = c.corners;
  return j;
}

GridCertificate certificate_from_json(const Json& j) {
  try {
    GridCertificate c;
    c.degenerate = j.at("degenerate").get<bool>();
    if (c.degenerate) {
      c.trivial_size = j.at("size").get<int>();
      return c;
    }
    c.p = j.at("grid").at(0).get<int>();
    c.q = j.at("grid").at(1).get<int>();
    for (const auto& e : j.at("forks")) {
      const auto& cell = e.at("cell");
      c.forks.push_back({cell.at(0).get<int>(), cell.at(1).get<int>(),
                         cell.at(2).get<int>(), cell.at(3).get<int>()});
      c.fork_mirror.push_back(e.at("mirror").get<bool>());
    }
    c.corners = j.at("corners").get<std::vector<int>>();
    return c;
  } catch (const Json::exception& e) {
    throw LatticeError(Code::ParseError,
                       std::string("bad certificate JSON: ") + e.what());
  }
}

Json class_report_to_json(const ClassReport& r) {
  Json j;
  j["is_slim"] = r.slim;
  j["is_semimodular"] = r.semimodular;
  j["is_rectangular"] = r.rectangular;
  j["is_patch_def11"] = r.is_patch_def11;
  j["is_patch_24"] = r.is_patch_24;
  j["lc"] = r.lc ? Json(*r.lc) : Json(nullptr);
  j["rc"] = r.rc ? Json(*r.rc) : Json(nullptr);
  if (!r.slim)
    j["slim_witness"] = Json::array({r.slim_witness.antichain[0],
                                     r.slim_witness.antichain[1],
                                     r.slim_witness.antichain[2]});
  if (!r.semimodular)
    j["semimodular_witness"] = Json::array({r.semi_witness.x, r.semi_witness.y});
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

std::string dot_export(const PlanarDiagram& d) {
  std::ostringstream os;
  os << "digraph lattice {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=circle, fontsize=10];\n";
  for (size_t h = 0; h < d.levels().size(); ++h) {
    const auto& level = d.levels()[h];
    for (size_t i = 0; i < level.size(); ++i) {
      int x = level[i];
      os << "  n" << x << " [label=\"" << x << "\", pos=\"" << i << "," << h
         << "!\"];\n";
    }
    os << "  { rank=same;";
    for (int x : level) os << " n" << x << ";";
    os << " }\n";
  }
  for (auto [x, y] : d.lattice().cover_pairs())
    os << "  n" << x << " -> n" << y << ";\n";
  os << "}\n";
  return os.str();
}

void write_universe_jsonl(std::ostream& os, const Universe& u) {
  for (const UniverseMember& m : u.members) {
    Json j = m.diagram ? diagram_to_json(*m.diagram) : lattice_to_json(m.lattice);
    if (m.certificate) j["certificate"] = certificate_to_json(*m.certificate);
    os << j.dump() << "\n";
  }
}

Universe read_universe_jsonl(std::istream& is, int max_size, ClassFilter filter) {
  Universe u;
  u.max_size = max_size;
  u.filter = filter;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    Json j = parse_json(line);
    UniverseMember m;
    if (j.contains("upper_order")) {
      m.diagram = diagram_from_json(j);
      m.lattice = m.diagram->lattice();
      m.slim_semimodular = true;
      auto rect = is_rectangular(*m.diagram);
      m.rectangular = rect.rectangular;
      if (m.rectangular)
        m.patch = m.lattice.covers_rel(*rect.corners.lc, m.lattice.top()) &&
                  m.lattice.covers_rel(*rect.corners.rc, m.lattice.top());
    } else {
      m.lattice = lattice_from_json(j);
      m.slim_semimodular = is_slim_semimodular(m.lattice);
    }
    if (j.contains("certificate"))
      m.certificate = certificate_from_json(j.at("certificate"));
    m.cf = canonical_form(m.lattice);
    u.members.push_back(std::move(m));
  }
  u.finalize();
  return u;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw LatticeError(Code::ParseError, std::string("JSON parse error: ") + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw LatticeError(Code::ParseError, "cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

}  // namespace slimlat
