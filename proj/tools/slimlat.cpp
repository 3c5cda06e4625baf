// Command-line surface for building, classifying and verifying slim
// semimodular lattices.  Exit codes: 0 success / all checks pass,
// 1 counterexample or negative verdict, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "slimlat/builders.hpp"
#include "slimlat/congruence.hpp"
#include "slimlat/equations.hpp"
#include "slimlat/io.hpp"
#include "slimlat/morphism.hpp"
#include "slimlat/verify.hpp"

using namespace slimlat;

namespace {

std::string cache_dir_from_env() {
  const char* env = std::getenv("SLIMLAT_CACHE");
  return env ? env : "";
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(out_path);
    os << j.dump(2) << "\n";
  }
}

ClassFilter parse_filter(const std::string& s) {
  if (s == "all") return ClassFilter::AllLattices;
  if (s == "slim-semimodular" || s == "slim") return ClassFilter::SlimSemimodular;
  if (s == "rectangular" || s == "rect") return ClassFilter::Rectangular;
  if (s == "patch") return ClassFilter::Patch;
  throw LatticeError(LatticeError::Code::ConfigInvalid, "unknown class: " + s);
}

Category parse_category(const std::string& s) {
  if (s == "all") return Category::All;
  if (s == "zo") return Category::ZeroOne;
  if (s == "len") return Category::LengthPreserving;
  throw LatticeError(LatticeError::Code::ConfigInvalid, "unknown category: " + s);
}

Json map_to_json(const std::vector<int>& f) {
  Json j;
  j["map"] = f;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slim semimodular lattice toolkit"};
  app.require_subcommand(1);

  std::string in_path, in_path2, out_path;
  std::string klass = "slim-semimodular", cat = "len", format = "dot";
  std::string suite, side = "left", embed;
  int max_size = 12, at = -1, u_hat = -1, v_hat = -1, jobs = 0;
  std::uint64_t seed = 0;

  auto* gen = app.add_subcommand("gen", "generate an isomorph-free universe");
  gen->add_option("--max-size", max_size)->required();
  gen->add_option("--class", klass);
  gen->add_option("--out", out_path);

  auto* check = app.add_subcommand("check", "classify a lattice");
  check->add_option("input", in_path)->required();

  auto* certify = app.add_subcommand("certify", "grid certificate for a lattice");
  certify->add_option("input", in_path)->required();

  auto* fork = app.add_subcommand("fork", "add a fork at the cell above an element");
  fork->add_option("input", in_path)->required();
  fork->add_option("--at", at, "bottom element of the 4-cell")->required();

  auto* unfork = app.add_subcommand("unfork", "undo one fork");
  unfork->add_option("input", in_path)->required();

  auto* corner_rm = app.add_subcommand("corner-rm", "remove a corner");
  corner_rm->add_option("input", in_path)->required();
  corner_rm->add_option("--at", at)->required();

  auto* corner_add = app.add_subcommand("corner-add", "add a corner");
  corner_add->add_option("input", in_path)->required();
  corner_add->add_option("--side", side);
  corner_add->add_option("--at", at)->required();

  auto* witness = app.add_subcommand("witness", "one-element proper extension");
  witness->add_option("input", in_path)->required();

  auto* congruences = app.add_subcommand("congruences", "list all congruences");
  congruences->add_option("input", in_path)->required();

  auto* retract = app.add_subcommand("retract", "boolean retraction onto the square");
  retract->add_option("input", in_path)->required();
  retract->add_option("--u", u_hat)->required();
  retract->add_option("--v", v_hat)->required();

  auto* homs = app.add_subcommand("homs", "enumerate morphisms between lattices");
  homs->add_option("source", in_path)->required();
  homs->add_option("target", in_path2)->required();
  homs->add_option("--cat", cat);

  auto* retract_search = app.add_subcommand("retract-search",
                                            "retraction for an embedding");
  retract_search->add_option("source", in_path)->required();
  retract_search->add_option("target", in_path2)->required();
  retract_search->add_option("--embed", embed, "comma-separated image list")
      ->required();
  retract_search->add_option("--cat", cat);

  auto* verdict = app.add_subcommand("verdict", "categorical verdicts for a lattice");
  std::string kind = "maximal";
  verdict->add_option("input", in_path)->required();
  verdict->add_option("--kind", kind, "maximal | ar | closed");
  verdict->add_option("--cat", cat);
  verdict->add_option("--max-size", max_size);
  verdict->add_option("--seed", seed);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite)->required();
  verify->add_option("--max-size", max_size = 0);
  verify->add_option("--seed", seed);
  verify->add_option("--jobs", jobs);
  verify->add_option("--out", out_path);

  auto* exporter = app.add_subcommand("export", "export a diagram");
  exporter->add_option("input", in_path)->required();
  exporter->add_option("--format", format, "dot | json");
  exporter->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      Universe u = generate_universe(max_size, parse_filter(klass));
      if (out_path.empty()) {
        write_universe_jsonl(std::cout, u);
      } else {
        std::ofstream os(out_path);
        write_universe_jsonl(os, u);
      }
      std::cerr << u.members.size() << " members\n";
      return 0;
    }
    if (check->parsed()) {
      Json j = load_json_file(in_path);
      FiniteLattice L = lattice_from_json(j);
      ClassReport rep;
      if (is_slim_semimodular(L) && j.contains("upper_order")) {
        PlanarDiagram d = diagram_from_json(j);
        rep = is_patch(L, &d);
      } else {
        rep = is_patch(L);
      }
      emit(class_report_to_json(rep), "");
      return 0;
    }
    if (certify->parsed()) {
      PlanarDiagram d = diagram_from_json_or_infer(load_json_file(in_path));
      emit(certificate_to_json(grid_certificate(d)), out_path);
      return 0;
    }
    if (fork->parsed()) {
      PlanarDiagram d = diagram_from_json_or_infer(load_json_file(in_path));
      for (const FourCell& c : d.four_cells()) {
        if (c.bottom != at) continue;
        auto [next, rec] = add_fork(d, c);
        emit(diagram_to_json(next), out_path);
        return 0;
      }
      throw LatticeError(LatticeError::Code::NotACell, "no cell with that bottom");
    }
    if (unfork->parsed()) {
      PlanarDiagram d = diagram_from_json_or_infer(load_json_file(in_path));
      auto res = remove_fork_once(d);
      if (!res) {
        std::cout << "{\"grid\": true}\n";
        return 1;
      }
      emit(diagram_to_json(res->reduced), out_path);
      return 0;
    }
    if (corner_rm->parsed()) {
      PlanarDiagram d = diagram_from_json_or_infer(load_json_file(in_path));
      emit(diagram_to_json(remove_corner(d, at)), out_path);
      return 0;
    }
    if (corner_add->parsed()) {
      PlanarDiagram d = diagram_from_json_or_infer(load_json_file(in_path));
      auto res = add_corner(d, side == "right" ? Side::Right : Side::Left, at);
      if (!res) {
        std::cout << "{\"valid\": false}\n";
        return 1;
      }
      emit(diagram_to_json(res->extended), out_path);
      return 0;
    }
    if (witness->parsed()) {
      PlanarDiagram d = diagram_from_json_or_infer(load_json_file(in_path));
      auto w = proper_extension_witness(d);
      if (!w) {
        std::cout << "{\"maximal\": true}\n";
        return 0;
      }
      Json j = diagram_to_json(w->extended);
      j["embedding"] = w->embedding;
      j["kind"] = w->kind == WitnessKind::FilterInsertion ? "filter_insertion"
                                                          : "corner_added";
      emit(j, out_path);
      return 0;
    }
    if (congruences->parsed()) {
      FiniteLattice L = lattice_from_json(load_json_file(in_path));
      Json out = Json::array();
      for (const Congruence& c : all_congruences(L)) {
        Json blocks = Json::array();
        Bits done = 0;
        for (int x = 0; x < L.size(); ++x) {
          if (has_bit(done, x)) continue;
          Bits b = c.block_of(x);
          done |= b;
          blocks.push_back(bits_to_vector(b));
        }
        out.push_back(std::move(blocks));
      }
      emit(out, out_path);
      return 0;
    }
    if (retract->parsed()) {
      PlanarDiagram d = diagram_from_json_or_infer(load_json_file(in_path));
      BooleanRetraction br = boolean_retraction(d, u_hat, v_hat);
      emit(map_to_json(br.map), out_path);
      return 0;
    }
    if (homs->parsed()) {
      FiniteLattice L = lattice_from_json(load_json_file(in_path));
      FiniteLattice K = lattice_from_json(load_json_file(in_path2));
      Json out = Json::array();
      for (const auto& f : collect_homs(L, K, parse_category(cat)))
        out.push_back(f);
      emit(out, out_path);
      return 0;
    }
    if (retract_search->parsed()) {
      FiniteLattice L = lattice_from_json(load_json_file(in_path));
      FiniteLattice K = lattice_from_json(load_json_file(in_path2));
      std::vector<int> iota;
      size_t pos = 0;
      while (pos < embed.size()) {
        size_t comma = embed.find(',', pos);
        if (comma == std::string::npos) comma = embed.size();
        iota.push_back(std::stoi(embed.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      auto rho = find_retraction(L, K, iota, parse_category(cat));
      if (!rho) {
        std::cout << "{\"retraction\": null}\n";
        return 1;
      }
      emit(map_to_json(*rho), out_path);
      return 0;
    }
    if (verdict->parsed()) {
      PlanarDiagram d = diagram_from_json_or_infer(load_json_file(in_path));
      VerifyContext ctx(seed, jobs, cache_dir_from_env());
      const Universe& u = ctx.universe(max_size, ClassFilter::SlimSemimodular);
      UniverseMember m;
      m.lattice = d.lattice();
      m.cf = canonical_form(m.lattice);
      if (const UniverseMember* known = u.find(m.cf)) {
        m = *known;
      } else {
        m.diagram = d;
        m.slim_semimodular = true;
        m.certificate = grid_certificate(d);
      }
      Json j;
      bool positive = true;
      if (kind == "maximal") {
        Verdict v = maximality_verdict(m, u);
        positive = v.positive;
        j["verdict"] = v.positive ? "maximal-in-universe" : "extendable";
        if (v.witness) j["witness_map"] = v.witness->map;
      } else if (kind == "ar") {
        Verdict v = absolute_retract_verdict(m, u, parse_category(cat));
        positive = v.positive;
        j["verdict"] = v.positive ? "absolute-retract-in-universe"
                                  : "retraction-free-embedding-found";
        if (v.witness) j["witness_map"] = v.witness->map;
      } else if (kind == "closed") {
        ClosednessOptions opts;
        opts.sampler.seed = seed;
        auto v = algebraic_closedness_verdict(m, u, parse_category(cat), opts);
        positive = v.closed;
        j["verdict"] = v.closed ? "closed-in-sample" : "counterexample-found";
        if (v.counterexample) j["system"] = v.counterexample->system;
      } else {
        throw LatticeError(LatticeError::Code::ConfigInvalid,
                           "unknown verdict kind: " + kind);
      }
      emit(j, out_path);
      return positive ? 0 : 1;
    }
    if (verify->parsed()) {
      SuiteConfig cfg;
      cfg.suite = suite;
      cfg.max_size = max_size;
      cfg.seed = seed;
      cfg.jobs = jobs;
      cfg.cache_dir = cache_dir_from_env();
      SuiteReport rep = run_suite(cfg);
      Json j;
      j["suite"] = rep.suite;
      j["max_size"] = cfg.max_size;
      j["seed"] = cfg.seed;
      Json arr = Json::array();
      for (const auto& c : rep.criteria) {
        Json e;
        e["id"] = c.id;
        e["pass"] = c.pass;
        e["detail"] = c.detail;
        arr.push_back(std::move(e));
      }
      j["criteria"] = std::move(arr);
      j["pass"] = rep.pass;
      emit(j, out_path);
      return rep.pass ? 0 : 1;
    }
    if (exporter->parsed()) {
      PlanarDiagram d = diagram_from_json_or_infer(load_json_file(in_path));
      if (format == "json") {
        emit(diagram_to_json(d), out_path);
      } else if (format == "dot") {
        if (out_path.empty()) {
          std::cout << dot_export(d);
        } else {
          std::ofstream os(out_path);
          os << dot_export(d);
        }
      } else {
        throw LatticeError(LatticeError::Code::ConfigInvalid,
                           "unknown format: " + format);
      }
      return 0;
    }
  } catch (const LatticeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
