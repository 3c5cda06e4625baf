#include "slimlat/classify.hpp"

#include <algorithm>

#include "slimlat/builders.hpp"
#include "slimlat/enumerate.hpp"

namespace slimlat {

using Code = LatticeError::Code;

WeakCorners weak_corners(const PlanarDiagram& d) {
  auto irr = irreducibles(d.lattice());
  WeakCorners w;
  for (int x : d.left_boundary()) {
    if (has_bit(irr.dirr, x)) {
      ++w.left_count;
      w.lc = w.left_count == 1 ? std::optional<int>(x) : std::nullopt;
    }
  }
  for (int x : d.right_boundary()) {
    if (has_bit(irr.dirr, x)) {
      ++w.right_count;
      w.rc = w.right_count == 1 ? std::optional<int>(x) : std::nullopt;
    }
  }
  return w;
}

RectangularityReport is_rectangular(const PlanarDiagram& d) {
  RectangularityReport r;
  r.corners = weak_corners(d);
  if (!r.corners.lc || !r.corners.rc) {
    r.reason = "boundary chains do not carry exactly one doubly irreducible element";
    return r;
  }
  const FiniteLattice& L = d.lattice();
  int lc = *r.corners.lc, rc = *r.corners.rc;
  if (L.meet(lc, rc) != L.bottom() || L.join(lc, rc) != L.top()) {
    r.reason = "weak corners are not complementary";
    return r;
  }
  r.rectangular = true;
  return r;
}

ClassReport is_patch(const FiniteLattice& L, const PlanarDiagram* d) {
  ClassReport rep;
  rep.slim_witness = is_slim(L);
  rep.semi_witness = is_semimodular(L);
  rep.slim = rep.slim_witness.ok;
  rep.semimodular = rep.semi_witness.ok;
  if (!rep.slim || !rep.semimodular) {
    rep.reason = "not slim semimodular";
    return rep;
  }

  auto irr = irreducibles(L);
  auto dirr = bits_to_vector(irr.dirr);
  bool coatoms = true, meets_zero = true;
  for (int x : dirr) coatoms = coatoms && L.covers_rel(x, L.top());
  if (dirr.size() == 2)
    meets_zero = L.meet(dirr[0], dirr[1]) == L.bottom();
  rep.is_patch_def11 = dirr.size() == 2 && coatoms && meets_zero;
  if (!rep.is_patch_def11)
    rep.reason = dirr.size() != 2 ? "number of doubly irreducible elements is not two"
               : !coatoms         ? "a doubly irreducible element is not a coatom"
                                  : "doubly irreducible elements do not meet at 0";

  PlanarDiagram inferred;
  const PlanarDiagram* use = d;
  if (!use) {
    inferred = PlanarDiagram::infer(L);
    use = &inferred;
  }
  auto rect = is_rectangular(*use);
  rep.rectangular = rect.rectangular;
  rep.lc = rect.corners.lc;
  rep.rc = rect.corners.rc;
  rep.is_patch_24 = rect.rectangular && L.covers_rel(*rep.lc, L.top()) &&
                    L.covers_rel(*rep.rc, L.top());
  rep.diagram_checked = true;
  return rep;
}

PlanarDiagram replay_certificate(const GridCertificate& cert) {
  if (cert.degenerate) {
    if (cert.trivial_size == 1)
      return PlanarDiagram::attach(FiniteLattice::build(1, {}), {{}});
    return PlanarDiagram::attach(FiniteLattice::build(2, {{0, 1}}), {{1}, {}});
  }
  PlanarDiagram d = grid(cert.p, cert.q);
  for (size_t i = 0; i < cert.forks.size(); ++i) {
    if (cert.fork_mirror[i]) d = d.mirrored();
    d = add_fork(d, cert.forks[i]).first;
  }
  for (int u : cert.corners) d = remove_corner(d, u);
  return d;
}

GridCertificate grid_certificate(const PlanarDiagram& d) {
  const FiniteLattice& L = d.lattice();
  GridCertificate cert;
  if (L.size() <= 2) {
    cert.degenerate = true;
    cert.trivial_size = L.size();
    return cert;
  }

  // Re-add corners until rectangular, keeping the intermediate chain.
  // Only additions whose new element is a corner of the result are taken:
  // those are the ones corner removal can replay, and one always exists
  // for a non-rectangular lattice of three or more elements.
  std::vector<PlanarDiagram> chain{d};
  while (!is_rectangular(chain.back()).rectangular) {
    const PlanarDiagram& cur = chain.back();
    std::optional<PlanarDiagram> extended;
    for (Side side : {Side::Left, Side::Right}) {
      const auto& bnd =
          side == Side::Left ? cur.left_boundary() : cur.right_boundary();
      for (size_t i = 1; i + 1 < bnd.size() && !extended; ++i) {
        auto added = add_corner(cur, side, bnd[i]);
        if (!added) continue;
        const FiniteLattice& K = added->extended.lattice();
        int ne = added->new_element;
        if (K.lower_covers(K.upper_covers(ne)[0]).size() != 2) continue;
        if (K.upper_covers(K.lower_covers(ne)[0]).size() != 2) continue;
        extended = std::move(added->extended);
      }
      if (extended) break;
    }
    if (!extended)
      throw LatticeError(Code::CertificateSearchFailed,
                         "non-rectangular lattice admits no corner addition");
    chain.push_back(std::move(*extended));
  }

  // Strip forks down to a grid, remembering each stage's canonical form.
  std::vector<CanonicalForm> fork_targets;  // post-fork forms, outermost first
  PlanarDiagram cur = chain.back();
  for (;;) {
    auto r = remove_fork_once(cur);
    if (!r) break;
    fork_targets.push_back(canonical_form(cur.lattice()));
    cur = std::move(r->reduced);
  }
  std::reverse(fork_targets.begin(), fork_targets.end());

  int n0 = cur.lattice().size(), len = cur.lattice().length();
  bool found = false;
  for (int p = 1; p < len && !found; ++p) {
    int q = len - p;
    if (p > q) break;
    if ((p + 1) * (q + 1) != n0) continue;
    if (canonical_form(grid(p, q).lattice()) == canonical_form(cur.lattice())) {
      cert.p = p;
      cert.q = q;
      found = true;
    }
  }
  if (!found)
    throw LatticeError(Code::CertificateSearchFailed,
                       "fork stripping did not end at a grid");

  // Reconstruct forward in replay labels, matching canonical forms.
  PlanarDiagram replay = grid(cert.p, cert.q);
  for (const CanonicalForm& target : fork_targets) {
    bool matched = false;
    for (int mirror = 0; mirror < 2 && !matched; ++mirror) {
      PlanarDiagram base = mirror ? replay.mirrored() : replay;
      for (const FourCell& c : base.four_cells()) {
        auto [next, rec] = add_fork(base, c);
        if (canonical_form(next.lattice()) == target) {
          cert.forks.push_back(c);
          cert.fork_mirror.push_back(mirror == 1);
          replay = std::move(next);
          matched = true;
          break;
        }
      }
    }
    if (!matched)
      throw LatticeError(Code::CertificateSearchFailed,
                         "could not re-find a fork cell during replay");
  }

  // Replay the corner removals backwards along the rectangularizing chain.
  for (size_t i = chain.size() - 1; i > 0; --i) {
    CanonicalForm target = canonical_form(chain[i - 1].lattice());
    bool matched = false;
    auto irr = irreducibles(replay.lattice());
    for (int u : bits_to_vector(irr.dirr)) {
      try {
        PlanarDiagram next = remove_corner(replay, u);
        if (canonical_form(next.lattice()) == target) {
          cert.corners.push_back(u);
          replay = std::move(next);
          matched = true;
          break;
        }
      } catch (const LatticeError&) {
      }
    }
    if (!matched)
      throw LatticeError(Code::CertificateSearchFailed,
                         "could not re-find a corner during replay");
  }

  if (canonical_form(replay.lattice()) != canonical_form(L))
    throw LatticeError(Code::CertificateSearchFailed, "certificate replay mismatch");
  return cert;
}

}  // namespace slimlat
