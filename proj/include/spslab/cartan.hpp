#pragma once

#include <optional>
#include <vector>

#include "spslab/probability.hpp"

namespace spslab {

/// Cartan map: the states in which property a is actual.
inline StateSet kappa(const System& sys, std::size_t a) { return sys.kappa(a); }

/// Lattice-embedding properties of the Cartan map, its image, atoms and
/// (when available) orthocomplements.
inline AxiomReport check_kappa(const System& sys, const Budget& budget = Budget::from_env()) {
  AxiomReport rep;
  const auto& L = sys.lattice();
  const std::size_t m = sys.prop_count();
  rep.add_check("kappa-top", kappa(sys, L.top()) == sys.all()
                                 ? std::nullopt
                                 : std::optional<Witness>(Witness{{}, {L.top()}, {kappa(sys, L.top())}, "kappa(I) != all"}));
  rep.add_check("kappa-bottom", kappa(sys, L.bottom()).empty()
                                    ? std::nullopt
                                    : std::optional<Witness>(Witness{{}, {L.bottom()}, {kappa(sys, L.bottom())}, "kappa(0) not empty"}));
  std::optional<Witness> emb, meets, closed;
  for (std::size_t a = 0; a < m; ++a) {
    if (!closed && sup_close(sys, kappa(sys, a)) != kappa(sys, a))
      closed = Witness{{}, {a}, {kappa(sys, a)}, "kappa(a) not superposition closed"};
    for (std::size_t b = 0; b < m; ++b) {
      if (!emb && L.leq(a, b) != kappa(sys, a).subset_of(kappa(sys, b)))
        emb = Witness{{}, {a, b}, {}, "order and inclusion disagree"};
      if (!meets && kappa(sys, L.meet(a, b)) != (kappa(sys, a) & kappa(sys, b)))
        meets = Witness{{}, {a, b}, {}, "kappa(a ^ b) != kappa(a) n kappa(b)"};
    }
  }
  rep.add_check("kappa-order-embedding", emb);
  rep.add_check("kappa-meets", meets);
  rep.add_check("kappa-closed", closed);

  try {
    const auto fam = enumerate_family(sys, FamilyKind::superposition_closed, budget);
    std::optional<Witness> onto;
    for (auto s : fam.members) {
      bool hit = false;
      for (std::size_t a = 0; a < m && !hit; ++a) hit = kappa(sys, a) == s;
      if (!hit) {
        onto = Witness{{}, {}, {s}, "closed set outside the image of kappa"};
        break;
      }
    }
    rep.add_check("kappa-onto-closed", onto);
  } catch (const BudgetExceeded&) {
    rep.add("kappa-onto-closed", Verdict::partial, {}, "closed-set enumeration over budget");
  }

  if (!check_axiom_A(sys).holds()) {
    rep.add("kappa-atoms", Verdict::precondition_unmet, {}, "axiom A fails");
  } else {
    std::optional<Witness> at;
    for (auto a : L.atoms())
      if (kappa(sys, a).size() != 1) {
        at = Witness{{}, {a}, {kappa(sys, a)}, "atom image is not a singleton"};
        break;
      }
    rep.add_check("kappa-atoms", at);
  }

  if (!check_axiom_B(sys).holds() || !mu_valid(sys, budget)) {
    rep.add("kappa-complement", Verdict::precondition_unmet, {}, "needs A, B and a valid probability table");
    return rep;
  }
  const auto rows = state_perp_rows(sys);
  const auto ext = extend_orthocomplement(sys, budget);
  std::optional<Witness> cw;
  for (std::size_t a = 0; a < m && !cw; ++a) {
    std::optional<std::size_t> ac;
    if (!ext.complement.empty()) ac = ext.complement[a];
    else if (sys.testable().test(a)) ac = ortho_complement0(sys, a);
    if (!ac) continue;
    const StateSet want = perp_complement(rows, kappa(sys, a), sys.all());
    if (kappa(sys, *ac) != want) cw = Witness{{}, {a, *ac}, {kappa(sys, *ac), want}, "kappa(a') != kappa(a)'"};
  }
  rep.add_check("kappa-complement", cw);
  return rep;
}

/// Classical properties: a has a partner a' with kappa(a') = all - kappa(a).
struct ClassicalElements {
  PropSet classical;
  std::vector<std::optional<std::size_t>> partner;
  AxiomReport report;
};

inline ClassicalElements classical_elements(const System& sys) {
  ClassicalElements out;
  const std::size_t m = sys.prop_count();
  out.classical = PropSet(m);
  out.partner.assign(m, std::nullopt);
  for (std::size_t a = 0; a < m; ++a) {
    const StateSet rest = sys.all() - kappa(sys, a);
    for (std::size_t b = 0; b < m; ++b)
      if (kappa(sys, b) == rest) {
        out.classical.set(a);
        out.partner[a] = b;
        break;
      }
  }
  std::optional<Witness> clopen, part;
  for (auto a : indices_of(out.classical)) {
    const std::size_t b = *out.partner[a];
    const StateSet ka = kappa(sys, a), kb = kappa(sys, b);
    if (!part && ((ka | kb) != sys.all() || ka.intersects(kb))) part = Witness{{}, {a, b}, {ka, kb}, "not a partition"};
    if (!clopen && (sup_close(sys, ka) != ka || sup_close(sys, kb) != kb))
      clopen = Witness{{}, {a, b}, {ka, kb}, "kappa image or its complement not superposition closed"};
  }
  out.report.add_check("classical-partition", part);
  out.report.add_check("classical-clopen", clopen);
  return out;
}

/// Central properties: z with some z' such that every a equals both
/// (a ^ z) v (a ^ z') and (a v z) ^ (a v z').
struct CentralElements {
  PropSet central;
  std::vector<std::optional<std::size_t>> partner;
  AxiomReport report;
};

namespace detail {

inline bool splits(const FiniteLattice& L, std::size_t z, std::size_t zc, bool both) {
  for (std::size_t a = 0; a < L.size(); ++a) {
    if (L.join(L.meet(a, z), L.meet(a, zc)) != a) return false;
    if (both && L.meet(L.join(a, z), L.join(a, zc)) != a) return false;
  }
  return true;
}

}  // namespace detail

inline CentralElements central_elements(const System& sys, const Budget& budget = Budget::from_env()) {
  CentralElements out;
  const auto& L = sys.lattice();
  const std::size_t m = sys.prop_count();
  out.central = PropSet(m);
  out.partner.assign(m, std::nullopt);
  for (std::size_t z = 0; z < m; ++z)
    for (std::size_t zc = 0; zc < m; ++zc)
      if (detail::splits(L, z, zc, true)) {
        out.central.set(z);
        out.partner[z] = zc;
        break;
      }

  const auto ext = extend_orthocomplement(sys, budget);
  if (ext.complement.empty()) {
    out.report.add("central-one-equation", Verdict::precondition_unmet, {}, "no orthocomplement on the property lattice");
    out.report.add("central-equals-classical", Verdict::precondition_unmet, {}, "needs A, B and C");
    return out;
  }
  std::optional<Witness> one;
  for (std::size_t z = 0; z < m; ++z)
    if (detail::splits(L, z, ext.complement[z], false) != out.central.test(z)) {
      one = Witness{{}, {z}, {}, "single-equation test with z' disagrees with the partner scan"};
      break;
    }
  out.report.add_check("central-one-equation", one);
  const auto cls = classical_elements(sys);
  std::optional<Witness> eq;
  for (std::size_t z = 0; z < m; ++z)
    if (cls.classical.test(z) != out.central.test(z)) {
      eq = Witness{{}, {z}, {}, cls.classical.test(z) ? "classical but not central" : "central but not classical"};
      break;
    }
  out.report.add_check("central-equals-classical", eq);
  return out;
}

}  // namespace spslab
