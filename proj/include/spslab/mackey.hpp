#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spslab/geometry.hpp"
#include "spslab/probability.hpp"

namespace spslab {

/// Outcome of certifying one higher structure. `facts` carries derived data
/// such as counts or classifications.
struct StructureCertificate {
  std::string structure;
  AxiomReport report;
  std::vector<std::pair<std::string, std::string>> facts;

  Verdict verdict() const {
    bool pre = false, partial = false;
    for (const auto& e : report.entries()) {
      if (e.verdict == Verdict::fails) return Verdict::fails;
      pre = pre || e.verdict == Verdict::precondition_unmet;
      partial = partial || e.verdict == Verdict::partial;
    }
    if (pre) return Verdict::precondition_unmet;
    return partial ? Verdict::partial : Verdict::holds;
  }
  bool holds() const { return verdict() == Verdict::holds; }
  std::vector<AxiomEntry> failures() const {
    std::vector<AxiomEntry> out;
    for (const auto& e : report.entries())
      if (!e.holds() && e.verdict != Verdict::not_applicable) out.push_back(e);
    return out;
  }
};

namespace detail {

inline std::optional<SubsetFamily> try_family(const System& sys, FamilyKind kind, const Budget& budget,
                                              StructureCertificate& cert) {
  try {
    return enumerate_family(sys, kind, budget);
  } catch (const BudgetExceeded& e) {
    cert.report.add("enumeration", Verdict::partial, {}, e.what());
    return std::nullopt;
  }
}

inline Witness set_witness(std::vector<StateSet> sets, std::string note, std::vector<std::size_t> states = {}) {
  return Witness{std::move(states), {}, std::move(sets), std::move(note)};
}

/// Orthogonality used by the ortho structures: the explicit relation when
/// given, otherwise the one derived from the probability table.
inline std::optional<std::vector<StateSet>> orthogonality(const System& sys) {
  if (sys.has_explicit_perp()) return *sys.instance().perp;
  if (sys.has_probability()) return state_perp_rows(sys);
  return std::nullopt;
}

}  // namespace detail

/// Lambda-closed sets with c(A) = closure under superposition.
inline StructureCertificate check_mackey_lattice(const System& sys, const Budget& budget = Budget::from_env()) {
  StructureCertificate cert{"MackeyLattice", {}, {}};
  auto& rep = cert.report;
  const auto pl = check_projective_lattice(sys, budget);
  for (const auto& e : pl.entries()) rep.add("projective-" + e.name, e.verdict, e.witness, e.note);
  const auto fam = detail::try_family(sys, FamilyKind::lambda_closed, budget, cert);
  if (!fam) return cert;
  std::optional<Witness> i, ii, iv;
  std::size_t closed = 0;
  for (auto x : fam->members) {
    const StateSet cx = sup_close(sys, x);
    if (!i && !x.subset_of(cx)) i = detail::set_witness({x, cx}, "x not below c(x)");
    for (auto y : fam->members)
      if (!ii && x.subset_of(sup_close(sys, y)) && !cx.subset_of(sup_close(sys, y)))
        ii = detail::set_witness({x, y}, "x <= c(y) but not c(x) <= c(y)");
    if (cx != x) continue;
    ++closed;
    for (std::size_t p = 0; p < sys.size() && !iv; ++p) {
      const StateSet j = lambda_close(sys, x.with(p));
      if (sup_close(sys, j) != j) iv = detail::set_witness({x, j}, "a v x is not closed", {p});
    }
  }
  rep.add_check("closure-extensive", i);
  rep.add_check("closure-monotone", ii);
  rep.add_check("closure-of-bottom", sup_close(sys, StateSet()).empty()
                                         ? std::nullopt
                                         : std::optional<Witness>(detail::set_witness({sup_close(sys, StateSet())}, "c(0) != 0")));
  rep.add_check("atom-join-closed", iv);
  cert.facts.emplace_back("closed-elements", std::to_string(closed));
  return cert;
}

/// The geometry of lambda-lines with the superposition-closed sets as closed
/// subspaces.
inline StructureCertificate check_mackey_geometry(const System& sys, const Budget& budget = Budget::from_env()) {
  StructureCertificate cert{"MackeyGeometry", {}, {}};
  auto& rep = cert.report;
  const auto g = build_geometry(sys, budget);
  if (!g.projective()) {
    rep.add("projective-geometry", Verdict::precondition_unmet, {}, "P1-P3 do not all hold");
    return cert;
  }
  rep.add("projective-geometry", Verdict::holds);
  const auto fam = detail::try_family(sys, FamilyKind::superposition_closed, budget, cert);
  if (!fam) return cert;
  std::optional<Witness> sub, inter, iii;
  for (auto e : fam->members) {
    if (!sub && !is_lambda_closed(sys, e)) sub = detail::set_witness({e}, "closed set is not a subspace");
    for (auto f : fam->members)
      if (!inter && !fam->contains(e & f)) inter = detail::set_witness({e, f}, "intersection not closed");
    for (std::size_t a = 0; a < sys.size() && !iii; ++a) {
      const StateSet j = lambda_close(sys, e.with(a));
      if (!fam->contains(j)) iii = detail::set_witness({e, j}, "a v E is not closed", {a});
    }
  }
  if (!inter && !fam->contains(sys.all())) inter = detail::set_witness({sys.all()}, "empty intersection not closed");
  rep.add_check("closed-are-subspaces", sub);
  rep.add_check("intersection-system", inter);
  rep.add_check("empty-closed", fam->contains(StateSet()) ? std::nullopt
                                                          : std::optional<Witness>(detail::set_witness({}, "empty set not closed")));
  rep.add_check("point-join-closed", iii);
  return cert;
}

/// Intersection property, covering property and semimodularity of a finite
/// lattice, with the implication chain between them.
inline StructureCertificate check_intersection_lattice(const FiniteLattice& L) {
  StructureCertificate cert{"IntersectionLattice", {}, {}};
  auto& rep = cert.report;
  if (!L.is_lattice()) {
    rep.add("complete", Verdict::fails, Witness{{}, L.defect()->elements, {}, "order defect: " + L.defect()->kind});
    return cert;
  }
  rep.add("complete", Verdict::holds, {}, "finite lattice");
  const auto bad = L.non_atomistic_element();
  rep.add_check("atomistic", bad ? std::optional<Witness>(Witness{{}, {*bad}, {}, "not a join of atoms"}) : std::nullopt);
  const auto atoms = L.atoms();
  const std::size_t n = L.size();

  std::optional<Witness> ip;
  for (auto a : atoms)
    for (auto b : atoms) {
      if (a == b) continue;
      for (std::size_t x = 0; x < n && !ip; ++x) {
        if (!L.leq(a, L.join(b, x))) continue;
        const std::size_t m = L.meet(L.join(a, b), x);
        bool found = false;
        for (auto c : atoms) found = found || L.leq(c, m);
        if (!found) ip = Witness{{}, {a, b, x}, {}, "a <= b v x but no atom below (a v b) ^ x"};
      }
    }
  std::optional<Witness> cov;
  for (auto a : atoms)
    for (std::size_t x = 0; x < n && !cov; ++x)
      if (L.meet(a, x) == L.bottom() && !L.covers(x, L.join(a, x)))
        cov = Witness{{}, {a, x}, {}, "a ^ x = 0 but a v x does not cover x"};
  std::optional<Witness> usm, lsm;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const bool lower_cover = L.covers(L.meet(u, v), v);
      const bool upper_cover = L.covers(u, L.join(u, v));
      if (!usm && lower_cover && !upper_cover) usm = Witness{{}, {u, v}, {}, "u ^ v covered by v but u v v does not cover u"};
      if (!lsm && upper_cover && !lower_cover) lsm = Witness{{}, {u, v}, {}, "u v v covers u but v does not cover u ^ v"};
    }
  rep.add_check("intersection-property", ip);
  rep.add_check("covering", cov);
  rep.add_check("upper-semimodular", usm);
  rep.add_check("lower-semimodular", lsm);

  const bool semi = !usm && !lsm, covering = !cov, inter = !ip;
  std::optional<Witness> chain;
  if (semi && !covering) chain = Witness{{}, {}, {}, "semimodular without covering"};
  else if (covering && !inter) chain = Witness{{}, {}, {}, "covering without intersection property"};
  else if (!bad && !(semi == covering && covering == inter)) chain = Witness{{}, {}, {}, "atomistic but verdicts disagree"};
  rep.add_check("equivalence-chain", chain);
  cert.facts.emplace_back("elements", std::to_string(n));
  cert.facts.emplace_back("atoms", std::to_string(atoms.size()));
  return cert;
}

/// Intersection-lattice certificate for the superposition-closed sets.
inline StructureCertificate check_intersection_lattice(const System& sys, const Budget& budget = Budget::from_env()) {
  StructureCertificate cert{"IntersectionLattice", {}, {}};
  const auto fam = detail::try_family(sys, FamilyKind::superposition_closed, budget, cert);
  if (!fam) return cert;
  const auto raw = check_intersection_lattice(fam->lattice());
  cert.facts = raw.facts;
  for (auto e : raw.report.entries()) {
    if (e.witness) {
      for (auto i : e.witness->props) e.witness->sets.push_back(fam->members[i]);
      e.witness->props.clear();
    }
    cert.report.add(e.name, e.verdict, e.witness, e.note);
  }
  return cert;
}

/// Every closed x and atom a outside x are separated by a closed coatom.
/// Coatoms are taken among the superposition-closed sets.
inline StructureCertificate check_regular(const System& sys, const Budget& budget = Budget::from_env()) {
  StructureCertificate cert{"RegularMackey", {}, {}};
  auto& rep = cert.report;
  if (!check_mackey_lattice(sys, budget).holds()) {
    rep.add("regular", Verdict::precondition_unmet, {}, "not a Mackey lattice");
    return cert;
  }
  const auto lam = detail::try_family(sys, FamilyKind::lambda_closed, budget, cert);
  const auto fam = detail::try_family(sys, FamilyKind::superposition_closed, budget, cert);
  if (!lam || !fam) return cert;
  const auto FL = fam->lattice();
  std::vector<StateSet> coatoms;
  for (auto h : FL.coatoms()) coatoms.push_back(fam->members[h]);
  const auto LL = lam->lattice();
  std::optional<Witness> fail;
  for (auto x : fam->members) {
    for (auto ai : LL.atoms()) {
      const StateSet a = lam->members[ai];
      if (a.subset_of(x)) continue;
      bool sep = false;
      for (auto h : coatoms) sep = sep || (x.subset_of(h) && !a.subset_of(h));
      if (!sep) {
        fail = detail::set_witness({x, a}, "no closed coatom above x excluding a");
        break;
      }
    }
    if (fail) break;
  }
  rep.add_check("regular", fail);
  cert.facts.emplace_back("closed-coatoms", std::to_string(coatoms.size()));
  return cert;
}

/// O1-O4 on (states, lambda-lines, orthogonality) and null-point analysis.
inline StructureCertificate check_orthogeometry(const System& sys, const Budget& budget = Budget::from_env()) {
  StructureCertificate cert{"Orthogeometry", {}, {}};
  auto& rep = cert.report;
  const auto rows = detail::orthogonality(sys);
  if (!rows) {
    rep.add("orthogonality", Verdict::precondition_unmet, {}, "no ⊥ relation");
    return cert;
  }
  const auto g = build_geometry(sys, budget);
  if (!g.projective()) {
    rep.add("projective-geometry", Verdict::precondition_unmet, {}, "P1-P3 do not all hold");
    return cert;
  }
  const std::size_t n = sys.size();
  auto perp = [&](std::size_t a, std::size_t b) { return (*rows)[a].contains(b); };
  std::optional<Witness> o1, o2, o3, o4;
  for (std::size_t a = 0; a < n; ++a) {
    if (!o4 && (*rows)[a] == sys.all()) o4 = Witness{{a}, {}, {}, "orthogonal to every point"};
    for (std::size_t b = 0; b < n; ++b) {
      if (!o1 && perp(a, b) && !perp(b, a)) o1 = Witness{{a, b}, {}, {}, "a _|_ b but not b _|_ a"};
      for (std::size_t p = 0; p < n && !o2; ++p) {
        if (!perp(a, p) || !perp(b, p)) continue;
        for (auto c : g.geometry.line(a, b))
          if (!perp(c, p)) {
            o2 = Witness{{a, b, c, p}, {}, {}, "a, b _|_ p and c in a*b but c not _|_ p"};
            break;
          }
      }
      for (std::size_t c = 0; c < n && !o3; ++c) {
        if (b == c) continue;
        bool found = false;
        for (auto p : g.geometry.line(b, c)) found = found || perp(p, a);
        if (!found) o3 = Witness{{a, b, c}, {}, {}, "no point of b*c orthogonal to a"};
      }
    }
  }
  rep.add_check("O1", o1);
  rep.add_check("O2", o2);
  rep.add_check("O3", o3);
  rep.add_check("O4", o4);
  StateSet nulls;
  for (std::size_t a = 0; a < n; ++a)
    if (perp(a, a)) nulls.insert(a);
  std::string names;
  for (auto a : nulls) names += (names.empty() ? "" : ",") + sys.state_name(a);
  cert.facts.emplace_back("null-points", names);
  cert.facts.emplace_back("classification", nulls.empty() ? "pure" : nulls == sys.all() ? "null" : "non-pure");
  return cert;
}

/// Lambda-closed sets with E -> E^perp.
inline StructureCertificate check_ortholattice(const System& sys, const Budget& budget = Budget::from_env()) {
  StructureCertificate cert{"Ortholattice", {}, {}};
  auto& rep = cert.report;
  const auto rows = detail::orthogonality(sys);
  if (!rows) {
    rep.add("orthogonality", Verdict::precondition_unmet, {}, "no ⊥ relation");
    return cert;
  }
  const auto pl = check_projective_lattice(sys, budget);
  for (const auto& e : pl.entries()) rep.add("projective-" + e.name, e.verdict, e.witness, e.note);
  const auto fam = detail::try_family(sys, FamilyKind::lambda_closed, budget, cert);
  if (!fam) return cert;
  auto op = [&](StateSet x) { return perp_complement(*rows, x, sys.all()); };
  std::optional<Witness> w1, w2, w4, sub;
  for (auto x : fam->members) {
    const StateSet xp = op(x), xpp = op(xp);
    if (!sub && !is_lambda_closed(sys, xp)) sub = detail::set_witness({x, xp}, "x^perp not a subspace");
    if (!w1 && !x.subset_of(xpp)) w1 = detail::set_witness({x, xpp}, "x not below x^perp perp");
    for (auto y : fam->members)
      if (!w2 && x.subset_of(y) && !op(y).subset_of(xp)) w2 = detail::set_witness({x, y}, "x <= y but not y^perp <= x^perp");
    if (xpp != x) continue;
    for (std::size_t a = 0; a < sys.size() && !w4; ++a) {
      const StateSet j = lambda_close(sys, x.with(a));
      if (op(op(j)) != j) w4 = detail::set_witness({x, j}, "a v x not perp-closed", {a});
    }
  }
  rep.add_check("perp-is-subspace", sub);
  rep.add_check("OL1", w1);
  rep.add_check("OL2", w2);
  rep.add_check("OL3", op(op(StateSet())).empty() ? std::nullopt
                                                  : std::optional<Witness>(detail::set_witness({op(op(StateSet()))}, "0^perp perp != 0")));
  rep.add_check("OL4", w4);

  const bool abc = check_axiom_A(sys).holds() && check_axiom_B(sys).holds() && check_axiom_C(sys, budget).holds();
  if (!abc) {
    rep.add("biorthogonal-is-closure", Verdict::not_applicable, {}, "needs A, B and C");
  } else {
    std::optional<Witness> bc;
    for (auto x : fam->members)
      if (op(op(x)) != sup_close(sys, x)) {
        bc = detail::set_witness({x, op(op(x)), sup_close(sys, x)}, "x^perp perp != closure of x");
        break;
      }
    rep.add_check("biorthogonal-is-closure", bc);
  }
  return cert;
}

/// Superposition-closed sets with S -> S'.
inline StructureCertificate check_orthosystem(const System& sys, const Budget& budget = Budget::from_env()) {
  StructureCertificate cert{"Orthosystem", {}, {}};
  auto& rep = cert.report;
  const auto rows = detail::orthogonality(sys);
  if (!rows) {
    rep.add("orthogonality", Verdict::precondition_unmet, {}, "no ⊥ relation");
    return cert;
  }
  const auto il = check_intersection_lattice(sys, budget);
  rep.add("intersection-lattice", il.verdict(), {}, il.holds() ? "" : "see intersection-lattice certificate");
  const auto fam = detail::try_family(sys, FamilyKind::superposition_closed, budget, cert);
  if (!fam) return cert;
  auto op = [&](StateSet x) { return perp_complement(*rows, x, sys.all()); };
  std::optional<Witness> cl, w1, w2;
  for (auto x : fam->members) {
    const StateSet xp = op(x);
    if (!cl && !fam->contains(xp)) cl = detail::set_witness({x, xp}, "x' not closed");
    if (!w1 && op(xp) != x) w1 = detail::set_witness({x, op(xp)}, "x'' != x");
    for (auto y : fam->members)
      if (!w2 && x.subset_of(y) && !op(y).subset_of(xp)) w2 = detail::set_witness({x, y}, "x <= y but not y' <= x'");
  }
  rep.add_check("complement-closed", cl);
  rep.add_check("OS1", w1);
  rep.add_check("OS2", w2);
  return cert;
}

/// For closed S and closed P the closure-join equals the lambda-join.
inline AxiomReport check_join_agreement(const System& sys, const Budget& budget = Budget::from_env()) {
  AxiomReport rep;
  const bool abc = check_axiom_A(sys).holds() && check_axiom_B(sys).holds() && check_axiom_C(sys, budget).holds();
  if (!abc) {
    rep.add("closed-joins-agree", Verdict::precondition_unmet, {}, "needs A, B and C");
    return rep;
  }
  SubsetFamily fam;
  try {
    fam = enumerate_family(sys, FamilyKind::superposition_closed, budget);
  } catch (const BudgetExceeded& e) {
    rep.add("closed-joins-agree", Verdict::partial, {}, e.what());
    return rep;
  }
  if (!budget.allows(mul_sat(fam.members.size(), fam.members.size()))) {
    rep.add("closed-joins-agree", Verdict::partial, {}, "pair count over budget");
    return rep;
  }
  std::optional<Witness> w;
  for (auto s : fam.members) {
    for (auto p : fam.members) {
      const StateSet a = sup_close(sys, s | p), b = lambda_close(sys, s | p);
      if (a != b) {
        w = detail::set_witness({s, p, a, b}, "S v P != lambda(S u P)");
        break;
      }
    }
    if (w) break;
  }
  rep.add_check("closed-joins-agree", w);
  return rep;
}

/// Object-level round trips geometry -> Mackey lattice -> intersection
/// lattice -> geometry, compared pointwise.
inline AxiomReport check_round_trip(const System& sys, const Budget& budget = Budget::from_env()) {
  AxiomReport rep;
  SubsetFamily lam, cls;
  try {
    lam = enumerate_family(sys, FamilyKind::lambda_closed, budget);
    cls = enumerate_family(sys, FamilyKind::superposition_closed, budget);
  } catch (const BudgetExceeded& e) {
    for (const char* n : {"closed-elements", "atoms-are-points", "geometry-round-trip", "lattice-round-trip",
                          "intersection-lattice-round-trip"})
      rep.add(n, Verdict::partial, {}, e.what());
    return rep;
  }
  const std::size_t n = sys.size();
  const auto g = build_geometry(sys, budget);

  std::optional<Witness> ce;
  std::vector<StateSet> closed;
  for (auto x : lam.members)
    if (sup_close(sys, x) == x) closed.push_back(x);
  std::sort(closed.begin(), closed.end(), SubsetFamily::order);
  if (closed != cls.members) ce = Witness{{}, {}, {}, "closed elements differ from the superposition-closed sets"};
  rep.add_check("closed-elements", ce);

  const auto CL = cls.lattice();
  std::optional<Witness> ap;
  for (auto a : CL.atoms())
    if (cls.members[a].size() != 1) {
      ap = detail::set_witness({cls.members[a]}, "atom is not a single state");
      break;
    }
  if (!ap && CL.atoms().size() != n) ap = Witness{{}, {}, {}, "not every state is an atom"};
  rep.add_check("atoms-are-points", ap);

  ProjectiveGeometry g2{n, std::vector<StateSet>(n * n)};
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const auto i = cls.index_of(sup_close(sys, StateSet::single(p).with(q)));
      g2.star[p * n + q] = cls.members[*i];
    }
  std::optional<Witness> gr;
  for (std::size_t p = 0; p < n && !gr; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (g2.line(p, q) != g.geometry.line(p, q)) {
        gr = detail::set_witness({g.geometry.line(p, q), g2.line(p, q)}, "p*q differs after the round trip", {p, q});
        break;
      }
  rep.add_check("geometry-round-trip", gr);

  auto close_star = [&](StateSet s) {
    StateSet cur = s;
    for (bool grew = true; grew;) {
      grew = false;
      for (auto p : cur)
        for (auto q : cur)
          if (!g2.line(p, q).subset_of(cur)) {
            cur |= g2.line(p, q);
            grew = true;
          }
    }
    return cur;
  };
  std::set<StateSet> subspaces;
  for (auto x : lam.members) subspaces.insert(x);
  std::set<StateSet> sub2;
  for_each_subset(sys.all(), [&](StateSet s) {
    if (close_star(s) == s) sub2.insert(s);
  });
  rep.add_check("lattice-round-trip",
                sub2 == subspaces ? std::nullopt
                                  : std::optional<Witness>(Witness{{}, {}, {}, "subspaces of the rebuilt geometry differ"}));

  std::vector<StateSet> closed2;
  for (auto x : sub2) {
    StateSet c = sys.all();
    for (auto m : cls.members)
      if (x.subset_of(m)) c &= m;
    if (c == x) closed2.push_back(x);
  }
  std::sort(closed2.begin(), closed2.end(), SubsetFamily::order);
  rep.add_check("intersection-lattice-round-trip",
                closed2 == cls.members ? std::nullopt
                                       : std::optional<Witness>(Witness{{}, {}, {}, "closed subspaces differ after the round trip"}));
  return rep;
}

}  // namespace spslab
