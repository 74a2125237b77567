#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spslab/sectors.hpp"

namespace spslab {

/// Points with a line operator p*q, stored as a table over ordered pairs.
struct ProjectiveGeometry {
  std::size_t points = 0;
  std::vector<StateSet> star;  // star[p * points + q]

  StateSet line(std::size_t p, std::size_t q) const { return star[p * points + q]; }

  /// Distinct sets p*q with p != q, in first-seen order.
  std::vector<StateSet> lines() const {
    std::vector<StateSet> out;
    std::set<StateSet> seen;
    for (std::size_t p = 0; p < points; ++p)
      for (std::size_t q = p + 1; q < points; ++q)
        if (seen.insert(line(p, q)).second) out.push_back(line(p, q));
    return out;
  }
};

/// Checks P1-P3 and symmetry of a line operator.
inline AxiomReport check_projective_axioms(const ProjectiveGeometry& g, const Budget& budget = Budget::from_env()) {
  AxiomReport rep;
  const std::size_t n = g.points;
  std::optional<Witness> p1, p2, sym;
  for (std::size_t p = 0; p < n; ++p) {
    if (!p1 && g.line(p, p) != StateSet::single(p)) p1 = Witness{{p}, {}, {g.line(p, p)}, "p*p != {p}"};
    for (std::size_t q = 0; q < n; ++q) {
      if (!p2 && !g.line(p, q).contains(p)) p2 = Witness{{p, q}, {}, {g.line(p, q)}, "p not in p*q"};
      if (!sym && g.line(p, q) != g.line(q, p)) sym = Witness{{p, q}, {}, {}, "p*q != q*p"};
    }
  }
  rep.add_check("P1", p1);
  rep.add_check("P2", p2);
  std::optional<Witness> p3;
  const std::uint64_t work = mul_sat(mul_sat(n, n), mul_sat(n, n));
  if (budget.allows(work)) {
    for (std::size_t q = 0; q < n && !p3; ++q)
      for (std::size_t r = 0; r < n && !p3; ++r)
        for (std::size_t s = 0; s < n && !p3; ++s)
          for (std::size_t t = 0; t < n && !p3; ++t) {
            if (!g.line(s, t).contains(r)) continue;
            for (auto p : g.line(q, r))
              if (p != s && !g.line(p, s).intersects(g.line(q, t))) {
                p3 = Witness{{p, q, r, s, t}, {}, {}, "p in q*r, r in s*t, p != s but p*s and q*t are disjoint"};
                break;
              }
          }
    rep.add_check("P3", p3);
  } else if (budget.seed) {
    std::mt19937_64 rng(*budget.seed);
    for (std::uint64_t i = 0; i < budget.max_work && !p3; ++i) {
      const std::size_t q = rng() % n, r = rng() % n, s = rng() % n, t = rng() % n;
      if (!g.line(s, t).contains(r)) continue;
      for (auto p : g.line(q, r))
        if (p != s && !g.line(p, s).intersects(g.line(q, t))) {
          p3 = Witness{{p, q, r, s, t}, {}, {}, "p in q*r, r in s*t, p != s but p*s and q*t are disjoint"};
          break;
        }
    }
    add_search_entry(rep, "P3", Coverage::sampled, p3);
  } else {
    add_search_entry(rep, "P3", Coverage::over_budget, std::nullopt);
  }
  rep.add_check("star-symmetric", sym);
  return rep;
}

struct GeometryResult {
  ProjectiveGeometry geometry;
  AxiomReport report;
  bool projective() const {
    return report.holds("P1") && report.holds("P2") && report.holds("P3");
  }
};

/// p*q = lambda{p,q}, with P1-P3 checked exhaustively (within budget).
inline GeometryResult build_geometry(const System& sys, const Budget& budget = Budget::from_env()) {
  GeometryResult out;
  const std::size_t n = sys.size();
  out.geometry.points = n;
  out.geometry.star.resize(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) out.geometry.star[p * n + q] = lambda_pair(sys, p, q);
  out.report = check_projective_axioms(out.geometry, budget);
  return out;
}

namespace detail {

/// Calls fn(A, B) over pairs of nonempty lambda-closed sets, or over random
/// subset pairs when the closed sets cannot be enumerated.
template <class Fn>
Coverage for_each_closed_pair(const System& sys, const Budget& budget, Fn&& fn) {
  try {
    const auto fam = enumerate_family(sys, FamilyKind::lambda_closed, budget);
    if (budget.allows(mul_sat(fam.members.size(), fam.members.size()))) {
      for (auto a : fam.members)
        for (auto b : fam.members)
          if (!a.empty() && !b.empty() && !fn(a, b)) return Coverage::exhaustive;
      return Coverage::exhaustive;
    }
  } catch (const BudgetExceeded&) {
  }
  if (!budget.seed) return Coverage::over_budget;
  for_each_subset_pair_budgeted(sys.all(), budget, [&](StateSet a, StateSet b) {
    if (a.empty() || b.empty()) return true;
    return fn(lambda_close(sys, a), lambda_close(sys, b));
  });
  return Coverage::sampled;
}

}  // namespace detail

/// Closure laws C3-C7 for lambda, plus the converse that C4, C5 and C7
/// give a projective geometry. C6 and C7 are checked for nonempty A, B,
/// which suffices since both sides depend only on lambda(A) and lambda(B).
inline AxiomReport check_c_laws(const System& sys, const Budget& budget = Budget::from_env()) {
  AxiomReport rep;
  rep.add("C3", Verdict::holds, {}, "finite state set");

  std::optional<Witness> c4;
  Coverage cov4 = Coverage::exhaustive;
  try {
    const auto fam = enumerate_family(sys, FamilyKind::lambda_closed, budget);
    for (auto a : fam.members) {
      for (auto x : sys.all() - a) {
        for (auto y : sys.all() - a) {
          if (lambda_close(sys, a.with(y)).contains(x) && !lambda_close(sys, a.with(x)).contains(y)) {
            c4 = Witness{{x, y}, {}, {a}, "x not in lambda(A), x in lambda(A u y), y not in lambda(A u x)"};
            break;
          }
        }
        if (c4) break;
      }
      if (c4) break;
    }
  } catch (const BudgetExceeded&) {
    cov4 = for_each_subset_budgeted(sys.all(), budget, [&](StateSet s) {
      const StateSet a = lambda_close(sys, s);
      for (auto x : sys.all() - a)
        for (auto y : sys.all() - a)
          if (lambda_close(sys, a.with(y)).contains(x) && !lambda_close(sys, a.with(x)).contains(y)) {
            c4 = Witness{{x, y}, {}, {a}, "x not in lambda(A), x in lambda(A u y), y not in lambda(A u x)"};
            return false;
          }
      return true;
    });
  }
  add_search_entry(rep, "C4", cov4, c4);

  std::optional<Witness> c5;
  if (!lambda_close(sys, StateSet()).empty()) c5 = Witness{{}, {}, {lambda_close(sys, StateSet())}, "lambda(empty) not empty"};
  for (std::size_t p = 0; p < sys.size() && !c5; ++p)
    if (lambda_close(sys, StateSet::single(p)) != StateSet::single(p))
      c5 = Witness{{p}, {}, {lambda_close(sys, StateSet::single(p))}, "lambda{p} != {p}"};
  rep.add_check("C5", c5);

  const std::size_t n = sys.size();
  std::vector<StateSet> lam(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) lam[p * n + q] = lambda_pair(sys, p, q);

  std::optional<Witness> c6;
  const auto cov6 = detail::for_each_closed_pair(sys, budget, [&](StateSet a, StateSet b) {
    StateSet rhs;
    for (auto x : a)
      for (auto y : b) rhs |= lam[x * n + y];
    const StateSet lhs = lambda_close(sys, a | b);
    if (lhs != rhs) {
      c6 = Witness{{}, {}, {a, b, lhs, rhs}, "lambda(A u B) != union of lambda{x,y}"};
      return false;
    }
    return true;
  });
  add_search_entry(rep, "C6", cov6, c6);

  std::optional<Witness> c7;
  Coverage cov7 = Coverage::exhaustive;
  auto c7_at = [&](StateSet a) {
    for (std::size_t b = 0; b < n; ++b) {
      StateSet rhs;
      for (auto x : a) rhs |= lam[x * n + b];
      const StateSet lhs = lambda_close(sys, a.with(b));
      if (lhs != rhs) {
        c7 = Witness{{b}, {}, {a, lhs, rhs}, "lambda(A u b) != union of lambda{x,b}"};
        return false;
      }
    }
    return true;
  };
  try {
    const auto fam = enumerate_family(sys, FamilyKind::lambda_closed, budget);
    for (auto a : fam.members)
      if (!a.empty() && !c7_at(a)) break;
  } catch (const BudgetExceeded&) {
    cov7 = for_each_subset_budgeted(sys.all(), budget, [&](StateSet s) { return s.empty() || c7_at(lambda_close(sys, s)); });
  }
  add_search_entry(rep, "C7", cov7, c7);

  if (rep.holds("C4") && rep.holds("C5") && rep.holds("C7")) {
    const auto g = build_geometry(sys, budget);
    std::optional<Witness> conv;
    for (const char* ax : {"P1", "P2", "P3"})
      if (!g.report.holds(ax)) {
        const auto* e = g.report.find(ax);
        conv = e->witness.value_or(Witness{});
        conv->note = std::string(ax) + " fails: " + conv->note;
        break;
      }
    rep.add_check("C4-C5-C7-give-geometry", conv);
  } else {
    rep.add("C4-C5-C7-give-geometry", Verdict::not_applicable, {}, "C4, C5 or C7 does not hold");
  }
  return rep;
}

/// Modular law over all triples of a finite lattice.
inline std::optional<Witness> modular_violation(const FiniteLattice& L) {
  for (std::size_t x = 0; x < L.size(); ++x)
    for (std::size_t z = 0; z < L.size(); ++z) {
      if (!L.leq(x, z)) continue;
      for (std::size_t y = 0; y < L.size(); ++y)
        if (L.join(x, L.meet(y, z)) != L.meet(L.join(x, y), z))
          return Witness{{}, {x, y, z}, {}, "x <= z but x v (y ^ z) != (x v y) ^ z"};
    }
  return std::nullopt;
}

/// The lambda-closed sets form an atomistic modular lattice.
inline AxiomReport check_projective_lattice(const System& sys, const Budget& budget = Budget::from_env()) {
  AxiomReport rep;
  SubsetFamily fam;
  try {
    fam = enumerate_family(sys, FamilyKind::lambda_closed, budget);
  } catch (const BudgetExceeded& e) {
    for (const char* n : {"atomistic", "modular", "meet-continuous"}) rep.add(n, Verdict::partial, {}, e.what());
    return rep;
  }
  const auto L = fam.lattice();
  const auto bad = L.non_atomistic_element();
  rep.add_check("atomistic", bad ? std::optional<Witness>(Witness{{}, {}, {fam.members[*bad]}, "not a join of atoms"})
                                 : std::nullopt);
  const std::uint64_t k = L.size();
  if (budget.allows(mul_sat(mul_sat(k, k), k))) {
    auto w = modular_violation(L);
    if (w) {
      for (auto i : w->props) w->sets.push_back(fam.members[i]);
      w->props.clear();
    }
    rep.add_check("modular", w);
  } else {
    rep.add("modular", Verdict::partial, {}, "triple count over budget");
  }
  rep.add("meet-continuous", Verdict::holds, {}, "finite lattice");
  return rep;
}

/// No member lies in the lambda-closure of the others.
inline bool independent(const System& sys, StateSet S) {
  for (auto s : S)
    if (lambda_close(sys, S.without(s)).contains(s)) return false;
  return true;
}

struct IndependenceResult {
  std::size_t size = 0;
  StateSet witness;
  bool exact = true;
};

/// Largest independent set. Exact level-wise search up to 20 states, greedy
/// (flagged inexact) above that.
inline IndependenceResult max_independent(const System& sys) {
  IndependenceResult out;
  const std::size_t n = sys.size();
  if (n > 20) {
    out.exact = false;
    for (std::size_t p = 0; p < n; ++p)
      if (independent(sys, out.witness.with(p))) out.witness.insert(p);
    out.size = out.witness.size();
    return out;
  }
  std::set<StateSet> level{StateSet()};
  while (true) {
    std::set<StateSet> next;
    for (auto s : level)
      for (std::size_t p = 0; p < n; ++p)
        if (!s.contains(p) && independent(sys, s.with(p))) next.insert(s.with(p));
    if (next.empty()) break;
    level = std::move(next);
  }
  out.witness = *level.begin();
  out.size = out.witness.size();
  return out;
}

/// Irreducibility of the geometry: SP on all states. Needs A and 3-MSP.
inline AxiomEntry check_irreducible(const System& sys, const Budget& budget = Budget::from_env()) {
  AxiomEntry e{"irreducible", Verdict::holds, {}, {}};
  SectorDecomposition dec;
  try {
    dec = sectors(sys, budget);
  } catch (const PreconditionUnmet& ex) {
    e.verdict = Verdict::precondition_unmet;
    e.note = ex.what();
    return e;
  }
  const auto sp = check_sp(sys);
  e.note = std::to_string(dec.blocks.size()) + (dec.blocks.size() == 1 ? " sector" : " sectors");
  if (!sp.holds()) {
    e.verdict = Verdict::fails;
    e.witness = sp.witness;
  }
  if (sp.holds() != (dec.blocks.size() == 1)) {
    e.verdict = Verdict::fails;
    e.note += "; SP verdict disagrees with the sector count";
  }
  return e;
}

}  // namespace spslab
