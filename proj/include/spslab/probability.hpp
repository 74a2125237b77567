#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "spslab/closure.hpp"

namespace spslab {

namespace detail {

inline std::vector<std::size_t> testable_list(const System& sys) { return indices_of(sys.testable()); }

/// Column of mu values of property a over all states; nullopt if incomplete.
inline std::optional<std::vector<Rational>> mu_column(const System& sys, std::size_t a) {
  std::vector<Rational> col;
  col.reserve(sys.size());
  for (std::size_t p = 0; p < sys.size(); ++p) {
    auto v = sys.mu(p, a);
    if (!v) return std::nullopt;
    col.push_back(*v);
  }
  return col;
}

/// Least upper bound of `elems` among the testable properties, if any.
inline std::optional<std::size_t> sup0(const System& sys, const PropSet& elems) {
  PropSet upper = sys.testable();
  for (auto x : indices_of(elems)) upper &= sys.lattice().up(x);
  for (auto c : indices_of(upper))
    if (upper.is_subset_of(sys.lattice().up(c))) return c;
  return std::nullopt;
}
inline std::optional<std::size_t> inf0(const System& sys, const PropSet& elems) {
  PropSet lower = sys.testable();
  for (auto x : indices_of(elems)) lower &= sys.lattice().down(x);
  for (auto c : indices_of(lower))
    if (lower.is_subset_of(sys.lattice().down(c))) return c;
  return std::nullopt;
}
inline PropSet two(const System& sys, std::size_t a, std::size_t b) {
  PropSet s(sys.prop_count());
  s.set(a);
  s.set(b);
  return s;
}

}  // namespace detail

/// a ⊥ b on testable properties: mu_p(a) + mu_p(b) <= 1 for every state.
inline bool perp0(const System& sys, std::size_t a, std::size_t b) {
  for (std::size_t p = 0; p < sys.size(); ++p) {
    auto x = sys.mu(p, a), y = sys.mu(p, b);
    if (!x || !y || *x + *y > kOne) return false;
  }
  return true;
}

/// Calls fn(family) for every set of distinct, pairwise orthogonal, nonzero
/// testable properties (including the empty family), in DFS index order.
/// Returns false if the budget stopped the enumeration.
inline bool for_each_orthogonal_family(const System& sys, const Budget& budget,
                                       const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> elems;
  for (auto a : detail::testable_list(sys))
    if (a != sys.bottom()) elems.push_back(a);
  const std::size_t k = elems.size();
  std::vector<std::vector<bool>> adj(k, std::vector<bool>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) adj[i][j] = adj[j][i] = perp0(sys, elems[i], elems[j]);
  std::uint64_t visited = 0;
  bool stopped = false, over = false;
  std::vector<std::size_t> chosen, family;
  std::function<void(std::size_t)> dfs = [&](std::size_t from) {
    if (stopped || over) return;
    if (!budget.allows(++visited)) {
      over = true;
      return;
    }
    family.clear();
    for (auto i : chosen) family.push_back(elems[i]);
    if (!fn(family)) {
      stopped = true;
      return;
    }
    for (std::size_t i = from; i < k; ++i) {
      bool ok = true;
      for (auto c : chosen) ok = ok && adj[c][i];
      if (!ok) continue;
      chosen.push_back(i);
      dfs(i + 1);
      chosen.pop_back();
    }
  };
  dfs(0);
  return !over;
}

/// Checks the probability table against its three axioms.
inline AxiomReport validate_mu(const System& sys, const Budget& budget = Budget::from_env()) {
  AxiomReport rep;
  const auto T = detail::testable_list(sys);
  std::optional<Witness> def_fail;
  for (std::size_t p = 0; p < sys.size() && !def_fail; ++p)
    for (auto a : T) {
      auto v = sys.mu(p, a);
      if (!v) {
        def_fail = Witness{{p}, {a}, {}, "missing probability entry"};
        break;
      }
      if (*v < kZero || *v > kOne) {
        def_fail = Witness{{p}, {a}, {}, "probability out of range"};
        break;
      }
    }
  rep.add_check("mu-defined", def_fail);
  if (def_fail) {
    for (const char* n : {"Oi", "Oii", "Oiii"}) rep.add(n, Verdict::precondition_unmet, {}, "probability table incomplete");
    return rep;
  }

  std::optional<Witness> oi, oii;
  for (std::size_t p = 0; p < sys.size(); ++p)
    for (auto a : T) {
      if (!oi && ((*sys.mu(p, a) == kOne) != sys.actual(p).test(a)))
        oi = Witness{{p}, {a}, {}, sys.actual(p).test(a) ? "actual but mu < 1" : "mu = 1 but not actual"};
      for (auto b : T)
        if (!oii && sys.lattice().leq(a, b) && *sys.mu(p, a) > *sys.mu(p, b))
          oii = Witness{{p}, {a, b}, {}, "a <= b but mu_p(a) > mu_p(b)"};
    }
  rep.add_check("Oi", oi);
  rep.add_check("Oii", oii);

  std::map<std::vector<Rational>, std::size_t> by_column;
  for (auto a : T) by_column.emplace(*detail::mu_column(sys, a), a);
  std::optional<Witness> oiii;
  const bool complete = for_each_orthogonal_family(sys, budget, [&](const std::vector<std::size_t>& fam) {
    std::vector<Rational> need(sys.size(), Rational(1));
    for (std::size_t p = 0; p < sys.size(); ++p)
      for (auto a : fam) need[p] -= *sys.mu(p, a);
    if (!by_column.count(need)) {
      oiii = Witness{{}, fam, {}, "no testable property completes this orthogonal family to 1"};
      return false;
    }
    return true;
  });
  if (oiii) rep.add("Oiii", Verdict::fails, oiii);
  else if (!complete) rep.add("Oiii", Verdict::partial, {}, "orthogonal family enumeration over budget");
  else rep.add("Oiii", Verdict::holds);
  return rep;
}

inline bool mu_valid(const System& sys, const Budget& budget = Budget::from_env()) {
  return validate_mu(sys, budget).all_hold();
}

/// The testable property whose mu column is 1 - mu(a); nullopt if none.
inline std::optional<std::size_t> ortho_complement0(const System& sys, std::size_t a) {
  auto col = detail::mu_column(sys, a);
  if (!col) return std::nullopt;
  for (auto& v : *col) v = Rational(1) - v;
  for (auto b : detail::testable_list(sys))
    if (detail::mu_column(sys, b) == col) return b;
  return std::nullopt;
}

/// Orthocomplementation and orthomodularity of the testable properties.
inline AxiomReport check_omp(const System& sys, const Budget& budget = Budget::from_env()) {
  AxiomReport rep;
  const auto T = detail::testable_list(sys);
  const auto& L = sys.lattice();

  std::optional<Witness> uniq;
  std::vector<std::optional<std::size_t>> comp(sys.prop_count());
  for (auto a : T) {
    comp[a] = ortho_complement0(sys, a);
    std::size_t count = 0;
    auto col = detail::mu_column(sys, a);
    for (auto& v : *col) v = Rational(1) - v;
    for (auto b : T)
      if (detail::mu_column(sys, b) == col) ++count;
    if (!uniq && count != 1) uniq = Witness{{}, {a}, {}, count == 0 ? "no complement" : "complement not unique"};
  }
  rep.add_check("complement-exists-unique", uniq);
  if (uniq) {
    for (const char* n : {"orthocomplementation", "orthomodular", "orthogonal-joins", "order-determining", "nonzero-attains-one"})
      rep.add(n, Verdict::precondition_unmet, {}, "complement missing");
    return rep;
  }

  std::optional<Witness> oc;
  for (auto a : T) {
    const std::size_t ac = *comp[a];
    if (*comp[ac] != a) oc = Witness{{}, {a, ac}, {}, "a'' != a"};
    else if (detail::sup0(sys, detail::two(sys, a, ac)) != L.top()) oc = Witness{{}, {a, ac}, {}, "a v a' != I"};
    else if (detail::inf0(sys, detail::two(sys, a, ac)) != L.bottom()) oc = Witness{{}, {a, ac}, {}, "a ^ a' != 0"};
    for (auto b : T)
      if (!oc && L.leq(a, b) && !L.leq(*comp[b], ac)) oc = Witness{{}, {a, b}, {}, "a <= b but not b' <= a'"};
    if (oc) break;
  }
  rep.add_check("orthocomplementation", oc);

  std::optional<Witness> om;
  for (auto a : T) {
    for (auto b : T) {
      if (!L.leq(a, b)) continue;
      auto c = detail::inf0(sys, detail::two(sys, *comp[a], b));
      if (!c) {
        om = Witness{{}, {a, b}, {}, "a' ^ b does not exist"};
        break;
      }
      auto d = detail::sup0(sys, detail::two(sys, a, *c));
      if (d != b) {
        om = Witness{{}, {a, b}, {}, "b != a v (a' ^ b)"};
        break;
      }
    }
    if (om) break;
  }
  rep.add_check("orthomodular", om);

  std::optional<Witness> oj;
  const bool complete = for_each_orthogonal_family(sys, budget, [&](const std::vector<std::size_t>& fam) {
    PropSet s(sys.prop_count());
    for (auto a : fam) s.set(a);
    auto j0 = detail::sup0(sys, s);
    if (!j0 || *j0 != L.join_all(s)) {
      oj = Witness{{}, fam, {}, j0 ? "testable join differs from lattice join" : "no testable join"};
      return false;
    }
    return true;
  });
  if (oj) rep.add("orthogonal-joins", Verdict::fails, oj);
  else if (!complete) rep.add("orthogonal-joins", Verdict::partial, {}, "over budget");
  else rep.add("orthogonal-joins", Verdict::holds);

  std::optional<Witness> od;
  for (auto a : T)
    for (auto b : T) {
      if (od) break;
      bool dominated = true;
      for (std::size_t p = 0; p < sys.size(); ++p) dominated = dominated && *sys.mu(p, a) <= *sys.mu(p, b);
      if (dominated && !L.leq(a, b)) od = Witness{{}, {a, b}, {}, "mu(a) <= mu(b) everywhere but not a <= b"};
    }
  rep.add_check("order-determining", od);

  std::optional<Witness> nz;
  for (auto a : T) {
    if (a == L.bottom()) continue;
    bool hit = false;
    for (std::size_t p = 0; p < sys.size(); ++p) hit = hit || *sys.mu(p, a) == kOne;
    if (!hit) {
      nz = Witness{{}, {a}, {}, "nonzero property never certain"};
      break;
    }
  }
  rep.add_check("nonzero-attains-one", nz);
  return rep;
}

/// Every state support is testable. Needs axiom A.
inline AxiomEntry check_axiom_B(const System& sys) {
  AxiomEntry e{"B", Verdict::holds, {}, {}};
  if (!check_axiom_A(sys).holds()) {
    e.verdict = Verdict::precondition_unmet;
    e.note = "axiom A fails";
    return e;
  }
  for (std::size_t s = 0; s < sys.size(); ++s)
    if (!sys.testable().test(sys.support(s))) {
      e.verdict = Verdict::fails;
      e.witness = Witness{{s}, {sys.support(s)}, {}, "support not testable"};
      return e;
    }
  return e;
}

/// Every property is the meet of the complemented supports above it.
inline AxiomEntry check_axiom_C(const System& sys, const Budget& budget = Budget::from_env()) {
  AxiomEntry e{"C", Verdict::holds, {}, {}};
  if (!check_axiom_B(sys).holds() || !mu_valid(sys, budget)) {
    e.verdict = Verdict::precondition_unmet;
    e.note = "needs A, B and a valid probability table";
    return e;
  }
  const auto& L = sys.lattice();
  std::vector<std::size_t> cs(sys.size());
  for (std::size_t s = 0; s < sys.size(); ++s) {
    auto c = ortho_complement0(sys, sys.support(s));
    if (!c) {
      e.verdict = Verdict::precondition_unmet;
      e.note = "support without complement";
      return e;
    }
    cs[s] = *c;
  }
  for (std::size_t b = 0; b < sys.prop_count(); ++b) {
    std::size_t m = L.top();
    for (std::size_t s = 0; s < sys.size(); ++s)
      if (L.leq(b, cs[s])) m = L.meet(m, cs[s]);
    if (m != b) {
      e.verdict = Verdict::fails;
      e.witness = Witness{{}, {b, m}, {}, "b differs from the meet of complemented supports above it"};
      return e;
    }
  }
  return e;
}

/// Orthocomplement on the whole property lattice, b' = join of the supports
/// a_s with b <= a_s'.
struct ExtendedComplement {
  std::vector<std::size_t> complement;  // empty when preconditions fail
  AxiomReport report;
};

inline ExtendedComplement extend_orthocomplement(const System& sys, const Budget& budget = Budget::from_env()) {
  ExtendedComplement out;
  auto& rep = out.report;
  const auto a = check_axiom_A(sys);
  const auto b = check_axiom_B(sys);
  const auto c = check_axiom_C(sys, budget);
  if (!a.holds() || !b.holds() || !c.holds()) {
    rep.add("extended-orthocomplement", Verdict::precondition_unmet, {}, "needs A, B and C");
    return out;
  }
  const auto& L = sys.lattice();
  const std::size_t m = sys.prop_count();
  std::vector<std::size_t> cs(sys.size());
  for (std::size_t s = 0; s < sys.size(); ++s) cs[s] = *ortho_complement0(sys, sys.support(s));
  auto& comp = out.complement;
  comp.resize(m);
  for (std::size_t x = 0; x < m; ++x) {
    std::size_t j = L.bottom();
    for (std::size_t s = 0; s < sys.size(); ++s)
      if (L.leq(x, cs[s])) j = L.join(j, sys.support(s));
    comp[x] = j;
  }
  std::optional<Witness> rev, inv, mz, jt, pw, agree;
  for (std::size_t x = 0; x < m; ++x) {
    if (!inv && comp[comp[x]] != x) inv = Witness{{}, {x, comp[x]}, {}, "b'' != b"};
    if (!mz && L.meet(x, comp[x]) != L.bottom()) mz = Witness{{}, {x, comp[x]}, {}, "b ^ b' != 0"};
    if (!jt && L.join(x, comp[x]) != L.top()) jt = Witness{{}, {x, comp[x]}, {}, "b v b' != I"};
    for (std::size_t y = 0; y < m && !rev; ++y)
      if (L.leq(x, y) && !L.leq(comp[y], comp[x])) rev = Witness{{}, {x, y}, {}, "b <= c but not c' <= b'"};
    for (std::size_t s = 0; s < sys.size() && !pw; ++s)
      if (L.leq(comp[x], cs[s]) != L.leq(sys.support(s), x))
        pw = Witness{{s}, {x}, {}, "b' <= a_s' disagrees with a_s <= b"};
    if (!agree && sys.testable().test(x) && ortho_complement0(sys, x) != comp[x])
      agree = Witness{{}, {x, comp[x]}, {}, "differs from the testable complement"};
  }
  rep.add_check("order-reversing", rev);
  rep.add_check("involution", inv);
  rep.add_check("meet-zero", mz);
  rep.add_check("join-top", jt);
  rep.add_check("support-duality", pw);
  rep.add_check("agrees-with-testable-complement", agree);
  const auto bad = L.non_atomistic_element();
  rep.add_check("atomistic", bad ? std::optional<Witness>(Witness{{}, {*bad}, {}, "not a join of atoms"}) : std::nullopt);
  return out;
}

/// p ⊥ q: some testable a has mu_p(a) = 1 and mu_q(a) = 0.
inline bool state_perp(const System& sys, std::size_t p, std::size_t q) {
  for (auto a : detail::testable_list(sys)) {
    auto x = sys.mu(p, a), y = sys.mu(q, a);
    if (x && y && *x == kOne && *y == kZero) return true;
  }
  return false;
}

/// Row-wise state orthogonality derived from the probability table.
inline std::vector<StateSet> state_perp_rows(const System& sys) {
  std::vector<StateSet> rows(sys.size());
  for (std::size_t p = 0; p < sys.size(); ++p)
    for (std::size_t q = 0; q < sys.size(); ++q)
      if (state_perp(sys, p, q)) rows[p].insert(q);
  return rows;
}

/// T' = states orthogonal to every member of T, under the given relation.
inline StateSet perp_complement(const std::vector<StateSet>& rows, StateSet T, StateSet all) {
  StateSet out = all;
  for (auto t : T) {
    StateSet col;
    for (std::size_t p = 0; p < rows.size(); ++p)
      if (rows[p].contains(t)) col.insert(p);
    out &= col;
  }
  return out;
}

inline StateSet T_prime(const System& sys, StateSet T) { return perp_complement(state_perp_rows(sys), T, sys.all()); }

/// The three closure identities relating bar, bar0 and biorthogonal closure.
inline AxiomReport verify_bicommutant(const System& sys, const Budget& budget = Budget::from_env()) {
  AxiomReport rep;
  const bool ab = check_axiom_A(sys).holds() && check_axiom_B(sys).holds() && mu_valid(sys, budget);
  const bool abc = ab && check_axiom_C(sys, budget).holds();
  if (!ab) {
    for (const char* n : {"bar-equals-bar0", "biorthogonal-equals-bar0", "bar-equals-biorthogonal"})
      rep.add(n, Verdict::precondition_unmet, {}, "needs A and B with a valid probability table");
    return rep;
  }
  const auto rows = state_perp_rows(sys);
  std::optional<Witness> f1, f2, f3;
  auto cov = for_each_subset_budgeted(sys.all(), budget, [&](StateSet t) {
    const StateSet bar = sup_close(sys, t), bar0 = sup_close0(sys, t);
    const StateSet bi = perp_complement(rows, perp_complement(rows, t, sys.all()), sys.all());
    if (!f1 && abc && bar != bar0) f1 = Witness{{}, {}, {t, bar, bar0}, "T^- != T^-0"};
    if (!f2 && bi != bar0) f2 = Witness{{}, {}, {t, bi, bar0}, "T'' != T^-0"};
    if (!f3 && abc && bar != bi) f3 = Witness{{}, {}, {t, bar, bi}, "T^- != T''"};
    return !(f1 || f2 || f3);
  });
  if (abc) add_search_entry(rep, "bar-equals-bar0", cov, f1);
  else rep.add("bar-equals-bar0", Verdict::precondition_unmet, {}, "axiom C fails");
  add_search_entry(rep, "biorthogonal-equals-bar0", cov, f2);
  if (abc) add_search_entry(rep, "bar-equals-biorthogonal", cov, f3);
  else rep.add("bar-equals-biorthogonal", Verdict::precondition_unmet, {}, "axiom C fails");
  return rep;
}

namespace detail {

inline void check_complement_on_family(const System& sys, const SubsetFamily& fam, const std::vector<StateSet>& rows,
                                       const std::string& suffix, AxiomReport& rep) {
  std::optional<Witness> closed, rev, inv, meet, join;
  for (auto s : fam.members) {
    const StateSet sc = perp_complement(rows, s, sys.all());
    if (!closed && !fam.contains(sc)) closed = Witness{{}, {}, {s, sc}, "S' not in the family"};
    if (!inv && perp_complement(rows, sc, sys.all()) != s) inv = Witness{{}, {}, {s, sc}, "S'' != S"};
    if (!meet && s.intersects(sc)) meet = Witness{{}, {}, {s, sc}, "S n S' not empty"};
    if (!join && close(sys, fam.kind, s | sc) != sys.all()) join = Witness{{}, {}, {s, sc}, "S v S' != all"};
    for (auto t : fam.members)
      if (!rev && s.subset_of(t) && !perp_complement(rows, t, sys.all()).subset_of(sc))
        rev = Witness{{}, {}, {s, t}, "S <= T but not T' <= S'"};
  }
  rep.add_check("complement-closed" + suffix, closed);
  rep.add_check("complement-order-reversing" + suffix, rev);
  rep.add_check("complement-involutive" + suffix, inv);
  rep.add_check("complement-meet-empty" + suffix, meet);
  rep.add_check("complement-join-all" + suffix, join);
}

}  // namespace detail

struct TestableFamily {
  SubsetFamily family;
  AxiomReport report;
};

/// Enumerates the sets closed under testable superposition and certifies
/// S -> S' as an orthocomplementation on them (and on the superposition
/// closed sets when axiom C holds).
inline TestableFamily build_F0(const System& sys, const Budget& budget = Budget::from_env()) {
  TestableFamily out;
  const bool ab = check_axiom_A(sys).holds() && check_axiom_B(sys).holds() && mu_valid(sys, budget);
  out.family = enumerate_family(sys, FamilyKind::testable_closed, budget);
  if (!ab) {
    out.report.add("testable-orthocomplement", Verdict::precondition_unmet, {}, "needs A and B with a valid probability table");
    return out;
  }
  const auto rows = state_perp_rows(sys);
  detail::check_complement_on_family(sys, out.family, rows, "", out.report);
  if (check_axiom_C(sys, budget).holds()) {
    const auto fam = enumerate_family(sys, FamilyKind::superposition_closed, budget);
    detail::check_complement_on_family(sys, fam, rows, "-superposition", out.report);
  }
  return out;
}

}  // namespace spslab
