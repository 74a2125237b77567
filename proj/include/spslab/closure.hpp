#pragma once

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "spslab/system.hpp"

namespace spslab {

/// lambda{p,q} = { s : xi(p) ∩ xi(q) ⊆ xi(s) }.
inline StateSet lambda_pair(const System& sys, std::size_t p, std::size_t q) {
  if (p >= sys.size() || q >= sys.size()) throw StructureError("unknown state index");
  return sys.pair(p, q);
}

/// S is lambda-closed when it contains lambda{p,q} for all p,q in S.
inline bool is_lambda_closed(const System& sys, StateSet s) {
  for (auto p : s)
    for (auto q : s)
      if (!sys.pair(p, q).subset_of(s)) return false;
  return true;
}

/// Least lambda-closed superset of P, by worklist fixpoint over pairs.
inline StateSet lambda_close(const System& sys, StateSet P) {
  StateSet cur = P;
  std::vector<std::size_t> work = P.indices();
  while (!work.empty()) {
    const std::size_t x = work.back();
    work.pop_back();
    for (auto y : StateSet(cur)) {
      for (auto z : sys.pair(x, y) - cur) {
        cur.insert(z);
        work.push_back(z);
      }
    }
  }
  return cur;
}

/// S^- : all superpositions of S. The empty set closes to the empty set.
inline StateSet sup_close(const System& sys, StateSet S) {
  if (S.empty()) return {};
  std::size_t j = sys.bottom();
  for (auto s : S) j = sys.lattice().join(j, sys.support(s));
  return sys.kappa(j);
}

/// Superpositions of T with respect to the testable properties only.
inline StateSet sup_close0(const System& sys, StateSet T) {
  PropSet common = sys.testable();
  for (auto t : T) common &= sys.actual(t);
  StateSet out = sys.all();
  for (auto a : indices_of(common)) out &= sys.kappa(a);
  return out;
}

enum class FamilyKind { lambda_closed, superposition_closed, testable_closed };

inline std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::lambda_closed: return "lambda-closed";
    case FamilyKind::superposition_closed: return "superposition-closed";
    case FamilyKind::testable_closed: return "testable-superposition-closed";
  }
  return "?";
}

inline StateSet close(const System& sys, FamilyKind kind, StateSet s) {
  switch (kind) {
    case FamilyKind::lambda_closed: return lambda_close(sys, s);
    case FamilyKind::superposition_closed: return sup_close(sys, s);
    case FamilyKind::testable_closed: return sup_close0(sys, s);
  }
  return s;
}

/// The closed subsets of one closure operator, with lattice structure
/// meet = intersection and join = closure of the union.
struct SubsetFamily {
  StateSet universe;
  FamilyKind kind = FamilyKind::lambda_closed;
  std::vector<StateSet> members;  // sorted by (cardinality, mask)

  std::optional<std::size_t> index_of(StateSet s) const {
    auto it = std::lower_bound(members.begin(), members.end(), s, order);
    if (it == members.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - members.begin());
  }
  bool contains(StateSet s) const { return index_of(s).has_value(); }

  /// Inclusion order over the members. Bottom is the least member, top the
  /// universe.
  FiniteLattice lattice() const {
    return FiniteLattice::from_sets(members, 0, index_of(universe).value_or(members.size() - 1));
  }

  static bool order(StateSet a, StateSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.mask() < b.mask();
  }
};

/// Enumerates every closed subset. Refuses when 2^|states| exceeds the budget.
inline SubsetFamily enumerate_family(const System& sys, FamilyKind kind, const Budget& budget = Budget::from_env()) {
  if (!budget.allows(pow2_sat(sys.size())))
    throw BudgetExceeded("family enumeration needs 2^" + std::to_string(sys.size()) +
                         " subsets, over budget " + std::to_string(budget.max_work) +
                         "; use on-demand closures instead");
  // Every closed set is reached from the closure of the empty set by adding
  // one point at a time and closing.
  std::set<StateSet> seen;
  std::deque<StateSet> queue;
  const StateSet start = close(sys, kind, StateSet());
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    const StateSet x = queue.front();
    queue.pop_front();
    for (auto p : sys.all() - x) {
      const StateSet y = close(sys, kind, x.with(p));
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  SubsetFamily fam;
  fam.universe = sys.all();
  fam.kind = kind;
  fam.members.assign(seen.begin(), seen.end());
  std::sort(fam.members.begin(), fam.members.end(), SubsetFamily::order);
  return fam;
}

/// Structural checks on an enumerated family: intersection system, atoms are
/// the singletons when axiom A holds, atomistic, and the lattice joins agree
/// with closure-of-union recomputed from scratch.
inline AxiomReport check_family(const System& sys, const SubsetFamily& fam) {
  AxiomReport rep;
  std::optional<Witness> inter_fail;
  for (std::size_t i = 0; i < fam.members.size() && !inter_fail; ++i)
    for (std::size_t j = i + 1; j < fam.members.size(); ++j)
      if (!fam.contains(fam.members[i] & fam.members[j])) {
        inter_fail = Witness{{}, {}, {fam.members[i], fam.members[j]}, "intersection not a member"};
        break;
      }
  if (!inter_fail && !fam.contains(fam.universe)) inter_fail = Witness{{}, {}, {fam.universe}, "universe missing"};
  rep.add_check("intersection-system", inter_fail);

  const auto L = fam.lattice();
  std::optional<Witness> join_fail;
  for (std::size_t i = 0; i < fam.members.size() && !join_fail; ++i)
    for (std::size_t j = 0; j < fam.members.size(); ++j) {
      const StateSet expect = close(sys, fam.kind, fam.members[i] | fam.members[j]);
      if (fam.members[L.join(i, j)] != expect || fam.members[L.meet(i, j)] != (fam.members[i] & fam.members[j])) {
        join_fail = Witness{{}, {}, {fam.members[i], fam.members[j]}, "lattice operation disagrees with closure"};
        break;
      }
    }
  rep.add_check("join-is-closure-of-union", join_fail);

  if (check_axiom_A(sys).holds()) {
    std::optional<Witness> single_fail;
    if (!fam.contains(StateSet())) single_fail = Witness{{}, {}, {StateSet()}, "empty set not closed"};
    for (std::size_t p = 0; p < sys.size() && !single_fail; ++p)
      if (!fam.contains(StateSet::single(p))) single_fail = Witness{{p}, {}, {}, "singleton not closed"};
    rep.add_check("singletons-closed", single_fail);
    const auto bad = L.non_atomistic_element();
    rep.add_check("atomistic", bad ? std::optional<Witness>(Witness{{}, {}, {fam.members[*bad]}, "not a join of atoms"})
                                   : std::nullopt);
  } else {
    rep.add("singletons-closed", Verdict::precondition_unmet, {}, "axiom A fails");
    rep.add("atomistic", Verdict::precondition_unmet, {}, "axiom A fails");
  }
  return rep;
}

enum class Coverage { exhaustive, sampled, over_budget };

/// Calls fn(A) for every subset of the universe, or for `max_work` random
/// subsets when over budget and a seed is given. fn returns false to stop.
template <class Fn>
Coverage for_each_subset_budgeted(StateSet universe, const Budget& budget, Fn&& fn) {
  if (budget.allows(pow2_sat(universe.size()))) {
    bool go = true;
    for_each_subset(universe, [&](StateSet s) {
      if (go) go = fn(s);
    });
    return Coverage::exhaustive;
  }
  if (!budget.seed) return Coverage::over_budget;
  std::mt19937_64 rng(*budget.seed);
  const auto idx = universe.indices();
  for (std::uint64_t i = 0; i < budget.max_work; ++i) {
    StateSet s;
    const std::uint64_t r = rng();
    for (std::size_t k = 0; k < idx.size(); ++k)
      if ((r >> k) & 1U) s.insert(idx[k]);
    if (!fn(s)) break;
  }
  return Coverage::sampled;
}

/// Same as above over ordered pairs (A, B).
template <class Fn>
Coverage for_each_subset_pair_budgeted(StateSet universe, const Budget& budget, Fn&& fn) {
  const std::uint64_t total = mul_sat(pow2_sat(universe.size()), pow2_sat(universe.size()));
  if (budget.allows(total)) {
    bool go = true;
    for_each_subset(universe, [&](StateSet a) {
      if (!go) return;
      for_each_subset(universe, [&](StateSet b) {
        if (go) go = fn(a, b);
      });
    });
    return Coverage::exhaustive;
  }
  if (!budget.seed) return Coverage::over_budget;
  std::mt19937_64 rng(*budget.seed);
  const auto idx = universe.indices();
  auto draw = [&] {
    StateSet s;
    const std::uint64_t r = rng();
    for (std::size_t k = 0; k < idx.size(); ++k)
      if ((r >> k) & 1U) s.insert(idx[k]);
    return s;
  };
  for (std::uint64_t i = 0; i < budget.max_work; ++i) {
    const StateSet a = draw();
    const StateSet b = draw();
    if (!fn(a, b)) break;
  }
  return Coverage::sampled;
}

/// Turns a search outcome into a report entry.
inline AxiomEntry& add_search_entry(AxiomReport& rep, std::string name, Coverage cov,
                                    const std::optional<Witness>& failure) {
  if (failure) return rep.add(std::move(name), Verdict::fails, failure);
  switch (cov) {
    case Coverage::exhaustive: return rep.add(std::move(name), Verdict::holds);
    case Coverage::sampled: return rep.add(std::move(name), Verdict::partial, {}, "randomized sample, no counterexample");
    case Coverage::over_budget: break;
  }
  return rep.add(std::move(name), Verdict::partial, {}, "not checked: over budget and no seed given");
}

/// Closure-operator laws for lambda and for the superposition closure.
inline AxiomReport check_closure_laws(const System& sys, const Budget& budget = Budget::from_env()) {
  AxiomReport rep;
  const StateSet all = sys.all();
  auto lam = [&](StateSet s) { return lambda_close(sys, s); };
  auto bar = [&](StateSet s) { return sup_close(sys, s); };

  {
    std::optional<Witness> c1, idem, bar_ext, bar_closed;
    auto cov = for_each_subset_budgeted(all, budget, [&](StateSet a) {
      const StateSet la = lam(a);
      if (!c1 && !a.subset_of(la)) c1 = Witness{{}, {}, {a, la}, "P not in lambda(P)"};
      if (!idem && lam(la) != la) idem = Witness{{}, {}, {a, la}, "lambda not idempotent"};
      const StateSet ba = bar(a);
      if (!bar_ext && !a.subset_of(ba)) bar_ext = Witness{{}, {}, {a, ba}, "A not in A^-"};
      if (!bar_closed && !is_lambda_closed(sys, ba)) bar_closed = Witness{{}, {}, {a, ba}, "A^- not lambda-closed"};
      return !(c1 && idem && bar_ext && bar_closed);
    });
    add_search_entry(rep, "C1", cov, c1);
    add_search_entry(rep, "lambda-idempotent", cov, idem);
    add_search_entry(rep, "bar-extensive", cov, bar_ext);
    add_search_entry(rep, "bar-lambda-closed", cov, bar_closed);
  }
  {
    std::optional<Witness> c2, u1, i2, u3, i4, bar_mono, strict;
    auto cov = for_each_subset_pair_budgeted(all, budget, [&](StateSet a, StateSet b) {
      const StateSet la = lam(a), lb = lam(b);
      if (!c2 && a.subset_of(lb) && !la.subset_of(lb)) c2 = Witness{{}, {}, {a, b}, "P1 in lambda(P2) but lambda(P1) not"};
      const StateSet lu = lam(a | b);
      if (!u1 && (lu != lam(la | b) || lu != lam(la | lb)))
        u1 = Witness{{}, {}, {a, b}, "lambda(A u B) differs from lambda(lambda(A) u B)"};
      const StateSet li = lam(a & b), mid = lam(la & b);
      if (!i2 && !(li.subset_of(mid) && mid.subset_of(la & lb)))
        i2 = Witness{{}, {}, {a, b}, "intersection inclusions fail"};
      if (!strict && li != (la & lb)) strict = Witness{{}, {}, {a, b, li, la & lb}, "lambda(A n B) strictly inside"};
      // Family forms: {singletons of A} u {B} and {A, B, A u B}.
      StateSet union_of_closures = lb;
      for (auto x : a) union_of_closures |= lam(StateSet::single(x));
      if (!u3 && lu != lam(union_of_closures)) u3 = Witness{{}, {}, {a, b}, "union-family law fails"};
      if (!i4 && !lam(a & b).subset_of(la & lb & lam(a | b))) i4 = Witness{{}, {}, {a, b}, "intersection-family law fails"};
      if (!bar_mono && a.subset_of(bar(b)) && !bar(a).subset_of(bar(b)))
        bar_mono = Witness{{}, {}, {a, b}, "A in B^- but A^- not in B^-"};
      return !(c2 && u1 && i2 && u3 && i4 && bar_mono && strict);
    });
    add_search_entry(rep, "C2", cov, c2);
    add_search_entry(rep, "closure-of-union", cov, u1);
    add_search_entry(rep, "closure-of-intersection", cov, i2);
    add_search_entry(rep, "closure-of-union-family", cov, u3);
    add_search_entry(rep, "closure-of-intersection-family", cov, i4);
    add_search_entry(rep, "bar-monotone", cov, bar_mono);
    if (strict)
      rep.add("intersection-strict-example", Verdict::holds, strict, "lambda(A n B) is a proper subset of lambda(A) n lambda(B)");
    else
      rep.add("intersection-strict-example", Verdict::not_applicable, {}, "no strict instance found");
  }
  {
    std::optional<Witness> simple_fail;
    if (!lam(StateSet()).empty()) simple_fail = Witness{{}, {}, {lam(StateSet())}, "lambda(empty) not empty"};
    for (std::size_t p = 0; p < sys.size() && !simple_fail; ++p)
      if (lam(StateSet::single(p)) != StateSet::single(p))
        simple_fail = Witness{{p}, {}, {lam(StateSet::single(p))}, "lambda(singleton) is not the singleton"};
    rep.add_check("lambda-simple", simple_fail);
    if (sys.size() < 2) {
      rep.add("lambda-simple-iff-A", Verdict::not_applicable, {}, "fewer than two states");
    } else {
      const bool a_holds = check_axiom_A(sys).holds();
      rep.add_check("lambda-simple-iff-A",
                    a_holds == !simple_fail ? std::nullopt
                                            : std::optional<Witness>(Witness{{}, {}, {}, "simplicity and axiom A disagree"}));
    }
  }
  return rep;
}

}  // namespace spslab
