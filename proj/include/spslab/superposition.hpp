#pragma once

#include <optional>
#include <string>

#include "spslab/closure.hpp"

namespace spslab {

/// p is a superposition of S but of no proper subset of S. Since the
/// superposition closure is monotone it suffices to test the subsets S\{x}.
inline bool is_minimal_superposition(const System& sys, std::size_t p, StateSet S) {
  if (!sup_close(sys, S).contains(p)) return false;
  for (auto x : S)
    if (sup_close(sys, S.without(x)).contains(p)) return false;
  return true;
}

/// Cardinality bound for the minimal superposition principle; nullopt means
/// every finite subset (on finite systems this is the full principle).
struct MspLevel {
  std::optional<std::size_t> max_size;

  static MspLevel finite() { return {}; }
  static MspLevel upto(std::size_t n) { return {n}; }
  std::string name() const { return max_size ? std::to_string(*max_size) + "-MSP" : "f-MSP"; }
};

/// Outcome of an MSP check. A failing witness stores {p} in states and
/// (S, S1, S2) in sets.
struct MspVerdict {
  std::string level;
  Verdict verdict = Verdict::holds;
  std::optional<Witness> witness;
  std::size_t explored_size = 0;  // largest subset cardinality fully explored

  AxiomEntry entry() const {
    return {level, verdict, witness,
            verdict == Verdict::partial ? "explored subsets up to size " + std::to_string(explored_size) : ""};
  }
  bool holds() const { return verdict == Verdict::holds; }
};

/// Binomial coefficient, saturating.
inline std::uint64_t choose_sat(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = mul_sat(r, n - k + i);
    if (r == ~std::uint64_t{0}) return r;
    r /= i;
  }
  return r;
}

/// Searches subsets by increasing cardinality (lexicographic within a size),
/// their minimal superpositions in index order, and ordered partitions into
/// nonempty parts; returns the first S, p, S1, S2 with
/// (S1 ∪ {p})^- ∩ S2^- empty.
inline MspVerdict check_msp(const System& sys, MspLevel level, const Budget& budget = Budget::from_env()) {
  MspVerdict out;
  out.level = level.name();
  const std::size_t n = sys.size();
  const std::size_t max_k = std::min(level.max_size.value_or(n), n);
  std::uint64_t spent = 0;
  out.explored_size = std::min<std::size_t>(1, max_k);
  for (std::size_t k = 2; k <= max_k; ++k) {
    const std::uint64_t cost = choose_sat(n, k);
    if (!budget.allows(spent + cost)) {
      out.verdict = Verdict::partial;
      return out;
    }
    spent += cost;
    bool found = false;
    for_each_combination(n, k, [&](StateSet S) {
      const StateSet closure = sup_close(sys, S);
      for (auto p : closure - S) {
        if (!is_minimal_superposition(sys, p, S)) continue;
        const std::uint64_t m = S.mask();
        for (std::uint64_t sub = (0 - m) & m; sub != m; sub = (sub - m) & m) {
          const StateSet s1(sub), s2 = S - StateSet(sub);
          if (!sup_close(sys, s1.with(p)).intersects(sup_close(sys, s2))) {
            out.verdict = Verdict::fails;
            out.witness = Witness{{p}, {}, {S, s1, s2}, "(S1 u p)^- and S2^- are disjoint"};
            found = true;
            return false;
          }
        }
      }
      return true;
    });
    if (found) return out;
    out.explored_size = k;
  }
  return out;
}

/// Exchange form of 2-MSP: r in {p,q}^-, r != p,q implies p in {r,q}^-.
inline AxiomEntry check_2msp_exchange(const System& sys) {
  AxiomEntry e{"2-MSP-exchange", Verdict::holds, {}, {}};
  if (!check_axiom_A(sys).holds()) {
    e.verdict = Verdict::precondition_unmet;
    e.note = "axiom A fails";
    return e;
  }
  for (std::size_t p = 0; p < sys.size(); ++p)
    for (std::size_t q = 0; q < sys.size(); ++q)
      for (auto r : sys.pair(p, q)) {
        if (r == p || r == q) continue;
        if (!sys.pair(r, q).contains(p)) {
          e.verdict = Verdict::fails;
          e.witness = Witness{{p, q, r}, {}, {}, "r in {p,q}^- but p not in {r,q}^-"};
          return e;
        }
      }
  return e;
}

/// Every pair of distinct states in S has a third state in its pair closure.
inline AxiomEntry check_sp(const System& sys, StateSet S) {
  AxiomEntry e{"SP", Verdict::holds, {}, {}};
  for (auto p : S)
    for (auto q : S) {
      if (q <= p) continue;
      if ((sys.pair(p, q) - StateSet::single(p).with(q)).empty()) {
        e.verdict = Verdict::fails;
        e.witness = Witness{{p, q}, {}, {}, "pair closure has no third state"};
        return e;
      }
    }
  return e;
}
inline AxiomEntry check_sp(const System& sys) { return check_sp(sys, sys.all()); }

/// Agreement of lambda and the superposition closure on triples (under
/// 3-MSP) and on all subsets (under f-MSP).
inline AxiomReport verify_closure_agreement(const System& sys, const Budget& budget = Budget::from_env()) {
  AxiomReport rep;
  const auto a = check_axiom_A(sys);
  rep.add(a.name, a.verdict, a.witness);
  const auto msp3 = check_msp(sys, MspLevel::upto(3), budget);
  rep.add(msp3.entry().name, msp3.verdict, msp3.witness, msp3.entry().note);
  if (!a.holds() || !msp3.holds()) {
    rep.add("triple-closures-agree", Verdict::precondition_unmet, {}, "needs A and 3-MSP");
  } else {
    std::optional<Witness> fail;
    const std::size_t n = sys.size();
    for (std::size_t p = 0; p < n && !fail; ++p)
      for (std::size_t q = 0; q < n && !fail; ++q)
        for (std::size_t s = 0; s < n; ++s) {
          const StateSet t = StateSet::single(p).with(q).with(s);
          if (lambda_close(sys, t) != sup_close(sys, t)) {
            fail = Witness{{p, q, s}, {}, {lambda_close(sys, t), sup_close(sys, t)}, "lambda{p,q,s} != {p,q,s}^-"};
            break;
          }
        }
    rep.add_check("triple-closures-agree", fail);
  }
  const auto fmsp = check_msp(sys, MspLevel::finite(), budget);
  rep.add(fmsp.entry().name, fmsp.verdict, fmsp.witness, fmsp.entry().note);
  if (!a.holds() || !fmsp.holds()) {
    rep.add("finite-closures-agree", Verdict::precondition_unmet, {}, "needs A and f-MSP");
  } else {
    std::optional<Witness> fail;
    auto cov = for_each_subset_budgeted(sys.all(), budget, [&](StateSet s) {
      if (lambda_close(sys, s) != sup_close(sys, s)) {
        fail = Witness{{}, {}, {s, lambda_close(sys, s), sup_close(sys, s)}, "lambda(A) != A^-"};
        return false;
      }
      return true;
    });
    add_search_entry(rep, "finite-closures-agree", cov, fail);
  }
  return rep;
}

}  // namespace spslab
