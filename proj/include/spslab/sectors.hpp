#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include <boost/pending/disjoint_sets.hpp>

#include "spslab/superposition.hpp"

namespace spslab {

/// s ~ t: equal, or their pair closure contains a third state.
inline bool approx(const System& sys, std::size_t s, std::size_t t) {
  return s == t || !(sys.pair(s, t) - StateSet::single(s).with(t)).empty();
}

/// Checks the three sector conditions for S; returns the first violation.
inline std::optional<Witness> sector_violation(const System& sys, StateSet S) {
  if (S.empty()) return Witness{{}, {}, {S}, "empty"};
  if (!is_lambda_closed(sys, S)) return Witness{{}, {}, {S}, "not lambda-closed"};
  const auto sp = check_sp(sys, S);
  if (!sp.holds()) return Witness{sp.witness->states, {}, {S}, "SP fails inside"};
  for (auto p : S)
    for (auto q : sys.all() - S)
      if (sys.pair(p, q) != StateSet::single(p).with(q)) return Witness{{p, q}, {}, {S}, "nontrivial pair closure across"};
  return std::nullopt;
}
inline bool is_sector(const System& sys, StateSet S) { return !sector_violation(sys, S).has_value(); }

struct SectorDecomposition {
  std::vector<StateSet> blocks;     // sorted by least element
  std::vector<AxiomEntry> block_sp;  // SP verdict per block
  AxiomReport report;
};

/// Partitions the states into classes of ~. Requires A and 3-MSP.
inline SectorDecomposition sectors(const System& sys, const Budget& budget = Budget::from_env()) {
  if (!check_axiom_A(sys).holds()) throw PreconditionUnmet("axiom A fails");
  if (!check_msp(sys, MspLevel::upto(3), budget).holds()) throw PreconditionUnmet("3-MSP does not hold");
  const std::size_t n = sys.size();
  std::vector<std::size_t> rank(n), parent(n);
  boost::disjoint_sets<std::size_t*, std::size_t*> ds(rank.data(), parent.data());
  for (std::size_t i = 0; i < n; ++i) ds.make_set(i);
  std::vector<StateSet> related(n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      if (approx(sys, s, t)) {
        related[s].insert(t);
        ds.union_set(s, t);
      }

  SectorDecomposition out;
  std::vector<StateSet> by_root(n);
  for (std::size_t s = 0; s < n; ++s) by_root[ds.find_set(s)].insert(s);
  for (auto b : by_root)
    if (!b.empty()) out.blocks.push_back(b);
  std::sort(out.blocks.begin(), out.blocks.end(), [](StateSet a, StateSet b) { return a.front() < b.front(); });

  std::optional<Witness> trans, sect;
  for (auto b : out.blocks) {
    for (auto s : b)
      if (!trans && related[s] != b) trans = Witness{{s}, {}, {related[s], b}, "relation is not transitive"};
    if (!sect)
      if (auto w = sector_violation(sys, b)) sect = w;
    out.block_sp.push_back(check_sp(sys, b));
  }
  out.report.add_check("approx-transitive", trans);
  out.report.add_check("blocks-are-sectors", sect);
  return out;
}

/// Sectors are exactly the lambda-clopen sets on which SP holds.
inline AxiomReport check_sector_clopen(const System& sys, const Budget& budget = Budget::from_env()) {
  AxiomReport rep;
  SectorDecomposition dec;
  try {
    dec = sectors(sys, budget);
  } catch (const PreconditionUnmet& e) {
    rep.add("sectors-clopen", Verdict::precondition_unmet, {}, e.what());
    rep.add("clopen-sp-blocks-are-sectors", Verdict::precondition_unmet, {}, e.what());
    return rep;
  }
  std::optional<Witness> clopen;
  for (auto b : dec.blocks)
    if (!is_lambda_closed(sys, sys.all() - b)) {
      clopen = Witness{{}, {}, {b}, "complement not lambda-closed"};
      break;
    }
  rep.add_check("sectors-clopen", clopen);
  try {
    const auto fam = enumerate_family(sys, FamilyKind::lambda_closed, budget);
    std::optional<Witness> conv;
    for (auto s : fam.members) {
      if (s.empty() || !fam.contains(sys.all() - s) || !check_sp(sys, s).holds()) continue;
      if (auto w = sector_violation(sys, s)) {
        conv = *w;
        conv->note = "clopen SP block is not a sector: " + conv->note;
        break;
      }
    }
    rep.add_check("clopen-sp-blocks-are-sectors", conv);
  } catch (const BudgetExceeded&) {
    rep.add("clopen-sp-blocks-are-sectors", Verdict::partial, {}, "lambda-closed enumeration over budget");
  }
  return rep;
}

}  // namespace spslab
