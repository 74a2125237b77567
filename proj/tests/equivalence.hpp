#pragma once

// Compares every optimized operation against the brute-force evaluator on one
// instance and collects the names of the operations that disagree.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "spslab/spslab.hpp"

namespace equivalence {

using namespace spslab;

class Diff {
 public:
  void expect(bool same, const std::string& op) {
    if (!same && std::find(ops_.begin(), ops_.end(), op) == ops_.end()) ops_.push_back(op);
  }
  const std::vector<std::string>& ops() const { return ops_; }
  bool empty() const { return ops_.empty(); }

 private:
  std::vector<std::string> ops_;
};

inline std::vector<std::uint64_t> masks(const SubsetFamily& f) {
  std::vector<std::uint64_t> out;
  for (auto s : f.members) out.push_back(s.mask());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::set<std::size_t> set_of(const PropSet& s) {
  const auto v = indices_of(s);
  return {v.begin(), v.end()};
}

inline Diff compare(const System& sys) {
  Diff d;
  const Instance& in = sys.instance();
  const std::size_t n = sys.size();
  const std::uint64_t U = sys.all().mask();
  const Budget budget;

  for (std::size_t p = 0; p < n; ++p) d.expect(oracle::support(in, p) == sys.support(p), "support");
  for (std::size_t a = 0; a < sys.prop_count(); ++a) d.expect(sys.kappa(a).mask() == oracle::kappa(in, a), "kappa");
  d.expect(check_axiom_A(sys).holds() == oracle::axiom_A(in), "axiom-A");

  const auto closed = oracle::lambda_closed_sets(in);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) d.expect(lambda_pair(sys, p, q).mask() == oracle::lambda_pair(in, p, q), "lambda-pair");
  for_each_subset(sys.all(), [&](StateSet s) {
    d.expect(lambda_close(sys, s).mask() == oracle::close_in(closed, s.mask(), U), "lambda-close");
    d.expect(sup_close(sys, s).mask() == oracle::bar(in, s.mask()), "sup-close");
    d.expect(sup_close0(sys, s).mask() == oracle::bar0(in, s.mask()), "sup-close0");
    d.expect(is_lambda_closed(sys, s) == oracle::lambda_closed(in, s.mask()), "is-lambda-closed");
    for (std::size_t p = 0; p < n; ++p)
      d.expect(is_minimal_superposition(sys, p, s) == oracle::minimal_superposition(in, p, s.mask()), "minimal-superposition");
    bool ind = true;
    for (auto x : s) ind = ind && !oracle::has(oracle::close_in(closed, s.without(x).mask(), U), x);
    d.expect(independent(sys, s) == ind, "independent");
  });
  d.expect(masks(enumerate_family(sys, FamilyKind::lambda_closed, budget)) == closed, "lambda-closed-sets");
  d.expect(masks(enumerate_family(sys, FamilyKind::superposition_closed, budget)) == oracle::bar_closed_sets(in),
           "superposition-closed-sets");

  for (std::size_t k = 2; k <= 3; ++k) d.expect(check_msp(sys, MspLevel::upto(k), budget).holds() == oracle::msp(in, k), "n-MSP");
  d.expect(check_msp(sys, MspLevel::finite(), budget).holds() == oracle::msp(in, 0), "f-MSP");
  d.expect(check_sp(sys).holds() == oracle::sp(in), "SP");
  if (oracle::axiom_A(in)) d.expect(check_2msp_exchange(sys).holds() == oracle::exchange(in), "2-MSP-exchange");

  const auto g = build_geometry(sys, budget);
  const auto pv = oracle::projective(in);
  d.expect(g.report.holds("P1") == pv.p1 && g.report.holds("P2") == pv.p2 && g.report.holds("P3") == pv.p3,
           "projective-axioms");
  const auto cl = check_c_laws(sys, budget);
  const auto cv = oracle::closure_laws(in);
  d.expect(cl.holds("C4") == cv.c4 && cl.holds("C5") == cv.c5 && cl.holds("C6") == cv.c6 && cl.holds("C7") == cv.c7,
           "closure-laws");
  d.expect(check_projective_lattice(sys, budget).holds("modular") == cv.modular, "modular");
  d.expect(max_independent(sys).size == oracle::max_independent(in), "max-independent");

  const auto il = check_intersection_lattice(sys, budget);
  const auto sv = oracle::set_lattice(in);
  d.expect(il.report.holds("covering") == sv.covering &&
               (il.report.holds("upper-semimodular") && il.report.holds("lower-semimodular")) == sv.semimodular &&
               il.report.holds("intersection-property") == sv.intersection,
           "intersection-lattice");

  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) d.expect(state_perp(sys, p, q) == oracle::perp(in, p, q), "state-perp");
  for_each_subset(sys.all(), [&](StateSet t) { d.expect(T_prime(sys, t).mask() == oracle::prime(in, t.mask()), "T-prime"); });
  for (auto a : indices_of(sys.testable())) {
    const auto c = oracle::complements0(in, a);
    const auto got = ortho_complement0(sys, a);
    d.expect(c.empty() ? !got : (got && *got == c.front()), "ortho-complement0");
  }
  if (oracle::axiom_A(in)) d.expect(check_axiom_B(sys).holds() == oracle::axiom_B(in), "axiom-B");

  d.expect(set_of(classical_elements(sys).classical) == oracle::classical(in), "classical");
  d.expect(set_of(central_elements(sys, budget).central) == oracle::central(in), "central");

  if (oracle::axiom_A(in) && oracle::msp(in, 3)) {
    std::vector<std::uint64_t> blocks;
    for (auto b : sectors(sys, budget).blocks) blocks.push_back(b.mask());
    std::sort(blocks.begin(), blocks.end());
    d.expect(blocks == oracle::sectors(in), "sectors");
    auto comps = oracle::clopen_sp_components(in);
    std::sort(comps.begin(), comps.end());
    d.expect(blocks == comps, "sector-clopen");
  }
  return d;
}

}  // namespace equivalence
