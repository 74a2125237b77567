#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "spslab/generators.hpp"

namespace spslab {

enum class SectionStatus { ok, budget_exceeded, precondition_unmet };

inline std::string_view to_string(SectionStatus s) {
  switch (s) {
    case SectionStatus::ok: return "ok";
    case SectionStatus::budget_exceeded: return "budget-exceeded";
    case SectionStatus::precondition_unmet: return "precondition-unmet";
  }
  return "?";
}

/// One analysis section of a run report.
struct Section {
  std::string name;
  SectionStatus status = SectionStatus::ok;
  std::string message;
  AxiomReport report;
  std::vector<std::pair<std::string, std::string>> facts;
  std::vector<StructureCertificate> certificates;
  double seconds = 0;

  void fact(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }
};

inline std::string set_text(const System& sys, StateSet s) {
  std::string out = "{";
  bool first = true;
  for (auto p : s) {
    out += (first ? "" : ",") + sys.state_name(p);
    first = false;
  }
  return out + "}";
}

inline std::string props_text(const System& sys, const PropSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto a : indices_of(s)) {
    out += (first ? "" : ",") + sys.prop_name(a);
    first = false;
  }
  return out + "}";
}

namespace detail {

inline void append_prefixed(AxiomReport& to, const AxiomReport& from, const std::string& prefix) {
  for (auto e : from.entries()) {
    e.name = prefix + e.name;
    to.add(std::move(e));
  }
}

inline void append_new(AxiomReport& to, const AxiomReport& from) {
  for (const auto& e : from.entries())
    if (!to.find(e.name)) to.add(e);
}

inline Section run_section(std::string name, const std::function<void(Section&)>& body) {
  Section s;
  s.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(s);
  } catch (const BudgetExceeded& e) {
    s.status = SectionStatus::budget_exceeded;
    s.message = e.what();
  } catch (const PreconditionUnmet& e) {
    s.status = SectionStatus::precondition_unmet;
    s.message = e.what();
  }
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

}  // namespace detail

/// Defining conditions plus the axiom profile A, B, C and the probability
/// axioms.
inline Section validation_section(const System& sys, const Budget& budget) {
  return detail::run_section("validation", [&](Section& s) {
    s.report.append(sys.validation().report);
    s.report.add(check_axiom_A(sys));
    s.report.append(check_atoms_and_atomisticity(sys));
    s.report.add(check_axiom_B(sys));
    s.report.append(validate_mu(sys, budget));
    s.report.add(check_axiom_C(sys, budget));
    bool trivial = true;
    for (auto row : sys.validation().preorder) trivial = trivial && row.empty();
    s.fact("state-order", trivial ? "trivial" : "nontrivial");
  });
}

inline Section closures_section(const System& sys, const Budget& budget) {
  return detail::run_section("closures", [&](Section& s) {
    s.report.append(check_closure_laws(sys, budget));
    for (auto kind : {FamilyKind::lambda_closed, FamilyKind::superposition_closed}) {
      const auto fam = enumerate_family(sys, kind, budget);
      detail::append_prefixed(s.report, check_family(sys, fam), std::string(to_string(kind)) + ":");
      s.fact(std::string(to_string(kind)) + "-sets", std::to_string(fam.members.size()));
    }
  });
}

inline Section superposition_section(const System& sys, const Budget& budget, MspLevel level = MspLevel::upto(3)) {
  return detail::run_section("superposition", [&](Section& s) {
    s.report.add(check_msp(sys, level, budget).entry());
    if (level.max_size) s.report.add(check_msp(sys, MspLevel::finite(), budget).entry());
    s.report.add(check_2msp_exchange(sys));
    s.report.add(check_sp(sys));
    detail::append_new(s.report, verify_closure_agreement(sys, budget));
  });
}

inline Section geometry_section(const System& sys, const Budget& budget) {
  return detail::run_section("geometry", [&](Section& s) {
    const auto g = build_geometry(sys, budget);
    s.report.append(g.report);
    s.report.append(check_c_laws(sys, budget));
    s.report.append(check_projective_lattice(sys, budget));
    s.report.add(check_irreducible(sys, budget));
    const auto ind = max_independent(sys);
    s.fact("lines", std::to_string(g.geometry.lines().size()));
    s.fact("max-independent", std::to_string(ind.size) + (ind.exact ? "" : " (greedy lower bound)"));
    s.fact("independent-witness", set_text(sys, ind.witness));
  });
}

inline Section probability_section(const System& sys, const Budget& budget) {
  return detail::run_section("probability", [&](Section& s) {
    s.report.append(validate_mu(sys, budget));
    s.report.append(check_omp(sys, budget));
    s.report.add(check_axiom_B(sys));
    s.report.add(check_axiom_C(sys, budget));
    const auto ext = extend_orthocomplement(sys, budget);
    s.report.append(ext.report);
    s.report.append(verify_bicommutant(sys, budget));
    s.report.append(build_F0(sys, budget).report);
    s.fact("testable", props_text(sys, sys.testable()));
    if (!ext.complement.empty()) {
      std::string pairs;
      for (std::size_t a = 0; a < ext.complement.size(); ++a)
        pairs += (a ? ", " : "") + sys.prop_name(a) + " -> " + sys.prop_name(ext.complement[a]);
      s.fact("complement", pairs);
    }
  });
}

inline Section sectors_section(const System& sys, const Budget& budget) {
  return detail::run_section("sectors", [&](Section& s) {
    const auto dec = sectors(sys, budget);
    s.report.append(dec.report);
    s.report.append(check_sector_clopen(sys, budget));
    s.fact("count", std::to_string(dec.blocks.size()));
    for (std::size_t i = 0; i < dec.blocks.size(); ++i)
      s.fact("block-" + std::to_string(i + 1),
             set_text(sys, dec.blocks[i]) + " SP " + std::string(to_string(dec.block_sp[i].verdict)));
  });
}

inline Section classical_section(const System& sys, const Budget& budget) {
  return detail::run_section("classical", [&](Section& s) {
    s.report.append(check_kappa(sys, budget));
    const auto cl = classical_elements(sys);
    s.report.append(cl.report);
    const auto ce = central_elements(sys, budget);
    s.report.append(ce.report);
    s.fact("classical", props_text(sys, cl.classical));
    s.fact("central", props_text(sys, ce.central));
  });
}

inline std::vector<std::string> structure_names() {
  return {"mackey-lattice", "mackey-geometry", "intersection-lattice", "regular",
          "orthogeometry",  "ortholattice",    "orthosystem"};
}

inline StructureCertificate certify(const System& sys, const std::string& structure, const Budget& budget) {
  if (structure == "mackey-lattice") return check_mackey_lattice(sys, budget);
  if (structure == "mackey-geometry") return check_mackey_geometry(sys, budget);
  if (structure == "intersection-lattice") return check_intersection_lattice(sys, budget);
  if (structure == "regular") return check_regular(sys, budget);
  if (structure == "orthogeometry") return check_orthogeometry(sys, budget);
  if (structure == "ortholattice") return check_ortholattice(sys, budget);
  if (structure == "orthosystem") return check_orthosystem(sys, budget);
  throw StructureError("unknown structure '" + structure + "'");
}

inline Section certify_section(const System& sys, const std::string& structure, const Budget& budget) {
  return detail::run_section("certify", [&](Section& s) { s.certificates.push_back(certify(sys, structure, budget)); });
}

inline Section ortho_section(const System& sys, const Budget& budget) {
  return detail::run_section("ortho", [&](Section& s) {
    for (const auto& name : structure_names()) s.certificates.push_back(certify(sys, name, budget));
    s.report.append(check_join_agreement(sys, budget));
    s.report.append(check_round_trip(sys, budget));
  });
}

inline std::vector<std::string> section_names() {
  return {"closures", "superposition", "geometry", "probability", "sectors", "classical", "ortho"};
}

inline Section run_named_section(const System& sys, const std::string& name, const Budget& budget,
                                 MspLevel level = MspLevel::upto(3)) {
  if (name == "validation") return validation_section(sys, budget);
  if (name == "closures") return closures_section(sys, budget);
  if (name == "superposition") return superposition_section(sys, budget, level);
  if (name == "geometry") return geometry_section(sys, budget);
  if (name == "probability") return probability_section(sys, budget);
  if (name == "sectors") return sectors_section(sys, budget);
  if (name == "classical") return classical_section(sys, budget);
  if (name == "ortho") return ortho_section(sys, budget);
  throw StructureError("unknown section '" + name + "'");
}

/// Outcome of re-evaluating a pasted witness.
struct WitnessCheck {
  bool reproduces = false;
  std::string method;  // "direct" or "rerun"
  std::string detail;
};

namespace detail {

inline bool witness_has(const Witness& w, std::size_t states, std::size_t sets) {
  return w.states.size() >= states && w.sets.size() >= sets;
}

inline std::optional<bool> direct_check(const System& sys, const std::string& name, const Witness& w) {
  const std::size_t n = sys.size();
  auto in_range = [&] {
    for (auto p : w.states)
      if (p >= n) return false;
    return true;
  };
  if (!in_range()) return false;
  if (name == "A") {
    if (n < 2) return true;
    if (w.states.size() != 2) return false;
    const auto p = w.states[0], q = w.states[1];
    return p != q && sys.actual(p).is_subset_of(sys.actual(q));
  }
  if (name == "SP") {
    if (w.states.size() != 2 || w.states[0] == w.states[1]) return false;
    const auto p = w.states[0], q = w.states[1];
    return (lambda_pair(sys, p, q) - StateSet::single(p).with(q)).empty();
  }
  if (name == "2-MSP-exchange") {
    if (w.states.size() != 3) return false;
    const auto p = w.states[0], q = w.states[1], r = w.states[2];
    return r != p && r != q && sup_close(sys, StateSet::single(p).with(q)).contains(r) &&
           !sup_close(sys, StateSet::single(r).with(q)).contains(p);
  }
  if (name == "f-MSP" || (name.size() > 4 && name.substr(name.size() - 4) == "-MSP")) {
    if (!witness_has(w, 1, 3)) return false;
    const auto p = w.states[0];
    const StateSet S = w.sets[0], s1 = w.sets[1], s2 = w.sets[2];
    if (name != "f-MSP" && S.size() > std::stoul(name.substr(0, name.size() - 4))) return false;
    return !S.contains(p) && (s1 | s2) == S && !s1.intersects(s2) && !s1.empty() && !s2.empty() &&
           is_minimal_superposition(sys, p, S) && !sup_close(sys, s1.with(p)).intersects(sup_close(sys, s2));
  }
  if (name == "P1") {
    if (w.states.size() != 1) return false;
    return lambda_pair(sys, w.states[0], w.states[0]) != StateSet::single(w.states[0]);
  }
  if (name == "P2") {
    if (w.states.size() != 2) return false;
    return !lambda_pair(sys, w.states[0], w.states[1]).contains(w.states[0]);
  }
  if (name == "P3") {
    if (w.states.size() != 5) return false;
    const auto p = w.states[0], q = w.states[1], r = w.states[2], s = w.states[3], t = w.states[4];
    return lambda_pair(sys, q, r).contains(p) && lambda_pair(sys, s, t).contains(r) && p != s &&
           !lambda_pair(sys, p, s).intersects(lambda_pair(sys, q, t));
  }
  if (name == "C5") {
    if (w.states.empty()) return !lambda_close(sys, StateSet()).empty();
    return lambda_close(sys, StateSet::single(w.states[0])) != StateSet::single(w.states[0]);
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks that `w` falsifies the named axiom on `sys`. Axioms with a direct
/// evaluator are decided from the witness alone; for the others every
/// section is rerun and the recorded witness for the name is compared.
inline WitnessCheck check_witness(const System& sys, const std::string& name, const Witness& w, const Budget& budget) {
  if (auto d = detail::direct_check(sys, name, w))
    return {*d, "direct", *d ? "witness falsifies " + name : "witness does not falsify " + name};
  std::vector<std::string> names{"validation"};
  for (const auto& s : section_names()) names.push_back(s);
  for (const auto& sec : names) {
    const auto s = run_named_section(sys, sec, budget);
    std::vector<const AxiomReport*> reps{&s.report};
    for (const auto& c : s.certificates) reps.push_back(&c.report);
    for (const auto* rep : reps)
      for (const auto& e : rep->entries())
        if (e.name == name && e.verdict == Verdict::fails && e.witness && *e.witness == w)
          return {true, "rerun", "section " + sec + " reports the same witness"};
  }
  return {false, "rerun", "no section reports this witness for " + name};
}

}  // namespace spslab
