#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "spslab/bits.hpp"
#include "spslab/lattice.hpp"
#include "spslab/report.hpp"

namespace spslab {

using Rational = boost::rational<std::int64_t>;
inline const Rational kZero{0};
inline const Rational kOne{1};

/// Table of probabilities indexed [state][property]; entries outside the
/// testable set are left empty.
using ProbabilityTable = std::vector<std::vector<std::optional<Rational>>>;

/// Raw state property system data: states, property lattice, actuality map
/// and optional measurement data. Nothing here is checked beyond shape.
struct Instance {
  std::vector<std::string> states;
  std::vector<std::string> properties;
  FiniteLattice lattice;
  std::vector<PropSet> actual;              // actual[p] = properties actual in state p
  std::optional<PropSet> testable;          // designated testable properties
  std::optional<ProbabilityTable> mu;
  std::optional<std::vector<StateSet>> perp;  // explicit orthogonality on states, row per state

  std::size_t state_index(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return i;
    throw StructureError("unknown state '" + std::string(name) + "'");
  }
  std::size_t prop_index(std::string_view name) const {
    for (std::size_t i = 0; i < properties.size(); ++i)
      if (properties[i] == name) return i;
    throw StructureError("unknown property '" + std::string(name) + "'");
  }

  /// Builds an instance from its Cartan image: property a is actual in state
  /// p iff p is in kappa[a]; the order is set inclusion. The bottom must be
  /// the unique empty set and the top the unique full set.
  static Instance from_kappa(std::vector<std::string> states, std::vector<std::string> props,
                             const std::vector<StateSet>& kappa) {
    if (props.size() != kappa.size()) throw StructureError("property/kappa size mismatch");
    const StateSet all = StateSet::first(states.size());
    std::optional<std::size_t> bottom, top;
    for (std::size_t a = 0; a < kappa.size(); ++a) {
      if (kappa[a].empty()) bottom = a;
      if (kappa[a] == all) top = a;
    }
    if (!bottom || !top) throw StructureError("kappa family must contain the empty and the full set");
    Instance inst;
    inst.states = std::move(states);
    inst.properties = std::move(props);
    inst.lattice = FiniteLattice::from_sets(kappa, *bottom, *top);
    inst.actual.assign(inst.states.size(), PropSet(kappa.size()));
    for (std::size_t a = 0; a < kappa.size(); ++a)
      for (auto p : kappa[a]) inst.actual[p].set(a);
    return inst;
  }
};

/// Shape checks that must pass before any axiom can be evaluated.
/// Throws StructureError.
inline void check_structure(const Instance& inst) {
  const std::size_t n = inst.states.size();
  const std::size_t m = inst.properties.size();
  if (n == 0) throw StructureError("no states");
  if (n > kMaxStates) throw StructureError("more than 64 states are not supported");
  if (m == 0) throw StructureError("no properties");
  if (std::set<std::string>(inst.states.begin(), inst.states.end()).size() != n)
    throw StructureError("duplicate state identifier");
  if (std::set<std::string>(inst.properties.begin(), inst.properties.end()).size() != m)
    throw StructureError("duplicate property identifier");
  if (inst.lattice.size() != m) throw StructureError("lattice size does not match property count");
  if (inst.lattice.bottom() >= m || inst.lattice.top() >= m) throw StructureError("bottom/top out of range");
  if (inst.actual.size() != n) throw StructureError("actuality map not defined for every state");
  for (const auto& row : inst.actual)
    if (row.size() != m) throw StructureError("actuality row has wrong width");
  if (inst.testable) {
    if (inst.testable->size() != m) throw StructureError("testable set has wrong width");
    if (!inst.testable->test(inst.lattice.bottom()) || !inst.testable->test(inst.lattice.top()))
      throw StructureError("testable set must contain bottom and top");
  }
  if (inst.mu) {
    if (inst.mu->size() != n) throw StructureError("probability table has wrong number of states");
    for (const auto& row : *inst.mu)
      if (row.size() != m) throw StructureError("probability row has wrong width");
  }
  if (inst.perp) {
    if (inst.perp->size() != n) throw StructureError("orthogonality relation has wrong number of rows");
    for (const auto& row : *inst.perp)
      if (!row.subset_of(StateSet::first(n))) throw StructureError("orthogonality relation names unknown state");
  }
}

struct ValidationResult {
  AxiomReport report;
  /// preorder[p] = { q : p < q }, i.e. xi(q) is contained in xi(p).
  std::vector<StateSet> preorder;

  bool ok() const { return report.all_hold(); }
};

/// Checks the defining conditions of a state property system.
inline ValidationResult validate(const Instance& inst) {
  check_structure(inst);
  ValidationResult out;
  auto& rep = out.report;
  const auto& L = inst.lattice;
  const std::size_t n = inst.states.size();
  const std::size_t m = inst.properties.size();

  if (const auto& d = L.defect()) {
    rep.add("complete-lattice", Verdict::fails, Witness{{}, d->elements, {}, d->kind});
  } else {
    rep.add("complete-lattice", Verdict::holds);
  }

  std::optional<Witness> top_fail, bottom_fail;
  for (std::size_t p = 0; p < n; ++p) {
    if (!top_fail && !inst.actual[p].test(L.top())) top_fail = Witness{{p}, {L.top()}, {}, "top not actual"};
    if (!bottom_fail && inst.actual[p].test(L.bottom()))
      bottom_fail = Witness{{p}, {L.bottom()}, {}, "bottom actual"};
  }
  rep.add_check("top-actual", top_fail);
  rep.add_check("bottom-not-actual", bottom_fail);

  if (!L.is_lattice()) {
    rep.add("meet-closed", Verdict::precondition_unmet, {}, "property order is not a lattice");
  } else {
    std::optional<Witness> fail;
    for (std::size_t p = 0; p < n && !fail; ++p) {
      const PropSet& xi = inst.actual[p];
      for (auto a = xi.find_first(); a != PropSet::npos && !fail; a = xi.find_next(a)) {
        const PropSet missing = L.up(a) - xi;
        if (missing.any()) {
          fail = Witness{{p}, {a, missing.find_first()}, {}, "not an up-set"};
          break;
        }
        for (auto b = xi.find_next(a); b != PropSet::npos; b = xi.find_next(b)) {
          if (!xi.test(L.meet(a, b))) {
            fail = Witness{{p}, {a, b}, {}, "meet not actual"};
            break;
          }
        }
      }
    }
    rep.add_check("meet-closed", fail);
  }

  out.preorder.assign(n, StateSet());
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (q != p && inst.actual[q].is_subset_of(inst.actual[p])) out.preorder[p].insert(q);
  rep.add("state-preorder", Verdict::holds);

  std::vector<StateSet> kappa(m);
  for (std::size_t p = 0; p < n; ++p)
    for (auto a : indices_of(inst.actual[p])) kappa[a].insert(p);
  std::optional<Witness> order_fail;
  for (std::size_t a = 0; a < m && !order_fail; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (L.leq(a, b) != kappa[a].subset_of(kappa[b])) {
        order_fail = Witness{{}, {a, b}, {kappa[a], kappa[b]},
                             L.leq(a, b) ? "a<=b but kappa(a) not in kappa(b)" : "kappa(a) in kappa(b) but not a<=b"};
        break;
      }
  rep.add_check("order-determining", order_fail);
  return out;
}

/// Thrown when a system fails the defining conditions; carries the report.
class InvalidSystem : public std::runtime_error {
 public:
  explicit InvalidSystem(ValidationResult v)
      : std::runtime_error("instance is not a state property system"), validation_(std::move(v)) {}
  const ValidationResult& validation() const { return validation_; }

 private:
  ValidationResult validation_;
};

/// A validated, immutable state property system with the derived tables
/// (Cartan images, supports, pair closures) precomputed.
class System {
 public:
  explicit System(Instance inst) : inst_(std::move(inst)), validation_(validate(inst_)) {
    if (!validation_.ok()) throw InvalidSystem(validation_);
    const std::size_t n = size();
    const std::size_t m = prop_count();
    kappa_.assign(m, StateSet());
    for (std::size_t p = 0; p < n; ++p)
      for (auto a : indices_of(inst_.actual[p])) kappa_[a].insert(p);
    support_.resize(n);
    for (std::size_t p = 0; p < n; ++p) support_[p] = lattice().meet_all(inst_.actual[p]);
    pair_.resize(n * n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) pair_[p * n + q] = kappa_[lattice().join(support_[p], support_[q])];
    if (inst_.testable) {
      testable_ = *inst_.testable;
    } else {
      testable_ = PropSet(m);
      testable_.set(lattice().bottom());
      testable_.set(lattice().top());
    }
  }

  const Instance& instance() const { return inst_; }
  const ValidationResult& validation() const { return validation_; }
  const FiniteLattice& lattice() const { return inst_.lattice; }

  std::size_t size() const { return inst_.states.size(); }
  std::size_t prop_count() const { return inst_.properties.size(); }
  StateSet all() const { return StateSet::first(size()); }
  std::size_t bottom() const { return lattice().bottom(); }
  std::size_t top() const { return lattice().top(); }

  const std::string& state_name(std::size_t p) const { return inst_.states[p]; }
  const std::string& prop_name(std::size_t a) const { return inst_.properties[a]; }
  std::size_t state_index(std::string_view name) const { return inst_.state_index(name); }
  std::size_t prop_index(std::string_view name) const { return inst_.prop_index(name); }

  const PropSet& actual(std::size_t p) const { return inst_.actual[p]; }
  StateSet kappa(std::size_t a) const { return kappa_[a]; }
  /// Meet of the actual properties of p.
  std::size_t support(std::size_t p) const { return support_[p]; }
  /// {p,q}^-, which equals lambda{p,q}.
  StateSet pair(std::size_t p, std::size_t q) const { return pair_[p * size() + q]; }

  /// Testable properties; {0, I} when none were designated.
  const PropSet& testable() const { return testable_; }
  bool has_probability() const { return inst_.mu.has_value(); }
  bool has_explicit_perp() const { return inst_.perp.has_value(); }

  /// mu_p(a) for testable a. Without an explicit table the two-valued
  /// indicator of actuality is used.
  std::optional<Rational> mu(std::size_t p, std::size_t a) const {
    if (inst_.mu) return (*inst_.mu)[p][a];
    return Rational(inst_.actual[p].test(a) ? 1 : 0);
  }

 private:
  Instance inst_;
  ValidationResult validation_;
  std::vector<StateSet> kappa_;
  std::vector<std::size_t> support_;
  std::vector<StateSet> pair_;
  PropSet testable_;
};

/// At least two states, and no state's actual set is contained in another's.
inline AxiomEntry check_axiom_A(const System& sys) {
  AxiomEntry e{"A", Verdict::holds, {}, {}};
  if (sys.size() < 2) {
    e.verdict = Verdict::fails;
    e.witness = Witness{{0}, {}, {}, "fewer than two states"};
    return e;
  }
  for (std::size_t p = 0; p < sys.size(); ++p)
    for (std::size_t q = 0; q < sys.size(); ++q)
      if (p != q && sys.actual(p).is_subset_of(sys.actual(q))) {
        e.verdict = Verdict::fails;
        e.witness = Witness{{p, q}, {}, {}, "xi(p) contained in xi(q)"};
        return e;
      }
  return e;
}

inline std::size_t state_support(const System& sys, std::size_t p) { return sys.support(p); }

/// Supports coincide with the atoms, and every property is the join of the
/// supports of the states in which it is actual.
inline AxiomReport check_atoms_and_atomisticity(const System& sys) {
  AxiomReport rep;
  if (!check_axiom_A(sys).holds()) {
    rep.add("supports-are-atoms", Verdict::precondition_unmet, {}, "axiom A fails");
    rep.add("atomistic", Verdict::precondition_unmet, {}, "axiom A fails");
    return rep;
  }
  const auto& L = sys.lattice();
  PropSet supports(sys.prop_count()), atoms(sys.prop_count());
  for (std::size_t p = 0; p < sys.size(); ++p) supports.set(sys.support(p));
  for (auto a : L.atoms()) atoms.set(a);
  std::optional<Witness> atom_fail;
  if (supports != atoms) {
    const PropSet diff = (supports - atoms) | (atoms - supports);
    atom_fail = Witness{{}, {diff.find_first()}, {}, supports.test(diff.find_first()) ? "support is not an atom" : "atom is not a support"};
  }
  rep.add_check("supports-are-atoms", atom_fail);

  std::optional<Witness> atomistic_fail;
  for (std::size_t b = 0; b < sys.prop_count() && !atomistic_fail; ++b) {
    std::size_t j = L.bottom();
    for (auto s : sys.kappa(b)) j = L.join(j, sys.support(s));
    if (j != b) atomistic_fail = Witness{{}, {b, j}, {}, "b differs from the join of supports below it"};
  }
  rep.add_check("atomistic", atomistic_fail);
  return rep;
}

}  // namespace spslab
