#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spslab/canonical.hpp"
#include "spslab/cartan.hpp"
#include "spslab/field.hpp"
#include "spslab/mackey.hpp"

namespace spslab {

using FieldMatrix = std::vector<std::vector<unsigned>>;

/// Rays of GF(q)^n with their subspace lattice and, optionally, a reflexive
/// sesquilinear form Phi(x, y) = sum x_i M_ij sigma(y_j).
struct VectorModel {
  GaloisField field{2};
  unsigned dim = 0;
  std::optional<FieldMatrix> form;
  bool frobenius = false;                 // sigma = x -> x^p instead of identity
  std::vector<std::vector<unsigned>> rays;  // normalised: first nonzero coordinate is 1
  std::vector<StateSet> subspaces;        // as ray sets, sorted by (size, mask)
  std::vector<std::string> subspace_names;

  unsigned sigma(unsigned a) const { return frobenius ? field.frobenius(a) : a; }
  unsigned phi(const std::vector<unsigned>& x, const std::vector<unsigned>& y) const {
    unsigned s = 0;
    for (unsigned i = 0; i < dim; ++i)
      for (unsigned j = 0; j < dim; ++j) s = field.add(s, field.mul(field.mul(x[i], (*form)[i][j]), sigma(y[j])));
    return s;
  }
};

namespace detail {

inline std::string digits(const std::vector<unsigned>& v, unsigned q) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (q > 10 && i) s += '.';
    s += std::to_string(v[i]);
  }
  return s;
}

inline std::vector<std::vector<unsigned>> all_vectors(const GaloisField& f, unsigned n) {
  std::vector<std::vector<unsigned>> out{{}};
  for (unsigned i = 0; i < n; ++i) {
    std::vector<std::vector<unsigned>> next;
    for (const auto& v : out)
      for (unsigned c = 0; c < f.order(); ++c) {
        auto w = v;
        w.push_back(c);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<unsigned> normalise(const GaloisField& f, std::vector<unsigned> v) {
  for (auto c : v)
    if (c) {
      const unsigned inv = f.inv(c);
      for (auto& x : v) x = f.mul(x, inv);
      break;
    }
  return v;
}

/// Reduced row echelon basis of a list of vectors.
inline std::vector<std::vector<unsigned>> rref(const GaloisField& f, std::vector<std::vector<unsigned>> rows, unsigned n) {
  std::size_t r = 0;
  for (unsigned c = 0; c < n && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const unsigned inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const unsigned k = rows[i][c];
      for (unsigned j = 0; j < n; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(k, rows[r][j]));
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

}  // namespace detail

/// Builds the rays and all subspaces of GF(q)^n. Throws StructureError when
/// the ray count exceeds the state limit or a given form is singular or not
/// reflexive.
inline VectorModel make_vector_model(unsigned q, unsigned n, std::optional<FieldMatrix> form = {}, bool frobenius = false) {
  VectorModel vm;
  vm.field = GaloisField(q);
  vm.dim = n;
  vm.frobenius = frobenius;
  if (n == 0) throw StructureError("dimension must be positive");
  std::uint64_t rays = 0;
  for (unsigned i = 0; i < n && rays <= kMaxStates; ++i) rays = rays * q + 1;
  if (rays > kMaxStates) throw StructureError("too many rays for the 64-state limit");
  const auto vecs = detail::all_vectors(vm.field, n);
  std::map<std::vector<unsigned>, std::size_t> ray_index;
  for (const auto& v : vecs) {
    if (std::all_of(v.begin(), v.end(), [](unsigned c) { return c == 0; })) continue;
    const auto r = detail::normalise(vm.field, v);
    if (!ray_index.count(r)) {
      ray_index.emplace(r, 0);
    }
  }
  for (auto& [r, idx] : ray_index) {
    idx = vm.rays.size();
    vm.rays.push_back(r);
  }
  auto ray_of = [&](const std::vector<unsigned>& v) -> std::optional<std::size_t> {
    if (std::all_of(v.begin(), v.end(), [](unsigned c) { return c == 0; })) return std::nullopt;
    return ray_index.at(detail::normalise(vm.field, v));
  };
  auto span_rays = [&](const std::vector<std::vector<unsigned>>& basis) {
    std::set<std::vector<unsigned>> span{std::vector<unsigned>(n, 0)};
    for (const auto& b : basis) {
      std::set<std::vector<unsigned>> next;
      for (const auto& v : span)
        for (unsigned c = 0; c < q; ++c) {
          auto w = v;
          for (unsigned i = 0; i < n; ++i) w[i] = vm.field.add(w[i], vm.field.mul(c, b[i]));
          next.insert(w);
        }
      span = std::move(next);
    }
    StateSet s;
    for (const auto& v : span)
      if (auto r = ray_of(v)) s.insert(*r);
    return s;
  };

  std::map<StateSet, std::vector<std::vector<unsigned>>> found{{StateSet(), {}}};
  std::vector<StateSet> frontier{StateSet()};
  while (!frontier.empty()) {
    std::vector<StateSet> next;
    for (auto w : frontier) {
      for (std::size_t r = 0; r < vm.rays.size(); ++r) {
        if (w.contains(r)) continue;
        auto basis = found[w];
        basis.push_back(vm.rays[r]);
        const StateSet s = span_rays(basis);
        if (!found.count(s)) {
          found.emplace(s, detail::rref(vm.field, basis, n));
          next.push_back(s);
        }
      }
    }
    frontier = std::move(next);
  }
  for (const auto& [s, basis] : found) vm.subspaces.push_back(s);
  std::sort(vm.subspaces.begin(), vm.subspaces.end(), SubsetFamily::order);
  const StateSet all = StateSet::first(vm.rays.size());
  for (auto s : vm.subspaces) {
    if (s.empty()) {
      vm.subspace_names.push_back("0");
    } else if (s == all) {
      vm.subspace_names.push_back("I");
    } else {
      std::string name = "W[";
      const auto& basis = found[s];
      for (std::size_t i = 0; i < basis.size(); ++i) name += (i ? "," : "") + detail::digits(basis[i], q);
      vm.subspace_names.push_back(name + "]");
    }
  }

  if (form) {
    if (form->size() != n || std::any_of(form->begin(), form->end(), [&](const auto& row) { return row.size() != n; }))
      throw StructureError("form must be an " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    for (const auto& row : *form)
      for (auto c : row)
        if (c >= q) throw StructureError("form entry outside GF(" + std::to_string(q) + ")");
    vm.form = form;
    for (const auto& x : vm.rays) {
      bool kernel = true;
      for (unsigned j = 0; j < n && kernel; ++j) {
        std::vector<unsigned> e(n, 0);
        e[j] = 1;
        kernel = vm.phi(x, e) == 0;
      }
      if (kernel) throw StructureError("singular form: kernel vector (" + detail::digits(x, q) + ")");
    }
    for (std::size_t i = 0; i < vm.rays.size(); ++i)
      for (std::size_t j = 0; j < vm.rays.size(); ++j)
        if ((vm.phi(vm.rays[i], vm.rays[j]) == 0) != (vm.phi(vm.rays[j], vm.rays[i]) == 0))
          throw StructureError("form is not reflexive at rays (" + detail::digits(vm.rays[i], q) + "), (" +
                               detail::digits(vm.rays[j], q) + ")");
  }
  return vm;
}

/// State property system of a vector model: states are rays, properties
/// subspaces, a ray has the subspaces containing it as actual properties.
inline Instance vector_instance(const VectorModel& vm) {
  std::vector<std::string> states;
  for (const auto& r : vm.rays) states.push_back("r" + detail::digits(r, vm.field.order()));
  auto inst = Instance::from_kappa(states, vm.subspace_names, vm.subspaces);
  if (vm.form) {
    std::vector<StateSet> perp(vm.rays.size());
    for (std::size_t i = 0; i < vm.rays.size(); ++i)
      for (std::size_t j = 0; j < vm.rays.size(); ++j)
        if (vm.phi(vm.rays[i], vm.rays[j]) == 0) perp[i].insert(j);
    inst.perp = std::move(perp);
  }
  return inst;
}

inline System from_vector_space(unsigned q, unsigned n, std::optional<FieldMatrix> form = {}, bool frobenius = false) {
  return System(vector_instance(make_vector_model(q, n, std::move(form), frobenius)));
}

inline FieldMatrix identity_form(unsigned n) {
  FieldMatrix m(n, std::vector<unsigned>(n, 0));
  for (unsigned i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

namespace detail {

inline ProbabilityTable table_from(const std::vector<std::vector<Rational>>& rows) {
  ProbabilityTable t;
  for (const auto& r : rows) {
    std::vector<std::optional<Rational>> row;
    for (auto v : r) row.emplace_back(v);
    t.push_back(std::move(row));
  }
  return t;
}

inline PropSet all_props(std::size_t m) {
  PropSet s(m);
  s.set();
  return s;
}

/// Instance from a Cartan family given as lists of state indices.
inline Instance kappa_instance(std::vector<std::string> states, std::vector<std::string> props,
                               const std::vector<std::vector<std::size_t>>& members) {
  std::vector<StateSet> k;
  for (const auto& m : members) k.push_back(StateSet::of(m));
  return Instance::from_kappa(std::move(states), std::move(props), k);
}

inline Instance fano_instance() {
  // Points 1..7 with lines of the form {i, i+1, i+3} mod 7.
  std::vector<std::string> states;
  for (int i = 1; i <= 7; ++i) states.push_back("pt" + std::to_string(i));
  std::vector<std::string> props{"0"};
  std::vector<std::vector<std::size_t>> members{{}};
  for (std::size_t i = 0; i < 7; ++i) {
    props.push_back("pt" + std::to_string(i + 1));
    members.push_back({i});
  }
  for (std::size_t i = 0; i < 7; ++i) {
    std::vector<std::size_t> line{i, (i + 1) % 7, (i + 3) % 7};
    std::sort(line.begin(), line.end());
    props.push_back("L" + std::to_string(i + 1));
    members.push_back(line);
  }
  props.push_back("I");
  members.push_back({0, 1, 2, 3, 4, 5, 6});
  return kappa_instance(states, props, members);
}

}  // namespace detail

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"CBIT", "CTRIT", "MO2", "FANO", "LINE3", "PG32", "ONEWAY"};
  return names;
}

/// Named reference instances.
inline Instance fixture_instance(const std::string& name) {
  using R = Rational;
  if (name == "CBIT") {
    auto inst = detail::kappa_instance({"p", "q"}, {"0", "a", "a'", "I"}, {{}, {0}, {1}, {0, 1}});
    inst.testable = detail::all_props(4);
    inst.mu = detail::table_from({{R(0), R(1), R(0), R(1)}, {R(0), R(0), R(1), R(1)}});
    return inst;
  }
  if (name == "CTRIT") {
    std::vector<std::string> props;
    std::vector<std::vector<std::size_t>> members;
    for (std::uint64_t m = 0; m < 8; ++m) {
      std::vector<std::size_t> mem;
      std::string nm;
      for (std::size_t i = 0; i < 3; ++i)
        if ((m >> i) & 1U) {
          mem.push_back(i);
          nm += std::to_string(i + 1);
        }
      props.push_back(m == 0 ? "0" : m == 7 ? "I" : "a" + nm);
      members.push_back(mem);
    }
    auto inst = detail::kappa_instance({"s1", "s2", "s3"}, props, members);
    inst.testable = detail::all_props(8);
    std::vector<std::vector<Rational>> mu(3, std::vector<Rational>(8));
    for (std::size_t p = 0; p < 3; ++p)
      for (std::uint64_t m = 0; m < 8; ++m) mu[p][m] = R((m >> p) & 1U ? 1 : 0);
    inst.mu = detail::table_from(mu);
    return inst;
  }
  if (name == "MO2") {
    auto inst = detail::kappa_instance({"p", "p'", "q", "q'"}, {"0", "a", "a'", "b", "b'", "I"},
                                       {{}, {0}, {1}, {2}, {3}, {0, 1, 2, 3}});
    inst.testable = detail::all_props(6);
    const R h(1, 2);
    inst.mu = detail::table_from({{R(0), R(1), R(0), h, h, R(1)},
                                  {R(0), R(0), R(1), h, h, R(1)},
                                  {R(0), h, h, R(1), R(0), R(1)},
                                  {R(0), h, h, R(0), R(1), R(1)}});
    return inst;
  }
  if (name == "FANO") return detail::fano_instance();
  if (name == "LINE3") return vector_instance(make_vector_model(3, 2, identity_form(2)));
  if (name == "PG32") return vector_instance(make_vector_model(2, 4));
  if (name == "ONEWAY")
    return detail::kappa_instance({"p", "q", "r"}, {"0", "P", "Q", "R", "QR", "I"}, {{}, {0}, {1}, {2}, {1, 2}, {0, 1, 2}});
  throw StructureError("unknown fixture '" + name + "'");
}

inline System fixture(const std::string& name) { return System(fixture_instance(name)); }

/// Disjoint union: states "i:p", properties are tuples over the product
/// lattice, and tuple t is actual in (i, p) iff t_i is actual in p.
/// Probabilities and orthogonality are carried over blockwise.
inline System disjoint_union(const std::vector<const System*>& parts) {
  if (parts.empty()) throw StructureError("disjoint union of nothing");
  if (parts.size() == 1) return *parts.front();
  std::size_t total_states = 0;
  for (auto* s : parts) total_states += s->size();
  if (total_states > kMaxStates) throw StructureError("disjoint union exceeds the 64-state limit");
  std::vector<std::size_t> offset;
  std::vector<std::string> states;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    offset.push_back(states.size());
    for (std::size_t p = 0; p < parts[i]->size(); ++p)
      states.push_back(std::to_string(i) + ":" + parts[i]->state_name(p));
  }
  std::vector<std::vector<std::size_t>> tuples{{}};
  for (auto* s : parts) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& t : tuples)
      for (std::size_t a = 0; a < s->prop_count(); ++a) {
        auto u = t;
        u.push_back(a);
        next.push_back(std::move(u));
      }
    tuples = std::move(next);
  }
  std::vector<std::string> props;
  std::vector<StateSet> kap;
  for (const auto& t : tuples) {
    std::string name = "(";
    StateSet k;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      name += (i ? "," : "") + parts[i]->prop_name(t[i]);
      for (auto p : parts[i]->kappa(t[i])) k.insert(offset[i] + p);
    }
    props.push_back(name + ")");
    kap.push_back(k);
  }
  auto inst = Instance::from_kappa(states, props, kap);

  const bool any_mu = std::any_of(parts.begin(), parts.end(), [](auto* s) { return s->has_probability(); });
  const bool any_testable =
      any_mu || std::any_of(parts.begin(), parts.end(), [](auto* s) { return s->instance().testable.has_value(); });
  if (any_testable) {
    PropSet t(tuples.size());
    for (std::size_t j = 0; j < tuples.size(); ++j) {
      bool in = true;
      for (std::size_t i = 0; i < parts.size(); ++i) in = in && parts[i]->testable().test(tuples[j][i]);
      if (in) t.set(j);
    }
    inst.testable = t;
  }
  if (any_mu) {
    ProbabilityTable mu(states.size(), std::vector<std::optional<Rational>>(tuples.size()));
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t p = 0; p < parts[i]->size(); ++p)
        for (std::size_t j = 0; j < tuples.size(); ++j)
          if (inst.testable->test(j)) mu[offset[i] + p][j] = parts[i]->mu(p, tuples[j][i]);
    inst.mu = std::move(mu);
  }
  if (std::all_of(parts.begin(), parts.end(), [](auto* s) { return s->has_explicit_perp(); })) {
    std::vector<StateSet> perp(states.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t p = 0; p < parts[i]->size(); ++p) {
        StateSet row = StateSet::first(states.size());
        for (std::size_t q = 0; q < parts[i]->size(); ++q)
          if (!(*parts[i]->instance().perp)[p].contains(q)) row.erase(offset[i] + q);
        perp[offset[i] + p] = row;
      }
    inst.perp = std::move(perp);
  }
  return System(std::move(inst));
}

/// Every valid instance with 1..max_states states and at most max_props
/// properties, one per relabeling class, ordered by state count and then by
/// canonical key. Valid instances correspond to intersection-closed families
/// of state sets containing the empty and the full set.
inline std::vector<System> enumerate_instances(std::size_t max_states = 4, std::size_t max_props = 8) {
  if (max_states > 6) throw BudgetExceeded("instance enumeration is limited to 6 states");
  std::vector<System> out;
  for (std::size_t n = 1; n <= max_states; ++n) {
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::vector<std::uint64_t> middle;
    for (std::uint64_t m = 1; m < full; ++m) middle.push_back(m);
    std::set<std::vector<std::uint64_t>> keys;
    std::vector<std::uint64_t> chosen;
    const std::size_t room = max_props >= 2 ? max_props - 2 : 0;
    std::function<void(std::size_t)> dfs = [&](std::size_t from) {
      std::vector<std::uint64_t> fam{0, full};
      fam.insert(fam.end(), chosen.begin(), chosen.end());
      bool closed = true;
      for (std::size_t i = 0; i < fam.size() && closed; ++i)
        for (std::size_t j = i + 1; j < fam.size() && closed; ++j)
          closed = std::find(fam.begin(), fam.end(), fam[i] & fam[j]) != fam.end();
      if (closed) keys.insert(canonical_masks(n, fam).key);
      if (chosen.size() == room) return;
      for (std::size_t k = from; k < middle.size(); ++k) {
        chosen.push_back(middle[k]);
        dfs(k + 1);
        chosen.pop_back();
      }
    };
    dfs(0);
    for (const auto& key : keys) {
      std::vector<std::string> states;
      for (std::size_t i = 0; i < n; ++i) states.push_back("p" + std::to_string(i));
      std::vector<std::string> props;
      std::vector<StateSet> kap;
      for (auto m : key) {
        kap.emplace_back(m);
        if (m == 0) props.push_back("0");
        else if (m == full) props.push_back("I");
        else {
          std::string nm = "k";
          for (auto i : StateSet(m)) nm += std::to_string(i);
          props.push_back(nm);
        }
      }
      out.emplace_back(Instance::from_kappa(states, props, kap));
    }
  }
  return out;
}

/// Instances from the corpus equipped with every probability table taking
/// values in {0, 1/2, 1} on all properties that satisfies the probability
/// axioms. Instances with more than `max_free` undetermined entries are
/// skipped; at most `cap` systems are returned.
inline std::vector<System> enumerate_mu_instances(const std::vector<System>& corpus, std::size_t max_free = 12,
                                                  std::size_t cap = 4000) {
  std::vector<System> out;
  const Budget budget;
  for (const auto& sys : corpus) {
    const std::size_t n = sys.size(), m = sys.prop_count();
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t a = 0; a < m; ++a)
        if (!sys.actual(p).test(a) && a != sys.bottom()) free.emplace_back(p, a);
    if (free.size() > max_free) continue;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()) && out.size() < cap; ++bits) {
      ProbabilityTable mu(n, std::vector<std::optional<Rational>>(m));
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t a = 0; a < m; ++a) mu[p][a] = Rational(sys.actual(p).test(a) ? 1 : 0);
      for (std::size_t i = 0; i < free.size(); ++i)
        if ((bits >> i) & 1U) mu[free[i].first][free[i].second] = Rational(1, 2);
      Instance inst = sys.instance();
      inst.testable = detail::all_props(m);
      inst.mu = std::move(mu);
      System cand(std::move(inst));
      if (validate_mu(cand, budget).all_hold()) out.push_back(std::move(cand));
    }
  }
  return out;
}

/// A named implication "hypothesis implies conclusion" checked per instance.
/// `evaluate` returns nullopt when the hypothesis fails, otherwise the
/// conclusion entry (a failing entry is a counterexample).
struct Conjecture {
  std::string name;
  std::function<std::optional<AxiomEntry>(const System&, const Budget&)> evaluate;
};

namespace detail {

inline AxiomEntry all_of_report(std::string name, const AxiomReport& rep) {
  for (const auto& e : rep.entries())
    if (e.verdict == Verdict::fails || e.verdict == Verdict::partial) {
      AxiomEntry out = e;
      out.note = e.name + (e.note.empty() ? "" : ": " + e.note);
      out.name = std::move(name);
      return out;
    }
  return {std::move(name), Verdict::holds, {}, {}};
}

inline bool holds_abc(const System& sys, const Budget& b) {
  return check_axiom_A(sys).holds() && check_axiom_B(sys).holds() && mu_valid(sys, b) && check_axiom_C(sys, b).holds();
}

}  // namespace detail

inline const std::vector<Conjecture>& conjectures() {
  using detail::all_of_report;
  static const std::vector<Conjecture> list{
      {"A-and-3MSP-imply-projective",
       [](const System& s, const Budget& b) -> std::optional<AxiomEntry> {
         if (!check_axiom_A(s).holds() || !check_msp(s, MspLevel::upto(3), b).holds()) return std::nullopt;
         return all_of_report("projective", build_geometry(s, b).report);
       }},
      {"A-and-3MSP-imply-modular",
       [](const System& s, const Budget& b) -> std::optional<AxiomEntry> {
         if (!check_axiom_A(s).holds() || !check_msp(s, MspLevel::upto(3), b).holds()) return std::nullopt;
         return all_of_report("projective-lattice", check_projective_lattice(s, b));
       }},
      {"projective-implies-closure-laws",
       [](const System& s, const Budget& b) -> std::optional<AxiomEntry> {
         if (!build_geometry(s, b).projective()) return std::nullopt;
         const auto rep = check_c_laws(s, b);
         AxiomReport sub;
         for (const char* n : {"C3", "C4", "C5", "C6", "C7"}) {
           const auto* e = rep.find(n);
           sub.add(e->name, e->verdict, e->witness, e->note);
         }
         return all_of_report("closure-laws", sub);
       }},
      {"C4-C5-C7-imply-projective",
       [](const System& s, const Budget& b) -> std::optional<AxiomEntry> {
         const auto rep = check_c_laws(s, b);
         const auto* e = rep.find("C4-C5-C7-give-geometry");
         if (e->verdict == Verdict::not_applicable) return std::nullopt;
         return *e;
       }},
      {"A-implies-2MSP",
       [](const System& s, const Budget& b) -> std::optional<AxiomEntry> {
         if (!check_axiom_A(s).holds()) return std::nullopt;
         return check_msp(s, MspLevel::upto(2), b).entry();
       }},
      {"A-implies-2MSP-exchange",
       [](const System& s, const Budget&) -> std::optional<AxiomEntry> {
         if (!check_axiom_A(s).holds()) return std::nullopt;
         return check_2msp_exchange(s);
       }},
      {"A-and-3MSP-imply-closures-agree",
       [](const System& s, const Budget& b) -> std::optional<AxiomEntry> {
         const auto rep = verify_closure_agreement(s, b);
         AxiomReport sub;
         for (const char* n : {"triple-closures-agree", "finite-closures-agree"}) {
           const auto* e = rep.find(n);
           if (e->verdict != Verdict::precondition_unmet) sub.add(e->name, e->verdict, e->witness, e->note);
         }
         if (sub.entries().empty()) return std::nullopt;
         return all_of_report("closures-agree", sub);
       }},
      {"A-and-3MSP-imply-sectors",
       [](const System& s, const Budget& b) -> std::optional<AxiomEntry> {
         if (!check_axiom_A(s).holds() || !check_msp(s, MspLevel::upto(3), b).holds()) return std::nullopt;
         auto rep = sectors(s, b).report;
         rep.append(check_sector_clopen(s, b));
         return all_of_report("sectors", rep);
       }},
      {"ABC-imply-classical-equals-central",
       [](const System& s, const Budget& b) -> std::optional<AxiomEntry> {
         if (!detail::holds_abc(s, b)) return std::nullopt;
         return *central_elements(s, b).report.find("central-equals-classical");
       }},
      {"ABC-imply-orthocomplemented",
       [](const System& s, const Budget& b) -> std::optional<AxiomEntry> {
         if (!detail::holds_abc(s, b)) return std::nullopt;
         auto rep = extend_orthocomplement(s, b).report;
         rep.append(check_kappa(s, b));
         return all_of_report("orthocomplement", rep);
       }},
      {"ABC-imply-closure-identities",
       [](const System& s, const Budget& b) -> std::optional<AxiomEntry> {
         if (!detail::holds_abc(s, b)) return std::nullopt;
         auto rep = verify_bicommutant(s, b);
         rep.append(build_F0(s, b).report);
         rep.append(check_join_agreement(s, b));
         return all_of_report("closure-identities", rep);
       }},
      {"ABC-and-3MSP-imply-mackey-structures",
       [](const System& s, const Budget& b) -> std::optional<AxiomEntry> {
         if (!detail::holds_abc(s, b) || !check_msp(s, MspLevel::upto(3), b).holds()) return std::nullopt;
         AxiomReport rep;
         for (const auto& c : {check_mackey_lattice(s, b), check_mackey_geometry(s, b), check_intersection_lattice(s, b),
                               check_regular(s, b), check_orthosystem(s, b), check_ortholattice(s, b)})
           for (const auto& e : c.report.entries()) rep.add(c.structure + "/" + e.name, e.verdict, e.witness, e.note);
         rep.append(check_round_trip(s, b));
         return all_of_report("mackey-structures", rep);
       }},
      {"valid-mu-implies-orthomodular",
       [](const System& s, const Budget& b) -> std::optional<AxiomEntry> {
         if (!s.has_probability() || !mu_valid(s, b)) return std::nullopt;
         return all_of_report("orthomodular-poset", check_omp(s, b));
       }},
  };
  return list;
}

inline const Conjecture& find_conjecture(const std::string& name) {
  for (const auto& c : conjectures())
    if (c.name == name) return c;
  throw StructureError("unknown conjecture '" + name + "'");
}

struct Counterexample {
  std::size_t index = 0;  // position in the searched list
  AxiomEntry entry;
};

/// First instance (in list order) where the hypothesis holds and the
/// conclusion fails.
inline std::optional<Counterexample> search_counterexample(const std::vector<System>& instances, const Conjecture& c,
                                                           const Budget& budget = Budget::from_env()) {
  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto e = c.evaluate(instances[i], budget);
    if (e && !e->holds()) return Counterexample{i, *e};
  }
  return std::nullopt;
}

}  // namespace spslab
