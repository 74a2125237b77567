#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "spslab/spslab.hpp"

namespace testing_support {

using namespace spslab;

inline const std::vector<System>& corpus() {
  static const std::vector<System> c = enumerate_instances(4, 8);
  return c;
}

inline const std::vector<System>& mu_corpus() {
  static const std::vector<System> c = enumerate_mu_instances(corpus());
  return c;
}

inline const std::vector<System>& fixtures() {
  static const std::vector<System> f = [] {
    std::vector<System> out;
    for (const auto& n : fixture_names()) out.push_back(fixture(n));
    return out;
  }();
  return f;
}

inline StateSet states(const System& sys, std::initializer_list<const char*> names) {
  StateSet s;
  for (auto n : names) s.insert(sys.state_index(n));
  return s;
}

inline PropSet props(const System& sys, std::initializer_list<const char*> names) {
  PropSet s(sys.prop_count());
  for (auto n : names) s.set(sys.prop_index(n));
  return s;
}

inline std::size_t prop(const System& sys, const char* name) { return sys.prop_index(name); }
inline std::size_t state(const System& sys, const char* name) { return sys.state_index(name); }

inline System cbit_cbit() {
  const auto c = fixture("CBIT");
  return disjoint_union({&c, &c});
}

inline System mo2_cbit() {
  const auto m = fixture("MO2");
  const auto c = fixture("CBIT");
  return disjoint_union({&m, &c});
}

inline Verdict verdict(const AxiomReport& rep, const std::string& name) {
  const auto* e = rep.find(name);
  if (!e) throw std::runtime_error("no entry " + name);
  return e->verdict;
}

}  // namespace testing_support
