#pragma once

#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spslab/canonical.hpp"
#include "spslab/system.hpp"

namespace spslab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "spslab-report/1";
inline constexpr const char* kToolVersion = "spslab 1.0.0";

/// Exact probability from "n/d", a plain decimal, or a JSON number.
inline Rational parse_probability(const Json& v) {
  std::string text;
  if (v.is_string()) text = v.get<std::string>();
  else if (v.is_number()) text = v.dump();
  else throw ParseError("probability must be a number or a string");
  static const std::regex fraction(R"(^\s*(-?\d+)\s*/\s*(\d+)\s*$)");
  static const std::regex decimal(R"(^\s*(-?)(\d+)(?:\.(\d+))?\s*$)");
  std::smatch m;
  Rational r;
  if (std::regex_match(text, m, fraction)) {
    if (m[1].length() > 18 || m[2].length() > 18) throw ParseError("probability '" + text + "' too large");
    const std::int64_t d = std::stoll(m[2]);
    if (d == 0) throw ParseError("probability '" + text + "' has zero denominator");
    r = Rational(std::stoll(m[1]), d);
  } else if (std::regex_match(text, m, decimal)) {
    const std::string frac = m[3].matched ? m[3].str() : "";
    if (m[2].length() + frac.size() > 18) throw ParseError("probability '" + text + "' has too many digits");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    r = Rational(std::stoll(m[2].str() + frac), den);
    if (m[1].length()) r = -r;
  } else {
    throw ParseError("unsupported number format '" + text + "'");
  }
  if (r < kZero || r > kOne) throw ParseError("probability out of range: " + text);
  return r;
}

inline std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace detail {

inline const Json& field(const Json& j, const char* name) {
  if (!j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return j.at(name);
}

inline std::vector<std::string> string_array(const Json& j, const char* name) {
  if (!j.is_array()) throw ParseError(std::string("field '") + name + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ParseError(std::string("field '") + name + "' must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline std::string string_field(const Json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_string()) throw ParseError(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

inline std::vector<std::pair<std::string, std::string>> pair_array(const Json& j, const char* name) {
  if (!j.is_array()) throw ParseError(std::string("field '") + name + "' must be an array of pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw ParseError(std::string("field '") + name + "' must contain [a, b] string pairs");
    out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return out;
}

}  // namespace detail

/// Reads the instance interchange format. Syntax and value errors throw
/// ParseError; references to unknown ids and shape problems throw
/// StructureError.
inline Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  Instance inst;
  inst.states = detail::string_array(detail::field(j, "states"), "states");
  inst.properties = detail::string_array(detail::field(j, "properties"), "properties");
  const auto leq = detail::pair_array(detail::field(j, "leq"), "leq");
  const std::string bottom = detail::string_field(j, "bottom");
  const std::string top = detail::string_field(j, "top");
  const auto& actual = detail::field(j, "actual");
  if (!actual.is_object()) throw ParseError("field 'actual' must be an object");

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [a, b] : leq) pairs.emplace_back(inst.prop_index(a), inst.prop_index(b));
  if (inst.states.size() > kMaxStates) throw StructureError("more than 64 states");
  inst.lattice = FiniteLattice::from_pairs(inst.properties.size(), pairs, inst.prop_index(bottom), inst.prop_index(top));

  inst.actual.assign(inst.states.size(), PropSet(inst.properties.size()));
  std::vector<bool> seen(inst.states.size(), false);
  for (const auto& [s, props] : actual.items()) {
    const std::size_t p = inst.state_index(s);
    seen[p] = true;
    for (const auto& a : detail::string_array(props, "actual")) inst.actual[p].set(inst.prop_index(a));
  }
  for (std::size_t p = 0; p < seen.size(); ++p)
    if (!seen[p]) throw StructureError("no actual properties given for state '" + inst.states[p] + "'");

  if (j.contains("testable")) {
    PropSet t(inst.properties.size());
    for (const auto& a : detail::string_array(j.at("testable"), "testable")) t.set(inst.prop_index(a));
    inst.testable = t;
  }
  if (j.contains("mu")) {
    const auto& mu = j.at("mu");
    if (!mu.is_array()) throw ParseError("field 'mu' must be an array");
    ProbabilityTable table(inst.states.size(), std::vector<std::optional<Rational>>(inst.properties.size()));
    for (const auto& e : mu) {
      if (!e.is_object()) throw ParseError("mu entries must be objects");
      const std::size_t p = inst.state_index(detail::string_field(e, "state"));
      const std::size_t a = inst.prop_index(detail::string_field(e, "property"));
      const Rational v = parse_probability(detail::field(e, "value"));
      if (table[p][a]) throw StructureError("duplicate mu entry for (" + inst.states[p] + ", " + inst.properties[a] + ")");
      table[p][a] = v;
    }
    inst.mu = std::move(table);
  }
  if (j.contains("perp")) {
    std::vector<StateSet> rows(inst.states.size());
    for (const auto& [s, t] : detail::pair_array(j.at("perp"), "perp")) rows[inst.state_index(s)].insert(inst.state_index(t));
    inst.perp = std::move(rows);
  }
  check_structure(inst);
  return inst;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

/// Interchange form; the order is written as its covering pairs.
inline Json instance_to_json(const Instance& inst) {
  Json j;
  j["states"] = inst.states;
  j["properties"] = inst.properties;
  Json leq = Json::array();
  for (std::size_t a = 0; a < inst.properties.size(); ++a)
    for (std::size_t b = 0; b < inst.properties.size(); ++b)
      if (inst.lattice.covers(a, b)) leq.push_back({inst.properties[a], inst.properties[b]});
  j["leq"] = leq;
  j["bottom"] = inst.properties[inst.lattice.bottom()];
  j["top"] = inst.properties[inst.lattice.top()];
  Json actual = Json::object();
  for (std::size_t p = 0; p < inst.states.size(); ++p) {
    Json props = Json::array();
    for (auto a : indices_of(inst.actual[p])) props.push_back(inst.properties[a]);
    actual[inst.states[p]] = props;
  }
  j["actual"] = actual;
  if (inst.testable) {
    Json t = Json::array();
    for (auto a : indices_of(*inst.testable)) t.push_back(inst.properties[a]);
    j["testable"] = t;
  }
  if (inst.mu) {
    Json mu = Json::array();
    for (std::size_t p = 0; p < inst.states.size(); ++p)
      for (std::size_t a = 0; a < inst.properties.size(); ++a)
        if (auto v = (*inst.mu)[p][a])
          mu.push_back({{"state", inst.states[p]}, {"property", inst.properties[a]}, {"value", format_rational(*v)}});
    j["mu"] = mu;
  }
  if (inst.perp) {
    Json perp = Json::array();
    for (std::size_t p = 0; p < inst.states.size(); ++p)
      for (auto q : (*inst.perp)[p]) perp.push_back({inst.states[p], inst.states[q]});
    j["perp"] = perp;
  }
  return j;
}

inline Json names_of(const System& sys, StateSet s) {
  Json out = Json::array();
  for (auto p : s) out.push_back(sys.state_name(p));
  return out;
}

inline Json witness_to_json(const System& sys, const Witness& w) {
  Json j;
  Json st = Json::array(), pr = Json::array(), sets = Json::array();
  for (auto p : w.states) st.push_back(sys.state_name(p));
  for (auto a : w.props) pr.push_back(sys.prop_name(a));
  for (auto s : w.sets) sets.push_back(names_of(sys, s));
  j["states"] = st;
  j["properties"] = pr;
  j["sets"] = sets;
  j["note"] = w.note;
  return j;
}

inline Witness witness_from_json(const System& sys, const Json& j) {
  Witness w;
  try {
    if (j.contains("states"))
      for (const auto& s : j.at("states")) w.states.push_back(sys.state_index(s.get<std::string>()));
    if (j.contains("properties"))
      for (const auto& a : j.at("properties")) w.props.push_back(sys.prop_index(a.get<std::string>()));
    if (j.contains("sets"))
      for (const auto& set : j.at("sets")) {
        StateSet s;
        for (const auto& p : set) s.insert(sys.state_index(p.get<std::string>()));
        w.sets.push_back(s);
      }
    if (j.contains("note")) w.note = j.at("note").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed witness: ") + e.what());
  }
  return w;
}

inline Json entry_to_json(const System& sys, const AxiomEntry& e) {
  Json j;
  j["name"] = e.name;
  j["verdict"] = std::string(to_string(e.verdict));
  if (!e.note.empty()) j["note"] = e.note;
  if (e.witness) j["witness"] = witness_to_json(sys, *e.witness);
  return j;
}

inline Json report_to_json(const System& sys, const AxiomReport& rep) {
  Json out = Json::array();
  for (const auto& e : rep.entries()) out.push_back(entry_to_json(sys, e));
  return out;
}

/// Header shared by every CLI report.
inline Json report_header(const System& sys, const std::string& command) {
  const auto cf = canonical_form(sys);
  Json j;
  j["schema"] = kReportSchema;
  j["tool"] = kToolVersion;
  j["command"] = command;
  j["instance"] = {{"digest", cf.digest()},
                   {"canonical", cf.canonical},
                   {"states", sys.size()},
                   {"properties", sys.prop_count()}};
  return j;
}

}  // namespace spslab
