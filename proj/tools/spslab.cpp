// spslab: command-line front end for state property system analysis.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spslab/spslab.hpp"

using namespace spslab;

namespace {

enum Exit { kOk = 0, kStructural = 1, kParse = 2, kBudget = 3 };

struct Options {
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  bool timing = false;
  std::string msp = "3";
  std::string dot_file;
  std::string path;

  Budget make_budget() const {
    Budget b = Budget::from_env();
    if (budget) b.max_work = *budget;
    b.seed = seed;
    return b;
  }
  MspLevel msp_level() const {
    if (msp == "finite" || msp == "f") return MspLevel::finite();
    try {
      std::size_t pos = 0;
      const auto n = std::stoul(msp, &pos);
      if (pos == msp.size() && n >= 2) return MspLevel::upto(n);
    } catch (const std::exception&) {
    }
    throw ParseError("--msp expects an integer >= 2 or 'finite'");
  }
};

Json certificate_json(const System& sys, const StructureCertificate& c) {
  Json j;
  j["structure"] = c.structure;
  j["verdict"] = std::string(to_string(c.verdict()));
  j["entries"] = report_to_json(sys, c.report);
  Json facts = Json::object();
  for (const auto& [k, v] : c.facts) facts[k] = v;
  j["facts"] = facts;
  return j;
}

Json section_json(const System& sys, const Section& s, bool timing) {
  Json j;
  j["name"] = s.name;
  j["status"] = std::string(to_string(s.status));
  if (!s.message.empty()) j["message"] = s.message;
  j["entries"] = report_to_json(sys, s.report);
  Json facts = Json::object();
  for (const auto& [k, v] : s.facts) facts[k] = v;
  j["facts"] = facts;
  if (!s.certificates.empty()) {
    Json cs = Json::array();
    for (const auto& c : s.certificates) cs.push_back(certificate_json(sys, c));
    j["certificates"] = cs;
  }
  if (timing) j["seconds"] = s.seconds;
  return j;
}

std::string witness_text(const System& sys, const Witness& w) {
  std::string out;
  if (!w.states.empty()) {
    out += "states";
    for (auto p : w.states) out += " " + sys.state_name(p);
  }
  if (!w.props.empty()) {
    out += out.empty() ? "properties" : "; properties";
    for (auto a : w.props) out += " " + sys.prop_name(a);
  }
  if (!w.sets.empty()) {
    out += out.empty() ? "sets" : "; sets";
    for (auto s : w.sets) out += " " + set_text(sys, s);
  }
  if (!w.note.empty()) out += (out.empty() ? "" : "; ") + w.note;
  return out;
}

void report_text(std::ostream& os, const System& sys, const AxiomReport& rep, const std::string& indent) {
  for (const auto& e : rep.entries()) {
    os << indent << e.name << ": " << to_string(e.verdict);
    if (!e.note.empty()) os << ": " << e.note;
    os << '\n';
    if (e.witness) os << indent << "  witness: " << witness_text(sys, *e.witness) << '\n';
  }
}

void section_text(std::ostream& os, const System& sys, const Section& s, bool timing) {
  os << "[" << s.name << "] " << to_string(s.status);
  if (!s.message.empty()) os << ": " << s.message;
  if (timing) os << " (" << s.seconds << " s)";
  os << '\n';
  report_text(os, sys, s.report, "  ");
  for (const auto& c : s.certificates) {
    os << "  certificate " << c.structure << ": " << to_string(c.verdict()) << '\n';
    report_text(os, sys, c.report, "    ");
    for (const auto& [k, v] : c.facts) os << "    " << k << " = " << v << '\n';
  }
  for (const auto& [k, v] : s.facts) os << "  " << k << " = " << v << '\n';
}

std::string header_text(const Json& h) {
  std::ostringstream os;
  os << h["schema"].get<std::string>() << " " << h["tool"].get<std::string>() << "\n";
  os << "command: " << h["command"].get<std::string>() << "\n";
  os << "digest: " << h["instance"]["digest"].get<std::string>()
     << (h["instance"]["canonical"].get<bool>() ? "" : " (labeled, not canonical)") << "\n";
  return os.str();
}

System load_system(const std::string& path) { return System(load_instance(path)); }

std::string geometry_dot(const System& sys, const Budget& budget) {
  return incidence_dot(sys, build_geometry(sys, budget).geometry);
}

std::string lattice_dot(const System& sys, const Budget& budget) {
  return family_dot(sys, enumerate_family(sys, FamilyKind::lambda_closed, budget));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructureError("cannot write '" + path + "'");
  out << text;
}

/// Runs sections and emits one report. Returns the exit code.
int emit_sections(const Options& o, const System& sys, const std::string& command,
                  const std::vector<std::string>& names, const std::vector<std::string>& certify_names,
                  bool with_validation) {
  const Budget budget = o.make_budget();
  std::optional<Section> validation;
  if (with_validation) validation = validation_section(sys, budget);
  std::vector<Section> sections;
  for (const auto& n : names) sections.push_back(run_named_section(sys, n, budget, o.msp_level()));
  for (const auto& c : certify_names) {
    auto s = certify_section(sys, c, budget);
    sections.push_back(std::move(s));
  }
  bool aborted = validation && validation->status == SectionStatus::budget_exceeded;
  for (const auto& s : sections) aborted = aborted || s.status == SectionStatus::budget_exceeded;

  if (!o.dot_file.empty()) write_file(o.dot_file, command == "geometry" ? geometry_dot(sys, budget) : lattice_dot(sys, budget));

  if (o.format == "dot") {
    std::cout << (command == "geometry" ? geometry_dot(sys, budget) : lattice_dot(sys, budget));
  } else if (o.format == "text") {
    std::cout << header_text(report_header(sys, command));
    if (validation) section_text(std::cout, sys, *validation, o.timing);
    for (const auto& s : sections) section_text(std::cout, sys, s, o.timing);
  } else {
    Json j = report_header(sys, command);
    if (validation) j["validation"] = section_json(sys, *validation, o.timing);
    Json arr = Json::array();
    for (const auto& s : sections) arr.push_back(section_json(sys, s, o.timing));
    j["sections"] = arr;
    std::cout << j.dump(2) << '\n';
  }
  return aborted ? kBudget : kOk;
}

StateSet parse_state_list(const System& sys, const std::string& list) {
  StateSet s;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) s.insert(sys.state_index(item));
  return s;
}

FieldMatrix load_form(const std::string& spec, unsigned n) {
  if (spec == "identity") return identity_form(n);
  Json j;
  try {
    j = Json::parse(read_file(spec));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (j.is_object() && j.contains("matrix")) j = j["matrix"];
  if (!j.is_array()) throw ParseError("form file must hold an array of rows");
  FieldMatrix m;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError("form rows must be arrays");
    std::vector<unsigned> r;
    for (const auto& v : row) {
      if (!v.is_number_unsigned()) throw ParseError("form entries must be non-negative integers");
      r.push_back(v.get<unsigned>());
    }
    m.push_back(r);
  }
  if (m.size() != n) throw StructureError("form must be " + std::to_string(n) + " x " + std::to_string(n));
  for (const auto& r : m)
    if (r.size() != n) throw StructureError("form must be " + std::to_string(n) + " x " + std::to_string(n));
  return m;
}

Json system_json(const System& sys) { return instance_to_json(sys.instance()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analysis of finite state property systems"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--budget", o.budget, "maximum number of subsets enumerated (default SPSLAB_BUDGET or 65536)");
  app.add_option("--seed", o.seed, "seed enabling randomized sampling when over budget");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text", "dot"}));
  app.add_flag("--timing", o.timing, "include per-section timing");

  auto* validate = app.add_subcommand("validate", "check the defining conditions and the axiom profile");
  validate->add_option("path", o.path, "instance file")->required();

  auto* report = app.add_subcommand("report", "run analysis sections and emit one report");
  report->add_option("path", o.path, "instance file")->required();
  bool all = false;
  std::map<std::string, bool> wanted;
  report->add_flag("--all", all, "all analysis sections");
  for (const auto& n : section_names()) report->add_flag("--" + n, wanted[n], n + " section");
  std::vector<std::string> certify_names;
  report->add_option("--certify", certify_names, "structure certificate to include (repeatable)")
      ->allow_extra_args(false)
      ->check(CLI::IsMember(structure_names()));
  report->add_option("--msp", o.msp, "MSP level: n or finite");
  report->add_option("--dot", o.dot_file, "also write the closed-set Hasse diagram to this file");

  auto* close = app.add_subcommand("close", "closures of a set of states");
  close->add_option("path", o.path, "instance file")->required();
  std::string set_list;
  close->add_option("--set", set_list, "comma-separated state names")->required();

  auto* axioms = app.add_subcommand("axioms", "axiom profile and superposition principles");
  axioms->add_option("path", o.path, "instance file")->required();
  axioms->add_option("--msp", o.msp, "MSP level: n or finite");

  auto* geometry = app.add_subcommand("geometry", "projective geometry of the pair closures");
  geometry->add_option("path", o.path, "instance file")->required();
  geometry->add_option("--dot", o.dot_file, "also write the point-line incidence graph to this file");

  auto* ortho = app.add_subcommand("ortho", "orthocomplementation and structure certificates");
  ortho->add_option("path", o.path, "instance file")->required();

  auto* sectors_cmd = app.add_subcommand("sectors", "sector decomposition");
  sectors_cmd->add_option("path", o.path, "instance file")->required();

  auto* classical = app.add_subcommand("classical", "Cartan map, classical and central elements");
  classical->add_option("path", o.path, "instance file")->required();

  auto* certify_cmd = app.add_subcommand("certify", "one structure certificate");
  certify_cmd->add_option("path", o.path, "instance file")->required();
  std::string structure;
  certify_cmd->add_option("--structure", structure, "structure name")
      ->required()
      ->check(CLI::IsMember(structure_names()));

  auto* generate = app.add_subcommand("generate", "emit generated instances");
  std::string fixture_name;
  std::vector<unsigned> pg;
  std::string form_spec;
  bool frobenius = false;
  std::vector<std::size_t> enumerate;
  std::vector<std::string> union_names;
  bool with_mu = false;
  auto* g_fixture = generate->add_option("--fixture", fixture_name, "fixture name")->check(CLI::IsMember(fixture_names()));
  auto* g_pg = generate->add_option("--pg", pg, "vector space model: q n")->expected(2);
  generate->add_option("--form", form_spec, "'identity' or a JSON matrix file")->needs(g_pg);
  generate->add_flag("--frobenius", frobenius, "use x -> x^p as the form involution")->needs(g_pg);
  auto* g_enum = generate->add_option("--enumerate", enumerate, "all instances up to: maxStates maxProps")->expected(2);
  auto* g_union = generate->add_option("--union", union_names, "disjoint union of fixtures or instance files");
  generate->add_flag("--with-mu", with_mu, "enumerate instances carrying probability tables")->needs(g_enum);
  g_fixture->excludes(g_pg)->excludes(g_enum)->excludes(g_union);
  g_pg->excludes(g_enum)->excludes(g_union);
  g_enum->excludes(g_union);

  auto* search = app.add_subcommand("search", "counterexample search over the enumerated corpus");
  std::string conjecture;
  bool list = false;
  std::vector<std::size_t> bounds{4, 8};
  search->add_option("--conjecture", conjecture, "conjecture name");
  search->add_flag("--list", list, "list conjecture names");
  search->add_option("--bounds", bounds, "maxStates maxProps")->expected(2);
  search->add_flag("--with-mu", with_mu, "search instances carrying probability tables");

  auto* cw = app.add_subcommand("check-witness", "re-evaluate a witness taken from a report");
  cw->add_option("path", o.path, "instance file")->required();
  std::string witness_file, axiom_name;
  cw->add_option("--witness", witness_file, "JSON file with a report entry or a witness object")->required();
  cw->add_option("--axiom", axiom_name, "axiom name (taken from the entry when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (validate->parsed()) {
      Instance inst = load_instance(o.path);
      try {
        System sys(inst);
        return emit_sections(o, sys, "validate", {}, {}, true);
      } catch (const InvalidSystem& e) {
        Json j;
        j["schema"] = kReportSchema;
        j["tool"] = kToolVersion;
        j["command"] = "validate";
        j["valid"] = false;
        Json entries = Json::array();
        for (const auto& en : e.validation().report.entries()) {
          Json x{{"name", en.name}, {"verdict", std::string(to_string(en.verdict))}};
          if (!en.note.empty()) x["note"] = en.note;
          if (en.witness) x["witness"] = {{"note", en.witness->note}};
          entries.push_back(x);
        }
        j["entries"] = entries;
        if (o.format == "text") {
          std::cout << "instance is not a state property system\n";
          for (const auto& en : e.validation().report.entries())
            std::cout << "  " << en.name << ": " << to_string(en.verdict) << (en.note.empty() ? "" : ": " + en.note)
                      << '\n';
        } else {
          std::cout << j.dump(2) << '\n';
        }
        return kStructural;
      }
    }
    if (report->parsed()) {
      const System sys = load_system(o.path);
      std::vector<std::string> names;
      for (const auto& n : section_names())
        if (all || wanted[n]) names.push_back(n);
      if (names.empty() && certify_names.empty()) names = section_names();
      return emit_sections(o, sys, "report", names, certify_names, false);
    }
    if (axioms->parsed()) return emit_sections(o, load_system(o.path), "axioms", {"superposition"}, {}, true);
    if (geometry->parsed()) return emit_sections(o, load_system(o.path), "geometry", {"geometry"}, {}, false);
    if (ortho->parsed())
      return emit_sections(o, load_system(o.path), "ortho", {"probability", "ortho"}, {}, false);
    if (sectors_cmd->parsed()) return emit_sections(o, load_system(o.path), "sectors", {"sectors"}, {}, false);
    if (classical->parsed()) return emit_sections(o, load_system(o.path), "classical", {"classical"}, {}, false);
    if (certify_cmd->parsed()) return emit_sections(o, load_system(o.path), "certify", {}, {structure}, false);
    if (close->parsed()) {
      const System sys = load_system(o.path);
      const StateSet s = parse_state_list(sys, set_list);
      Json j = report_header(sys, "close");
      j["set"] = names_of(sys, s);
      j["lambda"] = names_of(sys, lambda_close(sys, s));
      j["superposition"] = names_of(sys, sup_close(sys, s));
      j["testable-superposition"] = names_of(sys, sup_close0(sys, s));
      if (o.format == "text") {
        std::cout << header_text(j) << "set: " << set_text(sys, s) << "\nlambda: " << set_text(sys, lambda_close(sys, s))
                  << "\nsuperposition: " << set_text(sys, sup_close(sys, s))
                  << "\ntestable-superposition: " << set_text(sys, sup_close0(sys, s)) << '\n';
      } else {
        std::cout << j.dump(2) << '\n';
      }
      return kOk;
    }
    if (generate->parsed()) {
      if (!fixture_name.empty()) {
        std::cout << system_json(fixture(fixture_name)).dump(2) << '\n';
      } else if (!pg.empty()) {
        std::optional<FieldMatrix> form;
        if (!form_spec.empty()) form = load_form(form_spec, pg[1]);
        try {
          std::cout << system_json(from_vector_space(pg[0], pg[1], form, frobenius)).dump(2) << '\n';
        } catch (const std::invalid_argument& e) {
          throw StructureError(e.what());
        }
      } else if (!enumerate.empty()) {
        auto corpus = enumerate_instances(enumerate[0], enumerate[1]);
        if (with_mu) corpus = enumerate_mu_instances(corpus);
        Json arr = Json::array();
        for (const auto& s : corpus) arr.push_back(system_json(s));
        std::cout << arr.dump(2) << '\n';
      } else if (!union_names.empty()) {
        std::vector<System> parts;
        for (const auto& n : union_names) {
          const auto& fx = fixture_names();
          parts.push_back(std::find(fx.begin(), fx.end(), n) != fx.end() ? fixture(n) : load_system(n));
        }
        std::vector<const System*> ptrs;
        for (const auto& p : parts) ptrs.push_back(&p);
        std::cout << system_json(disjoint_union(ptrs)).dump(2) << '\n';
      } else {
        throw ParseError("generate needs --fixture, --pg, --enumerate or --union");
      }
      return kOk;
    }
    if (search->parsed()) {
      if (list) {
        for (const auto& c : conjectures()) std::cout << c.name << '\n';
        return kOk;
      }
      if (conjecture.empty()) throw ParseError("search needs --conjecture or --list");
      const auto& c = find_conjecture(conjecture);
      auto corpus = enumerate_instances(bounds[0], bounds[1]);
      if (with_mu) corpus = enumerate_mu_instances(corpus);
      const Budget budget = o.make_budget();
      const auto found = search_counterexample(corpus, c, budget);
      Json j;
      j["schema"] = kReportSchema;
      j["tool"] = kToolVersion;
      j["command"] = "search";
      j["conjecture"] = c.name;
      j["instances"] = corpus.size();
      if (found) {
        const System& sys = corpus[found->index];
        j["counterexample"] = {{"index", found->index},
                               {"digest", canonical_form(sys).digest()},
                               {"entry", entry_to_json(sys, found->entry)},
                               {"instance", system_json(sys)}};
      } else {
        j["counterexample"] = nullptr;
      }
      if (o.format == "text") {
        std::cout << "conjecture " << c.name << " over " << corpus.size() << " instances: ";
        if (found) {
          const System& sys = corpus[found->index];
          std::cout << "counterexample at index " << found->index << '\n';
          AxiomReport rep;
          rep.add(found->entry);
          report_text(std::cout, sys, rep, "  ");
        } else {
          std::cout << "no counterexample\n";
        }
      } else {
        std::cout << j.dump(2) << '\n';
      }
      return kOk;
    }
    if (cw->parsed()) {
      const System sys = load_system(o.path);
      Json w;
      try {
        w = Json::parse(read_file(witness_file));
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
      }
      if (w.is_object() && w.contains("witness")) {
        if (axiom_name.empty() && w.contains("name")) axiom_name = w["name"].get<std::string>();
        w = w["witness"];
      }
      if (axiom_name.empty()) throw ParseError("no axiom name given");
      const auto res = check_witness(sys, axiom_name, witness_from_json(sys, w), o.make_budget());
      Json j = report_header(sys, "check-witness");
      j["axiom"] = axiom_name;
      j["reproduces"] = res.reproduces;
      j["method"] = res.method;
      j["detail"] = res.detail;
      if (o.format == "text")
        std::cout << header_text(j) << axiom_name << ": " << (res.reproduces ? "reproduced" : "not reproduced") << " ("
                  << res.method << ", " << res.detail << ")\n";
      else
        std::cout << j.dump(2) << '\n';
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const InvalidSystem& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStructural;
  } catch (const StructureError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStructural;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const PreconditionUnmet& e) {
    std::cerr << "precondition unmet: " << e.what() << '\n';
    return kStructural;
  }
  return kOk;
}
