#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "common.hpp"

using namespace spslab;
using namespace testing_support;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(SPSLAB_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string inst(const std::string& name) { return std::string(SPSLAB_INSTANCES) + "/" + name + ".json"; }

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / ("spslab_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, ValidateOk) {
  const auto r = run("validate " + inst("cbit"));
  EXPECT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], "spslab-report/1");
  EXPECT_EQ(j["instance"]["states"], 2);
}

TEST(Cli, ParseErrorsExitTwo) {
  auto r = run("validate " + inst("bad_mu"), true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("probability out of range: 1.1"), std::string::npos);
  r = run("validate " + inst("bad_missing_bottom"), true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("missing field 'bottom'"), std::string::npos);
  EXPECT_EQ(run("validate /nonexistent/file.json").code, 2);
  EXPECT_EQ(run("validate " + write("broken.json", "{\"states\": [")).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("report --format yaml " + inst("cbit")).code, 2);
}

TEST(Cli, StructuralErrorsExitOne) {
  auto j = instance_to_json(fixture_instance("CBIT"));
  j["actual"]["p"].push_back("0");
  const auto r = run("validate " + write("bottom_actual.json", j.dump()));
  EXPECT_EQ(r.code, 1);
  const auto out = Json::parse(r.out);
  EXPECT_EQ(out["valid"], false);
  auto k = instance_to_json(fixture_instance("CBIT"));
  k["actual"]["p"].push_back("zz");
  EXPECT_EQ(run("validate " + write("unknown_prop.json", k.dump())).code, 1);
  EXPECT_EQ(run("close " + inst("cbit") + " --set p,nobody").code, 1);
  EXPECT_EQ(run("generate --fixture CBIT").code, 0);
}

TEST(Cli, BudgetExceededExitsThree) {
  const auto r = run("--budget 8 report --all " + inst("pg32"));
  EXPECT_EQ(r.code, 3);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["sections"].size(), 7U);
  EXPECT_EQ(run("report --all " + inst("mo2")).code, 0);
}

TEST(Cli, ReportSections) {
  const auto j = Json::parse(run("report --all " + inst("mo2")).out);
  ASSERT_EQ(j["sections"].size(), section_names().size());
  for (std::size_t i = 0; i < section_names().size(); ++i) EXPECT_EQ(j["sections"][i]["name"], section_names()[i]);
  const auto s = Json::parse(run("sectors " + inst("cbit_cbit")).out);
  EXPECT_EQ(s["sections"][0]["name"], "sectors");
  const auto c = Json::parse(run("certify --structure orthosystem " + inst("fano")).out);
  EXPECT_NE(c.dump().find("no ⊥ relation"), std::string::npos);
  const auto close = Json::parse(run("close " + inst("mo2") + " --set p,q").out);
  EXPECT_EQ(close["lambda"].size(), 4U);
  EXPECT_EQ(close["superposition"].size(), 4U);
}

TEST(Cli, TextAndDotFormats) {
  const auto t = run("--format text report --sectors " + inst("cbit"));
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("[sectors]"), std::string::npos);
  const auto d = run("--format dot geometry " + inst("fano"));
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out.rfind("graph", 0), 0U);
  const auto h = run("--format dot report --closures " + inst("mo2"));
  EXPECT_EQ(h.out.rfind("digraph", 0), 0U);
  const auto file = (scratch_dir() / "hasse.dot").string();
  EXPECT_EQ(run("report --closures --dot " + file + " " + inst("mo2")).code, 0);
  EXPECT_TRUE(std::filesystem::exists(file));
}

TEST(Cli, Deterministic) {
  for (const std::string& args : std::vector<std::string>{"validate " + inst("mo2"), "report --all " + inst("fano"), "report --all " + inst("mo2_cbit"),
                                 "--format text report --all " + inst("cbit"), "geometry " + inst("line3"),
                                 "ortho " + inst("mo2"), "certify --structure orthogeometry " + inst("line3"),
                                 std::string("search --conjecture A-implies-2MSP-exchange"), std::string("generate --pg 2 3 --form identity"),
                                 "--format dot geometry " + inst("fano"), "--budget 8 report --all " + inst("pg32")}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, b.code) << args;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty()) << args;
  }
}

TEST(Cli, GeneratedFixturesMatch) {
  const auto pg = run("generate --pg 2 3");
  ASSERT_EQ(pg.code, 0);
  const System a(parse_instance(pg.out));
  EXPECT_EQ(canonical_form(a).digest(), canonical_form(fixture("FANO")).digest());
  const auto u = run("generate --union CBIT");
  EXPECT_EQ(Json::parse(u.out), instance_to_json(fixture_instance("CBIT")));
  const auto e = run("generate --enumerate 2 4");
  EXPECT_EQ(Json::parse(e.out).size(), 4U);
}

TEST(Cli, CheckWitnessRoundTrip) {
  const auto r = Json::parse(run("axioms " + inst("oneway")).out);
  Json entry;
  for (const auto& s : r["sections"])
    for (const auto& e : s["entries"])
      if (e["name"] == "2-MSP-exchange") entry = e;
  ASSERT_EQ(entry["verdict"], "fails");
  const auto path = write("witness.json", entry.dump());
  const auto c = run("check-witness " + inst("oneway") + " --witness " + path);
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(Json::parse(c.out)["reproduces"], true);
  Json bogus = entry["witness"];
  bogus["states"] = {"p", "q", "p"};
  const auto bad = run("check-witness " + inst("oneway") + " --axiom 2-MSP-exchange --witness " + write("bogus.json", bogus.dump()));
  EXPECT_EQ(Json::parse(bad.out)["reproduces"], false);
}
