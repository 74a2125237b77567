#include <gtest/gtest.h>

#include "common.hpp"
#include "equivalence.hpp"

using namespace testing_support;

namespace {

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

}  // namespace

TEST(OracleEquivalence, Corpus) {
  for (const auto& sys : corpus()) {
    const auto d = equivalence::compare(sys);
    EXPECT_TRUE(d.empty()) << canonical_form(sys).digest() << ": " << joined(d.ops());
  }
}

TEST(OracleEquivalence, MuCorpus) {
  for (const auto& sys : mu_corpus()) {
    const auto d = equivalence::compare(sys);
    EXPECT_TRUE(d.empty()) << joined(d.ops());
  }
}

TEST(OracleEquivalence, SmallFixturesAndUnions) {
  std::vector<System> all;
  for (const auto& s : fixtures())
    if (s.size() <= 8) all.push_back(s);
  all.push_back(cbit_cbit());
  all.push_back(mo2_cbit());
  for (const auto& sys : all) {
    const auto d = equivalence::compare(sys);
    EXPECT_TRUE(d.empty()) << sys.state_name(0) << ": " << joined(d.ops());
  }
}
