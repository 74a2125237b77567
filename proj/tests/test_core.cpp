#include <gtest/gtest.h>

#include "common.hpp"
#include "oracle.hpp"

using namespace spslab;
using namespace testing_support;

namespace {

Instance nested_states() { return detail::kappa_instance({"p", "q"}, {"0", "a", "I"}, {{}, {0}, {0, 1}}); }

std::string cbit_json() { return instance_to_json(fixture_instance("CBIT")).dump(); }

}  // namespace

TEST(Validate, CbitAllConditionsHold) {
  const auto v = validate(fixture_instance("CBIT"));
  EXPECT_TRUE(v.ok());
  for (const char* c : {"complete-lattice", "top-actual", "bottom-not-actual", "meet-closed", "state-preorder",
                        "order-determining"})
    EXPECT_EQ(verdict(v.report, c), Verdict::holds) << c;
}

TEST(Validate, BottomActualFailsWithState) {
  auto inst = fixture_instance("CBIT");
  inst.actual[1].set(inst.prop_index("0"));
  const auto v = validate(inst);
  const auto* e = v.report.find("bottom-not-actual");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->verdict, Verdict::fails);
  EXPECT_EQ(e->witness->states, std::vector<std::size_t>{1});
  EXPECT_THROW(System{inst}, InvalidSystem);
}

TEST(Validate, NonUpSetFailsWithWitness) {
  auto inst = fixture_instance("CTRIT");
  const auto p = inst.state_index("s1");
  const auto a = inst.prop_index("a12");
  inst.actual[p].reset(a);
  const auto v = validate(inst);
  const auto* e = v.report.find("meet-closed");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->verdict, Verdict::fails);
  ASSERT_TRUE(e->witness);
  EXPECT_EQ(e->witness->states[0], p);
  EXPECT_EQ(e->witness->props[1], a);
}

TEST(Validate, PreorderMaterialized) {
  const System sys(nested_states());
  EXPECT_TRUE(sys.validation().preorder[0].contains(1));
  EXPECT_TRUE(sys.validation().preorder[1].empty());
  const System cbit = fixture("CBIT");
  for (auto row : cbit.validation().preorder) EXPECT_TRUE(row.empty());
}

TEST(Validate, NonLatticeOrderRejected) {
  Instance inst;
  inst.states = {"p", "q"};
  inst.properties = {"0", "a", "b", "c", "d", "I"};
  std::vector<std::pair<std::size_t, std::size_t>> leq{{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}};
  inst.lattice = FiniteLattice::from_pairs(6, leq, 0, 5);
  inst.actual.assign(2, PropSet(6));
  for (std::size_t a : {1, 3, 4, 5}) inst.actual[0].set(a);
  for (std::size_t a : {2, 3, 4, 5}) inst.actual[1].set(a);
  const auto v = validate(inst);
  EXPECT_EQ(verdict(v.report, "complete-lattice"), Verdict::fails);
}

TEST(AxiomA, Examples) {
  EXPECT_TRUE(check_axiom_A(fixture("CBIT")).holds());
  const System single(detail::kappa_instance({"p"}, {"0", "I"}, {{}, {0}}));
  const auto one = check_axiom_A(single);
  EXPECT_EQ(one.verdict, Verdict::fails);
  EXPECT_NE(one.witness->note.find("two"), std::string::npos);
  const System nested(nested_states());
  const auto e = check_axiom_A(nested);
  EXPECT_EQ(e.verdict, Verdict::fails);
  EXPECT_EQ(e.witness->states, (std::vector<std::size_t>{1, 0}));
}

TEST(Support, Examples) {
  const System cbit = fixture("CBIT");
  EXPECT_EQ(cbit.support(state(cbit, "p")), prop(cbit, "a"));
  const System fano = fixture("FANO");
  for (std::size_t p = 0; p < fano.size(); ++p) {
    EXPECT_EQ(fano.prop_name(fano.support(p)), fano.state_name(p));
    EXPECT_EQ(fano.kappa(fano.support(p)), StateSet::single(p));
  }
  for (const auto& sys : fixtures())
    for (std::size_t p = 0; p < sys.size(); ++p) {
      EXPECT_TRUE(sys.actual(p).test(sys.support(p)));
      EXPECT_NE(sys.support(p), sys.bottom());
    }
}

TEST(Support, MatchesOracleOnCorpus) {
  for (const auto& sys : corpus())
    for (std::size_t p = 0; p < sys.size(); ++p) EXPECT_EQ(oracle::support(sys.instance(), p), sys.support(p));
}

TEST(Atoms, Examples) {
  const System cbit = fixture("CBIT");
  const auto rep = check_atoms_and_atomisticity(cbit);
  EXPECT_TRUE(rep.all_hold());
  EXPECT_EQ(cbit.lattice().atoms(), (std::vector<std::size_t>{prop(cbit, "a"), prop(cbit, "a'")}));
  const System mo2 = fixture("MO2");
  EXPECT_TRUE(check_atoms_and_atomisticity(mo2).all_hold());
  EXPECT_EQ(mo2.lattice().atoms().size(), 4U);
  const System fano = fixture("FANO");
  EXPECT_TRUE(check_atoms_and_atomisticity(fano).all_hold());
  EXPECT_EQ(fano.lattice().atoms().size(), 7U);
  const System nested(nested_states());
  EXPECT_EQ(verdict(check_atoms_and_atomisticity(nested), "atomistic"), Verdict::precondition_unmet);
}

TEST(Invariants, UpSetOfSupportAndTrivialOrderUnderA) {
  for (const auto& sys : corpus()) {
    for (std::size_t p = 0; p < sys.size(); ++p) {
      PropSet up(sys.prop_count());
      for (std::size_t a = 0; a < sys.prop_count(); ++a)
        if (sys.lattice().leq(sys.support(p), a)) up.set(a);
      EXPECT_EQ(up, sys.actual(p));
    }
    if (check_axiom_A(sys).holds()) {
      for (auto row : sys.validation().preorder) EXPECT_TRUE(row.empty());
    }
  }
}

TEST(Io, RoundTripPreservesDigest) {
  for (const auto& sys : fixtures()) {
    const auto text = instance_to_json(sys.instance()).dump();
    const System back(parse_instance(text));
    EXPECT_EQ(canonical_form(back).digest(), canonical_form(sys).digest()) << sys.state_name(0);
    EXPECT_EQ(instance_to_json(back.instance()).dump(), text);
  }
}

TEST(Io, ProbabilityParsing) {
  EXPECT_EQ(parse_probability(Json("1/2")), Rational(1, 2));
  EXPECT_EQ(parse_probability(Json("0.25")), Rational(1, 4));
  EXPECT_EQ(parse_probability(Json(0.5)), Rational(1, 2));
  EXPECT_EQ(parse_probability(Json(1)), Rational(1));
  EXPECT_THROW(parse_probability(Json("1.1")), ParseError);
  EXPECT_THROW(parse_probability(Json("-1/2")), ParseError);
  EXPECT_THROW(parse_probability(Json("1e-1")), ParseError);
  EXPECT_THROW(parse_probability(Json("1/0")), ParseError);
  try {
    parse_probability(Json("1.1"));
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("probability out of range"), std::string::npos);
  }
}

TEST(Io, MissingFieldAndUnknownIds) {
  auto j = Json::parse(cbit_json());
  j.erase("bottom");
  try {
    parse_instance(j.dump());
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()), "missing field 'bottom'");
  }
  auto k = Json::parse(cbit_json());
  k["actual"]["p"].push_back("zz");
  EXPECT_THROW(parse_instance(k.dump()), StructureError);
  EXPECT_THROW(parse_instance("{not json"), ParseError);
}
