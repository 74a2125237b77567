#include <gtest/gtest.h>

#include "common.hpp"
#include "oracle.hpp"

using namespace spslab;
using namespace testing_support;

namespace {

bool oracle_oi_oii(const Instance& in) {
  const auto T = oracle::testable(in);
  for (std::size_t p = 0; p < in.states.size(); ++p)
    for (auto a : T) {
      const auto x = oracle::mu(in, p, a);
      if (!x || ((*x == kOne) != in.actual[p].test(a))) return false;
      for (auto b : T)
        if (in.lattice.leq(a, b) && *x > *oracle::mu(in, p, b)) return false;
    }
  return true;
}

}  // namespace

TEST(ValidateMu, Examples) {
  EXPECT_TRUE(validate_mu(fixture("CBIT")).all_hold());
  const System mo2 = fixture("MO2");
  EXPECT_TRUE(validate_mu(mo2).all_hold());
  EXPECT_EQ(ortho_complement0(mo2, prop(mo2, "a")), prop(mo2, "a'"));

  auto inst = fixture_instance("CBIT");
  (*inst.mu)[0][inst.prop_index("a'")] = kOne;
  const System bad(inst);
  const auto rep = validate_mu(bad);
  const auto* e = rep.find("Oi");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->verdict, Verdict::fails);
  EXPECT_EQ(e->witness->states, std::vector<std::size_t>{0});
  EXPECT_EQ(e->witness->props, std::vector<std::size_t>{inst.prop_index("a'")});
}

TEST(ValidateMu, MissingEntry) {
  auto inst = fixture_instance("MO2");
  (*inst.mu)[1][inst.prop_index("b")] = std::nullopt;
  const auto rep = validate_mu(System(inst));
  EXPECT_EQ(verdict(rep, "mu-defined"), Verdict::fails);
  EXPECT_EQ(verdict(rep, "Oiii"), Verdict::precondition_unmet);
}

TEST(OrthoComplement0, Examples) {
  const System cbit = fixture("CBIT");
  EXPECT_EQ(ortho_complement0(cbit, prop(cbit, "a")), prop(cbit, "a'"));
  EXPECT_EQ(ortho_complement0(cbit, prop(cbit, "I")), prop(cbit, "0"));
  const System mo2 = fixture("MO2");
  EXPECT_EQ(ortho_complement0(mo2, prop(mo2, "b'")), prop(mo2, "b"));
  for (const auto& sys : fixtures())
    for (auto a : indices_of(sys.testable()))
      if (auto c = ortho_complement0(sys, a)) {
        EXPECT_EQ(ortho_complement0(sys, *c), a);
      }
}

TEST(Omp, Examples) {
  EXPECT_TRUE(check_omp(fixture("MO2")).all_hold());
  EXPECT_TRUE(check_omp(fixture("CBIT")).all_hold());
  EXPECT_TRUE(check_omp(fixture("FANO")).all_hold());
  const System mo2 = fixture("MO2");
  const auto& L = mo2.lattice();
  const auto a = prop(mo2, "a");
  EXPECT_EQ(L.join(a, L.meet(*ortho_complement0(mo2, a), L.top())), L.top());
}

TEST(AxiomsBC, Examples) {
  for (const char* name : {"CBIT", "MO2", "CTRIT"}) {
    EXPECT_TRUE(check_axiom_B(fixture(name)).holds()) << name;
    EXPECT_TRUE(check_axiom_C(fixture(name)).holds()) << name;
  }
  const auto b = check_axiom_B(fixture("FANO"));
  EXPECT_EQ(b.verdict, Verdict::fails);
  EXPECT_EQ(check_axiom_C(fixture("FANO")).verdict, Verdict::precondition_unmet);
}

TEST(ExtendOrthocomplement, Examples) {
  const System cbit = fixture("CBIT");
  const auto c = extend_orthocomplement(cbit);
  EXPECT_TRUE(c.report.all_hold());
  EXPECT_EQ(c.complement[prop(cbit, "a")], prop(cbit, "a'"));
  EXPECT_EQ(c.complement[prop(cbit, "0")], prop(cbit, "I"));
  const System mo2 = fixture("MO2");
  const auto m = extend_orthocomplement(mo2);
  EXPECT_TRUE(m.report.all_hold());
  EXPECT_EQ(m.complement[prop(mo2, "b")], prop(mo2, "b'"));
  EXPECT_EQ(m.complement[prop(mo2, "I")], prop(mo2, "0"));
  for (std::size_t x = 0; x < mo2.prop_count(); ++x) EXPECT_EQ(m.complement[m.complement[x]], x);
  EXPECT_EQ(verdict(extend_orthocomplement(fixture("FANO")).report, "extended-orthocomplement"),
            Verdict::precondition_unmet);
}

TEST(StatePerp, Examples) {
  const System mo2 = fixture("MO2");
  EXPECT_TRUE(state_perp(mo2, state(mo2, "p"), state(mo2, "p'")));
  EXPECT_FALSE(state_perp(mo2, state(mo2, "p"), state(mo2, "q")));
  const System cbit = fixture("CBIT");
  EXPECT_EQ(T_prime(cbit, states(cbit, {"p"})), states(cbit, {"q"}));
  EXPECT_TRUE(T_prime(cbit, cbit.all()).empty());
  EXPECT_EQ(T_prime(cbit, StateSet()), cbit.all());
  for (const auto& sys : fixtures())
    for_each_subset(sys.all(), [&](StateSet t) {
      EXPECT_TRUE(t.subset_of(T_prime(sys, T_prime(sys, t))));
      for (auto x : t) EXPECT_TRUE(T_prime(sys, t).subset_of(T_prime(sys, t.without(x))));
    });
}

TEST(Bicommutant, Examples) {
  const System mo2 = fixture("MO2");
  EXPECT_TRUE(verify_bicommutant(mo2).all_hold());
  const StateSet p = states(mo2, {"p"});
  EXPECT_EQ(T_prime(mo2, p), states(mo2, {"p'"}));
  EXPECT_EQ(T_prime(mo2, T_prime(mo2, p)), p);
  EXPECT_EQ(sup_close0(mo2, p), p);
  const System cbit = fixture("CBIT");
  EXPECT_TRUE(verify_bicommutant(cbit).all_hold());
  EXPECT_EQ(T_prime(cbit, T_prime(cbit, cbit.all())), cbit.all());
  EXPECT_EQ(sup_close0(cbit, cbit.all()), cbit.all());
}

TEST(F0, Examples) {
  const System mo2 = fixture("MO2");
  const auto f = build_F0(mo2);
  EXPECT_TRUE(f.report.all_hold());
  ASSERT_EQ(f.family.members.size(), 6U);
  EXPECT_EQ(T_prime(mo2, states(mo2, {"p"})), states(mo2, {"p'"}));
  const System cbit = fixture("CBIT");
  const auto c = build_F0(cbit);
  EXPECT_TRUE(c.report.all_hold());
  EXPECT_EQ(c.family.members.size(), 4U);
  for (const auto& sys : fixtures()) {
    if (sys.size() > 16) continue;
    const auto fam = build_F0(sys);
    for (auto s : fam.family.members) EXPECT_FALSE(s.intersects(T_prime(sys, s)));
  }
}

TEST(ProbabilityInvariants, MuCorpus) {
  ASSERT_FALSE(mu_corpus().empty());
  for (const auto& sys : mu_corpus()) {
    for (std::size_t p = 0; p < sys.size(); ++p) {
      EXPECT_EQ(*sys.mu(p, sys.top()), kOne);
      EXPECT_EQ(*sys.mu(p, sys.bottom()), kZero);
    }
    if (!mu_valid(sys)) continue;
    const auto rep = check_omp(sys);
    EXPECT_FALSE(rep.any_fails());
    for (auto a : indices_of(sys.testable())) {
      const auto c = ortho_complement0(sys, a);
      ASSERT_TRUE(c);
      EXPECT_EQ(*ortho_complement0(sys, *c), a);
    }
    const auto ab = check_axiom_A(sys).holds() && check_axiom_B(sys).holds();
    if (ab) {
      EXPECT_FALSE(verify_bicommutant(sys).any_fails());
    }
  }
}

TEST(ProbabilityOracle, AgreesOnMuCorpus) {
  std::vector<const System*> all;
  for (const auto& s : mu_corpus()) all.push_back(&s);
  for (const auto& s : fixtures())
    if (s.size() <= 8) all.push_back(&s);
  for (const auto* sp : all) {
    const auto& sys = *sp;
    const auto& in = sys.instance();
    const auto rep = validate_mu(sys);
    EXPECT_EQ(rep.holds("Oi") && rep.holds("Oii"), oracle_oi_oii(in));
    for (std::size_t p = 0; p < sys.size(); ++p)
      for (std::size_t q = 0; q < sys.size(); ++q) EXPECT_EQ(state_perp(sys, p, q), oracle::perp(in, p, q));
    for (auto a : indices_of(sys.testable())) {
      const auto c = oracle::complements0(in, a);
      const auto got = ortho_complement0(sys, a);
      if (c.empty()) {
        EXPECT_FALSE(got);
      } else {
        ASSERT_TRUE(got);
        EXPECT_EQ(*got, c.front());
      }
    }
    for_each_subset(sys.all(), [&](StateSet t) {
      EXPECT_EQ(T_prime(sys, t).mask(), oracle::prime(in, t.mask()));
      EXPECT_EQ(sup_close0(sys, t).mask(), oracle::bar0(in, t.mask()));
    });
  }
}
