#include <gtest/gtest.h>

#include "common.hpp"
#include "oracle.hpp"

using namespace spslab;
using namespace testing_support;

namespace {

FiniteLattice hexagon() {
  // 0 < a < c < 1 and 0 < b < d < 1.
  std::vector<std::pair<std::size_t, std::size_t>> leq{{0, 1}, {1, 3}, {3, 5}, {0, 2}, {2, 4}, {4, 5}};
  return FiniteLattice::from_pairs(6, leq, 0, 5);
}

std::string fact(const StructureCertificate& c, const std::string& key) {
  for (const auto& [k, v] : c.facts)
    if (k == key) return v;
  return "<missing>";
}

}  // namespace

TEST(MackeyLattice, Examples) {
  const auto m = check_mackey_lattice(fixture("MO2"));
  EXPECT_TRUE(m.holds());
  EXPECT_EQ(fact(m, "closed-elements"), "6");
  const System fano = fixture("FANO");
  const auto f = check_mackey_lattice(fano);
  EXPECT_TRUE(f.holds());
  EXPECT_EQ(fact(f, "closed-elements"), "16");
  for (auto x : enumerate_family(fano, FamilyKind::lambda_closed).members) EXPECT_EQ(sup_close(fano, x), x);
  EXPECT_TRUE(check_mackey_lattice(fixture("CBIT")).holds());
}

TEST(MackeyGeometry, Examples) {
  EXPECT_TRUE(check_mackey_geometry(fixture("MO2")).holds());
  EXPECT_TRUE(check_mackey_geometry(fixture("FANO")).holds());
  for (const auto& sys : corpus())
    if (!build_geometry(sys).projective()) {
      EXPECT_EQ(check_mackey_geometry(sys).verdict(), Verdict::precondition_unmet);
    }
}

TEST(IntersectionLattice, Examples) {
  const auto f = check_intersection_lattice(fixture("FANO"));
  EXPECT_TRUE(f.holds());
  EXPECT_EQ(fact(f, "elements"), "16");
  const auto m = check_intersection_lattice(fixture("MO2"));
  EXPECT_TRUE(m.holds());
  EXPECT_EQ(fact(m, "atoms"), "4");
}

TEST(IntersectionLattice, HexagonFailsCovering) {
  const auto L = hexagon();
  ASSERT_TRUE(L.is_lattice());
  const auto c = check_intersection_lattice(L);
  const auto* e = c.report.find("covering");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->verdict, Verdict::fails);
  ASSERT_TRUE(e->witness);
  const auto a = e->witness->props[0], x = e->witness->props[1];
  EXPECT_EQ(L.meet(a, x), L.bottom());
  EXPECT_FALSE(L.covers(x, L.join(a, x)));
  EXPECT_EQ(c.verdict(), Verdict::fails);
  EXPECT_EQ(verdict(c.report, "atomistic"), Verdict::fails);
}

TEST(Regular, Examples) {
  for (const char* name : {"MO2", "FANO", "CBIT"}) EXPECT_TRUE(check_regular(fixture(name)).holds()) << name;
  const System fano = fixture("FANO");
  const StateSet line = fano.kappa(prop(fano, "L1"));
  const auto fam = enumerate_family(fano, FamilyKind::superposition_closed);
  const auto L = fam.lattice();
  bool line_is_coatom = false;
  for (auto h : L.coatoms()) line_is_coatom = line_is_coatom || fam.members[h] == line;
  EXPECT_TRUE(line_is_coatom);
}

TEST(Orthogeometry, Examples) {
  const auto m = check_orthogeometry(fixture("MO2"));
  EXPECT_TRUE(m.holds());
  EXPECT_EQ(fact(m, "classification"), "pure");
  const auto l = check_orthogeometry(fixture("LINE3"));
  EXPECT_TRUE(l.holds());
  EXPECT_EQ(fact(l, "classification"), "pure");
  const auto g = check_orthogeometry(from_vector_space(2, 3, identity_form(3)));
  EXPECT_EQ(fact(g, "classification"), "non-pure");
  EXPECT_NE(fact(g, "null-points").find("r110"), std::string::npos);
  EXPECT_EQ(check_orthogeometry(fixture("FANO")).verdict(), Verdict::precondition_unmet);
}

TEST(OrthoStructures, Examples) {
  for (const char* name : {"MO2", "CBIT"}) {
    EXPECT_TRUE(check_ortholattice(fixture(name)).holds()) << name;
    EXPECT_TRUE(check_orthosystem(fixture(name)).holds()) << name;
  }
  const auto f = check_orthosystem(fixture("FANO"));
  EXPECT_EQ(f.verdict(), Verdict::precondition_unmet);
  EXPECT_NE(f.report.find("orthogonality")->note.find("no ⊥ relation"), std::string::npos);
  const System mo2 = fixture("MO2");
  for_each_subset(mo2.all(), [&](StateSet x) { EXPECT_EQ(T_prime(mo2, T_prime(mo2, x)), sup_close(mo2, x)); });
  EXPECT_TRUE(check_ortholattice(fixture("LINE3")).holds());
}

TEST(JoinAgreement, Examples) {
  const System mo2 = fixture("MO2");
  EXPECT_TRUE(check_join_agreement(mo2).all_hold());
  const StateSet p = states(mo2, {"p"}), q = states(mo2, {"q"});
  EXPECT_EQ(sup_close(mo2, p | q), mo2.all());
  EXPECT_EQ(lambda_close(mo2, p | q), mo2.all());
  const System cbit = fixture("CBIT");
  EXPECT_TRUE(check_join_agreement(cbit).all_hold());
  for (auto s : enumerate_family(cbit, FamilyKind::superposition_closed).members) EXPECT_EQ(sup_close(cbit, s), s);
  EXPECT_EQ(verdict(check_join_agreement(fixture("FANO")), "closed-joins-agree"), Verdict::precondition_unmet);
}

TEST(RoundTrip, Fixtures) {
  for (const char* name : {"CBIT", "MO2", "FANO", "LINE3", "CTRIT"})
    EXPECT_TRUE(check_round_trip(fixture(name)).all_hold()) << name;
}

TEST(MackeyInvariants, Corpus) {
  for (const auto& sys : corpus()) {
    const auto il = check_intersection_lattice(sys);
    EXPECT_TRUE(il.report.holds("equivalence-chain"));
    EXPECT_NE(check_mackey_lattice(sys).verdict(), Verdict::partial);
  }
  for (const auto& sys : mu_corpus()) {
    if (!detail::holds_abc(sys, Budget{}) || !check_msp(sys, MspLevel::upto(3)).holds()) continue;
    EXPECT_TRUE(check_mackey_lattice(sys).holds());
    EXPECT_TRUE(check_regular(sys).holds());
    EXPECT_TRUE(check_orthosystem(sys).holds());
    EXPECT_TRUE(check_ortholattice(sys).holds());
  }
}

TEST(MackeyOracle, AgreesOnCorpus) {
  for (const auto& sys : corpus()) {
    const auto& in = sys.instance();
    std::vector<std::uint64_t> fam;
    for (auto s : enumerate_family(sys, FamilyKind::superposition_closed).members) fam.push_back(s.mask());
    std::sort(fam.begin(), fam.end());
    EXPECT_EQ(fam, oracle::bar_closed_sets(in));
    const auto il = check_intersection_lattice(sys);
    const auto o = oracle::set_lattice(in);
    EXPECT_EQ(il.report.holds("covering"), o.covering);
    EXPECT_EQ(il.report.holds("upper-semimodular") && il.report.holds("lower-semimodular"), o.semimodular);
    EXPECT_EQ(il.report.holds("intersection-property"), o.intersection);
  }
  for (const auto& sys : mu_corpus()) {
    const auto& in = sys.instance();
    for_each_subset(sys.all(), [&](StateSet x) {
      EXPECT_EQ(T_prime(sys, T_prime(sys, x)).mask(), oracle::prime(in, oracle::prime(in, x.mask())));
    });
  }
}
