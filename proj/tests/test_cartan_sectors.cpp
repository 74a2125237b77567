#include <gtest/gtest.h>

#include "common.hpp"
#include "oracle.hpp"

using namespace spslab;
using namespace testing_support;

namespace {

std::set<std::size_t> set_of(const PropSet& s) {
  const auto v = indices_of(s);
  return {v.begin(), v.end()};
}

}  // namespace

TEST(Kappa, Examples) {
  const System cbit = fixture("CBIT");
  EXPECT_EQ(kappa(cbit, prop(cbit, "a")), states(cbit, {"p"}));
  EXPECT_EQ(kappa(cbit, prop(cbit, "a'")), states(cbit, {"q"}));
  const System fano = fixture("FANO");
  for (std::size_t i = 1; i <= 7; ++i) {
    const auto w = kappa(fano, prop(fano, ("L" + std::to_string(i)).c_str()));
    EXPECT_EQ(w.size(), 3U);
    EXPECT_TRUE(is_lambda_closed(fano, w));
  }
  for (const auto& sys : fixtures()) {
    EXPECT_EQ(kappa(sys, sys.top()), sys.all());
    EXPECT_FALSE(check_kappa(sys).any_fails());
  }
  EXPECT_TRUE(check_kappa(cbit).all_hold());
  EXPECT_TRUE(check_kappa(fixture("MO2")).all_hold());
}

TEST(Sectors, Examples) {
  EXPECT_EQ(sectors(fixture("CBIT")).blocks.size(), 2U);
  EXPECT_EQ(sectors(fixture("MO2")).blocks.size(), 1U);
  EXPECT_EQ(sectors(fixture("FANO")).blocks.size(), 1U);
  EXPECT_EQ(sectors(fixture("CTRIT")).blocks.size(), 3U);
  const auto cc = sectors(cbit_cbit());
  EXPECT_EQ(cc.blocks.size(), 4U);
  EXPECT_TRUE(cc.report.all_hold());
  const System mc = mo2_cbit();
  const auto d = sectors(mc);
  ASSERT_EQ(d.blocks.size(), 3U);
  EXPECT_EQ(d.blocks[0].size(), 4U);
  EXPECT_TRUE(d.block_sp[0].holds());
  EXPECT_TRUE(check_sector_clopen(mc).all_hold());
  const System dup(detail::kappa_instance({"p", "q"}, {"0", "I"}, {{}, {0, 1}}));
  EXPECT_THROW(sectors(dup), PreconditionUnmet);
}

TEST(SectorClopen, Examples) {
  const System cbit = fixture("CBIT");
  EXPECT_TRUE(check_sector_clopen(cbit).all_hold());
  EXPECT_TRUE(is_lambda_closed(cbit, states(cbit, {"p"})));
  EXPECT_TRUE(is_lambda_closed(cbit, states(cbit, {"q"})));
  EXPECT_TRUE(check_sector_clopen(fixture("MO2")).all_hold());
}

TEST(Classical, Examples) {
  const System cbit = fixture("CBIT");
  EXPECT_EQ(classical_elements(cbit).classical.count(), 4U);
  const System mo2 = fixture("MO2");
  EXPECT_EQ(set_of(classical_elements(mo2).classical), (std::set<std::size_t>{mo2.bottom(), mo2.top()}));
  const System fano = fixture("FANO");
  EXPECT_EQ(set_of(classical_elements(fano).classical), (std::set<std::size_t>{fano.bottom(), fano.top()}));
  EXPECT_EQ(classical_elements(mo2_cbit()).classical.count(), 8U);
  for (const auto& sys : fixtures()) {
    const auto c = classical_elements(sys);
    EXPECT_TRUE(c.report.all_hold());
    EXPECT_TRUE(c.classical.test(sys.bottom()));
    EXPECT_TRUE(c.classical.test(sys.top()));
  }
}

TEST(Central, Examples) {
  const System cbit = fixture("CBIT");
  const auto c = central_elements(cbit);
  EXPECT_EQ(c.central.count(), 4U);
  EXPECT_TRUE(c.report.all_hold());
  const System mo2 = fixture("MO2");
  const auto m = central_elements(mo2);
  EXPECT_EQ(set_of(m.central), (std::set<std::size_t>{mo2.bottom(), mo2.top()}));
  EXPECT_TRUE(m.report.all_hold());
  const System mc = mo2_cbit();
  EXPECT_EQ(central_elements(mc).central, classical_elements(mc).classical);
}

TEST(SectorInvariants, Corpus) {
  for (const auto& sys : corpus()) {
    if (!check_axiom_A(sys).holds() || !check_msp(sys, MspLevel::upto(3)).holds()) continue;
    const auto d = sectors(sys);
    EXPECT_TRUE(d.report.all_hold());
    StateSet seen;
    for (auto b : d.blocks) {
      EXPECT_FALSE(b.intersects(seen));
      seen |= b;
    }
    EXPECT_EQ(seen, sys.all());
    EXPECT_FALSE(check_sector_clopen(sys).any_fails());
    EXPECT_EQ(check_irreducible(sys).holds(), d.blocks.size() == 1);
  }
}

TEST(CartanOracle, AgreesOnCorpus) {
  for (const auto& sys : corpus()) {
    const auto& in = sys.instance();
    for (std::size_t a = 0; a < sys.prop_count(); ++a) EXPECT_EQ(kappa(sys, a).mask(), oracle::kappa(in, a));
    EXPECT_EQ(set_of(classical_elements(sys).classical), oracle::classical(in));
    EXPECT_EQ(set_of(central_elements(sys).central), oracle::central(in));
    if (!check_axiom_A(sys).holds() || !check_msp(sys, MspLevel::upto(3)).holds()) continue;
    std::vector<std::uint64_t> blocks;
    for (auto b : sectors(sys).blocks) blocks.push_back(b.mask());
    std::sort(blocks.begin(), blocks.end());
    EXPECT_EQ(blocks, oracle::sectors(in));
    auto comps = oracle::clopen_sp_components(in);
    std::sort(comps.begin(), comps.end());
    EXPECT_EQ(blocks, comps);
    const auto o = oracle::sectors(in);
    for_each_subset(sys.all(), [&](StateSet s) {
      EXPECT_EQ(is_sector(sys, s), std::find(o.begin(), o.end(), s.mask()) != o.end());
    });
  }
}

TEST(CentralEqualsClassical, MuCorpus) {
  for (const auto& sys : mu_corpus()) {
    if (!check_axiom_C(sys).holds()) continue;
    const auto c = central_elements(sys);
    EXPECT_TRUE(c.report.all_hold());
    EXPECT_EQ(c.central, classical_elements(sys).classical);
  }
}
