#include <gtest/gtest.h>

#include "support.hpp"

using namespace oddcolor;

namespace {

auto amount(const ChargeState& s, const std::string& rule, Element src, Element dst) -> std::optional<Rational> {
  for (const auto& t : s.ledger)
    if (t.rule == rule && t.source == src && t.target == dst) return t.amount;
  return std::nullopt;
}

auto V(Vertex v) -> Element { return {false, v}; }

// 3-vertices a, b joined by a 2-thread; the rest of K4 keeps them at degree 3.
auto two_between_threes() -> PlaneGraph {
  oracle::Builder B;
  for (int i = 0; i < 4; ++i) B.add();
  B.path(0, 1, 2);
  for (auto [a, b] : EdgeList{{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}) B.edge(a, b);
  return B.build();
}

}  // namespace

TEST(InitialCharge, Examples) {
  auto c10 = oracle::cycle(10);
  auto mu = initial_charge(c10);
  for (const auto& x : mu.vertex) EXPECT_EQ(x, q(-2));
  for (const auto& x : mu.face) EXPECT_EQ(x, q(4));
  EXPECT_EQ(mu.total(), q(-12));

  auto c11 = oracle::cycle(11);
  for (const auto& x : initial_charge(c11).face) EXPECT_EQ(x, q(5));

  auto star = embed(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  EXPECT_EQ(initial_charge(star).vertex[0], q(4));
  EXPECT_EQ(initial_charge(star).total(), q(-12));

  try {
    initial_charge(embed(4, {{0, 1}, {2, 3}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::disconnected);
  }
}

TEST(OddRules, ThetaLedger) {
  auto t = oracle::theta();
  auto mu = initial_charge(t.g);
  auto m1 = odd_first_pass(t.g, mu);
  EXPECT_EQ(m1.stage, Stage::mu_prime);
  EXPECT_EQ(m1.total(), q(-12));
  EXPECT_EQ(amount(m1, "V1", V(t.a), V(t.t3[0])), odd_rules::v1());
  EXPECT_EQ(amount(m1, "V2", V(t.a), V(t.t2[0])), odd_rules::v2());
  EXPECT_EQ(amount(m1, "V3", V(t.a), V(t.t1[0])), odd_rules::v3());
  auto m2 = odd_redistribute(t.g, m1);
  EXPECT_EQ(m2.stage, Stage::mu_double_prime);
  EXPECT_EQ(m2.total(), q(-12));
  EXPECT_EQ(apply_odd_rules(t.g, mu).total(), q(-12));
}

TEST(OddRules, TwoThreadVertexEndsAtZero) {
  auto t = oracle::theta();
  auto m = apply_odd_rules(t.g, initial_charge(t.g));
  for (Vertex x : t.t2) EXPECT_EQ(m.vertex[x], q(0));
  for (Vertex x : t.t3) EXPECT_EQ(m.vertex[x], q(0));
}

TEST(OddRules, StageChecks) {
  auto t = oracle::theta();
  auto mu = initial_charge(t.g);
  auto m1 = odd_first_pass(t.g, mu);
  EXPECT_THROW(odd_first_pass(t.g, m1), Error);
  EXPECT_THROW(odd_redistribute(t.g, mu), Error);
  EXPECT_THROW(apply_pcf_rules(t.g, m1), Error);
}

TEST(OddRules, StrictModeRejectsUnrepresentableFaces) {
  auto g = two_between_threes();
  auto mu = initial_charge(g);
  try {
    apply_odd_rules(g, mu);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::rule_precondition_failed);
  }
  RuleOptions lenient{true};
  EXPECT_EQ(apply_odd_rules(g, mu, lenient).total(), q(-12));
}

TEST(PcfRules, ThetaLedger) {
  auto t = oracle::theta();
  auto m = apply_pcf_rules(t.g, initial_charge(t.g));
  EXPECT_EQ(m.total(), q(-12));
  ASSERT_TRUE(is_supported(t.g, t.t2[0]));
  EXPECT_EQ(amount(m, "V2", V(t.a), V(t.t2[0])), pcf_rules::v2());
  EXPECT_EQ(amount(m, "V1", V(t.a), V(t.t3[0])), pcf_rules::v1());
  // middle of a 3-thread gets 1 from each side face; ends get 1/2 per face and 1 from the anchor
  EXPECT_EQ(m.vertex[t.t3[1]], q(0));
  EXPECT_EQ(m.vertex[t.t3[0]], q(0));
  EXPECT_EQ(m.vertex[t.t1[0]], q(0));
}

TEST(PcfRules, UnsupportedTwoThread) {
  oracle::Builder B;
  int a = B.add(), b = B.add();
  auto p = B.path(a, b, 2);
  B.path(a, b, 2);
  B.path(a, b, 2);
  B.edge(a, b);
  auto g = B.build();
  ASSERT_FALSE(is_supported(g, p[0]));
  auto m = apply_pcf_rules(g, initial_charge(g));
  EXPECT_EQ(amount(m, "V3", V(a), V(p[0])), pcf_rules::v3());
  EXPECT_EQ(m.vertex[p[0]], q(0));
  EXPECT_EQ(m.total(), q(-12));
}

TEST(Audit, CycleIsInapplicable) {
  auto r = audit(oracle::cycle(10), Theorem::odd10);
  EXPECT_FALSE(r.applicable);
  EXPECT_FALSE(r.note.empty());
  EXPECT_TRUE(r.conserved());
  bool pure = false;
  for (const auto& h : r.hits) pure = pure || h.kind == "long_thread";
  EXPECT_TRUE(pure);
  EXPECT_FALSE(r.critical);
}

TEST(Audit, GirthGuard) {
  auto t = oracle::theta();
  try {
    audit(t.g, Theorem::odd10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::precondition_failed);
  }
  AuditOptions o;
  o.check_girth = false;
  EXPECT_TRUE(audit(t.g, Theorem::odd10, o).conserved());
}

TEST(Audit, GeneratedGraphsConserve) {
  for (std::uint64_t s = 1; s <= 25; ++s) {
    auto g = oracle::small_generated(s * 31, 11, 200, 8);
    for (Theorem th : {Theorem::odd10, Theorem::pcf11}) {
      auto r = audit(g, th);
      EXPECT_TRUE(r.conserved()) << "seed " << s;
      if (r.applicable) EXPECT_EQ(r.totals.size(), th == Theorem::odd10 ? 3u : 2u);
      EXPECT_EQ(r.final_state.total(), q(-12));
      // a graph that is not a counterexample must show a negative element or a hit
      EXPECT_TRUE(!r.negatives.empty() || !r.hits.empty());
      for (const auto& n : r.negatives) EXPECT_LT(n.value, q(0));
    }
  }
}

TEST(Audit, NegativesCarryHits) {
  auto g = oracle::small_generated(77, 10, 150, 6);
  auto r = audit(g, Theorem::odd10);
  EXPECT_FALSE(r.critical);
  EXPECT_EQ(r.claims.size(), 3u);
}

TEST(LedgerCsv, Format) {
  auto t = oracle::theta();
  auto m = apply_pcf_rules(t.g, initial_charge(t.g));
  auto csv = ledger_csv(m);
  EXPECT_EQ(csv.rfind("rule,source,target,amount\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), m.ledger.size() + 1);
  EXPECT_NE(csv.find("V1,v" + std::to_string(t.a) + ",v" + std::to_string(t.t3[0]) + ",1/1"), std::string::npos);
}
