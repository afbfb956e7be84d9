#include <gtest/gtest.h>

#include "pmodal/constraints.hpp"
#include "pmodal/model_io.hpp"
#include "support/generators.hpp"

namespace pmodal {
namespace {

using testing::q;

const Formula kH = Formula::atom("H");
const Formula kT = Formula::atom("T");

Rational value(const Witness& w, const std::string& name) {
  for (const auto& [k, v] : w.values) {
    if (k == name) return v;
  }
  throw std::out_of_range(name);
}

TEST(Miller, CoinsHalf) {
  Model m = testing::coins_model();
  auto r = check_miller(m, 0, kH, Interval::point(q(1, 2)));
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.vacuous);
  EXPECT_EQ(r.value, q(1, 2));
}

TEST(Miller, CoinsOne) {
  Model m = testing::coins_model();
  auto r = check_miller(m, 0, kH, Interval::point(q(1)));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.value, q(1));
  EXPECT_EQ(prob2(m, 0, {}, first_order_prob(Interval::point(q(1)), kH)), q(1, 5));
  EXPECT_EQ(prob2(m, 0, {}, Formula::conj(kH, first_order_prob(Interval::point(q(1)), kH))), q(1, 5));
}

TEST(Miller, CoinsQuarterIsVacuous) {
  auto r = check_miller(testing::coins_model(), 0, kH, Interval::point(q(1, 4)));
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.vacuous);
  EXPECT_FALSE(r.value);
}

TEST(Miller, RejectsProbabilisticArgument) {
  EXPECT_THROW(check_miller(testing::coins_model(), 0, parse("P1[1](H)"), Interval()), EvalError);
}

TEST(MillerModel, CoinsAllRealizedAndListedIntervals) {
  Model m = testing::coins_model();
  auto r = check_miller_model(m, {kH, kT}, {Interval::point(q(0)), Interval::point(q(1, 2)), Interval::point(q(1))});
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.vacuous);
  EXPECT_TRUE(check_miller_model(m, {kH, kT}).holds);
  std::vector<Interval> expected{Interval::point(q(0)), Interval::point(q(1, 2)), Interval::point(q(1))};
  EXPECT_EQ(realized_intervals(m, kH), expected);
}

TEST(MillerModel, BrokenCoinsFails) {
  Model m = load_model(testing::data_path("coins_broken.json"));
  auto r = check_miller_model(m, {kH}, {Interval::point(q(1, 2))});
  EXPECT_FALSE(r.holds);
  ASSERT_FALSE(r.witnesses.empty());
  const Witness& w = r.witnesses.front();
  EXPECT_EQ(w.world, 0U);
  EXPECT_EQ(value(w, "conditioning"), q(13, 100));
  EXPECT_EQ(value(w, "joint"), q(13, 100));
  EXPECT_EQ(value(w, "conditional"), q(1));
  // Reported in world order.
  for (std::size_t i = 1; i < r.witnesses.size(); ++i) EXPECT_LE(r.witnesses[i - 1].world, r.witnesses[i].world);
}

TEST(MillerModel, SingleWorld) {
  EXPECT_TRUE(check_miller_model(testing::onepoint_model(true), {Formula::atom("A")}).holds);
  EXPECT_TRUE(check_miller_model(testing::onepoint_model(false), {Formula::atom("A")}).holds);
}

TEST(C1, Examples) {
  Model m = testing::coins_model();
  auto full = check_c1(m, 0, kH, Interval());
  EXPECT_TRUE(full.holds);
  EXPECT_FALSE(full.vacuous);
  EXPECT_EQ(full.value, q(7, 20));

  auto half = check_c1(m, 0, kH, Interval::point(q(1, 2)));
  EXPECT_TRUE(half.holds);
  EXPECT_TRUE(half.vacuous);
  EXPECT_EQ(half.value, q(3, 10));
}

TEST(C1, SingleClassAtThreeTenths) {
  // Ten worlds in one class; A true on three of them.
  std::vector<std::string> worlds;
  std::vector<std::vector<std::string>> truth;
  for (int i = 0; i < 10; ++i) {
    worlds.push_back("w" + std::to_string(i));
    truth.push_back(i < 3 ? std::vector<std::string>{"A"} : std::vector<std::string>{});
  }
  Distribution uniform{std::vector<Rational>(10, q(1, 10))};
  Model m = testing::propositional_model(worlds, {"A"}, truth, std::vector<Distribution>(10, uniform),
                                         std::vector<Distribution>(10, Distribution::point_mass(4, 10)));
  ASSERT_TRUE(check_equivalence_class_constraint(m).empty());
  Interval i = Interval::point(q(3, 10));
  EXPECT_EQ(prob2(m, 0, {}, first_order_prob(i, Formula::atom("A"))), q(1));
  auto r = check_c1(m, 0, Formula::atom("A"), i);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.vacuous);
  EXPECT_EQ(r.value, q(3, 10));
}

TEST(C1, ViolatedWithoutClassConstraint) {
  // PR2 sits on u, whose PR1 looks only at v, where A has probability 0.
  Model m = testing::propositional_model(
      {"u", "v", "z"}, {"A"}, {{}, {"A"}, {}},
      {Distribution::point_mass(1, 3), Distribution::point_mass(2, 3), Distribution::point_mass(2, 3)},
      std::vector<Distribution>(3, Distribution::point_mass(0, 3)));
  EXPECT_FALSE(check_equivalence_class_constraint(m).empty());
  auto r = check_c1(m, 0, Formula::atom("A"), Interval::point(q(0)));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(value(r.witnesses.at(0), "certainty"), q(1));
  EXPECT_EQ(value(r.witnesses.at(0), "prob2"), q(1));
}

TEST(GaifmanDirect, CoinsFails) {
  auto r = check_gaifman_direct(testing::coins_model(), 0, kH);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.value, q(3, 10));
  ASSERT_EQ(r.witnesses.size(), 1U);
  EXPECT_EQ(value(r.witnesses[0], "direct"), q(3, 10));
  EXPECT_EQ(value(r.witnesses[0], "prob2"), q(7, 20));
}

TEST(GaifmanDirect, PointMassesAndTautologies) {
  testing::Random r(9);
  for (int i = 0; i < 50; ++i) {
    Model m = testing::random_model(r);
    for (std::size_t w = 0; w < m.world_count(); ++w) m.pr1[w] = Distribution::point_mass(w, m.world_count());
    Formula f = testing::random_plain(r, {"A", "B"}, 4);
    for (std::size_t w = 0; w < m.world_count(); ++w) EXPECT_TRUE(check_gaifman_direct(m, w, f).holds);
  }
  Model c = testing::coins_model();
  EXPECT_TRUE(check_gaifman_direct(c, 0, parse("H | ~H")).holds);
}

TEST(GaifmanDirect, ClassMassMatchedCoins) {
  Model m = testing::coins_model();
  for (auto& d : m.pr2) d = testing::dist({q(1, 5), q(3, 20), q(3, 20), q(1, 2)});
  for (std::size_t w = 0; w < 4; ++w) {
    EXPECT_TRUE(check_gaifman_direct(m, w, kH).holds);
    EXPECT_TRUE(check_gaifman_direct(m, w, kT).holds);
  }
}

TEST(GaifmanDirect, ClassMassMatchedRandomModels) {
  testing::Random r(13);
  for (int i = 0; i < 200; ++i) {
    Model m = testing::random_coherent_model(r);
    testing::match_class_masses(m, r);
    ASSERT_TRUE(validate_model(m).empty());
    Formula f = testing::random_plain(r, {"A", "B"}, 1 + static_cast<int>(r.below(5)));
    for (std::size_t w = 0; w < m.world_count(); ++w) EXPECT_TRUE(check_gaifman_direct(m, w, f).holds) << f;
  }
}

TEST(Properties, MillerHoldsOnCoherentModels) {
  testing::Random r(17);
  for (int i = 0; i < 300; ++i) {
    Model m = testing::random_coherent_model(r);
    std::vector<Formula> fs{Formula::atom("A"), Formula::atom("B"),
                            testing::random_plain(r, {"A", "B"}, 1 + static_cast<int>(r.below(5)))};
    auto realized = check_miller_model(m, fs);
    EXPECT_TRUE(realized.holds);
    // Closed intervals are convex, so wider intervals hold as well.
    std::vector<Interval> wide{Interval(), Interval(q(0), q(1, 2)), Interval(q(1, 3), q(3, 4))};
    EXPECT_TRUE(check_miller_model(m, fs, wide).holds);
  }
}

TEST(Properties, MillerViolatedSomewhereOnUnconstrainedModels) {
  testing::Random r(19);
  int violations = 0;
  for (int i = 0; i < 200; ++i) {
    Model m = testing::random_model(r);
    if (!check_miller_model(m, {Formula::atom("A"), Formula::atom("B")}).holds) ++violations;
  }
  EXPECT_GT(violations, 0);
}

TEST(Properties, C1FollowsFromMiller) {
  testing::Random r(23);
  int non_vacuous = 0;
  for (int i = 0; i < 400; ++i) {
    Model m = (i % 2) ? testing::random_coherent_model(r) : testing::random_model(r);
    Formula f = testing::random_plain(r, {"A", "B"}, 1 + static_cast<int>(r.below(4)));
    auto intervals = realized_intervals(m, f);
    intervals.push_back(Interval());
    intervals.push_back(Interval(q(1, 4), q(3, 4)));
    for (const auto& i : intervals) {
      if (!check_miller_model(m, {f}, {i}).holds) continue;
      for (std::size_t w = 0; w < m.world_count(); ++w) {
        auto c1 = check_c1(m, w, f, i);
        non_vacuous += c1.vacuous ? 0 : 1;
        EXPECT_TRUE(c1.holds) << f;
      }
    }
  }
  EXPECT_GT(non_vacuous, 100);
}

}  // namespace
}  // namespace pmodal
