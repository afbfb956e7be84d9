#include <gtest/gtest.h>

#include <fstream>

#include "pmodal/solver.hpp"
#include "support/generators.hpp"
#include "support/vertex_oracle.hpp"

namespace pmodal {
namespace {

using testing::q;

FlatConstraint c(const char* text, Interval i) { return {parse(text), i}; }
FlatConstraint c(const char* text, Rational p) { return {parse(text), Interval::point(p)}; }

void expect_satisfies(const std::vector<FlatConstraint>& cs, const std::vector<std::string>& atoms,
                      const std::vector<Rational>& p) {
  Rational total = 0;
  for (const auto& x : p) {
    EXPECT_GE(x, 0);
    total += x;
  }
  EXPECT_EQ(total, 1);
  for (const auto& k : cs) EXPECT_TRUE(k.interval.contains(flat_probability(k.sentence, atoms, p))) << k.sentence;
}

TEST(FlatConsistent, Examples) {
  std::vector<FlatConstraint> nilsson{c("A", q(7, 10)), c("A -> B", q(4, 5))};
  auto r = flat_consistent(nilsson);
  ASSERT_TRUE(r.consistent);
  EXPECT_EQ(r.atoms, (std::vector<std::string>{"A", "B"}));
  expect_satisfies(nilsson, r.atoms, r.witness);
  // Bit 0 is A and bit 1 is B, so mask 1 is A & ~B, which is forced to 1/5.
  EXPECT_EQ(r.witness[1], q(1, 5));

  EXPECT_FALSE(flat_consistent({c("A", q(1)), c("~A", q(1))}).consistent);
  EXPECT_TRUE(flat_consistent({c("A", Interval())}).consistent);
  EXPECT_TRUE(flat_consistent({}).consistent);
}

TEST(FlatEntail, Nilsson) {
  auto r = flat_entail_bounds({c("A", q(7, 10)), c("A -> B", q(4, 5))}, parse("B"));
  EXPECT_EQ(r.bounds, Interval(q(1, 2), q(4, 5)));
  std::vector<FlatConstraint> premises{c("A", q(7, 10)), c("A -> B", q(4, 5))};
  expect_satisfies(premises, r.atoms, r.min_witness);
  expect_satisfies(premises, r.atoms, r.max_witness);
  EXPECT_EQ(flat_probability(parse("B"), r.atoms, r.min_witness), q(1, 2));
  EXPECT_EQ(flat_probability(parse("B"), r.atoms, r.max_witness), q(4, 5));
  EXPECT_EQ(testing::flat_oracle_bounds(premises, parse("B")), Interval(q(1, 2), q(4, 5)));
}

TEST(FlatEntail, TrivialCases) {
  EXPECT_EQ(flat_entail_bounds({c("A", q(1))}, parse("A | B")).bounds, Interval::point(q(1)));
  EXPECT_EQ(flat_entail_bounds({}, parse("A")).bounds, Interval());
  EXPECT_EQ(flat_entail_bounds({}, parse("A | ~A")).bounds, Interval::point(q(1)));
  EXPECT_EQ(flat_entail_bounds({c("A", Interval(q(1, 5), q(2, 5)))}, parse("A")).bounds, Interval(q(1, 5), q(2, 5)));
}

TEST(FlatEntail, Errors) {
  EXPECT_THROW(flat_entail_bounds({c("A", q(1)), c("~A", q(1))}, parse("B")), SolverError);
  EXPECT_THROW(flat_entail_bounds({}, parse("P[1](A)")), SolverError);
  EXPECT_THROW(flat_entail_bounds({}, parse("box A")), SolverError);
  EXPECT_THROW(flat_entail_bounds({}, parse("R(x)")), SolverError);
  EXPECT_THROW(flat_consistent({c("A & B & C", q(1))}, 2), SolverError);
}

TEST(FlatEntail, AtomOrderIsFirstOccurrence) {
  auto r = flat_entail_bounds({c("Z & A", q(1, 2))}, parse("M"));
  EXPECT_EQ(r.atoms, (std::vector<std::string>{"Z", "A", "M"}));
  EXPECT_EQ(r.min_witness.size(), 8U);
}

TEST(FlatEntail, AgreesWithVertexOracle) {
  testing::Random r(43);
  int consistent = 0;
  for (int i = 0; i < 120; ++i) {
    std::vector<std::string> atoms = (i % 6 == 5) ? std::vector<std::string>{"A", "B", "C"}
                                                  : std::vector<std::string>{"A", "B"};
    // Premises centred on a hidden distribution, so most cases are consistent.
    std::size_t masks = std::size_t{1} << atoms.size();
    Distribution hidden = r.scatter(masks, testing::all_worlds(masks), 6);
    std::vector<FlatConstraint> premises;
    std::size_t count = r.between(1, atoms.size() == 3 ? 2 : 3);
    for (std::size_t k = 0; k < count; ++k) {
      Formula f = testing::random_plain(r, atoms, 1 + static_cast<int>(r.below(5)));
      Rational p = 0;
      for (std::size_t mask = 0; mask < masks; ++mask) {
        std::map<std::string, bool> v;
        for (std::size_t a = 0; a < atoms.size(); ++a) v[atoms[a]] = (mask >> a) & 1U;
        if (testing::propositional_truth(f, v)) p += hidden[mask];
      }
      if (r.below(5) == 0) p = Rational(r.below(4), 3);
      Rational lo = p, hi = p;
      if (r.coin()) {
        lo = std::max(Rational(0), p - Rational(1, 10));
        hi = std::min(Rational(1), p + Rational(1, 5));
      }
      premises.push_back({f, Interval(lo, hi)});
    }
    Formula query = testing::random_plain(r, atoms, 1 + static_cast<int>(r.below(5)));
    auto oracle = testing::flat_oracle_bounds(premises, query);
    ASSERT_EQ(flat_consistent(premises).consistent, oracle.has_value()) << i;
    if (!oracle) {
      EXPECT_THROW(flat_entail_bounds(premises, query), SolverError);
      continue;
    }
    ++consistent;
    auto got = flat_entail_bounds(premises, query);
    EXPECT_EQ(got.bounds, *oracle) << i << " " << query;
    expect_satisfies(premises, got.atoms, got.min_witness);
    expect_satisfies(premises, got.atoms, got.max_witness);
    EXPECT_EQ(flat_probability(query, got.atoms, got.min_witness), got.bounds.lo());
    EXPECT_EQ(flat_probability(query, got.atoms, got.max_witness), got.bounds.hi());
  }
  EXPECT_GT(consistent, 60);
}

TEST(ParseConstraints, File) {
  std::ifstream in(testing::data_path("nilsson.txt"));
  auto cs = parse_constraints(in);
  ASSERT_EQ(cs.size(), 2U);
  EXPECT_EQ(cs[0].sentence, parse("A"));
  EXPECT_EQ(cs[0].interval, Interval::point(q(7, 10)));
  EXPECT_EQ(cs[1].sentence, parse("A -> B"));
}

TEST(ParseConstraints, FormsAndComments) {
  auto cs = parse_constraints("# comment\n\n  P[1/4, 0.5]: A & B\nP[1]:C\n");
  ASSERT_EQ(cs.size(), 2U);
  EXPECT_EQ(cs[0].interval, Interval(q(1, 4), q(1, 2)));
  EXPECT_EQ(cs[1].interval, Interval::point(q(1)));
}

TEST(ParseConstraints, Errors) {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_constraints(text);
    } catch (const SyntaxError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("P[1]: A\nQ[1]: B"), 2U);
  EXPECT_EQ(line_of("P[0.8,0.2]: A"), 1U);
  EXPECT_EQ(line_of("P[2]: A"), 1U);
  EXPECT_EQ(line_of("P[x]: A"), 1U);
  EXPECT_EQ(line_of("P[1] A"), 1U);
  EXPECT_EQ(line_of("\n\nP[1]: A &"), 3U);
  EXPECT_EQ(line_of("P[1]: A"), 0U);
}

}  // namespace
}  // namespace pmodal
