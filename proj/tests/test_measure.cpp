#include <gtest/gtest.h>

#include "ergolab/errors.hpp"
#include "ergolab/generators.hpp"
#include "ergolab/measure.hpp"

using namespace ergolab;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

}  // namespace

TEST(Rational, ReducesAndPrints) {
  EXPECT_EQ(Rational(6, 8).to_string(), "3/4");
  EXPECT_EQ(Rational(3, -6).to_string(), "-1/2");
  EXPECT_EQ(Rational(0).to_string(), "0/1");
  EXPECT_EQ(R("10/4"), Rational(5, 2));
  EXPECT_EQ(R("7").to_string(), "7/1");
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(pow(Rational(2, 3), 3), Rational(8, 27));
}

TEST(Rational, RejectsBadInput) {
  EXPECT_THROW(R("1/0"), InvalidInput);
  EXPECT_THROW(R("abc"), InvalidInput);
  EXPECT_THROW(Rational(1) / Rational(0), InvalidInput);
}

TEST(Space, Validation) {
  EXPECT_THROW(ExactProbabilitySpace({"a", "b"}, {R("1/2"), R("49/100")}), InvalidInput);
  EXPECT_THROW(ExactProbabilitySpace({"a", "b"}, {R("3/2"), R("-1/2")}), InvalidInput);
  EXPECT_THROW(ExactProbabilitySpace({"a"}, {R("1/2"), R("1/2")}), DimensionMismatch);
  auto s = ExactProbabilitySpace::from_weights({R("1/2"), R("0"), R("1/2")});
  EXPECT_EQ(s.support(), (IndexSet{0, 2}));
  EXPECT_EQ(s.measure({1, 2}), R("1/2"));
}

TEST(Partition, BasicOperations) {
  Partition p({{0, 1}, {2, 3}}, 4);
  Partition q({{0, 2}, {1, 3}}, 4);
  EXPECT_EQ(p.common_refinement(q), Partition::singletons(4));
  EXPECT_TRUE(Partition::singletons(4).refines(p));
  EXPECT_FALSE(p.refines(q));
  EXPECT_TRUE(p.is_union_of_blocks({0, 1}));
  EXPECT_FALSE(p.is_union_of_blocks({0, 2}));
  EXPECT_EQ(p.pullback({1, 2, 0}), Partition({{0, 2}, {1}}, 3));
  EXPECT_THROW(Partition({{0}, {0, 1}}, 2), InvalidInput);
  EXPECT_THROW(Partition({{0}}, 2), InvalidInput);
}

TEST(ConditionalExpectation, Examples) {
  ExactProbabilitySpace mu({"a", "b", "c"}, {R("1/2"), R("1/4"), R("1/4")});
  SimpleFunction f{{Rational(1), Rational(0), Rational(2)}};
  EXPECT_EQ(conditional_expectation(f, Partition::singletons(3), mu), f);
  EXPECT_EQ(conditional_expectation(f, Partition::trivial(3), mu), SimpleFunction::constant(3, Rational(1)));
  EXPECT_EQ(conditional_expectation(f, Partition({{0}, {1, 2}}, 3), mu),
            SimpleFunction::constant(3, Rational(1)));
  auto null = ExactProbabilitySpace::from_weights({Rational(1), Rational(0)});
  EXPECT_EQ(conditional_expectation(SimpleFunction{{Rational(3), Rational(5)}}, Partition::singletons(2), null)
                .values[1],
            Rational(0));
}

TEST(ConditionalExpectation, TowerAndIdempotence) {
  gen::Rng rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + gen::index(rng, 8);
    auto mu = gen::random_space(rng, n, true);
    Partition p = gen::random_partition(rng, n);
    Partition q = gen::random_coarsening(rng, p);
    SimpleFunction f;
    for (std::size_t i = 0; i < n; ++i) f.values.push_back(gen::random_rational(rng, 9, 7));
    auto ep = conditional_expectation(f, p, mu);
    EXPECT_EQ(conditional_expectation(ep, p, mu), ep);
    EXPECT_EQ(conditional_expectation(ep, q, mu), conditional_expectation(f, q, mu));
    EXPECT_EQ(mu.integral(ep), mu.integral(f));
  }
}

TEST(Coupling, ConstructionAndMarginals) {
  auto mu = ExactProbabilitySpace::uniform(2);
  auto diag = Coupling::diagonal(mu, 2);
  EXPECT_EQ(diag.mass_of({0, 0}), R("1/2"));
  EXPECT_EQ(diag.mass_of({0, 1}), Rational(0));
  auto prod = Coupling::product({mu, mu, mu});
  EXPECT_EQ(prod.mass().size(), 8u);
  EXPECT_EQ(prod.project({0, 2}), Coupling::product({mu, mu}));
  EXPECT_EQ(prod.product_mass({{0}, {0, 1}, {1}}), R("1/4"));
  std::map<Tuple, Rational> bad{{{0, 0}, Rational(1)}};
  EXPECT_THROW(Coupling::on_base(mu, 2, bad), InvalidInput);
}

TEST(RelativeIndependence, ProductAndDiagonal) {
  auto mu = ExactProbabilitySpace::uniform(3);
  auto prod = Coupling::product({mu, mu});
  auto r = relative_independence({Partition::singletons(3), Partition::singletons(3)},
                                 {Partition::trivial(3), Partition::trivial(3)}, prod);
  EXPECT_TRUE(r.independent);

  auto diag = Coupling::diagonal(mu, 2);
  auto d = relative_independence({Partition::singletons(3), Partition::singletons(3)},
                                 {Partition::trivial(3), Partition::trivial(3)}, diag);
  ASSERT_FALSE(d.independent);
  ASSERT_TRUE(d.witness);
  EXPECT_NE(d.witness->blocks[0], d.witness->blocks[1]);
  EXPECT_EQ(d.witness->lhs, Rational(0));
  EXPECT_EQ(d.witness->rhs, R("1/9"));

  // over the full factor everything is independent
  auto full = relative_independence({Partition::singletons(3), Partition::singletons(3)},
                                    {Partition::singletons(3), Partition::singletons(3)}, diag);
  EXPECT_TRUE(full.independent);
}

TEST(RelativeIndependence, RequiresCoarsening) {
  auto mu = ExactProbabilitySpace::uniform(4);
  EXPECT_THROW(relative_independence({Partition({{0, 1}, {2, 3}}, 4)}, {Partition({{0, 2}, {1, 3}}, 4)}, mu),
               PreconditionError);
}

TEST(RelativelyIndependentProduct, Examples) {
  auto z4 = ExactProbabilitySpace::uniform(4);
  auto c = relatively_independent_product({z4, z4}, {{0, 1, 0, 1}, {0, 1, 0, 1}});
  EXPECT_EQ(c.mass().size(), 8u);
  for (auto& [t, m] : c.mass()) {
    EXPECT_EQ(t[0] % 2, t[1] % 2);
    EXPECT_EQ(m, R("1/8"));
  }
  EXPECT_EQ(relatively_independent_product({z4, z4}, {{0, 0, 0, 0}, {0, 0, 0, 0}}), Coupling::product({z4, z4}));
  EXPECT_EQ(relatively_independent_product({z4, z4}, {{0, 1, 2, 3}, {0, 1, 2, 3}}), Coupling::diagonal(z4, 2));
  Partition parity({{0, 2}, {1, 3}}, 4);
  EXPECT_TRUE(relative_independence({Partition::singletons(4), Partition::singletons(4)}, {parity, parity}, c)
                  .independent);
  EXPECT_THROW(relatively_independent_product({z4, z4}, {{0, 1, 0, 1}, {0, 0, 0, 1}}), InvalidInput);
}

TEST(AeEqual, Examples) {
  auto mu = ExactProbabilitySpace::from_weights({R("1/2"), R("1/2"), Rational(0)});
  Partition p({{0}, {1, 2}}, 3);
  Partition q({{0, 2}, {1}}, 3);
  EXPECT_TRUE(ae_equal(p, p, mu));
  EXPECT_TRUE(ae_equal(p, q, mu));
  EXPECT_FALSE(ae_equal(Partition::singletons(3), Partition::trivial(3), mu));
}
