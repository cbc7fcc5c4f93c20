#include <gtest/gtest.h>

#include "ergolab/errors.hpp"
#include "ergolab/fberg.hpp"
#include "ergolab/generators.hpp"
#include "oracles.hpp"

using namespace ergolab;

namespace {

Permutation shift(std::size_t n, std::size_t by) {
  std::vector<std::size_t> img(n);
  for (std::size_t x = 0; x < n; ++x) img[x] = (x + by) % n;
  return Permutation(img);
}

FiniteZdSystem cyclic(std::size_t n, std::vector<std::size_t> steps) {
  std::vector<Permutation> g;
  for (auto s : steps) g.push_back(shift(n, s));
  return FiniteZdSystem(ExactProbabilitySpace::uniform(n), g);
}

std::vector<oracle::Perm> perms(const FiniteZdSystem& sys) {
  std::vector<oracle::Perm> out;
  for (auto& g : sys.generators()) out.push_back(g.images());
  return out;
}

}  // namespace

// values frozen from the oracle, which enumerates one full period
TEST(WorkedValues, Z3AndZ4) {
  auto z3 = cyclic(3, {1, 2});
  EXPECT_EQ(oracle::cesaro_limit(perms(z3), z3.space().weights(), {{0}, {0}}), Rational(1, 9));
  EXPECT_EQ(oracle::first_return(perms(z3), z3.space().weights(), {0}), 3u);
  auto cert = recurrence_certificate(z3, {0});
  EXPECT_EQ(cert.limit, Rational(1, 9));
  ASSERT_TRUE(cert.witness_n);
  EXPECT_EQ(*cert.witness_n, 3u);
  EXPECT_EQ(cesaro_limit_scalar(z3, {{0}, {0}}), Rational(1, 9));

  auto z4 = cyclic(4, {1, 2});
  EXPECT_EQ(oracle::furstenberg_mass(perms(z4), z4.space().weights(), {0, 0}), Rational(1, 16));
  auto fj = furstenberg_joining(z4, {0, 1});
  EXPECT_EQ(fj.coupling.mass_of({0, 0}), Rational(1, 16));
  EXPECT_EQ(fj.period, 4u);
}

TEST(Average, Examples) {
  auto z3 = cyclic(3, {1, 2});
  auto ind = SimpleFunction::indicator(3, {0});
  auto avg = nonconventional_average(z3, {ind, ind}, 3);
  EXPECT_EQ(avg.values, (std::vector<Rational>{Rational(1, 3), Rational(0), Rational(0)}));
  auto one = SimpleFunction::constant(3, Rational(1));
  EXPECT_EQ(nonconventional_average(z3, {one, one}, 7), one);
  FiniteZdSystem still(ExactProbabilitySpace::uniform(3), {Permutation::identity(3)});
  SimpleFunction f{{Rational(2), Rational(-1), Rational(1, 2)}};
  EXPECT_EQ(nonconventional_average(still, {f}, 5), f);
  EXPECT_EQ(cesaro_limit_scalar(cyclic(5, {1}), {{1, 3}}), Rational(2, 5));
}

TEST(Limit, MatchesOracleOnRandomSystems) {
  gen::Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    auto sys = gen::random_system(rng, 8, 1 + gen::index(rng, 3), false, true);
    std::vector<IndexSet> sets;
    for (std::size_t i = 0; i < sys.dim(); ++i) sets.push_back(gen::random_subset(rng, sys.size()));
    EXPECT_EQ(cesaro_limit_scalar(sys, sets), oracle::cesaro_limit(perms(sys), sys.space().weights(), sets));
  }
}

TEST(Joining, SpecialCases) {
  auto z5 = cyclic(5, {1, 1});
  auto fj = furstenberg_joining(z5);
  EXPECT_EQ(fj.coupling, Coupling::diagonal(z5.space(), 2));
  auto single = furstenberg_joining(z5, {1});
  EXPECT_EQ(single.coupling.project({0}), Coupling::diagonal(z5.space(), 1));
  EXPECT_THROW(furstenberg_joining(z5, {1, 0}), InvalidInput);
}

TEST(Joining, LemmasOnRandomSystems) {
  gen::Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    auto sys = gen::random_system(rng, 9, 2 + gen::index(rng, 2), false, true);
    auto fj = furstenberg_joining(sys);
    EXPECT_TRUE(check_offdiag_invariance(fj));
    EXPECT_TRUE(check_diagonal_invariance(fj));
    EXPECT_TRUE(check_diag_lemma(fj));
    EXPECT_TRUE(check_project_lemma(fj, {0, 1}));
    EXPECT_TRUE(check_project_lemma(fj, {sys.dim() - 1}));
    // masses agree with the oracle
    for (auto& [tuple, m] : fj.coupling.mass())
      EXPECT_EQ(m, oracle::furstenberg_mass(perms(sys), sys.space().weights(), tuple));
  }
}

TEST(Joining, ObliqueCopiesAgree) {
  FiniteZdSystem y = GroupRotationSystem{{5, 5}, {{1, 0}, {0, 1}, {1, 1}}}.to_system();
  auto fj = furstenberg_joining(y);
  for (std::vector<std::size_t> e : {std::vector<std::size_t>{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}})
    EXPECT_NO_THROW(oblique_copy(fj, e));
  EXPECT_EQ(oblique_factor(y, {0, 1, 2}).num_blocks(), 1u);
  auto same = cyclic(4, {1, 1});
  EXPECT_EQ(oblique_factor(same, {0, 1}), Partition::singletons(4));
}

TEST(Recurrence, Certificates) {
  auto z3 = cyclic(3, {1, 2});
  auto all = recurrence_certificate(z3, {0, 1, 2});
  EXPECT_EQ(all.limit, Rational(1));
  EXPECT_EQ(all.witness_n, 1u);
  auto null = FiniteZdSystem(ExactProbabilitySpace::from_weights({Rational(1), Rational(0)}),
                             {Permutation::identity(2)});
  auto none = recurrence_certificate(null, {1});
  EXPECT_EQ(none.limit, Rational(0));
  EXPECT_FALSE(none.witness_n);

  gen::Rng rng(23);
  for (int t = 0; t < 40; ++t) {
    auto sys = gen::random_system(rng, 10, 2 + gen::index(rng, 2), false, true);
    RecurrenceProfile prof(sys);
    for (int s = 0; s < 10; ++s) {
      IndexSet a = gen::random_subset(rng, sys.size());
      std::uint64_t mask = 0;
      for (auto x : a) mask |= std::uint64_t{1} << x;
      auto c1 = recurrence_certificate(sys, a);
      auto c2 = prof.query(mask);
      EXPECT_EQ(c1.limit, c2.limit);
      EXPECT_EQ(c1.witness_n, c2.witness_n);
      const auto first = oracle::first_return(perms(sys), sys.space().weights(), a);
      EXPECT_EQ(c1.witness_n.value_or(0), first);
    }
  }
}

TEST(Recurrence, Multirec2) {
  auto z3 = cyclic(3, {1, 2});
  EXPECT_TRUE(multirec2_check(z3, {{0}, {1}}));
  EXPECT_TRUE(multirec2_check(z3, {{0, 1, 2}, {0, 1, 2}}));
}

TEST(Vdc, EqualityAndRandom) {
  VectorSequence c{std::vector<std::vector<Rational>>(8, {Rational(1), Rational(2)})};
  auto r = vdc_inequality(c, 4, 2);
  EXPECT_EQ(r.lhs, Rational(5));
  EXPECT_EQ(r.rhs, Rational(5));
  EXPECT_TRUE(r.holds);

  VectorSequence alt;
  for (int i = 0; i < 8; ++i) alt.entries.push_back({Rational(i % 2 ? -1 : 1)});
  auto a = vdc_inequality(alt, 4, 2);
  EXPECT_EQ(a.lhs, Rational(0));
  EXPECT_EQ(a.rhs, Rational(0));

  gen::Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    const std::size_t dim = 1 + gen::index(rng, 3), len = 2 + gen::index(rng, 12);
    VectorSequence s;
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<Rational> v;
      for (std::size_t c2 = 0; c2 < dim; ++c2) v.push_back(gen::random_rational(rng, 5, 4));
      s.entries.push_back(v);
    }
    const std::size_t H = 1 + gen::index(rng, len - 1);
    const std::size_t N = 1 + gen::index(rng, len - H);
    auto res = vdc_inequality(s, N, H);
    auto [lhs, rhs] = oracle::vdc(s.entries, N, H);
    EXPECT_EQ(res.lhs, lhs);
    EXPECT_EQ(res.rhs, rhs);
    EXPECT_TRUE(res.holds);
  }
  EXPECT_THROW(vdc_inequality(c, 7, 2), PreconditionError);
}

TEST(Structure, Predicates) {
  auto z5 = cyclic(5, {1, 2});
  auto rep = fberg_structure_predicates(z5);
  EXPECT_TRUE(rep.clause2.holds);
  EXPECT_EQ(rep.pairs_checked, 0u);
  EXPECT_EQ(structure_upsets(3).size(), 8u);
  FiniteZdSystem y = GroupRotationSystem{{5, 5}, {{1, 0}, {0, 1}, {1, 1}}}.to_system();
  auto r3 = fberg_structure_predicates(y);
  EXPECT_GT(r3.pairs_checked, 0u);
}
