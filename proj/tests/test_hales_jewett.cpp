#include <gtest/gtest.h>

#include <set>

#include "ergolab/errors.hpp"
#include "ergolab/line_search.hpp"
#include "ergolab/stationary.hpp"
#include "ergolab/words.hpp"
#include "oracles.hpp"

using namespace ergolab;

namespace {

std::set<std::vector<std::string>> as_word_sets(const std::vector<Line>& ls, unsigned k, std::size_t N) {
  std::set<std::vector<std::string>> out;
  for (auto& l : ls) {
    std::vector<std::string> w;
    for (auto i : l) w.push_back(word_from_index(i, k, N));
    out.insert(w);
  }
  return out;
}

StationaryLawTruncation point_law(unsigned k, std::size_t depth, const std::string& cfg_char) {
  StationaryLawTruncation law{k, depth, {"a", "b"}, {}};
  law.mass[std::string(law.coordinates().size(), cfg_char[0])] = Rational(1);
  return law;
}

}  // namespace

TEST(Words, IndexingAndValidation) {
  EXPECT_EQ(word_index("121", 2), 2u);
  EXPECT_EQ(word_from_index(5, 3, 2), "23");
  EXPECT_EQ(all_words(2, 2), (std::vector<Word>{"11", "12", "21", "22"}));
  EXPECT_THROW(validate_word("13", 2), InvalidInput);
  EXPECT_THROW(validate_alphabet(10), InvalidInput);
  EXPECT_EQ(letter_replace({1, 2}, 2, "1213"), "2223");
  EXPECT_EQ(letter_replace({}, 2, "1213"), "1213");
  for (auto& w : all_words(3, 4)) EXPECT_EQ(letter_replace({1, 3}, 1, letter_replace({1, 3}, 1, w)), letter_replace({1, 3}, 1, w));
}

TEST(Subspace, Embedding) {
  CombinatorialSubspace diag{{2}, {{1, 2}}, "11"};
  EXPECT_EQ(subspace_image(diag, 3), (std::vector<Word>{"11", "22", "33"}));
  CombinatorialSubspace s{{3}, {{2}}, "121"};
  EXPECT_EQ(subspace_embed(s, "1"), "111");
  EXPECT_EQ(subspace_embed(s, "2"), "121");
  CombinatorialSubspace bad{{2}, {{3}}, "11"};
  EXPECT_THROW(bad.validate(2), InvalidInput);
  for (auto& sub : enumerate_subspaces(2, 2, 4)) {
    auto img = subspace_image(sub, 2);
    EXPECT_EQ(std::set<Word>(img.begin(), img.end()).size(), img.size());
  }
}

TEST(Lines, CountsMatchBruteForce) {
  EXPECT_EQ(enumerate_lines(2, 1).size(), 1u);
  EXPECT_EQ(enumerate_lines(2, 2).size(), 5u);
  EXPECT_EQ(enumerate_lines(3, 2).size(), 7u);
  for (unsigned k = 1; k <= 3; ++k)
    for (std::size_t N = 1; N <= 4; ++N) {
      auto ls = enumerate_lines(k, N);
      EXPECT_EQ(ls.size(), ipow(k + 1, N) - ipow(k, N));
      if (k == 1) continue;
      auto mine = as_word_sets(ls, k, N);
      auto ref = oracle::lines(k, N);
      EXPECT_EQ(mine, std::set<std::vector<std::string>>(ref.begin(), ref.end()));
    }
  EXPECT_EQ(enumerate_subspaces(3, 1, 3).size(), enumerate_lines(3, 3).size());
}

TEST(MaxLineFree, SmallCasesAgainstBruteForce) {
  EXPECT_EQ(oracle::max_line_free_bruteforce(2, 3), 3u);
  EXPECT_EQ(oracle::max_line_free_bruteforce(3, 2), 6u);
  EXPECT_EQ(oracle::max_line_free_bruteforce(2, 4), 6u);
  for (auto [k, N] : std::vector<std::pair<unsigned, std::size_t>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}}) {
    auto r = max_line_free(k, N);
    EXPECT_TRUE(r.exhaustive);
    EXPECT_EQ(r.size, oracle::max_line_free_bruteforce(k, N));
    EXPECT_EQ(r.set.size(), r.size);
    EXPECT_FALSE(contains_line(r.set, k, N));
  }
  auto r = max_line_free(2, 3);
  EXPECT_EQ(r.set, (IndexSet{1, 2, 4}));  // 112, 121, 211
  auto cut = max_line_free(3, 3, 10);
  EXPECT_FALSE(cut.exhaustive);
}

TEST(Forcing, Thresholds) {
  auto a = subspace_forcing_check(2, 1, 3);
  EXPECT_TRUE(a.holds);
  EXPECT_EQ(a.sets_checked, 9u);
  auto b = subspace_forcing_check(2, 1, 2);
  EXPECT_TRUE(b.holds);
  EXPECT_EQ(b.sets_checked, 1u);
  auto c = subspace_forcing_check(3, 1, 2);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.sets_checked, 1u);
}

TEST(Correspondence, TwoWordExample) {
  auto a = IndexSet{word_index("12", 2), word_index("21", 2)};
  auto mu = build_correspondence(a, 2, 2, 1);
  EXPECT_EQ(mu.mass, (std::map<std::string, Rational>{{"01", Rational(1, 2)}, {"10", Rational(1, 2)}}));
  EXPECT_EQ(mu.mass, oracle::correspondence({"12", "21"}, 2, 2, 1));
  EXPECT_EQ(mu.point_event(0), Rational(1, 2));
  EXPECT_EQ(mu.point_event(1), Rational(1, 2));
  EXPECT_EQ(mu.line_event({0, 1}), Rational(0));
  EXPECT_TRUE(correspondence_identities(mu, a, 2));
  EXPECT_TRUE(check_inf_dhj_premises(mu, Rational(1, 2)));
  EXPECT_FALSE(check_inf_dhj_premises(mu, Rational(3, 4)));

  auto full = build_correspondence({0, 1, 2, 3}, 2, 2, 1);
  EXPECT_EQ(full.mass, (std::map<std::string, Rational>{{"11", Rational(1)}}));
  EXPECT_TRUE(check_inf_dhj_premises(full, Rational(1)));
  auto empty = build_correspondence({}, 2, 2, 1);
  EXPECT_EQ(empty.mass, (std::map<std::string, Rational>{{"00", Rational(1)}}));
  EXPECT_THROW(build_correspondence({}, 2, 2, 2), PreconditionError);
}

TEST(Correspondence, AllLineFreeSetsOfLengthThree) {
  std::size_t count = 0;
  for (std::uint32_t m = 0; m < 256; ++m) {
    IndexSet a;
    std::vector<std::string> words;
    for (std::size_t i = 0; i < 8; ++i)
      if ((m >> i) & 1U) {
        a.push_back(i);
        words.push_back(word_from_index(i, 2, 3));
      }
    if (contains_line(a, 2, 3)) continue;
    ++count;
    for (std::size_t L : {1u, 2u}) {
      auto mu = build_correspondence(a, 2, 3, L);
      EXPECT_EQ(mu.mass, oracle::correspondence(words, 2, 3, L));
      EXPECT_TRUE(correspondence_identities(mu, a, 3));
    }
  }
  EXPECT_GT(count, 0u);
}

TEST(Stationarity, IidAndPointMasses) {
  auto nu = ExactProbabilitySpace::from_weights({Rational(1, 3), Rational(2, 3)});
  auto law = iid_law(2, 2, nu);
  EXPECT_EQ(law.coordinates().size(), 6u);
  auto st = strong_stationarity_check(law, 2);
  EXPECT_TRUE(st.holds);
  EXPECT_GT(st.subspaces_checked, 0u);
  auto m = marginals(law);
  EXPECT_EQ(m.point.weights(), nu.weights());
  EXPECT_EQ(m.line, Coupling::product({nu, nu}));
  EXPECT_GE(m.lines_compared, 3u);

  EXPECT_TRUE(strong_stationarity_check(point_law(2, 2, "0"), 2).holds);
  auto diag = marginals(point_law(3, 2, "1"));
  EXPECT_EQ(diag.line.mass().size(), 1u);
  EXPECT_EQ(diag.line.mass_of({1, 1, 1}), Rational(1));

  // value a on words of length 1, value b on words of length 2
  StationaryLawTruncation split{2, 2, {"a", "b"}, {{"001111", Rational(1)}}};
  auto bad = strong_stationarity_check(split, 1);
  ASSERT_FALSE(bad.holds);
  EXPECT_EQ(bad.witness->dim, 0u);
  EXPECT_THROW(marginals(split), PreconditionError);
  EXPECT_THROW(strong_stationarity_check(split, 3), PreconditionError);
}

TEST(Stationarity, MixtureIsChoiceIndependent) {
  auto p = iid_law(2, 2, ExactProbabilitySpace::from_weights({Rational(1, 4), Rational(3, 4)}));
  auto q = iid_law(2, 2, ExactProbabilitySpace::from_weights({Rational(1, 2), Rational(1, 2)}));
  StationaryLawTruncation mix{2, 2, p.values, {}};
  for (auto& [c, w] : p.mass) mix.mass[c] += w * Rational(1, 2);
  for (auto& [c, w] : q.mass) mix.mass[c] += w * Rational(1, 2);
  EXPECT_TRUE(strong_stationarity_check(mix, 2).holds);
  auto m = marginals(mix);
  EXPECT_GE(m.lines_compared, 3u);
  EXPECT_EQ(m.line.mass_of({1, 1}), Rational(9, 32) + Rational(1, 8));
}

TEST(InsensitiveAlgebra, Characterizations) {
  auto iid = marginals(iid_law(3, 1, ExactProbabilitySpace::uniform(2)));
  EXPECT_EQ(insensitive_algebra(iid, {1, 2}), Partition::trivial(2));
  EXPECT_EQ(insensitive_algebra(iid, {2}), Partition::singletons(2));
  auto diag = marginals(point_law(3, 1, "1"));
  EXPECT_EQ(insensitive_algebra(diag, {1, 2, 3}), Partition::singletons(2));
  EXPECT_THROW(insensitive_algebra(iid, {4}), InvalidInput);
}

TEST(LineStructure, Reports) {
  auto iid = line_structure_predicates(iid_law(2, 2, ExactProbabilitySpace::uniform(2)));
  EXPECT_TRUE(iid.line1.holds);
  EXPECT_TRUE(iid.line2.holds);
  EXPECT_TRUE(iid.infdhj2);

  auto diag = line_structure_predicates(point_law(3, 1, "1"));
  EXPECT_TRUE(diag.line1.holds);
  EXPECT_TRUE(diag.line2.holds);
  EXPECT_TRUE(diag.infdhj2);

  auto a = IndexSet{word_index("12", 2), word_index("21", 2)};
  auto law = law_from_correspondence(build_correspondence(a, 2, 2, 1));
  EXPECT_TRUE(check_inf_dhj_premises(law, Rational(1, 2)));
  auto rep = line_structure_predicates(law);
  EXPECT_FALSE(rep.line1.holds);
  EXPECT_FALSE(rep.infdhj2);
  EXPECT_GT(rep.tuples_checked, 0u);
}
