#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ergolab/measure.hpp"
#include "ergolab/upset.hpp"
#include "ergolab/words.hpp"
#include "ergolab/zd_system.hpp"

namespace ergolab {

// Law on K^W, W = words of length 1..depth in length-then-lex order. A configuration
// is a string with one character per word, '0' + (index of the value in `values`).
struct StationaryLawTruncation {
  unsigned k = 2;
  std::size_t depth = 1;
  std::vector<std::string> values;
  std::map<std::string, Rational> mass;

  void validate() const;
  std::vector<Word> coordinates() const;
  std::size_t coordinate_of(const Word& w) const;
};

StationaryLawTruncation iid_law(unsigned k, std::size_t depth, const ExactProbabilitySpace& nu);

struct StationarityWitness {
  std::size_t dim = 0;
  std::vector<Word> first;   // images of [k]^dim under the reference subspace
  std::vector<Word> second;  // images under a subspace with a different pullback law
};

struct StationarityResult {
  bool holds = true;
  std::optional<StationarityWitness> witness;
  std::size_t subspaces_checked = 0;
};

StationarityResult strong_stationarity_check(const StationaryLawTruncation& law, std::size_t dim_cap);

struct LawMarginals {
  ExactProbabilitySpace point;  // on K
  Coupling line;                // arity k, every marginal = point
  std::size_t lines_compared = 0;
};

LawMarginals marginals(const StationaryLawTruncation& law);

// e is a set of letters (1-based)
Partition insensitive_algebra(const LawMarginals& m, const std::vector<unsigned>& e);

struct LineStructureReport {
  JoiningCheck line1;
  JoiningCheck line2;
  std::optional<std::pair<UpSet, UpSet>> line2_pair;
  bool infdhj2 = true;
  std::vector<IndexSet> infdhj2_witness;
  std::size_t tuples_checked = 0;
};

LineStructureReport line_structure_predicates(const StationaryLawTruncation& law);

struct CorrespondenceMeasure {
  unsigned k = 2;
  std::size_t L = 1;
  std::map<std::string, Rational> mass;  // configs over [k]^L in lex order, chars '0'/'1'

  Rational point_event(std::size_t w) const;
  Rational line_event(const std::vector<std::size_t>& points) const;
};

CorrespondenceMeasure build_correspondence(const IndexSet& a, unsigned k, std::size_t N, std::size_t L);
// point events equal d(A_w) and line events equal d(cap A_phi(i)) for every line
bool correspondence_identities(const CorrespondenceMeasure& mu, const IndexSet& a, std::size_t N);
bool check_inf_dhj_premises(const CorrespondenceMeasure& mu, const Rational& delta);
bool check_inf_dhj_premises(const StationaryLawTruncation& law, const Rational& delta);
// a correspondence measure with L = 1 is a depth-1 law with values {0,1}
StationaryLawTruncation law_from_correspondence(const CorrespondenceMeasure& mu);

}  // namespace ergolab
