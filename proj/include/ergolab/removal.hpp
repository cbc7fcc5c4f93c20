#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ergolab/measure.hpp"
#include "ergolab/upset.hpp"

namespace ergolab {

struct FamilyMember {
  UpSet family;  // I_{i,j}
  IndexSet set;  // A_{i,j}
};

struct RemovalInstance {
  ExactProbabilitySpace space;
  Coupling lambda;                                // arity d, every marginal = space
  std::map<Mask, Partition> psi;                  // e -> Psi_e for every |e| >= 2
  std::vector<std::vector<FamilyMember>> families;  // families[i][j]

  unsigned d() const { return static_cast<unsigned>(lambda.arity()); }
  void validate() const;
  // join of psi(e) over e in I
  Partition algebra(const UpSet& family) const;
};

struct HypothesisReport {
  bool i = true;
  bool ii = true;
  bool iii = true;
  std::string witness_i;
  std::string witness_ii;
  std::string witness_iii;
  std::optional<RelIndWitness> relind_witness;
  bool all() const { return i && ii && iii; }
};

// the up-set pairs quantified over in hypothesis [iii]
std::vector<UpSet> hypothesis_upsets(unsigned d);
// up-sets I with [d] in I and I inside <i>
std::vector<UpSet> admissible_families(unsigned d, unsigned i);

HypothesisReport check_hypotheses(const RemovalInstance& inst);

struct ConclusionResult {
  bool holds = true;
  Rational product_mass;       // lambda(prod_i cap_j A_{i,j})
  Rational intersection_mass;  // mu(cap_{i,j} A_{i,j})
};

ConclusionResult check_conclusion(const RemovalInstance& inst);
// evaluates the implication without checking hypotheses
ConclusionResult evaluate_conclusion(const RemovalInstance& inst);

struct SearchConfig {
  std::size_t space_size = 2;
  unsigned d = 3;
  std::string mode = "exhaustive";  // or "random"
  std::vector<std::string> generators{"diagonal", "product", "fiber", "furstenberg"};
  std::uint64_t seed = 0;
  std::size_t samples = 1000;       // valid instances wanted in random mode
  std::uint64_t budget = 50'000'000;  // instances examined before giving up
};

struct SearchResult {
  std::optional<RemovalInstance> counterexample;
  std::uint64_t examined = 0;   // instances that passed the hypotheses
  std::uint64_t excluded = 0;   // candidates rejected by a hypothesis
  std::uint64_t couplings = 0;
  bool exhaustive = true;
};

SearchResult search_counterexample(const SearchConfig& config);

struct LiftingReport {
  bool duplicate_merge = true;
  bool level_set = true;
  bool threshold = true;
  std::size_t instances = 0;
  std::string detail;
  bool all() const { return duplicate_merge && level_set && threshold; }
};

LiftingReport lifting_scenario_tests(std::uint64_t seed = 1, std::size_t instances = 50);

// level set {E(1_A | xi) > t}
IndexSet level_set(const IndexSet& a, const Partition& xi, const ExactProbabilitySpace& mu,
                   const Rational& t = Rational(0));
// finest partition whose pullbacks through coordinates in e agree on the support of lambda
Partition insensitive_partition(const Coupling& lambda, Mask e);

}  // namespace ergolab
