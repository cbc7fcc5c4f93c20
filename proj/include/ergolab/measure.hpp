#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ergolab/rational.hpp"

namespace ergolab {

using IndexSet = std::vector<std::size_t>;  // sorted, no duplicates
using Tuple = std::vector<std::size_t>;
using PointMap = std::vector<std::size_t>;

struct SimpleFunction {
  std::vector<Rational> values;

  std::size_t size() const { return values.size(); }
  const Rational& operator[](std::size_t i) const { return values[i]; }
  static SimpleFunction constant(std::size_t n, const Rational& c) {
    return {std::vector<Rational>(n, c)};
  }
  static SimpleFunction indicator(std::size_t n, const IndexSet& set);
  friend bool operator==(const SimpleFunction&, const SimpleFunction&) = default;
};

class ExactProbabilitySpace {
 public:
  ExactProbabilitySpace() = default;
  ExactProbabilitySpace(std::vector<std::string> labels, std::vector<Rational> weights);

  static ExactProbabilitySpace uniform(std::size_t n);
  static ExactProbabilitySpace from_weights(std::vector<Rational> weights);

  std::size_t size() const { return weights_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(std::size_t i) const { return weights_.at(i); }
  bool in_support(std::size_t i) const { return weights_.at(i).sign() > 0; }
  IndexSet support() const;

  Rational measure(const IndexSet& set) const;
  Rational integral(const SimpleFunction& f) const;

  friend bool operator==(const ExactProbabilitySpace&, const ExactProbabilitySpace&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<Rational> weights_;
};

// A sigma-algebra on a finite space, stored by its atoms. Blocks are sorted
// internally and ordered by their least element.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<IndexSet> blocks, std::size_t num_points);

  static Partition from_labels(const std::vector<std::size_t>& labels);
  static Partition singletons(std::size_t n);
  static Partition trivial(std::size_t n);

  std::size_t num_points() const { return block_of_.size(); }
  std::size_t num_blocks() const { return blocks_.size(); }
  const std::vector<IndexSet>& blocks() const { return blocks_; }
  const IndexSet& block(std::size_t b) const { return blocks_.at(b); }
  std::size_t block_of(std::size_t point) const { return block_of_.at(point); }
  const std::vector<std::size_t>& labels() const { return block_of_; }

  // every block of *this lies inside a block of coarser
  bool refines(const Partition& coarser) const;
  bool refines_on(const Partition& coarser, const ExactProbabilitySpace& space) const;
  Partition common_refinement(const Partition& other) const;
  // partition of the source space into preimages of blocks
  Partition pullback(const PointMap& map) const;
  bool is_union_of_blocks(const IndexSet& set) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<IndexSet> blocks_;
  std::vector<std::size_t> block_of_;
};

Partition join(const std::vector<Partition>& parts, std::size_t num_points);

// A measure on a product of finite spaces, stored sparsely (positive mass only).
class Coupling {
 public:
  Coupling() = default;
  Coupling(std::vector<ExactProbabilitySpace> marginals, std::map<Tuple, Rational> mass);

  static Coupling on_base(const ExactProbabilitySpace& base, std::size_t arity,
                          std::map<Tuple, Rational> mass);
  static Coupling diagonal(const ExactProbabilitySpace& base, std::size_t arity);
  static Coupling product(const std::vector<ExactProbabilitySpace>& spaces);

  std::size_t arity() const { return marginals_.size(); }
  const ExactProbabilitySpace& marginal(std::size_t i) const { return marginals_.at(i); }
  const std::vector<ExactProbabilitySpace>& marginals() const { return marginals_; }
  const std::map<Tuple, Rational>& mass() const { return mass_; }
  Rational mass_of(const Tuple& t) const;

  Coupling project(const std::vector<std::size_t>& coords) const;
  Rational product_mass(const std::vector<IndexSet>& sets) const;
  Rational integral(const std::vector<SimpleFunction>& fs) const;

  // the support tuples in lexicographic order, as a probability space
  ExactProbabilitySpace support_space() const;
  const std::vector<Tuple>& support_tuples() const { return tuples_; }
  Partition coordinate_pullback(std::size_t coord, const Partition& p) const;

  friend bool operator==(const Coupling& a, const Coupling& b) {
    return a.marginals_ == b.marginals_ && a.mass_ == b.mass_;
  }

 private:
  std::vector<ExactProbabilitySpace> marginals_;
  std::map<Tuple, Rational> mass_;
  std::vector<Tuple> tuples_;
};

SimpleFunction conditional_expectation(const SimpleFunction& f, const Partition& p,
                                       const ExactProbabilitySpace& mu);

struct RelIndWitness {
  std::vector<std::size_t> blocks;  // one block index per factor
  Rational lhs;                     // mass of the block tuple
  Rational rhs;                     // integral of the product of conditional expectations
};

struct RelIndResult {
  bool independent = true;
  std::optional<RelIndWitness> witness;
};

// All factors live on the same space.
RelIndResult relative_independence(const std::vector<Partition>& factors,
                                   const std::vector<Partition>& subfactors,
                                   const ExactProbabilitySpace& space);

// Factor i and subfactor i live on coordinate i of the coupling.
RelIndResult relative_independence(const std::vector<Partition>& factors,
                                   const std::vector<Partition>& subfactors,
                                   const Coupling& nu);

Coupling relatively_independent_product(const std::vector<ExactProbabilitySpace>& spaces,
                                        const std::vector<PointMap>& maps);

bool ae_equal(const Partition& p, const Partition& q, const ExactProbabilitySpace& mu);

std::vector<Rational> pushforward(const ExactProbabilitySpace& mu, const PointMap& map,
                                  std::size_t target_size);

}  // namespace ergolab
