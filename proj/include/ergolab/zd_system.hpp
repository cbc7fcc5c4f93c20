#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ergolab/measure.hpp"
#include "ergolab/permutation.hpp"

namespace ergolab {

using IntVector = std::vector<long>;

// Finite probability space with D commuting weight-preserving permutations.
class FiniteZdSystem {
 public:
  FiniteZdSystem() = default;
  FiniteZdSystem(ExactProbabilitySpace space, std::vector<Permutation> generators);

  const ExactProbabilitySpace& space() const { return space_; }
  std::size_t dim() const { return gens_.size(); }
  std::size_t size() const { return space_.size(); }
  const Permutation& generator(std::size_t i) const { return gens_.at(i); }
  const std::vector<Permutation>& generators() const { return gens_; }

  friend bool operator==(const FiniteZdSystem&, const FiniteZdSystem&) = default;

 private:
  ExactProbabilitySpace space_;
  std::vector<Permutation> gens_;
};

Permutation act(const FiniteZdSystem& sys, const IntVector& n);
IntVector unit_vector(std::size_t dim, std::size_t i);

struct SubgroupSpec {
  std::vector<IntVector> vectors;

  static SubgroupSpec generated_by(std::vector<IntVector> v) { return {std::move(v)}; }
  static SubgroupSpec basis(std::size_t dim, std::size_t i) { return {{unit_vector(dim, i)}}; }
  friend SubgroupSpec operator+(SubgroupSpec a, const SubgroupSpec& b) {
    a.vectors.insert(a.vectors.end(), b.vectors.begin(), b.vectors.end());
    return a;
  }
};

class FactorMap {
 public:
  FactorMap(FiniteZdSystem source, FiniteZdSystem target, PointMap map);

  const FiniteZdSystem& source() const { return source_; }
  const FiniteZdSystem& target() const { return target_; }
  const PointMap& map() const { return map_; }

 private:
  FiniteZdSystem source_;
  FiniteZdSystem target_;
  PointMap map_;
};

// Orbits of the subaction on the support; null points stay singletons.
Partition invariant_factor(const FiniteZdSystem& sys, const SubgroupSpec& lambda);
Partition maximal_partially_trivial_factor(const FiniteZdSystem& sys, const SubgroupSpec& lambda);
bool acts_trivially(const FiniteZdSystem& sys, const SubgroupSpec& lambda);
bool is_invariant_ae(const FiniteZdSystem& sys, const Partition& p, const IntVector& v);

// Factor onto the quotient by a partition whose blocks the action permutes.
FactorMap quotient_map(const FiniteZdSystem& sys, const Partition& p);

struct GroupRotationSystem {
  std::vector<long> orders;      // U = Z_{n_1} x ... x Z_{n_r}
  std::vector<IntVector> phi;    // phi[i] = image of e_i in U

  void validate() const;
  std::size_t dim() const { return phi.size(); }
  std::size_t group_size() const;
  std::size_t index_of(const IntVector& u) const;
  IntVector element(std::size_t index) const;
  IntVector add(const IntVector& a, const IntVector& b) const;
  FiniteZdSystem to_system() const;
};

bool generates_group(const GroupRotationSystem& rot);
std::vector<IntVector> cyclic_subgroup(const GroupRotationSystem& rot, const IntVector& g);
long element_order(const GroupRotationSystem& rot, const IntVector& g);

struct RotationExtension {
  GroupRotationSystem system;
  FactorMap factor;
};

// U~ = (+)_i <phi(e_i)>, phi~(e_i) = i-th unit, factor map = sum.
RotationExtension direct_sum_extension(const GroupRotationSystem& rot);
RotationExtension rotation_extension(const GroupRotationSystem& rot);
bool class_membership_Z0join(const GroupRotationSystem& rot);

std::vector<long> smith_normal_form(std::vector<IntVector> rows);
bool is_direct_sum_decomposition(const std::vector<SubgroupSpec>& parts, std::size_t dim);

struct JoiningCheck {
  bool holds = true;
  std::optional<RelIndWitness> witness;
};

JoiningCheck two_fold_joining_check(const FiniteZdSystem& joining, const FactorMap& pi1,
                                    const FactorMap& pi2, const SubgroupSpec& g1,
                                    const SubgroupSpec& g2);

struct JointDistributionReport {
  bool holds = true;
  std::vector<JoiningCheck> per_coordinate;
};

JointDistributionReport joint_distribution_predicate(const FiniteZdSystem& joining,
                                                     const std::vector<FactorMap>& maps,
                                                     const std::vector<SubgroupSpec>& gammas,
                                                     const SubgroupSpec& lambda);

}  // namespace ergolab
