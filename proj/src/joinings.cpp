#include "ergolab/errors.hpp"
#include "ergolab/zd_system.hpp"

namespace ergolab {

static void require_source(const FiniteZdSystem& joining, const FactorMap& pi, std::size_t i) {
  if (!(pi.source() == joining))
    throw PreconditionError("factor map " + std::to_string(i) + " does not start at the joining");
}

JoiningCheck two_fold_joining_check(const FiniteZdSystem& joining, const FactorMap& pi1,
                                    const FactorMap& pi2, const SubgroupSpec& g1,
                                    const SubgroupSpec& g2) {
  require_source(joining, pi1, 0);
  require_source(joining, pi2, 1);
  if (!acts_trivially(pi1.target(), g1))
    throw PreconditionError("first target is not trivial under its subgroup");
  if (!acts_trivially(pi2.target(), g2))
    throw PreconditionError("second target is not trivial under its subgroup");
  const SubgroupSpec both = g1 + g2;
  std::vector<Partition> factors{Partition::from_labels(pi1.map()), Partition::from_labels(pi2.map())};
  std::vector<Partition> subs{invariant_factor(pi1.target(), both).pullback(pi1.map()),
                              invariant_factor(pi2.target(), both).pullback(pi2.map())};
  auto r = relative_independence(factors, subs, joining.space());
  return JoiningCheck{r.independent, r.witness};
}

JointDistributionReport joint_distribution_predicate(const FiniteZdSystem& joining,
                                                     const std::vector<FactorMap>& maps,
                                                     const std::vector<SubgroupSpec>& gammas,
                                                     const SubgroupSpec& lambda) {
  const std::size_t r = maps.size();
  if (gammas.size() != r) throw DimensionMismatch("need one subgroup per factor map");
  std::vector<SubgroupSpec> parts = gammas;
  parts.push_back(lambda);
  if (!is_direct_sum_decomposition(parts, joining.dim()))
    throw PreconditionError("the subgroups do not form a direct sum decomposition");
  for (std::size_t i = 0; i < r; ++i) {
    require_source(joining, maps[i], i);
    if (!acts_trivially(maps[i].target(), gammas[i]))
      throw PreconditionError("target " + std::to_string(i) + " is not trivial under its subgroup");
  }
  std::vector<Partition> factors;
  for (auto& m : maps) factors.push_back(Partition::from_labels(m.map()));

  JointDistributionReport rep;
  for (std::size_t i = 0; i < r; ++i) {
    const auto& xi = maps[i].target();
    Partition sub = Partition::trivial(xi.size());
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) sub = sub.common_refinement(invariant_factor(xi, gammas[i] + gammas[j]));
    std::vector<Partition> subs = factors;
    subs[i] = sub.pullback(maps[i].map());
    auto res = relative_independence(factors, subs, joining.space());
    rep.per_coordinate.push_back(JoiningCheck{res.independent, res.witness});
    rep.holds = rep.holds && res.independent;
  }
  return rep;
}

}  // namespace ergolab
