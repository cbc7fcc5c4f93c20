#include "ergolab/zd_system.hpp"

#include <numeric>

#include "ergolab/errors.hpp"

namespace ergolab {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

FiniteZdSystem::FiniteZdSystem(ExactProbabilitySpace space, std::vector<Permutation> generators)
    : space_(std::move(space)), gens_(std::move(generators)) {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].size() != space_.size())
      throw DimensionMismatch("generator " + std::to_string(i) + " acts on " +
                              std::to_string(gens_[i].size()) + " points, space has " +
                              std::to_string(space_.size()));
    for (std::size_t x = 0; x < space_.size(); ++x)
      if (space_.weight(gens_[i](x)) != space_.weight(x))
        throw InvalidInput("generator " + std::to_string(i) + " does not preserve the weight of point " +
                           std::to_string(x));
  }
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (gens_[i] * gens_[j] != gens_[j] * gens_[i])
        throw InvalidInput("generators " + std::to_string(i) + " and " + std::to_string(j) +
                           " do not commute");
}

IntVector unit_vector(std::size_t dim, std::size_t i) {
  IntVector v(dim, 0);
  v.at(i) = 1;
  return v;
}

Permutation act(const FiniteZdSystem& sys, const IntVector& n) {
  if (n.size() != sys.dim())
    throw DimensionMismatch("vector has length " + std::to_string(n.size()) + ", system has dim " +
                            std::to_string(sys.dim()));
  Permutation p = Permutation::identity(sys.size());
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] != 0) p = p * sys.generator(i).power(n[i]);
  return p;
}

FactorMap::FactorMap(FiniteZdSystem source, FiniteZdSystem target, PointMap map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (map_.size() != source_.size()) throw DimensionMismatch("factor map has the wrong length");
  if (source_.dim() != target_.dim()) throw DimensionMismatch("factor map between different dims");
  if (pushforward(source_.space(), map_, target_.size()) != target_.space().weights())
    throw InvalidInput("factor map does not push the source measure onto the target measure");
  for (std::size_t i = 0; i < source_.dim(); ++i)
    for (auto x : source_.space().support())
      if (map_[source_.generator(i)(x)] != target_.generator(i)(map_[x]))
        throw InvalidInput("factor map is not equivariant for generator " + std::to_string(i) +
                           " at point " + std::to_string(x));
}

Partition invariant_factor(const FiniteZdSystem& sys, const SubgroupSpec& lambda) {
  UnionFind uf(sys.size());
  for (auto& v : lambda.vectors) {
    Permutation p = act(sys, v);
    for (std::size_t x = 0; x < sys.size(); ++x)
      if (sys.space().in_support(x)) uf.unite(x, p(x));
  }
  std::vector<std::size_t> l(sys.size());
  for (std::size_t x = 0; x < sys.size(); ++x) l[x] = uf.find(x);
  return Partition::from_labels(l);
}

Partition maximal_partially_trivial_factor(const FiniteZdSystem& sys, const SubgroupSpec& lambda) {
  return invariant_factor(sys, lambda);
}

bool acts_trivially(const FiniteZdSystem& sys, const SubgroupSpec& lambda) {
  for (auto& v : lambda.vectors) {
    Permutation p = act(sys, v);
    for (auto x : sys.space().support())
      if (p(x) != x) return false;
  }
  return true;
}

bool is_invariant_ae(const FiniteZdSystem& sys, const Partition& p, const IntVector& v) {
  Permutation t = act(sys, v);
  for (auto x : sys.space().support())
    if (p.block_of(t(x)) != p.block_of(x)) return false;
  return true;
}

FactorMap quotient_map(const FiniteZdSystem& sys, const Partition& p) {
  if (p.num_points() != sys.size()) throw DimensionMismatch("partition does not live on the system");
  std::vector<std::string> labels;
  std::vector<Rational> weights;
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    labels.push_back(std::to_string(b));
    weights.push_back(sys.space().measure(p.block(b)));
  }
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    std::vector<std::size_t> img(p.num_blocks());
    for (std::size_t b = 0; b < p.num_blocks(); ++b) {
      img[b] = p.block_of(sys.generator(i)(p.block(b).front()));
      for (auto x : p.block(b))
        if (p.block_of(sys.generator(i)(x)) != img[b])
          throw PreconditionError("generator " + std::to_string(i) + " does not permute the blocks");
    }
    gens.emplace_back(std::move(img));
  }
  FiniteZdSystem target(ExactProbabilitySpace(std::move(labels), std::move(weights)), std::move(gens));
  return FactorMap(sys, std::move(target), p.labels());
}

}  // namespace ergolab
