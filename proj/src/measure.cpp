#include "ergolab/measure.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "ergolab/errors.hpp"

namespace ergolab {

namespace {

std::string tuple_label(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

// Calls fn(choice) for every element of the cartesian product of lists.
template <class Item, class Fn>
void for_each_product(const std::vector<const std::vector<Item>*>& lists, Fn&& fn) {
  const std::size_t k = lists.size();
  for (auto* l : lists)
    if (l->empty()) return;
  std::vector<std::size_t> pos(k, 0);
  while (true) {
    fn(pos);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++pos[i] < lists[i]->size()) break;
      pos[i] = 0;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

}  // namespace

SimpleFunction SimpleFunction::indicator(std::size_t n, const IndexSet& set) {
  SimpleFunction f = constant(n, Rational(0));
  for (auto i : set) f.values.at(i) = Rational(1);
  return f;
}

ExactProbabilitySpace::ExactProbabilitySpace(std::vector<std::string> labels,
                                             std::vector<Rational> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
  if (labels_.size() != weights_.size())
    throw DimensionMismatch("space has " + std::to_string(labels_.size()) + " labels but " +
                            std::to_string(weights_.size()) + " weights");
  if (weights_.empty()) throw InvalidInput("space has no points");
  Rational total;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i].sign() < 0)
      throw InvalidInput("weight " + std::to_string(i) + " is negative: " + weights_[i].to_string());
    total += weights_[i];
  }
  if (total != Rational(1)) throw InvalidInput("weights sum to " + total.to_string() + ", not 1/1");
  std::set<std::string> seen;
  for (auto& l : labels_)
    if (!seen.insert(l).second) throw InvalidInput("duplicate point label \"" + l + "\"");
}

ExactProbabilitySpace ExactProbabilitySpace::uniform(std::size_t n) {
  return from_weights(std::vector<Rational>(n, Rational(1, static_cast<long>(n))));
}

ExactProbabilitySpace ExactProbabilitySpace::from_weights(std::vector<Rational> weights) {
  std::vector<std::string> labels(weights.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = std::to_string(i);
  return ExactProbabilitySpace(std::move(labels), std::move(weights));
}

IndexSet ExactProbabilitySpace::support() const {
  IndexSet s;
  for (std::size_t i = 0; i < size(); ++i)
    if (in_support(i)) s.push_back(i);
  return s;
}

Rational ExactProbabilitySpace::measure(const IndexSet& set) const {
  Rational r;
  for (auto i : set) r += weights_.at(i);
  return r;
}

Rational ExactProbabilitySpace::integral(const SimpleFunction& f) const {
  if (f.size() != size()) throw DimensionMismatch("function length does not match space size");
  Rational r;
  for (std::size_t i = 0; i < size(); ++i)
    if (in_support(i)) r += weights_[i] * f.values[i];
  return r;
}

Partition::Partition(std::vector<IndexSet> blocks, std::size_t num_points) {
  std::vector<std::size_t> label(num_points, num_points);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw InvalidInput("partition block " + std::to_string(b) + " is empty");
    for (auto x : blocks[b]) {
      if (x >= num_points)
        throw InvalidInput("partition block " + std::to_string(b) + " has index " +
                           std::to_string(x) + " out of range");
      if (label[x] != num_points)
        throw InvalidInput("partition blocks overlap at index " + std::to_string(x));
      label[x] = b;
    }
  }
  for (std::size_t x = 0; x < num_points; ++x)
    if (label[x] == num_points)
      throw InvalidInput("partition does not cover index " + std::to_string(x));
  *this = from_labels(label);
}

Partition Partition::from_labels(const std::vector<std::size_t>& labels) {
  Partition p;
  std::unordered_map<std::size_t, std::size_t> remap;
  p.block_of_.resize(labels.size());
  for (std::size_t x = 0; x < labels.size(); ++x) {
    auto [it, fresh] = remap.emplace(labels[x], p.blocks_.size());
    if (fresh) p.blocks_.emplace_back();
    p.blocks_[it->second].push_back(x);
    p.block_of_[x] = it->second;
  }
  return p;
}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::size_t> l(n);
  std::iota(l.begin(), l.end(), 0);
  return from_labels(l);
}

Partition Partition::trivial(std::size_t n) { return from_labels(std::vector<std::size_t>(n, 0)); }

bool Partition::refines(const Partition& coarser) const {
  if (coarser.num_points() != num_points()) throw DimensionMismatch("partition sizes differ");
  for (auto& b : blocks_)
    for (auto x : b)
      if (coarser.block_of(x) != coarser.block_of(b.front())) return false;
  return true;
}

bool Partition::refines_on(const Partition& coarser, const ExactProbabilitySpace& space) const {
  if (coarser.num_points() != num_points() || space.size() != num_points())
    throw DimensionMismatch("partition sizes differ");
  for (auto& b : blocks_) {
    std::optional<std::size_t> target;
    for (auto x : b) {
      if (!space.in_support(x)) continue;
      if (!target) target = coarser.block_of(x);
      else if (*target != coarser.block_of(x)) return false;
    }
  }
  return true;
}

Partition Partition::common_refinement(const Partition& other) const {
  if (other.num_points() != num_points()) throw DimensionMismatch("partition sizes differ");
  std::vector<std::size_t> l(num_points());
  for (std::size_t x = 0; x < l.size(); ++x)
    l[x] = block_of_[x] * other.num_blocks() + other.block_of(x);
  return from_labels(l);
}

Partition Partition::pullback(const PointMap& map) const {
  std::vector<std::size_t> l(map.size());
  for (std::size_t x = 0; x < map.size(); ++x) l[x] = block_of(map[x]);
  return from_labels(l);
}

bool Partition::is_union_of_blocks(const IndexSet& set) const {
  std::vector<char> in(num_points(), 0);
  for (auto x : set) in.at(x) = 1;
  for (auto& b : blocks_)
    for (auto x : b)
      if (in[x] != in[b.front()]) return false;
  return true;
}

Partition join(const std::vector<Partition>& parts, std::size_t num_points) {
  Partition j = Partition::trivial(num_points);
  for (auto& p : parts) j = j.common_refinement(p);
  return j;
}

Coupling::Coupling(std::vector<ExactProbabilitySpace> marginals, std::map<Tuple, Rational> mass)
    : marginals_(std::move(marginals)), mass_(std::move(mass)) {
  const std::size_t d = marginals_.size();
  if (d == 0) throw InvalidInput("coupling arity must be positive");
  std::vector<std::vector<Rational>> push(d);
  for (std::size_t i = 0; i < d; ++i) push[i].assign(marginals_[i].size(), Rational(0));
  Rational total;
  for (auto& [t, m] : mass_) {
    if (t.size() != d)
      throw DimensionMismatch("coupling tuple " + tuple_label(t) + " does not have arity " +
                              std::to_string(d));
    if (m.sign() <= 0)
      throw InvalidInput("coupling mass at " + tuple_label(t) + " is not positive");
    for (std::size_t i = 0; i < d; ++i) {
      if (t[i] >= marginals_[i].size())
        throw InvalidInput("coupling tuple " + tuple_label(t) + " out of range");
      push[i][t[i]] += m;
    }
    total += m;
    tuples_.push_back(t);
  }
  if (total != Rational(1))
    throw InvalidInput("coupling mass sums to " + total.to_string() + ", not 1/1");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t x = 0; x < push[i].size(); ++x)
      if (push[i][x] != marginals_[i].weight(x))
        throw InvalidInput("coupling marginal " + std::to_string(i) + " at point " +
                           std::to_string(x) + " is " + push[i][x].to_string() + ", expected " +
                           marginals_[i].weight(x).to_string());
}

Coupling Coupling::on_base(const ExactProbabilitySpace& base, std::size_t arity,
                           std::map<Tuple, Rational> mass) {
  return Coupling(std::vector<ExactProbabilitySpace>(arity, base), std::move(mass));
}

Coupling Coupling::diagonal(const ExactProbabilitySpace& base, std::size_t arity) {
  std::map<Tuple, Rational> m;
  for (auto x : base.support()) m[Tuple(arity, x)] = base.weight(x);
  return on_base(base, arity, std::move(m));
}

Coupling Coupling::product(const std::vector<ExactProbabilitySpace>& spaces) {
  std::vector<IndexSet> supports;
  for (auto& s : spaces) supports.push_back(s.support());
  std::vector<const IndexSet*> lists;
  for (auto& s : supports) lists.push_back(&s);
  std::map<Tuple, Rational> m;
  for_each_product(lists, [&](const std::vector<std::size_t>& pos) {
    Tuple t(pos.size());
    Rational w(1);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      t[i] = supports[i][pos[i]];
      w *= spaces[i].weight(t[i]);
    }
    m.emplace(std::move(t), std::move(w));
  });
  return Coupling(spaces, std::move(m));
}

Rational Coupling::mass_of(const Tuple& t) const {
  auto it = mass_.find(t);
  return it == mass_.end() ? Rational(0) : it->second;
}

Coupling Coupling::project(const std::vector<std::size_t>& coords) const {
  if (coords.empty()) throw InvalidInput("projection onto no coordinates");
  std::vector<ExactProbabilitySpace> margs;
  for (auto c : coords) margs.push_back(marginal(c));
  std::map<Tuple, Rational> m;
  for (auto& [t, w] : mass_) {
    Tuple s(coords.size());
    for (std::size_t j = 0; j < coords.size(); ++j) s[j] = t[coords[j]];
    m[s] += w;
  }
  return Coupling(std::move(margs), std::move(m));
}

Rational Coupling::product_mass(const std::vector<IndexSet>& sets) const {
  if (sets.size() != arity()) throw DimensionMismatch("need one set per coordinate");
  std::vector<std::vector<char>> in(arity());
  for (std::size_t i = 0; i < arity(); ++i) {
    in[i].assign(marginal(i).size(), 0);
    for (auto x : sets[i]) in[i].at(x) = 1;
  }
  Rational r;
  for (auto& [t, w] : mass_) {
    bool all = true;
    for (std::size_t i = 0; i < t.size() && all; ++i) all = in[i][t[i]];
    if (all) r += w;
  }
  return r;
}

Rational Coupling::integral(const std::vector<SimpleFunction>& fs) const {
  if (fs.size() != arity()) throw DimensionMismatch("need one function per coordinate");
  Rational r;
  for (auto& [t, w] : mass_) {
    Rational p = w;
    for (std::size_t i = 0; i < t.size(); ++i) p *= fs[i].values.at(t[i]);
    r += p;
  }
  return r;
}

ExactProbabilitySpace Coupling::support_space() const {
  std::vector<std::string> labels;
  std::vector<Rational> weights;
  for (auto& [t, w] : mass_) {
    labels.push_back(tuple_label(t));
    weights.push_back(w);
  }
  return ExactProbabilitySpace(std::move(labels), std::move(weights));
}

Partition Coupling::coordinate_pullback(std::size_t coord, const Partition& p) const {
  if (p.num_points() != marginal(coord).size())
    throw DimensionMismatch("partition does not live on coordinate " + std::to_string(coord));
  PointMap m(tuples_.size());
  for (std::size_t j = 0; j < tuples_.size(); ++j) m[j] = tuples_[j][coord];
  return p.pullback(m);
}

SimpleFunction conditional_expectation(const SimpleFunction& f, const Partition& p,
                                       const ExactProbabilitySpace& mu) {
  if (f.size() != mu.size() || p.num_points() != mu.size())
    throw DimensionMismatch("function, partition and space sizes differ");
  SimpleFunction out = SimpleFunction::constant(f.size(), Rational(0));
  for (auto& b : p.blocks()) {
    Rational num, den;
    for (auto x : b) {
      num += mu.weight(x) * f[x];
      den += mu.weight(x);
    }
    if (den.is_zero()) continue;
    Rational v = num / den;
    for (auto x : b) out.values[x] = v;
  }
  return out;
}

RelIndResult relative_independence(const std::vector<Partition>& factors,
                                   const std::vector<Partition>& subfactors,
                                   const ExactProbabilitySpace& space) {
  const std::size_t k = factors.size();
  if (subfactors.size() != k) throw DimensionMismatch("factor and subfactor counts differ");
  for (std::size_t i = 0; i < k; ++i) {
    if (factors[i].num_points() != space.size() || subfactors[i].num_points() != space.size())
      throw DimensionMismatch("partition " + std::to_string(i) + " does not live on the space");
    if (!factors[i].refines_on(subfactors[i], space))
      throw PreconditionError("subfactor " + std::to_string(i) + " does not coarsen its factor");
  }
  const IndexSet supp = space.support();

  std::map<Tuple, Rational> lhs;
  std::map<Tuple, Rational> cells;
  // coef[i][c] = list of (factor block, nu(B)/nu(C)) for blocks B inside C
  std::vector<std::map<std::size_t, std::map<std::size_t, Rational>>> inter(k);
  std::vector<std::map<std::size_t, Rational>> cmass(k);
  for (auto x : supp) {
    Tuple b(k), c(k);
    for (std::size_t i = 0; i < k; ++i) {
      b[i] = factors[i].block_of(x);
      c[i] = subfactors[i].block_of(x);
      inter[i][c[i]][b[i]] += space.weight(x);
      cmass[i][c[i]] += space.weight(x);
    }
    lhs[b] += space.weight(x);
    cells[c] += space.weight(x);
  }
  std::vector<std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>>> coef(k);
  for (std::size_t i = 0; i < k; ++i)
    for (auto& [c, bs] : inter[i])
      for (auto& [b, m] : bs) coef[i][c].emplace_back(b, m / cmass[i][c]);

  std::map<Tuple, Rational> rhs;
  for (auto& [c, m] : cells) {
    std::vector<const std::vector<std::pair<std::size_t, Rational>>*> lists(k);
    for (std::size_t i = 0; i < k; ++i) lists[i] = &coef[i].at(c[i]);
    for_each_product(lists, [&](const std::vector<std::size_t>& pos) {
      Tuple b(k);
      Rational v = m;
      for (std::size_t i = 0; i < k; ++i) {
        b[i] = (*lists[i])[pos[i]].first;
        v *= (*lists[i])[pos[i]].second;
      }
      rhs[b] += v;
    });
  }

  RelIndResult res;
  for (auto& [b, l] : lhs)
    if (!rhs.count(b)) throw InternalInconsistency("block tuple with mass but no expectation");
  for (auto& [b, r] : rhs) {
    auto it = lhs.find(b);
    Rational l = it == lhs.end() ? Rational(0) : it->second;
    if (l != r) {
      res.independent = false;
      // total masses agree, so some tuple is under-weighted; report the first
      if (l < r) {
        res.witness = RelIndWitness{b, l, r};
        break;
      }
    }
  }
  if (!res.independent && !res.witness) throw InternalInconsistency("violation without deficit");
  return res;
}

RelIndResult relative_independence(const std::vector<Partition>& factors,
                                   const std::vector<Partition>& subfactors, const Coupling& nu) {
  const std::size_t k = nu.arity();
  if (factors.size() != k || subfactors.size() != k)
    throw DimensionMismatch("need one factor and one subfactor per coordinate");
  std::vector<Partition> f, s;
  for (std::size_t i = 0; i < k; ++i) {
    f.push_back(nu.coordinate_pullback(i, factors[i]));
    s.push_back(nu.coordinate_pullback(i, subfactors[i]));
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!factors[i].refines_on(subfactors[i], nu.marginal(i)))
      throw PreconditionError("subfactor " + std::to_string(i) + " does not coarsen its factor");
  }
  RelIndResult r = relative_independence(f, s, nu.support_space());
  if (r.witness) {
    const auto& tuples = nu.support_tuples();
    for (std::size_t i = 0; i < k; ++i) {
      auto first = f[i].block(r.witness->blocks[i]).front();
      r.witness->blocks[i] = factors[i].block_of(tuples[first][i]);
    }
  }
  return r;
}

Coupling relatively_independent_product(const std::vector<ExactProbabilitySpace>& spaces,
                                        const std::vector<PointMap>& maps) {
  const std::size_t k = spaces.size();
  if (k == 0 || maps.size() != k) throw DimensionMismatch("need one map per space");
  std::size_t base_n = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (maps[i].size() != spaces[i].size())
      throw DimensionMismatch("map " + std::to_string(i) + " has the wrong length");
    for (auto y : maps[i]) base_n = std::max(base_n, y + 1);
  }
  auto nu = pushforward(spaces[0], maps[0], base_n);
  for (std::size_t i = 1; i < k; ++i)
    if (pushforward(spaces[i], maps[i], base_n) != nu)
      throw InvalidInput("map " + std::to_string(i) + " pushes forward to a different base measure");

  std::vector<std::vector<IndexSet>> fibers(k, std::vector<IndexSet>(base_n));
  for (std::size_t i = 0; i < k; ++i)
    for (auto x : spaces[i].support()) fibers[i][maps[i][x]].push_back(x);

  std::map<Tuple, Rational> mass;
  for (std::size_t y = 0; y < base_n; ++y) {
    if (nu[y].is_zero()) continue;
    Rational scale = Rational(1) / pow(nu[y], static_cast<unsigned>(k - 1));
    std::vector<const IndexSet*> lists(k);
    for (std::size_t i = 0; i < k; ++i) lists[i] = &fibers[i][y];
    for_each_product(lists, [&](const std::vector<std::size_t>& pos) {
      Tuple t(k);
      Rational w = scale;
      for (std::size_t i = 0; i < k; ++i) {
        t[i] = (*lists[i])[pos[i]];
        w *= spaces[i].weight(t[i]);
      }
      mass.emplace(std::move(t), std::move(w));
    });
  }
  return Coupling(spaces, std::move(mass));
}

bool ae_equal(const Partition& p, const Partition& q, const ExactProbabilitySpace& mu) {
  if (p.num_points() != q.num_points() || p.num_points() != mu.size())
    throw DimensionMismatch("partition sizes differ");
  std::unordered_map<std::size_t, std::size_t> pq, qp;
  for (auto x : mu.support()) {
    auto a = pq.emplace(p.block_of(x), q.block_of(x)).first;
    auto b = qp.emplace(q.block_of(x), p.block_of(x)).first;
    if (a->second != q.block_of(x) || b->second != p.block_of(x)) return false;
  }
  return true;
}

std::vector<Rational> pushforward(const ExactProbabilitySpace& mu, const PointMap& map,
                                  std::size_t target_size) {
  if (map.size() != mu.size()) throw DimensionMismatch("map length does not match space size");
  std::vector<Rational> out(target_size, Rational(0));
  for (std::size_t x = 0; x < map.size(); ++x) {
    if (map[x] >= target_size) throw InvalidInput("map image out of range");
    out[map[x]] += mu.weight(x);
  }
  return out;
}

}  // namespace ergolab
