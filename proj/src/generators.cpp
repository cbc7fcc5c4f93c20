#include "ergolab/generators.hpp"

#include <algorithm>
#include <numeric>

namespace ergolab::gen {

std::size_t index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(Rng& rng) { return index(rng, 2) == 1; }

ExactProbabilitySpace random_space(Rng& rng, std::size_t n, bool allow_null) {
  std::vector<long> raw(n);
  long total = 0;
  for (auto& r : raw) {
    r = static_cast<long>(index(rng, 6)) + ((allow_null && index(rng, 4) == 0) ? 0 : 1);
    total += r;
  }
  if (total == 0) {
    raw[0] = 1;
    total = 1;
  }
  std::vector<Rational> w;
  for (auto r : raw) w.emplace_back(r, total);
  return ExactProbabilitySpace::from_weights(std::move(w));
}

FiniteZdSystem random_system(Rng& rng, std::size_t n, std::size_t dim, bool exact_size,
                             bool allow_null) {
  const std::size_t total = exact_size ? n : 1 + index(rng, n);
  // components: (size, group orders)
  std::vector<std::vector<long>> comps;
  std::size_t used = 0;
  while (used < total) {
    std::size_t left = total - used;
    std::size_t a = 1 + index(rng, left);
    std::vector<long> orders{static_cast<long>(a)};
    std::size_t b = 1 + index(rng, std::max<std::size_t>(1, left / a));
    if (b > 1 && coin(rng)) orders.push_back(static_cast<long>(b));
    else b = 1;
    comps.push_back(orders);
    used += a * b;
  }
  std::vector<std::vector<std::size_t>> gens(dim, std::vector<std::size_t>(total));
  std::vector<long> comp_weight;
  std::vector<std::size_t> comp_of(total);
  std::size_t offset = 0;
  long denom = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    GroupRotationSystem rot;
    rot.orders = comps[c];
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector g;
      for (auto o : rot.orders) g.push_back(static_cast<long>(index(rng, static_cast<std::size_t>(o))));
      rot.phi.push_back(g);
    }
    const std::size_t sz = rot.group_size();
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t x = 0; x < sz; ++x)
        gens[i][offset + x] = offset + rot.index_of(rot.add(rot.element(x), rot.phi[i]));
    long w = static_cast<long>(index(rng, 4)) + ((allow_null && index(rng, 5) == 0) ? 0 : 1);
    comp_weight.push_back(w);
    for (std::size_t x = 0; x < sz; ++x) comp_of[offset + x] = c;
    denom += w * static_cast<long>(sz);
    offset += sz;
  }
  if (denom == 0) {
    comp_weight[0] = 1;
    for (std::size_t x = 0; x < total; ++x) denom += comp_of[x] == 0 ? 1 : 0;
  }
  std::vector<std::size_t> relabel(total);
  std::iota(relabel.begin(), relabel.end(), 0);
  std::shuffle(relabel.begin(), relabel.end(), rng);
  std::vector<Rational> weights(total);
  for (std::size_t x = 0; x < total; ++x) weights[relabel[x]] = Rational(comp_weight[comp_of[x]], denom);
  std::vector<Permutation> perms;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<std::size_t> img(total);
    for (std::size_t x = 0; x < total; ++x) img[relabel[x]] = relabel[gens[i][x]];
    perms.emplace_back(std::move(img));
  }
  return FiniteZdSystem(ExactProbabilitySpace::from_weights(std::move(weights)), std::move(perms));
}

Partition random_partition(Rng& rng, std::size_t n) {
  std::size_t k = 1 + index(rng, n);
  std::vector<std::size_t> l(n);
  for (auto& x : l) x = index(rng, k);
  return Partition::from_labels(l);
}

Partition random_coarsening(Rng& rng, const Partition& p) {
  std::size_t k = 1 + index(rng, p.num_blocks());
  std::vector<std::size_t> merged(p.num_blocks());
  for (auto& m : merged) m = index(rng, k);
  std::vector<std::size_t> l(p.num_points());
  for (std::size_t x = 0; x < l.size(); ++x) l[x] = merged[p.block_of(x)];
  return Partition::from_labels(l);
}

IndexSet random_subset(Rng& rng, std::size_t n) {
  IndexSet s;
  for (std::size_t x = 0; x < n; ++x)
    if (coin(rng)) s.push_back(x);
  return s;
}

IndexSet random_union_of_blocks(Rng& rng, const Partition& p) {
  IndexSet s;
  for (auto& b : p.blocks())
    if (coin(rng)) s.insert(s.end(), b.begin(), b.end());
  std::sort(s.begin(), s.end());
  return s;
}

Rational random_rational(Rng& rng, long max_abs_num, long max_den) {
  long num = static_cast<long>(index(rng, static_cast<std::size_t>(2 * max_abs_num + 1))) - max_abs_num;
  long den = 1 + static_cast<long>(index(rng, static_cast<std::size_t>(max_den)));
  return Rational(num, den);
}

std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  std::vector<std::size_t> rgs(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t max_label) -> void {
    if (pos == n) {
      out.push_back(Partition::from_labels(rgs));
      return;
    }
    for (std::size_t l = 0; l <= max_label + 1; ++l) {
      rgs[pos] = l;
      self(self, pos + 1, std::max(max_label, l));
    }
  };
  if (n == 0) return out;
  rgs[0] = 0;
  rec(rec, 1, 0);
  return out;
}

}  // namespace ergolab::gen
