#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "ergolab/errors.hpp"
#include "ergolab/zd_system.hpp"

namespace ergolab {

void GroupRotationSystem::validate() const {
  for (std::size_t j = 0; j < orders.size(); ++j)
    if (orders[j] < 1) throw InvalidInput("cyclic order " + std::to_string(j) + " must be positive");
  for (std::size_t i = 0; i < phi.size(); ++i)
    if (phi[i].size() != orders.size())
      throw DimensionMismatch("phi[" + std::to_string(i) + "] has length " +
                              std::to_string(phi[i].size()) + ", group has " +
                              std::to_string(orders.size()) + " factors");
}

std::size_t GroupRotationSystem::group_size() const {
  std::size_t n = 1;
  for (auto o : orders) n *= static_cast<std::size_t>(o);
  return n;
}

std::size_t GroupRotationSystem::index_of(const IntVector& u) const {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < orders.size(); ++j) {
    long r = ((u.at(j) % orders[j]) + orders[j]) % orders[j];
    idx = idx * static_cast<std::size_t>(orders[j]) + static_cast<std::size_t>(r);
  }
  return idx;
}

IntVector GroupRotationSystem::element(std::size_t index) const {
  IntVector u(orders.size());
  for (std::size_t j = orders.size(); j-- > 0;) {
    u[j] = static_cast<long>(index % static_cast<std::size_t>(orders[j]));
    index /= static_cast<std::size_t>(orders[j]);
  }
  return u;
}

IntVector GroupRotationSystem::add(const IntVector& a, const IntVector& b) const {
  IntVector c(orders.size());
  for (std::size_t j = 0; j < orders.size(); ++j)
    c[j] = (((a.at(j) + b.at(j)) % orders[j]) + orders[j]) % orders[j];
  return c;
}

FiniteZdSystem GroupRotationSystem::to_system() const {
  validate();
  const std::size_t n = group_size();
  std::vector<Permutation> gens;
  for (auto& g : phi) {
    std::vector<std::size_t> img(n);
    for (std::size_t x = 0; x < n; ++x) img[x] = index_of(add(element(x), g));
    gens.emplace_back(std::move(img));
  }
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto u = element(x);
    std::string s = "(";
    for (std::size_t j = 0; j < u.size(); ++j) s += (j ? "," : "") + std::to_string(u[j]);
    labels[x] = s + ")";
  }
  return FiniteZdSystem(
      ExactProbabilitySpace(std::move(labels), std::vector<Rational>(n, Rational(1, static_cast<long>(n)))),
      std::move(gens));
}

static std::set<std::size_t> generated_subgroup(const GroupRotationSystem& rot,
                                                const std::vector<IntVector>& gens) {
  std::set<std::size_t> seen{rot.index_of(IntVector(rot.orders.size(), 0))};
  std::vector<std::size_t> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (auto x : frontier)
      for (auto& g : gens) {
        auto y = rot.index_of(rot.add(rot.element(x), g));
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

bool generates_group(const GroupRotationSystem& rot) {
  rot.validate();
  return generated_subgroup(rot, rot.phi).size() == rot.group_size();
}

std::vector<IntVector> cyclic_subgroup(const GroupRotationSystem& rot, const IntVector& g) {
  std::vector<IntVector> out;
  for (auto idx : generated_subgroup(rot, {g})) out.push_back(rot.element(idx));
  return out;
}

long element_order(const GroupRotationSystem& rot, const IntVector& g) {
  long ord = 1;
  for (std::size_t j = 0; j < rot.orders.size(); ++j) {
    long r = ((g.at(j) % rot.orders[j]) + rot.orders[j]) % rot.orders[j];
    ord = std::lcm(ord, rot.orders[j] / std::gcd(rot.orders[j], r));
  }
  return ord;
}

RotationExtension direct_sum_extension(const GroupRotationSystem& rot) {
  rot.validate();
  if (!generates_group(rot))
    throw PreconditionError("the rotation images do not generate the group");
  GroupRotationSystem ext;
  const std::size_t D = rot.dim();
  for (std::size_t i = 0; i < D; ++i) ext.orders.push_back(element_order(rot, rot.phi[i]));
  for (std::size_t i = 0; i < D; ++i) ext.phi.push_back(unit_vector(D, i));
  FiniteZdSystem src = ext.to_system();
  FiniteZdSystem dst = rot.to_system();
  PointMap map(src.size());
  for (std::size_t x = 0; x < src.size(); ++x) {
    auto a = ext.element(x);
    IntVector s(rot.orders.size(), 0);
    for (std::size_t i = 0; i < D; ++i)
      for (long t = 0; t < a[i]; ++t) s = rot.add(s, rot.phi[i]);
    map[x] = rot.index_of(s);
  }
  return RotationExtension{ext, FactorMap(std::move(src), std::move(dst), std::move(map))};
}

RotationExtension rotation_extension(const GroupRotationSystem& rot) {
  if (rot.dim() != 2) throw PreconditionError("rotation_extension needs exactly two generators");
  return direct_sum_extension(rot);
}

bool class_membership_Z0join(const GroupRotationSystem& rot) {
  rot.validate();
  // the cyclic subgroups form a direct sum iff their sizes multiply to the size of their sum
  std::size_t prod = 1;
  for (auto& g : rot.phi) prod *= static_cast<std::size_t>(element_order(rot, g));
  return generated_subgroup(rot, rot.phi).size() == prod;
}

std::vector<long> smith_normal_form(std::vector<IntVector> a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  for (auto& r : a)
    if (r.size() != n) throw DimensionMismatch("ragged integer matrix");
  std::vector<long> diag;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    auto bring_min = [&](bool whole) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (!whole && i != t && j != t) continue;
          if (a[i][j] != 0 && (bi == m || std::labs(a[i][j]) < std::labs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == m) return false;
      std::swap(a[t], a[bi]);
      for (auto& r : a) std::swap(r[t], r[bj]);
      return true;
    };
    if (!bring_min(true)) break;
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        long q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        long q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        bring_min(false);
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t c = t; c < n; ++c) a[t][c] += a[i][c];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(std::labs(a[t][t]));
  }
  return diag;
}

bool is_direct_sum_decomposition(const std::vector<SubgroupSpec>& parts, std::size_t dim) {
  std::vector<IntVector> rows;
  for (auto& p : parts)
    for (auto& v : p.vectors) {
      if (v.size() != dim) throw DimensionMismatch("subgroup vector has the wrong length");
      if (std::any_of(v.begin(), v.end(), [](long c) { return c != 0; })) rows.push_back(v);
    }
  if (rows.size() != dim) return false;
  auto d = smith_normal_form(rows);
  return d.size() == dim && std::all_of(d.begin(), d.end(), [](long x) { return x == 1; });
}

}  // namespace ergolab
