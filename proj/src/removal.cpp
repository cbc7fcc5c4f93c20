#include "ergolab/removal.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ergolab/errors.hpp"

namespace ergolab {

namespace {

std::vector<Mask> keys_for(unsigned d) {
  std::vector<Mask> out;
  for (Mask e = 0; e <= full_mask(d); ++e)
    if (popcount(e) >= 2) out.push_back(e);
  return out;
}

unsigned least_member(Mask e) {
  unsigned i = 0;
  while (!((e >> i) & 1U)) ++i;
  return i;
}

std::string tuple_text(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

IndexSet intersect_sets(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

void RemovalInstance::validate() const {
  const unsigned d = this->d();
  if (d < 2 || d > 6) throw InvalidInput("removal instances need 2 <= d <= 6");
  for (unsigned i = 0; i < d; ++i)
    if (!(lambda.marginal(i) == space))
      throw InvalidInput("lambda marginal " + std::to_string(i) + " differs from the space");
  for (Mask e : keys_for(d)) {
    auto it = psi.find(e);
    if (it == psi.end()) throw InvalidInput("psi is missing the set " + mask_to_string(e));
    if (it->second.num_points() != space.size())
      throw DimensionMismatch("psi" + mask_to_string(e) + " does not live on the space");
  }
  if (psi.size() != keys_for(d).size()) throw InvalidInput("psi has entries for invalid sets");
  if (families.size() != d) throw DimensionMismatch("need one family list per coordinate");
  for (unsigned i = 0; i < d; ++i) {
    if (families[i].empty())
      throw InvalidInput("coordinate " + std::to_string(i + 1) + " has no sets");
    UpSet st = star(d, i);
    for (std::size_t j = 0; j < families[i].size(); ++j) {
      const auto& m = families[i][j];
      std::string where = "family (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (m.family.dim() != d) throw DimensionMismatch(where + " has the wrong d");
      if (!m.family.is_upward_closed()) throw InvalidInput(where + " is not an up-set");
      if (!m.family.contains(full_mask(d))) throw InvalidInput(where + " does not contain [d]");
      if ((m.family.bits() & ~st.bits()) != 0) throw InvalidInput(where + " is not inside <i>");
      for (auto x : m.set)
        if (x >= space.size()) throw InvalidInput(where + " set has an index out of range");
      if (!algebra(m.family).is_union_of_blocks(m.set))
        throw InvalidInput(where + " set is not measurable for its up-set");
    }
  }
}

Partition RemovalInstance::algebra(const UpSet& family) const {
  Partition p = Partition::trivial(space.size());
  for (Mask e : family.members()) p = p.common_refinement(psi.at(e));
  return p;
}

std::vector<UpSet> hypothesis_upsets(unsigned d) {
  std::vector<UpSet> out;
  if (d <= 3) {
    for (auto& u : enumerate_all_upsets(d))
      if (!u.empty()) out.push_back(u);
    return out;
  }
  std::set<UpSet> s;
  for (auto& u : principal_upsets(d)) s.insert(u);
  if (d == 4) {
    std::vector<Mask> pairs;
    for (Mask e = 0; e <= full_mask(d); ++e)
      if (popcount(e) == 2) pairs.push_back(e);
    for (std::uint32_t pick = 1; pick < (1U << pairs.size()); ++pick) {
      std::vector<Mask> chosen;
      for (std::size_t j = 0; j < pairs.size(); ++j)
        if ((pick >> j) & 1U) chosen.push_back(pairs[j]);
      s.insert(UpSet::generate(d, chosen));
    }
  }
  return {s.begin(), s.end()};
}

std::vector<UpSet> admissible_families(unsigned d, unsigned i) {
  if (d > 4) throw BudgetExceeded("family enumeration is limited to d <= 4");
  std::vector<UpSet> out;
  const UpSet st = star(d, i);
  for (auto& u : enumerate_all_upsets(d))
    if (u.contains(full_mask(d)) && (u.bits() & ~st.bits()) == 0) out.push_back(u);
  return out;
}

HypothesisReport check_hypotheses(const RemovalInstance& inst) {
  inst.validate();
  const unsigned d = inst.d();
  const auto keys = keys_for(d);
  HypothesisReport rep;

  for (Mask e : keys) {
    for (Mask f : keys)
      if (e != f && (e & f) == e && !inst.psi.at(e).refines_on(inst.psi.at(f), inst.space)) {
        rep.i = false;
        rep.witness_i = "psi" + mask_to_string(e) + " does not refine psi" + mask_to_string(f);
        break;
      }
    if (!rep.i) break;
  }

  const auto& tuples = inst.lambda.support_tuples();
  for (Mask e : keys) {
    const Partition& p = inst.psi.at(e);
    unsigned first = least_member(e);
    for (auto& t : tuples) {
      for (unsigned j = first + 1; j < d; ++j)
        if (((e >> j) & 1U) && p.block_of(t[j]) != p.block_of(t[first])) {
          rep.ii = false;
          rep.witness_ii = "e=" + mask_to_string(e) + " coordinates " + std::to_string(first + 1) +
                           "," + std::to_string(j + 1) + " disagree at " + tuple_text(t);
          break;
        }
      if (!rep.ii) break;
    }
    if (!rep.ii) break;
  }

  const ExactProbabilitySpace space = inst.lambda.support_space();
  std::map<Mask, Partition> dagger;
  for (Mask e : keys) dagger.emplace(e, inst.lambda.coordinate_pullback(least_member(e), inst.psi.at(e)));
  auto dag = [&](const UpSet& u) {
    Partition p = Partition::trivial(space.size());
    for (Mask e : u.members()) p = p.common_refinement(dagger.at(e));
    return p;
  };
  auto ups = hypothesis_upsets(d);
  std::vector<Partition> algebras;
  for (auto& u : ups) algebras.push_back(dag(u));
  for (std::size_t a = 0; a < ups.size() && rep.iii; ++a)
    for (std::size_t b = a + 1; b < ups.size(); ++b) {
      Partition meet = dag(ups[a].intersect(ups[b]));
      RelIndResult r;
      try {
        r = relative_independence({algebras[a], algebras[b]}, {meet, meet}, space);
      } catch (const PreconditionError&) {
        // only reachable when [i] fails and the meet is not coarser
        r.independent = false;
      }
      if (!r.independent) {
        rep.iii = false;
        rep.witness_iii = "I=" + ups[a].to_string() + " I'=" + ups[b].to_string();
        rep.relind_witness = r.witness;
        break;
      }
    }
  return rep;
}

ConclusionResult evaluate_conclusion(const RemovalInstance& inst) {
  const unsigned d = inst.d();
  std::vector<IndexSet> boxes(d);
  IndexSet all(inst.space.size());
  std::iota(all.begin(), all.end(), 0);
  for (unsigned i = 0; i < d; ++i) {
    boxes[i] = all;
    for (auto& m : inst.families[i]) boxes[i] = intersect_sets(boxes[i], m.set);
  }
  IndexSet meet = all;
  for (auto& b : boxes) meet = intersect_sets(meet, b);
  ConclusionResult r;
  r.product_mass = inst.lambda.product_mass(boxes);
  r.intersection_mass = inst.space.measure(meet);
  r.holds = !(r.product_mass.is_zero() && r.intersection_mass.sign() > 0);
  return r;
}

ConclusionResult check_conclusion(const RemovalInstance& inst) {
  HypothesisReport h = check_hypotheses(inst);
  if (!h.i) throw PreconditionError("hypothesis [i] fails: " + h.witness_i);
  if (!h.ii) throw PreconditionError("hypothesis [ii] fails: " + h.witness_ii);
  if (!h.iii) throw PreconditionError("hypothesis [iii] fails: " + h.witness_iii);
  return evaluate_conclusion(inst);
}

IndexSet level_set(const IndexSet& a, const Partition& xi, const ExactProbabilitySpace& mu,
                   const Rational& t) {
  SimpleFunction f = conditional_expectation(SimpleFunction::indicator(mu.size(), a), xi, mu);
  IndexSet out;
  for (std::size_t x = 0; x < mu.size(); ++x)
    if (f[x] > t) out.push_back(x);
  return out;
}

Partition insensitive_partition(const Coupling& lambda, Mask e) {
  const std::size_t n = lambda.marginal(0).size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto& t : lambda.support_tuples()) {
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!((e >> i) & 1U)) continue;
      if (!first) first = t[i];
      else {
        auto a = find(*first), b = find(t[i]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::size_t> l(n);
  for (std::size_t x = 0; x < n; ++x) l[x] = find(x);
  return Partition::from_labels(l);
}

}  // namespace ergolab
