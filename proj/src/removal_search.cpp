#include <algorithm>
#include <numeric>
#include <set>

#include "ergolab/errors.hpp"
#include "ergolab/fberg.hpp"
#include "ergolab/generators.hpp"
#include "ergolab/removal.hpp"

namespace ergolab {

namespace {

std::vector<Mask> psi_keys(unsigned d) {
  std::vector<Mask> out;
  for (Mask e = 0; e <= full_mask(d); ++e)
    if (popcount(e) >= 2) out.push_back(e);
  return out;
}

bool respects_ii(const Coupling& lambda, Mask e, const Partition& p) {
  for (auto& t : lambda.support_tuples()) {
    std::optional<std::size_t> b;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!((e >> i) & 1U)) continue;
      if (!b) b = p.block_of(t[i]);
      else if (*b != p.block_of(t[i])) return false;
    }
  }
  return true;
}

// commuting d-tuples of permutations of n points, d <= 3
void commuting_tuples(std::size_t n, unsigned d, std::vector<std::vector<Permutation>>& out) {
  std::vector<std::size_t> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<Permutation> all;
  do all.emplace_back(base);
  while (std::next_permutation(base.begin(), base.end()));
  std::vector<Permutation> cur;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == d) {
      out.push_back(cur);
      return;
    }
    for (auto& p : all) {
      bool ok = true;
      for (auto& q : cur) ok = ok && (p * q == q * p);
      if (!ok) continue;
      cur.push_back(p);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
}

std::vector<Coupling> exhaustive_couplings(const ExactProbabilitySpace& space, unsigned d,
                                           const std::vector<std::string>& kinds) {
  std::vector<Coupling> out;
  std::set<std::map<Tuple, Rational>> seen;
  auto add = [&](Coupling c) {
    if (seen.insert(c.mass()).second) out.push_back(std::move(c));
  };
  const std::size_t n = space.size();
  for (auto& kind : kinds) {
    if (kind == "diagonal") {
      add(Coupling::diagonal(space, d));
    } else if (kind == "product") {
      add(Coupling::product(std::vector<ExactProbabilitySpace>(d, space)));
    } else if (kind == "fiber") {
      for (auto& q : gen::all_partitions(n))
        add(relatively_independent_product(std::vector<ExactProbabilitySpace>(d, space),
                                           std::vector<PointMap>(d, q.labels())));
    } else if (kind == "furstenberg") {
      std::vector<std::vector<Permutation>> tuples;
      commuting_tuples(n, d, tuples);
      for (auto& gens : tuples) add(furstenberg_joining(FiniteZdSystem(space, gens)).coupling);
    } else {
      throw InvalidInput("unknown coupling generator \"" + kind + "\"");
    }
  }
  return out;
}

Coupling random_coupling(gen::Rng& rng, unsigned d, std::size_t n, const std::string& kind,
                         ExactProbabilitySpace& space) {
  if (kind == "furstenberg") {
    FiniteZdSystem sys = gen::random_system(rng, n, d, true);
    space = sys.space();
    return furstenberg_joining(sys).coupling;
  }
  space = gen::random_space(rng, n);
  if (kind == "diagonal") return Coupling::diagonal(space, d);
  if (kind == "product") return Coupling::product(std::vector<ExactProbabilitySpace>(d, space));
  if (kind == "fiber") {
    Partition q = gen::random_partition(rng, n);
    return relatively_independent_product(std::vector<ExactProbabilitySpace>(d, space),
                                          std::vector<PointMap>(d, q.labels()));
  }
  throw InvalidInput("unknown coupling generator \"" + kind + "\"");
}

// psi built from coarsened insensitive partitions; [i] and [ii] hold by construction
std::map<Mask, Partition> random_psi(gen::Rng& rng, const Coupling& lambda, unsigned d) {
  std::map<Mask, Partition> coarse;
  for (Mask e : psi_keys(d)) coarse.emplace(e, gen::random_coarsening(rng, insensitive_partition(lambda, e)));
  std::map<Mask, Partition> psi;
  const std::size_t n = lambda.marginal(0).size();
  for (Mask e : psi_keys(d)) {
    Partition p = Partition::trivial(n);
    for (auto& [f, c] : coarse)
      if ((e & f) == e) p = p.common_refinement(c);
    psi.emplace(e, p);
  }
  return psi;
}

struct RandomDraw {
  std::optional<RemovalInstance> inst;
  bool excluded = false;
};

RandomDraw random_valid_instance(gen::Rng& rng, const SearchConfig& cfg) {
  const std::string& kind = cfg.generators[gen::index(rng, cfg.generators.size())];
  ExactProbabilitySpace space;
  Coupling lambda = random_coupling(rng, cfg.d, cfg.space_size, kind, space);
  RemovalInstance inst{space, lambda, random_psi(rng, lambda, cfg.d), {}};
  for (unsigned i = 0; i < cfg.d; ++i) {
    auto fams = admissible_families(cfg.d, i);
    std::vector<FamilyMember> row;
    std::size_t k = 1 + gen::index(rng, 2);
    for (std::size_t j = 0; j < k; ++j) {
      const UpSet& u = fams[gen::index(rng, fams.size())];
      row.push_back(FamilyMember{u, gen::random_union_of_blocks(rng, inst.algebra(u))});
    }
    inst.families.push_back(std::move(row));
  }
  HypothesisReport h = check_hypotheses(inst);
  if (!h.i || !h.ii) throw InternalInconsistency("constructed psi violates [i] or [ii]");
  if (!h.iii) return RandomDraw{std::nullopt, true};
  return RandomDraw{std::move(inst), false};
}

SearchResult exhaustive_search(const SearchConfig& cfg) {
  const unsigned d = cfg.d;
  const std::size_t n = cfg.space_size;
  SearchResult res;
  const ExactProbabilitySpace space = ExactProbabilitySpace::uniform(n);
  const auto couplings = exhaustive_couplings(space, d, cfg.generators);
  const auto parts = gen::all_partitions(n);
  const auto keys = psi_keys(d);
  std::vector<std::vector<UpSet>> fams(d);
  for (unsigned i = 0; i < d; ++i) fams[i] = admissible_families(d, i);
  res.couplings = couplings.size();

  for (const Coupling& lambda : couplings) {
    std::vector<std::vector<const Partition*>> options(keys.size());
    for (std::size_t k = 0; k < keys.size(); ++k)
      for (auto& p : parts)
        if (respects_ii(lambda, keys[k], p)) options[k].push_back(&p);
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < keys.size(); ++k) total *= parts.size();
    std::uint64_t valid = 0;

    std::vector<std::size_t> pos(keys.size(), 0);
    bool any = std::all_of(options.begin(), options.end(), [](auto& o) { return !o.empty(); });
    while (any) {
      RemovalInstance inst{space, lambda, {}, {}};
      for (std::size_t k = 0; k < keys.size(); ++k) inst.psi.emplace(keys[k], *options[k][pos[k]]);
      for (unsigned i = 0; i < d; ++i) inst.families.push_back({FamilyMember{fams[i][0], {}}});
      HypothesisReport h = check_hypotheses(inst);
      if (h.all()) {
        ++valid;
        // per coordinate: distinct measurable sets (as bitmasks) and the first family carrying each
        std::vector<std::vector<std::pair<std::uint64_t, std::size_t>>> sets(d);
        std::vector<std::uint64_t> multiplicity(d, 0);
        for (unsigned i = 0; i < d; ++i) {
          std::map<std::uint64_t, std::size_t> first;
          for (std::size_t f = 0; f < fams[i].size(); ++f) {
            Partition alg = inst.algebra(fams[i][f]);
            const std::size_t nb = alg.num_blocks();
            for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << nb); ++pick) {
              std::uint64_t m = 0;
              for (std::size_t b = 0; b < nb; ++b)
                if ((pick >> b) & 1U)
                  for (auto x : alg.block(b)) m |= std::uint64_t{1} << x;
              first.emplace(m, f);
              ++multiplicity[i];
            }
          }
          for (auto& [m, f] : first) sets[i].emplace_back(m, f);
        }
        std::uint64_t count = 1;
        for (auto m : multiplicity) count *= m;
        if (res.examined + count > cfg.budget) {
          res.exhaustive = false;
          return res;
        }
        res.examined += count;

        std::uint64_t support_mask = 0;
        for (auto x : space.support()) support_mask |= std::uint64_t{1} << x;
        std::vector<std::size_t> sp(d, 0);
        while (true) {
          bool product_null = true;
          for (auto& t : lambda.support_tuples()) {
            bool in = true;
            for (unsigned i = 0; i < d && in; ++i) in = (sets[i][sp[i]].first >> t[i]) & 1U;
            if (in) {
              product_null = false;
              break;
            }
          }
          std::uint64_t meet = support_mask;
          for (unsigned i = 0; i < d; ++i) meet &= sets[i][sp[i]].first;
          if (product_null && meet != 0) {
            for (unsigned i = 0; i < d; ++i) {
              IndexSet a;
              for (std::size_t x = 0; x < n; ++x)
                if ((sets[i][sp[i]].first >> x) & 1U) a.push_back(x);
              inst.families[i] = {FamilyMember{fams[i][sets[i][sp[i]].second], a}};
            }
            res.counterexample = inst;
            return res;
          }
          unsigned i = d;
          while (i > 0) {
            --i;
            if (++sp[i] < sets[i].size()) break;
            sp[i] = 0;
            if (i == 0) goto next_psi;
          }
        }
      }
    next_psi:
      {
        std::size_t k = keys.size();
        bool done = true;
        while (k > 0) {
          --k;
          if (++pos[k] < options[k].size()) {
            done = false;
            break;
          }
          pos[k] = 0;
        }
        if (done) break;
      }
    }
    res.excluded += total - valid;
  }
  return res;
}

SearchResult random_search(const SearchConfig& cfg) {
  SearchResult res;
  gen::Rng rng(cfg.seed);
  const std::uint64_t max_attempts = std::min<std::uint64_t>(cfg.budget, 100 * cfg.samples + 100);
  std::uint64_t attempts = 0;
  while (res.examined < cfg.samples) {
    if (attempts++ >= max_attempts) {
      res.exhaustive = false;
      return res;
    }
    RandomDraw draw = random_valid_instance(rng, cfg);
    ++res.couplings;
    if (draw.excluded) {
      ++res.excluded;
      continue;
    }
    ++res.examined;
    if (!evaluate_conclusion(*draw.inst).holds) {
      res.counterexample = std::move(draw.inst);
      return res;
    }
  }
  return res;
}

}  // namespace

SearchResult search_counterexample(const SearchConfig& cfg) {
  if (cfg.d < 2) throw InvalidInput("search needs d >= 2");
  if (cfg.space_size < 1) throw InvalidInput("search needs at least one point");
  if (cfg.generators.empty()) throw InvalidInput("search needs at least one coupling generator");
  if (cfg.mode == "exhaustive") {
    if (cfg.space_size > 4 || cfg.d > 3)
      throw InvalidInput("exhaustive mode is limited to |X| <= 4 and d <= 3");
    return exhaustive_search(cfg);
  }
  if (cfg.mode == "random") {
    if (cfg.space_size > 12 || cfg.d > 4)
      throw InvalidInput("random mode is limited to |X| <= 12 and d <= 4");
    return random_search(cfg);
  }
  throw InvalidInput("unknown search mode \"" + cfg.mode + "\"");
}

LiftingReport lifting_scenario_tests(std::uint64_t seed, std::size_t instances) {
  LiftingReport rep;
  gen::Rng rng(seed);
  SearchConfig cfg;
  cfg.d = 3;
  cfg.space_size = 4;
  auto note = [&](const std::string& s) {
    if (rep.detail.empty()) rep.detail = s;
  };

  // level-set replacement on arbitrary sets and partitions
  for (std::size_t t = 0; t < 4 * instances; ++t) {
    ExactProbabilitySpace mu = gen::random_space(rng, 1 + gen::index(rng, 8), true);
    IndexSet a = gen::random_subset(rng, mu.size());
    Partition xi = gen::random_partition(rng, mu.size());
    IndexSet a2 = level_set(a, xi, mu);
    IndexSet lost;
    std::set_difference(a.begin(), a.end(), a2.begin(), a2.end(), std::back_inserter(lost));
    if (!mu.measure(lost).is_zero()) {
      rep.level_set = false;
      note("level set misses positive mass of A");
    }
    IndexSet exact = level_set(a, Partition::singletons(mu.size()), mu);
    IndexSet supp_a;
    for (auto x : a)
      if (mu.in_support(x)) supp_a.push_back(x);
    if (exact != supp_a) {
      rep.level_set = false;
      note("level set over the full partition is not the support of A");
    }
  }

  std::size_t made = 0;
  while (made < instances) {
    RandomDraw draw = random_valid_instance(rng, cfg);
    if (draw.excluded) continue;
    RemovalInstance inst = std::move(*draw.inst);
    ++made;
    const unsigned d = inst.d();
    ConclusionResult base = evaluate_conclusion(inst);

    // level-set replacement inside an instance never shrinks the product or the intersection
    {
      RemovalInstance widened = inst;
      for (unsigned i = 0; i < d; ++i)
        for (auto& m : widened.families[i]) m.set = level_set(m.set, inst.algebra(m.family), inst.space);
      ConclusionResult w = evaluate_conclusion(widened);
      if (w.product_mass < base.product_mass || w.intersection_mass < base.intersection_mass) {
        rep.level_set = false;
        note("level-set replacement lost mass");
      }
    }

    // duplicate principal up-sets at two coordinates of e: merge into one coordinate
    {
      Mask e = 0;
      while (popcount(e) < 2) e = static_cast<Mask>(gen::index(rng, full_mask(d) + 1));
      std::vector<unsigned> in_e;
      for (unsigned i = 0; i < d; ++i)
        if ((e >> i) & 1U) in_e.push_back(i);
      unsigned i1 = in_e[0], i2 = in_e[1];
      UpSet pe = UpSet::principal(d, e);
      RemovalInstance dup = inst;
      IndexSet s1 = gen::random_union_of_blocks(rng, inst.psi.at(e));
      IndexSet s2 = gen::random_union_of_blocks(rng, inst.psi.at(e));
      dup.families[i1].push_back(FamilyMember{pe, s1});
      dup.families[i2].push_back(FamilyMember{pe, s2});
      RemovalInstance merged = dup;
      IndexSet both;
      std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(both));
      merged.families[i1].back().set = both;
      merged.families[i2].pop_back();
      ConclusionResult a = evaluate_conclusion(dup);
      ConclusionResult b = evaluate_conclusion(merged);
      if (a.product_mass != b.product_mass || a.intersection_mass != b.intersection_mass ||
          a.holds != b.holds) {
        rep.duplicate_merge = false;
        note("merging duplicate principal up-sets changed the instance");
      }
    }

    // threshold step: with delta < 1/sum k_i a null product forces lambda(F) = 0
    if (base.product_mass.is_zero()) {
      std::size_t ksum = 0;
      for (auto& row : inst.families) ksum += row.size();
      Rational delta(1, static_cast<long>(ksum + 1));
      std::vector<std::vector<IndexSet>> b(d);
      std::vector<IndexSet> box(d);
      for (unsigned i = 0; i < d; ++i) {
        IndexSet all(inst.space.size());
        std::iota(all.begin(), all.end(), 0);
        box[i] = all;
        for (auto& m : inst.families[i]) {
          b[i].push_back(level_set(m.set, inst.algebra(m.family), inst.space, Rational(1) - delta));
          IndexSet tmp;
          std::set_intersection(box[i].begin(), box[i].end(), b[i].back().begin(), b[i].back().end(),
                                std::back_inserter(tmp));
          box[i] = tmp;
        }
      }
      Rational lf = inst.lambda.product_mass(box);
      Rational bound = base.product_mass;
      for (unsigned i = 0; i < d; ++i)
        for (std::size_t j = 0; j < inst.families[i].size(); ++j) {
          std::vector<IndexSet> cut = box;
          IndexSet tmp;
          const IndexSet& a = inst.families[i][j].set;
          std::set_difference(box[i].begin(), box[i].end(), a.begin(), a.end(), std::back_inserter(tmp));
          cut[i] = tmp;
          Rational piece = inst.lambda.product_mass(cut);
          if (piece > delta * lf) {
            rep.threshold = false;
            note("a slice of F off A exceeds delta * lambda(F)");
          }
          bound += piece;
        }
      if (lf > bound || !lf.is_zero()) {
        rep.threshold = false;
        note("lambda(F) is not forced to zero");
      }
    }
  }
  rep.instances = made;
  return rep;
}

}  // namespace ergolab
