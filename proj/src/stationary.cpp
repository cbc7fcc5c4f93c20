#include "ergolab/stationary.hpp"

#include <algorithm>
#include <set>

#include "ergolab/errors.hpp"
#include "ergolab/fberg.hpp"
#include "ergolab/removal.hpp"

namespace ergolab {

namespace {

using Law = std::map<std::string, Rational>;

Law pullback(const StationaryLawTruncation& law, const std::vector<std::size_t>& coords) {
  Law out;
  for (auto& [cfg, m] : law.mass) {
    std::string key(coords.size(), '0');
    for (std::size_t j = 0; j < coords.size(); ++j) key[j] = cfg[coords[j]];
    out[key] += m;
  }
  return out;
}

std::vector<std::vector<Word>> subspace_images(const StationaryLawTruncation& law, std::size_t n) {
  std::vector<std::vector<Word>> out;
  if (n == 0) {
    for (auto& w : law.coordinates()) out.push_back({w});
    return out;
  }
  for (std::size_t N = n; N <= law.depth; ++N)
    for (auto& s : enumerate_subspaces(law.k, n, N)) out.push_back(subspace_image(s, law.k));
  return out;
}

std::vector<std::size_t> coords_of(const StationaryLawTruncation& law, const std::vector<Word>& ws) {
  std::vector<std::size_t> c;
  for (auto& w : ws) c.push_back(law.coordinate_of(w));
  return c;
}

Mask letters_mask(const std::vector<unsigned>& e, unsigned k) {
  Mask m = 0;
  for (unsigned a : e) {
    if (a < 1 || a > k) throw InvalidInput("letter " + std::to_string(a) + " outside [k]");
    m |= Mask{1} << (a - 1);
  }
  return m;
}

}  // namespace

void StationaryLawTruncation::validate() const {
  validate_alphabet(k);
  if (depth < 1) throw InvalidInput("law depth must be at least 1");
  if (values.empty() || values.size() > 10) throw InvalidInput("a law needs between 1 and 10 values");
  std::set<std::string> seen(values.begin(), values.end());
  if (seen.size() != values.size()) throw InvalidInput("law values must be distinct");
  const std::size_t w = coordinates().size();
  Rational total;
  for (auto& [cfg, m] : mass) {
    if (cfg.size() != w)
      throw DimensionMismatch("configuration \"" + cfg + "\" has length " + std::to_string(cfg.size()) +
                              ", expected " + std::to_string(w));
    for (char c : cfg)
      if (c < '0' || c >= static_cast<char>('0' + values.size()))
        throw InvalidInput("configuration \"" + cfg + "\" uses an unknown value");
    if (m.sign() <= 0) throw InvalidInput("configuration \"" + cfg + "\" has non-positive mass");
    total += m;
  }
  if (total != Rational(1)) throw InvalidInput("law mass sums to " + total.to_string() + ", not 1/1");
}

std::vector<Word> StationaryLawTruncation::coordinates() const {
  std::vector<Word> out;
  for (std::size_t len = 1; len <= depth; ++len)
    for (auto& w : all_words(k, len)) out.push_back(w);
  return out;
}

std::size_t StationaryLawTruncation::coordinate_of(const Word& w) const {
  if (w.empty() || w.size() > depth) throw InvalidInput("word \"" + w + "\" is outside the truncation");
  validate_word(w, k);
  std::size_t offset = 0;
  for (std::size_t len = 1; len < w.size(); ++len) offset += ipow(k, len);
  return offset + word_index(w, k);
}

StationaryLawTruncation iid_law(unsigned k, std::size_t depth, const ExactProbabilitySpace& nu) {
  StationaryLawTruncation law;
  law.k = k;
  law.depth = depth;
  law.values = nu.labels();
  const std::size_t w = law.coordinates().size();
  const IndexSet supp = nu.support();
  std::vector<std::size_t> pos(w, 0);
  while (true) {
    std::string cfg(w, '0');
    Rational m(1);
    for (std::size_t j = 0; j < w; ++j) {
      cfg[j] = static_cast<char>('0' + supp[pos[j]]);
      m *= nu.weight(supp[pos[j]]);
    }
    law.mass.emplace(cfg, m);
    std::size_t j = w;
    while (j > 0 && ++pos[j - 1] == supp.size()) pos[--j] = 0;
    if (j == 0) break;
  }
  law.validate();
  return law;
}

StationarityResult strong_stationarity_check(const StationaryLawTruncation& law, std::size_t dim_cap) {
  law.validate();
  if (dim_cap > law.depth) throw PreconditionError("dimension cap exceeds the truncation depth");
  StationarityResult res;
  for (std::size_t n = 0; n <= dim_cap; ++n) {
    auto images = subspace_images(law, n);
    if (images.empty()) continue;
    Law ref = pullback(law, coords_of(law, images[0]));
    for (auto& img : images) {
      ++res.subspaces_checked;
      if (pullback(law, coords_of(law, img)) != ref) {
        res.holds = false;
        res.witness = StationarityWitness{n, images[0], img};
        return res;
      }
    }
  }
  return res;
}

LawMarginals marginals(const StationaryLawTruncation& law) {
  auto st = strong_stationarity_check(law, 1);
  if (!st.holds) throw PreconditionError("law is not stationary in dimensions 0 and 1");
  Law pt = pullback(law, {law.coordinate_of("1")});
  std::vector<Rational> w(law.values.size(), Rational(0));
  for (auto& [key, m] : pt) w[static_cast<std::size_t>(key[0] - '0')] = m;
  ExactProbabilitySpace point(law.values, w);

  std::optional<Coupling> line;
  std::size_t compared = 0;
  for (auto& img : subspace_images(law, 1)) {
    std::map<Tuple, Rational> mass;
    for (auto& [key, m] : pullback(law, coords_of(law, img))) {
      Tuple t;
      for (char c : key) t.push_back(static_cast<std::size_t>(c - '0'));
      mass.emplace(std::move(t), m);
    }
    Coupling c = Coupling::on_base(point, law.k, std::move(mass));
    if (!line) line = c;
    else if (!(c == *line)) throw InternalInconsistency("line marginal depends on the chosen line");
    ++compared;
  }
  return LawMarginals{point, *line, compared};
}

Partition insensitive_algebra(const LawMarginals& m, const std::vector<unsigned>& e) {
  const unsigned k = static_cast<unsigned>(m.line.arity());
  const Mask mask = letters_mask(e, k);
  Partition graph = insensitive_partition(m.line, mask);
  const std::size_t nk = m.point.size();
  if (nk <= 16) {
    for (std::uint32_t pick = 0; pick < (1U << nk); ++pick) {
      IndexSet a;
      for (std::size_t x = 0; x < nk; ++x)
        if ((pick >> x) & 1U) a.push_back(x);
      bool null_diff = true;
      for (auto& t : m.line.support_tuples()) {
        std::optional<bool> side;
        for (unsigned i = 0; i < k && null_diff; ++i) {
          if (!((mask >> i) & 1U)) continue;
          bool in = (pick >> t[i]) & 1U;
          if (!side) side = in;
          else if (*side != in) null_diff = false;
        }
        if (!null_diff) break;
      }
      if (null_diff != graph.is_union_of_blocks(a))
        throw InternalInconsistency("insensitive algebra characterizations disagree");
    }
  }
  return graph;
}

LineStructureReport line_structure_predicates(const StationaryLawTruncation& law) {
  LawMarginals m = marginals(law);
  const unsigned k = law.k;
  const std::size_t nk = m.point.size();
  LineStructureReport rep;
  if (k < 2) throw PreconditionError("line structure predicates need k >= 2");

  std::vector<Partition> factors, subs;
  for (unsigned i = 0; i < k; ++i) {
    factors.push_back(Partition::singletons(nk));
    Partition s = Partition::trivial(nk);
    for (unsigned j = 0; j < k; ++j)
      if (j != i) s = s.common_refinement(insensitive_algebra(m, {i + 1, j + 1}));
    subs.push_back(s);
  }
  auto r1 = relative_independence(factors, subs, m.line);
  rep.line1 = JoiningCheck{r1.independent, r1.witness};

  const ExactProbabilitySpace space = m.line.support_space();
  std::map<Mask, Partition> dagger;
  for (Mask e = 0; e <= full_mask(k); ++e) {
    if (popcount(e) < 2) continue;
    std::vector<unsigned> letters;
    unsigned least = k;
    for (unsigned i = 0; i < k; ++i)
      if ((e >> i) & 1U) {
        letters.push_back(i + 1);
        least = std::min(least, i);
      }
    dagger.emplace(e, m.line.coordinate_pullback(least, insensitive_algebra(m, letters)));
  }
  auto alg = [&](const UpSet& u) {
    Partition p = Partition::trivial(space.size());
    for (Mask e : u.members()) p = p.common_refinement(dagger.at(e));
    return p;
  };
  auto ups = structure_upsets(k);
  for (std::size_t a = 0; a < ups.size() && rep.line2.holds; ++a)
    for (std::size_t b = a + 1; b < ups.size(); ++b) {
      Partition meet = alg(ups[a].intersect(ups[b]));
      auto r = relative_independence({alg(ups[a]), alg(ups[b])}, {meet, meet}, space);
      if (!r.independent) {
        rep.line2 = JoiningCheck{false, r.witness};
        rep.line2_pair = std::make_pair(ups[a], ups[b]);
        break;
      }
    }

  // candidate sets per coordinate: all subsets of K when small, else unions of blocks of Phi_<i>
  std::vector<std::vector<IndexSet>> cands(k);
  const bool small = nk * k <= 16;
  for (unsigned i = 0; i < k; ++i) {
    if (small) {
      for (std::uint32_t pick = 0; pick < (1U << nk); ++pick) {
        IndexSet a;
        for (std::size_t x = 0; x < nk; ++x)
          if ((pick >> x) & 1U) a.push_back(x);
        cands[i].push_back(a);
      }
    } else {
      const Partition& p = subs[i];
      if (p.num_blocks() > 12) throw BudgetExceeded("too many blocks for the implication check");
      for (std::uint32_t pick = 0; pick < (1U << p.num_blocks()); ++pick) {
        IndexSet a;
        for (std::size_t b = 0; b < p.num_blocks(); ++b)
          if ((pick >> b) & 1U) a.insert(a.end(), p.block(b).begin(), p.block(b).end());
        std::sort(a.begin(), a.end());
        cands[i].push_back(a);
      }
    }
  }
  std::vector<std::size_t> pos(k, 0);
  while (rep.infdhj2) {
    std::vector<IndexSet> sets(k);
    std::vector<char> all(nk, 1);
    for (unsigned i = 0; i < k; ++i) {
      sets[i] = cands[i][pos[i]];
      std::vector<char> in(nk, 0);
      for (auto x : sets[i]) in[x] = 1;
      for (std::size_t x = 0; x < nk; ++x) all[x] = all[x] && in[x];
    }
    ++rep.tuples_checked;
    if (m.line.product_mass(sets).is_zero()) {
      Rational meet;
      for (std::size_t x = 0; x < nk; ++x)
        if (all[x]) meet += m.point.weight(x);
      if (meet.sign() > 0) {
        rep.infdhj2 = false;
        rep.infdhj2_witness = sets;
      }
    }
    unsigned i = k;
    while (i > 0 && ++pos[i - 1] == cands[i - 1].size()) pos[--i] = 0;
    if (i == 0) break;
  }
  return rep;
}

Rational CorrespondenceMeasure::point_event(std::size_t w) const {
  Rational r;
  for (auto& [cfg, m] : mass)
    if (cfg.at(w) == '1') r += m;
  return r;
}

Rational CorrespondenceMeasure::line_event(const std::vector<std::size_t>& points) const {
  Rational r;
  for (auto& [cfg, m] : mass)
    if (std::all_of(points.begin(), points.end(), [&](std::size_t p) { return cfg.at(p) == '1'; }))
      r += m;
  return r;
}

CorrespondenceMeasure build_correspondence(const IndexSet& a, unsigned k, std::size_t N, std::size_t L) {
  validate_alphabet(k);
  if (L < 1 || L >= N) throw PreconditionError("need 1 <= L < N");
  const std::size_t M = N - L;
  const std::uint64_t nv = ipow(k, M), nw = ipow(k, L);
  std::vector<char> in(ipow(k, N), 0);
  for (auto x : a) in.at(x) = 1;
  CorrespondenceMeasure mu{k, L, {}};
  const Rational unit(1, static_cast<long>(nv));
  for (std::uint64_t v = 0; v < nv; ++v) {
    std::string cfg(nw, '0');
    for (std::uint64_t w = 0; w < nw; ++w)
      if (in[w * nv + v]) cfg[w] = '1';
    mu.mass[cfg] += unit;
  }
  return mu;
}

bool correspondence_identities(const CorrespondenceMeasure& mu, const IndexSet& a, std::size_t N) {
  const std::size_t M = N - mu.L;
  const std::uint64_t nv = ipow(mu.k, M), nw = ipow(mu.k, mu.L);
  std::vector<char> in(ipow(mu.k, N), 0);
  for (auto x : a) in.at(x) = 1;
  for (std::uint64_t w = 0; w < nw; ++w) {
    long count = 0;
    for (std::uint64_t v = 0; v < nv; ++v) count += in[w * nv + v];
    if (mu.point_event(w) != Rational(count, static_cast<long>(nv))) return false;
  }
  for (auto& line : enumerate_lines(mu.k, mu.L)) {
    long count = 0;
    for (std::uint64_t v = 0; v < nv; ++v)
      count += std::all_of(line.begin(), line.end(), [&](std::size_t w) { return in[w * nv + v] != 0; });
    if (mu.line_event(line) != Rational(count, static_cast<long>(nv))) return false;
  }
  return true;
}

bool check_inf_dhj_premises(const CorrespondenceMeasure& mu, const Rational& delta) {
  const std::uint64_t nw = ipow(mu.k, mu.L);
  for (std::uint64_t w = 0; w < nw; ++w)
    if (mu.point_event(w) < delta) return false;
  return true;
}

bool check_inf_dhj_premises(const StationaryLawTruncation& law, const Rational& delta) {
  law.validate();
  auto it = std::find(law.values.begin(), law.values.end(), "1");
  if (it == law.values.end()) return delta.sign() <= 0;
  const char one = static_cast<char>('0' + (it - law.values.begin()));
  const std::size_t w = law.coordinates().size();
  for (std::size_t c = 0; c < w; ++c) {
    Rational r;
    for (auto& [cfg, m] : law.mass)
      if (cfg[c] == one) r += m;
    if (r < delta) return false;
  }
  return true;
}

StationaryLawTruncation law_from_correspondence(const CorrespondenceMeasure& mu) {
  if (mu.L != 1) throw PreconditionError("only L = 1 correspondence measures are depth-1 laws");
  StationaryLawTruncation law{mu.k, 1, {"0", "1"}, mu.mass};
  law.validate();
  return law;
}

}  // namespace ergolab
