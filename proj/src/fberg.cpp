#include "ergolab/fberg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ergolab/errors.hpp"

namespace ergolab {

namespace {

void check_coords(const FiniteZdSystem& sys, const std::vector<std::size_t>& coords) {
  if (coords.empty()) throw PreconditionError("index set must be nonempty");
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (coords[j] >= sys.dim())
      throw DimensionMismatch("coordinate " + std::to_string(coords[j]) + " exceeds dim " +
                              std::to_string(sys.dim()));
    if (j && coords[j] <= coords[j - 1]) throw InvalidInput("index set must be strictly increasing");
  }
}

std::vector<std::size_t> all_coords(const FiniteZdSystem& sys) {
  std::vector<std::size_t> c(sys.dim());
  std::iota(c.begin(), c.end(), 0);
  return c;
}

// mu{x : T^{n e_i} x in A_i for all i} for n = 0..L-1, summed
Rational period_sum(const FiniteZdSystem& sys, const std::vector<std::vector<char>>& in,
                    std::uint64_t L) {
  const std::size_t d = sys.dim();
  std::vector<std::vector<std::size_t>> cur(d, Permutation::identity(sys.size()).images());
  Rational total;
  for (std::uint64_t n = 0; n < L; ++n) {
    for (auto x : sys.space().support()) {
      bool ok = true;
      for (std::size_t i = 0; i < d && ok; ++i) ok = in[i][cur[i][x]];
      if (ok) total += sys.space().weight(x);
    }
    for (std::size_t i = 0; i < d; ++i)
      for (auto& y : cur[i]) y = sys.generator(i)(y);
  }
  return total;
}

std::vector<std::vector<char>> membership(const FiniteZdSystem& sys, const std::vector<IndexSet>& sets) {
  if (sets.size() != sys.dim()) throw DimensionMismatch("need one set per generator");
  std::vector<std::vector<char>> in(sets.size(), std::vector<char>(sys.size(), 0));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (auto x : sets[i]) in[i].at(x) = 1;
  return in;
}

bool invariant_under(const Coupling& c, const std::vector<const Permutation*>& maps) {
  std::map<Tuple, Rational> pushed;
  for (auto& [t, m] : c.mass()) {
    Tuple s(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) s[j] = (*maps[j])(t[j]);
    pushed.emplace(std::move(s), m);
  }
  return pushed == c.mass();
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational r;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

}  // namespace

std::uint64_t period(const FiniteZdSystem& sys, const std::vector<std::size_t>& coords) {
  std::uint64_t L = 1;
  if (coords.empty()) {
    for (auto& g : sys.generators()) L = std::lcm(L, g.order());
  } else {
    for (auto c : coords) L = std::lcm(L, sys.generator(c).order());
  }
  return L;
}

SimpleFunction nonconventional_average(const FiniteZdSystem& sys,
                                       const std::vector<SimpleFunction>& fs, std::uint64_t N) {
  if (fs.size() != sys.dim()) throw DimensionMismatch("need one function per generator");
  for (auto& f : fs)
    if (f.size() != sys.size()) throw DimensionMismatch("function length does not match the space");
  if (N == 0) throw PreconditionError("N must be at least 1");
  const std::size_t d = sys.dim();
  std::vector<std::vector<std::size_t>> cur(d, Permutation::identity(sys.size()).images());
  SimpleFunction out = SimpleFunction::constant(sys.size(), Rational(0));
  for (std::uint64_t n = 1; n <= N; ++n) {
    for (std::size_t i = 0; i < d; ++i)
      for (auto& y : cur[i]) y = sys.generator(i)(y);
    for (std::size_t x = 0; x < sys.size(); ++x) {
      Rational p(1);
      for (std::size_t i = 0; i < d && !p.is_zero(); ++i) p *= fs[i][cur[i][x]];
      out.values[x] += p;
    }
  }
  Rational scale(1, static_cast<long>(N));
  for (auto& v : out.values) v *= scale;
  return out;
}

Rational cesaro_limit_scalar(const FiniteZdSystem& sys, const std::vector<IndexSet>& sets) {
  auto in = membership(sys, sets);
  std::uint64_t L = period(sys);
  return period_sum(sys, in, L) / Rational(static_cast<long>(L));
}

FurstenbergJoining furstenberg_joining(const FiniteZdSystem& sys, std::vector<std::size_t> coords) {
  check_coords(sys, coords);
  const std::uint64_t L = period(sys, coords);
  const std::size_t k = coords.size();
  std::vector<std::vector<std::size_t>> cur(k, Permutation::identity(sys.size()).images());
  const IndexSet supp = sys.space().support();
  std::map<Tuple, Rational> mass;
  for (std::uint64_t n = 0; n < L; ++n) {
    for (auto x : supp) {
      Tuple t(k);
      for (std::size_t j = 0; j < k; ++j) t[j] = cur[j][x];
      mass[t] += sys.space().weight(x);
    }
    for (std::size_t j = 0; j < k; ++j)
      for (auto& y : cur[j]) y = sys.generator(coords[j])(y);
  }
  Rational inv(1, static_cast<long>(L));
  for (auto& [t, m] : mass) m *= inv;
  return FurstenbergJoining{sys, coords, Coupling::on_base(sys.space(), k, std::move(mass)), L};
}

FurstenbergJoining furstenberg_joining(const FiniteZdSystem& sys) {
  return furstenberg_joining(sys, all_coords(sys));
}

bool check_offdiag_invariance(const FurstenbergJoining& fj) {
  std::vector<const Permutation*> maps;
  for (auto c : fj.coords) maps.push_back(&fj.base.generator(c));
  return invariant_under(fj.coupling, maps);
}

bool check_diagonal_invariance(const FurstenbergJoining& fj) {
  for (auto& g : fj.base.generators()) {
    std::vector<const Permutation*> maps(fj.coords.size(), &g);
    if (!invariant_under(fj.coupling, maps)) return false;
  }
  return true;
}

Coupling project_joining(const FurstenbergJoining& fj, const std::vector<std::size_t>& sub) {
  std::vector<std::size_t> pos;
  for (auto c : sub) {
    auto it = std::find(fj.coords.begin(), fj.coords.end(), c);
    if (it == fj.coords.end())
      throw PreconditionError("coordinate " + std::to_string(c) + " is not in the joining's index set");
    pos.push_back(static_cast<std::size_t>(it - fj.coords.begin()));
  }
  return fj.coupling.project(pos);
}

bool check_project_lemma(const FurstenbergJoining& fj, const std::vector<std::size_t>& sub) {
  return project_joining(fj, sub) == furstenberg_joining(fj.base, sub).coupling;
}

SubgroupSpec difference_subgroup(std::size_t dim, const std::vector<std::size_t>& e) {
  SubgroupSpec s;
  for (std::size_t j = 1; j < e.size(); ++j) {
    IntVector v(dim, 0);
    v.at(e[0]) += 1;
    v.at(e[j]) -= 1;
    s.vectors.push_back(std::move(v));
  }
  return s;
}

Partition oblique_factor(const FiniteZdSystem& sys, const std::vector<std::size_t>& e) {
  return invariant_factor(sys, difference_subgroup(sys.dim(), e));
}

bool check_diag_lemma(const FurstenbergJoining& fj) {
  if (fj.coords.size() < 2) return true;
  Partition phi = oblique_factor(fj.base, fj.coords);
  for (auto& [t, m] : fj.coupling.mass())
    for (auto x : t)
      if (phi.block_of(x) != phi.block_of(t[0])) return false;
  return true;
}

Partition oblique_copy(const FurstenbergJoining& fj, const std::vector<std::size_t>& e) {
  if (e.size() < 2) throw PreconditionError("oblique copies need |e| >= 2");
  Partition phi = oblique_factor(fj.base, e);
  std::optional<Partition> first;
  for (auto c : e) {
    auto it = std::find(fj.coords.begin(), fj.coords.end(), c);
    if (it == fj.coords.end())
      throw PreconditionError("coordinate " + std::to_string(c) + " is not in the joining's index set");
    Partition p = fj.coupling.coordinate_pullback(static_cast<std::size_t>(it - fj.coords.begin()), phi);
    if (!first) first = p;
    else if (!(p == *first))
      throw InternalInconsistency("oblique pullbacks disagree through coordinate " + std::to_string(c));
  }
  return *first;
}

RecurrenceCertificate recurrence_certificate(const FiniteZdSystem& sys, const IndexSet& set) {
  std::vector<IndexSet> sets(sys.dim(), set);
  auto in = membership(sys, sets);
  const std::uint64_t L = period(sys);
  RecurrenceCertificate cert{period_sum(sys, in, L) / Rational(static_cast<long>(L)), std::nullopt};
  std::vector<std::vector<std::size_t>> cur(sys.dim(), Permutation::identity(sys.size()).images());
  for (std::uint64_t n = 1; n <= L && !cert.witness_n; ++n) {
    for (std::size_t i = 0; i < sys.dim(); ++i)
      for (auto& y : cur[i]) y = sys.generator(i)(y);
    for (auto x : sys.space().support()) {
      bool ok = true;
      for (std::size_t i = 0; i < sys.dim() && ok; ++i) ok = in[i][cur[i][x]];
      if (ok) {
        cert.witness_n = n;
        break;
      }
    }
  }
  return cert;
}

RecurrenceProfile::RecurrenceProfile(const FiniteZdSystem& sys) {
  if (sys.size() > 64) throw BudgetExceeded("recurrence profiles support at most 64 points");
  period_ = ergolab::period(sys);
  common_den_ = 1;
  for (auto& w : sys.space().weights()) common_den_ = lcm(common_den_, w.raw().get_den());
  std::map<std::uint64_t, std::size_t> slot;
  std::vector<std::vector<std::size_t>> cur(sys.dim(), Permutation::identity(sys.size()).images());
  for (std::uint64_t n = 0; n < period_; ++n) {
    for (auto x : sys.space().support()) {
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < sys.dim(); ++i) mask |= std::uint64_t{1} << cur[i][x];
      mpz_class w = sys.space().weight(x).raw().get_num() * (common_den_ / sys.space().weight(x).raw().get_den());
      auto [it, fresh] = slot.emplace(mask, entries_.size());
      if (fresh) entries_.push_back(Entry{mask, 0, period_});
      Entry& e = entries_[it->second];
      e.weight += w;
      e.first_n = std::min(e.first_n, n == 0 ? period_ : n);
    }
    for (std::size_t i = 0; i < sys.dim(); ++i)
      for (auto& y : cur[i]) y = sys.generator(i)(y);
  }
}

RecurrenceCertificate RecurrenceProfile::query(std::uint64_t set_mask) const {
  mpz_class total = 0;
  std::optional<std::uint64_t> witness;
  for (auto& e : entries_)
    if ((e.mask & ~set_mask) == 0) {
      total += e.weight;
      if (!witness || e.first_n < *witness) witness = e.first_n;
    }
  mpq_class q(total, common_den_ * mpz_class(std::to_string(period_)));
  q.canonicalize();
  return RecurrenceCertificate{Rational(q), witness};
}

bool multirec2_check(const FiniteZdSystem& sys, const std::vector<IndexSet>& sets) {
  Rational joint = cesaro_limit_scalar(sys, sets);
  if (joint.sign() > 0) return true;
  std::vector<char> all(sys.size(), 1);
  for (auto& s : sets) {
    std::vector<char> in(sys.size(), 0);
    for (auto x : s) in.at(x) = 1;
    for (std::size_t x = 0; x < sys.size(); ++x) all[x] = all[x] && in[x];
  }
  for (std::size_t x = 0; x < sys.size(); ++x)
    if (all[x] && sys.space().in_support(x)) return false;
  return true;
}

void VectorSequence::validate() const {
  if (entries.empty()) throw InvalidInput("vector sequence is empty");
  for (std::size_t n = 1; n < entries.size(); ++n)
    if (entries[n].size() != entries[0].size())
      throw DimensionMismatch("entry " + std::to_string(n) + " has dimension " +
                              std::to_string(entries[n].size()) + ", expected " +
                              std::to_string(entries[0].size()));
}

VdcResult vdc_inequality(const VectorSequence& seq, std::size_t N, std::size_t H) {
  seq.validate();
  if (N == 0 || H == 0) throw PreconditionError("N and H must be positive");
  if (N + H > seq.entries.size())
    throw PreconditionError("index n+h reaches " + std::to_string(N + H) + " but the sequence has " +
                            std::to_string(seq.entries.size()) + " entries");
  const std::size_t dim = seq.entries[0].size();
  auto u = [&](std::size_t i) -> const std::vector<Rational>& { return seq.entries[i - 1]; };

  std::vector<Rational> avg(dim, Rational(0));
  for (std::size_t n = 1; n <= N; ++n)
    for (std::size_t h = 1; h <= H; ++h)
      for (std::size_t k = 0; k < dim; ++k) avg[k] += u(n + h)[k];
  Rational scale = Rational(1) / Rational(static_cast<long>(N * H));
  for (auto& a : avg) a *= scale;

  Rational gram;
  for (std::size_t h1 = 1; h1 <= H; ++h1)
    for (std::size_t h2 = 1; h2 <= H; ++h2)
      for (std::size_t n = 1; n <= N; ++n) gram += dot(u(n + h1), u(n + h2));
  Rational rhs = gram / Rational(static_cast<long>(H * H * N));
  Rational lhs = dot(avg, avg);
  return VdcResult{lhs, rhs, lhs <= rhs};
}

std::vector<UpSet> structure_upsets(unsigned d) {
  std::vector<UpSet> out;
  if (d <= 4) {
    for (auto& u : enumerate_all_upsets(d))
      if (!u.empty()) out.push_back(u);
  } else {
    out = principal_upsets(d);
  }
  return out;
}

FbergStructureReport fberg_structure_predicates(const FiniteZdSystem& sys) {
  const std::size_t d = sys.dim();
  if (d < 2) throw PreconditionError("structure predicates need d >= 2");
  FurstenbergJoining fj = furstenberg_joining(sys);
  FbergStructureReport rep;

  std::vector<Partition> factors, subs;
  for (std::size_t i = 0; i < d; ++i) {
    factors.push_back(Partition::singletons(sys.size()));
    Partition s = Partition::trivial(sys.size());
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) s = s.common_refinement(oblique_factor(sys, {std::min(i, j), std::max(i, j)}));
    subs.push_back(s);
  }
  auto c1 = relative_independence(factors, subs, fj.coupling);
  rep.clause1 = JoiningCheck{c1.independent, c1.witness};

  const ExactProbabilitySpace space = fj.coupling.support_space();
  std::map<Mask, Partition> copies;
  auto copy_of = [&](Mask e) -> const Partition& {
    auto it = copies.find(e);
    if (it != copies.end()) return it->second;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < d; ++i)
      if ((e >> i) & 1U) members.push_back(i);
    return copies.emplace(e, oblique_copy(fj, members)).first->second;
  };
  std::map<std::uint64_t, Partition> algebras;
  auto algebra_of = [&](const UpSet& u) -> const Partition& {
    auto it = algebras.find(u.bits());
    if (it != algebras.end()) return it->second;
    Partition p = Partition::trivial(space.size());
    for (Mask e : u.minimal_members()) p = p.common_refinement(copy_of(e));
    return algebras.emplace(u.bits(), p).first->second;
  };

  auto ups = structure_upsets(static_cast<unsigned>(d));
  for (std::size_t a = 0; a < ups.size() && rep.clause2.holds; ++a)
    for (std::size_t b = a + 1; b < ups.size(); ++b) {
      const Partition& meet = algebra_of(ups[a].intersect(ups[b]));
      auto r = relative_independence({algebra_of(ups[a]), algebra_of(ups[b])}, {meet, meet}, space);
      ++rep.pairs_checked;
      if (!r.independent) {
        rep.clause2 = JoiningCheck{false, r.witness};
        rep.clause2_pair = std::make_pair(ups[a], ups[b]);
        break;
      }
    }
  return rep;
}

}  // namespace ergolab
