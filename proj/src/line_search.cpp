#include "ergolab/line_search.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "ergolab/errors.hpp"

namespace ergolab {

namespace {

using Bits = std::uint64_t;

Bits bit(std::size_t i) { return Bits{1} << i; }

struct LineHypergraph {
  std::size_t n = 0;
  std::vector<Bits> lines;
  std::vector<std::vector<Bits>> through;  // lines containing each point
};

LineHypergraph build(unsigned k, std::size_t N) {
  LineHypergraph g;
  g.n = ipow(k, N);
  g.through.resize(g.n);
  for (auto& l : enumerate_lines(k, N)) {
    Bits m = 0;
    for (auto p : l) m |= bit(p);
    g.lines.push_back(m);
    for (auto p : l) g.through[p].push_back(m);
  }
  return g;
}

// Include-first branch and bound; points are decided in increasing order.
class Search {
 public:
  Search(const LineHypergraph& g, std::uint64_t budget) : g_(g), budget_(budget) {}

  // largest line-free set among those with included in `forced` and nothing from `banned`
  std::size_t maximum(Bits forced, Bits banned) {
    best_ = 0;
    target_ = 0;
    find_first_ = false;
    run(forced, banned);
    return best_;
  }

  // lexicographically least line-free set of the given size
  std::optional<Bits> first_of_size(std::size_t size) {
    target_ = size;
    find_first_ = true;
    found_.reset();
    best_ = size - 1;
    run(0, 0);
    return found_;
  }

  bool over_budget() const { return over_; }
  std::uint64_t nodes() const { return nodes_; }
  Bits best_set() const { return best_set_; }

 private:
  void run(Bits forced, Bits banned) {
    Bits inc = 0;
    for (std::size_t p = 0; p < g_.n; ++p)
      if (forced & bit(p)) inc |= bit(p);
    dfs(0, inc, banned);
  }

  std::size_t bound(std::size_t pos, Bits inc, Bits banned) const {
    Bits open = 0;
    for (std::size_t p = pos; p < g_.n; ++p)
      if (!(banned & bit(p))) open |= bit(p);
    Bits avail = inc | open;
    std::size_t removals = 0;
    Bits used = 0;
    for (Bits l : g_.lines)
      if ((l & avail) == l && (l & open & used) == 0 && (l & open) != 0) {
        used |= l & open;
        ++removals;
      }
    return static_cast<std::size_t>(std::popcount(inc)) + static_cast<std::size_t>(std::popcount(open)) -
           removals;
  }

  void dfs(std::size_t pos, Bits inc, Bits banned) {
    if (over_ || (find_first_ && found_)) return;
    if (++nodes_ > budget_) {
      over_ = true;
      return;
    }
    if (bound(pos, inc, banned) <= best_) return;
    if (pos == g_.n) {
      best_ = static_cast<std::size_t>(std::popcount(inc));
      best_set_ = inc;
      if (find_first_) found_ = inc;
      return;
    }
    const Bits p = bit(pos);
    if (inc & p) {
      dfs(pos + 1, inc, banned);
      return;
    }
    if (!(banned & p)) {
      bool ok = true;
      for (Bits l : g_.through[pos])
        if (((inc | p) & l) == l) {
          ok = false;
          break;
        }
      if (ok) dfs(pos + 1, inc | p, banned);
    }
    dfs(pos + 1, inc, banned | p);
  }

  const LineHypergraph& g_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool over_ = false;
  std::size_t best_ = 0;
  Bits best_set_ = 0;
  std::size_t target_ = 0;
  bool find_first_ = false;
  std::optional<Bits> found_;
};

// orbit of the word 1...1 under letter and coordinate permutations: the constant words
Bits constant_words(unsigned k, std::size_t N) {
  Bits m = 0;
  for (unsigned a = 1; a <= k; ++a) m |= bit(word_index(Word(N, static_cast<char>('0' + a)), k));
  return m;
}

IndexSet to_set(Bits b) {
  IndexSet s;
  for (std::size_t p = 0; p < 64; ++p)
    if (b & bit(p)) s.push_back(p);
  return s;
}

}  // namespace

bool contains_line(const IndexSet& a, unsigned k, std::size_t N) {
  std::vector<char> in(ipow(k, N), 0);
  for (auto x : a) in.at(x) = 1;
  for (auto& l : enumerate_lines(k, N))
    if (std::all_of(l.begin(), l.end(), [&](std::size_t p) { return in[p]; })) return true;
  return false;
}

LineFreeResult max_line_free(unsigned k, std::size_t N, std::uint64_t budget) {
  validate_alphabet(k);
  if (N < 1) throw InvalidInput("N must be at least 1");
  if (ipow(k, N) > 64) throw BudgetExceeded("max_line_free supports at most 64 points");
  LineHypergraph g = build(k, N);
  LineFreeResult res;
  if (k == 1) {
    // the single point is itself a line
    return res;
  }

  // A line-free set meeting the constant words can be moved to contain 1...1.
  Search s(g, budget);
  const Bits consts = constant_words(k, N);
  std::size_t with_first = s.maximum(bit(0), 0);
  Bits set_a = s.best_set();
  std::size_t without = 0;
  Bits set_b = 0;
  if (!s.over_budget()) {
    Search t(g, budget);
    without = t.maximum(0, consts);
    set_b = t.best_set();
    res.nodes = s.nodes() + t.nodes();
    res.exhaustive = !t.over_budget();
  } else {
    res.nodes = s.nodes();
    res.exhaustive = false;
  }
  const std::size_t best = std::max(with_first, without);
  Bits best_set = with_first >= without ? set_a : set_b;
  if (res.exhaustive && best > 0) {
    Search u(g, budget);
    auto first = u.first_of_size(best);
    res.nodes += u.nodes();
    if (u.over_budget()) res.exhaustive = false;
    if (first) best_set = *first;
  }
  res.size = best;
  res.set = to_set(best_set);
  return res;
}

ForcingResult subspace_forcing_check(unsigned k, std::size_t L, std::size_t N, std::uint64_t budget) {
  validate_alphabet(k);
  if (L < 1 || N < L) throw InvalidInput("need 1 <= L <= N");
  const std::uint64_t n = ipow(k, N);
  if (n > 64) throw BudgetExceeded("forcing check supports at most 64 points");
  const std::uint64_t q = ipow(k, 2 * L);
  // |A| * k^{2L} > k^N (k^{2L} - 1)  <=>  |complement| * q < n

  std::vector<Bits> special, general;
  for (auto& w : all_words(k, N - L)) {
    Bits m = 0;
    for (auto& u : all_words(k, L)) m |= bit(word_index(u + w, k));
    special.push_back(m);
  }
  for (auto& s : enumerate_subspaces(k, L, N)) {
    Bits m = 0;
    for (auto& w : subspace_image(s, k)) m |= bit(word_index(w, k));
    general.push_back(m);
  }
  const Bits full = n == 64 ? ~Bits{0} : bit(n) - 1;

  ForcingResult res;
  auto visit = [&](Bits comp) {
    Bits a = full & ~comp;
    if (++res.sets_checked > budget) throw BudgetExceeded("forcing check exceeded its budget");
    bool sp = std::any_of(special.begin(), special.end(), [&](Bits m) { return (m & a) == m; });
    bool ge = std::any_of(general.begin(), general.end(), [&](Bits m) { return (m & a) == m; });
    if (!sp) res.special_family_holds = false;
    if (!ge) res.general_holds = false;
    if ((!sp || !ge) && !res.counterexample) res.counterexample = to_set(a);
  };
  auto rec = [&](auto&& self, std::size_t start, std::size_t left, Bits comp) -> void {
    if (left == 0) {
      visit(comp);
      return;
    }
    for (std::size_t p = start; p < n; ++p) self(self, p + 1, left - 1, comp | bit(p));
  };
  for (std::size_t c = 0; c * q < n; ++c) rec(rec, 0, c, 0);
  res.holds = res.special_family_holds && res.general_holds;
  return res;
}

}  // namespace ergolab
