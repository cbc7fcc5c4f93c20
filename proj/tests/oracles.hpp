#pragma once

// Brute-force reference computations, written independently of the library algorithms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ergolab/rational.hpp"

namespace oracle {

using ergolab::Rational;
using Perm = std::vector<std::size_t>;

inline Perm compose_power(const Perm& p, std::uint64_t n) {
  Perm r(p.size());
  std::iota(r.begin(), r.end(), 0);
  for (std::uint64_t i = 0; i < n; ++i)
    for (auto& x : r) x = p[x];
  return r;
}

// least L >= 1 with every generator power equal to the identity
inline std::uint64_t joint_period(const std::vector<Perm>& gens) {
  Perm id(gens.empty() ? 0 : gens[0].size());
  std::iota(id.begin(), id.end(), 0);
  for (std::uint64_t L = 1;; ++L) {
    bool all = true;
    for (auto& g : gens) all = all && compose_power(g, L) == id;
    if (all) return L;
  }
}

// (1/L) sum_{n<L} sum_x w(x) prod_i [T_i^n x in A_i]
inline Rational cesaro_limit(const std::vector<Perm>& gens, const std::vector<Rational>& w,
                             const std::vector<std::vector<std::size_t>>& sets) {
  const std::uint64_t L = joint_period(gens);
  Rational total;
  for (std::uint64_t n = 0; n < L; ++n)
    for (std::size_t x = 0; x < w.size(); ++x) {
      bool in = true;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        auto y = compose_power(gens[i], n)[x];
        in = in && std::find(sets[i].begin(), sets[i].end(), y) != sets[i].end();
      }
      if (in) total += w[x];
    }
  return total / Rational(static_cast<long>(L));
}

// mass of one tuple under the averaged off-diagonal measure
inline Rational furstenberg_mass(const std::vector<Perm>& gens, const std::vector<Rational>& w,
                                 const std::vector<std::size_t>& tuple) {
  std::vector<std::vector<std::size_t>> sets;
  for (auto t : tuple) sets.push_back({t});
  return cesaro_limit(gens, w, sets);
}

// first n in [1, L] whose intersection has positive measure
inline std::uint64_t first_return(const std::vector<Perm>& gens, const std::vector<Rational>& w,
                                  const std::vector<std::size_t>& a) {
  const std::uint64_t L = joint_period(gens);
  for (std::uint64_t n = 1; n <= L; ++n)
    for (std::size_t x = 0; x < w.size(); ++x) {
      if (w[x].sign() <= 0) continue;
      bool in = true;
      for (auto& g : gens) {
        auto y = compose_power(g, n)[x];
        in = in && std::find(a.begin(), a.end(), y) != a.end();
      }
      if (in) return n;
    }
  return 0;
}

inline std::string word(std::size_t idx, unsigned k, std::size_t N) {
  std::string w(N, '1');
  for (std::size_t p = N; p-- > 0;) {
    w[p] = static_cast<char>('1' + idx % k);
    idx /= k;
  }
  return w;
}

// lines as sets of words, from all variable words over [k] u {x} with at least one x
inline std::vector<std::vector<std::string>> lines(unsigned k, std::size_t N) {
  std::vector<std::vector<std::string>> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < N; ++i) total *= (k + 1);
  for (std::size_t code = 0; code < total; ++code) {
    std::string v(N, '?');
    std::size_t c = code;
    bool var = false;
    for (std::size_t p = N; p-- > 0;) {
      std::size_t d = c % (k + 1);
      c /= (k + 1);
      v[p] = d == k ? 'x' : static_cast<char>('1' + d);
      var = var || d == k;
    }
    if (!var) continue;
    std::vector<std::string> l;
    for (unsigned a = 1; a <= k; ++a) {
      std::string w = v;
      std::replace(w.begin(), w.end(), 'x', static_cast<char>('0' + a));
      l.push_back(w);
    }
    out.push_back(l);
  }
  return out;
}

// largest line-free subset by trying every subset; k^N <= 16
inline std::size_t max_line_free_bruteforce(unsigned k, std::size_t N) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < N; ++i) n *= k;
  std::vector<std::uint32_t> masks;
  for (auto& l : lines(k, N)) {
    std::uint32_t m = 0;
    for (auto& w : l) {
      std::size_t idx = 0;
      for (char c : w) idx = idx * k + static_cast<std::size_t>(c - '1');
      m |= 1U << idx;
    }
    masks.push_back(m);
  }
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    bool free = true;
    for (auto m : masks)
      if ((s & m) == m) {
        free = false;
        break;
      }
    if (free) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(s)));
  }
  return best;
}

// correspondence measure straight from the definition: config of v lists [w v in A] over w
inline std::map<std::string, Rational> correspondence(const std::vector<std::string>& a, unsigned k,
                                                      std::size_t N, std::size_t L) {
  std::size_t nv = 1, nw = 1;
  for (std::size_t i = 0; i < N - L; ++i) nv *= k;
  for (std::size_t i = 0; i < L; ++i) nw *= k;
  std::map<std::string, Rational> out;
  for (std::size_t v = 0; v < nv; ++v) {
    std::string cfg;
    for (std::size_t w = 0; w < nw; ++w) {
      std::string full = word(w, k, L) + word(v, k, N - L);
      cfg += std::find(a.begin(), a.end(), full) != a.end() ? '1' : '0';
    }
    out[cfg] += Rational(1, static_cast<long>(nv));
  }
  return out;
}

// ||avg_{n,h} u_{n+h}||^2 and (1/(N H^2)) sum_n ||sum_h u_{n+h}||^2
inline std::pair<Rational, Rational> vdc(const std::vector<std::vector<Rational>>& u, std::size_t N,
                                         std::size_t H) {
  const std::size_t dim = u[0].size();
  std::vector<Rational> avg(dim);
  Rational rhs;
  for (std::size_t n = 1; n <= N; ++n) {
    std::vector<Rational> s(dim);
    for (std::size_t h = 1; h <= H; ++h)
      for (std::size_t c = 0; c < dim; ++c) s[c] += u[n + h - 1][c];
    for (std::size_t c = 0; c < dim; ++c) {
      avg[c] += s[c];
      rhs += s[c] * s[c];
    }
  }
  Rational lhs;
  for (auto& a : avg) lhs += a * a;
  lhs = lhs / Rational(static_cast<long>(N * N * H * H));
  rhs = rhs / Rational(static_cast<long>(N * H * H));
  return {lhs, rhs};
}

}  // namespace oracle
