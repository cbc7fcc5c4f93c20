#include "ergolab/words.hpp"

#include <algorithm>
#include <set>

#include "ergolab/errors.hpp"

namespace ergolab {

void validate_alphabet(unsigned k) {
  if (k < 1 || k > 9) throw InvalidInput("alphabet size must be between 1 and 9");
}

void validate_word(const Word& w, unsigned k) {
  validate_alphabet(k);
  for (std::size_t m = 0; m < w.size(); ++m)
    if (w[m] < '1' || w[m] > static_cast<char>('0' + k))
      throw InvalidInput("word \"" + w + "\" has letter '" + std::string(1, w[m]) +
                         "' outside [" + std::to_string(k) + "]");
}

std::uint64_t ipow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::size_t word_index(const Word& w, unsigned k) {
  std::size_t idx = 0;
  for (char c : w) idx = idx * k + static_cast<std::size_t>(c - '1');
  return idx;
}

Word word_from_index(std::size_t index, unsigned k, std::size_t length) {
  Word w(length, '1');
  for (std::size_t m = length; m-- > 0;) {
    w[m] = static_cast<char>('1' + index % k);
    index /= k;
  }
  return w;
}

std::vector<Word> all_words(unsigned k, std::size_t length) {
  std::vector<Word> out;
  const std::uint64_t n = ipow(k, length);
  for (std::size_t i = 0; i < n; ++i) out.push_back(word_from_index(i, k, length));
  return out;
}

void CombinatorialSubspace::validate(unsigned k) const {
  validate_word(templ, k);
  if (wildcards.size() != breakpoints.size())
    throw DimensionMismatch("need one wildcard set per breakpoint");
  std::size_t prev = 0;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (breakpoints[i] <= prev) throw InvalidInput("breakpoints must increase from 0");
    if (wildcards[i].empty())
      throw InvalidInput("wildcard set " + std::to_string(i + 1) + " is empty");
    for (auto m : wildcards[i])
      if (m <= prev || m > breakpoints[i])
        throw InvalidInput("wildcard position " + std::to_string(m) + " lies outside window " +
                           std::to_string(i + 1));
    prev = breakpoints[i];
  }
  if (templ.size() != (breakpoints.empty() ? templ.size() : breakpoints.back()))
    throw DimensionMismatch("template length must equal the last breakpoint");
}

Word subspace_embed(const CombinatorialSubspace& s, const Word& v) {
  if (v.size() != s.dim())
    throw DimensionMismatch("argument has length " + std::to_string(v.size()) + ", subspace has dim " +
                            std::to_string(s.dim()));
  Word out = s.templ;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (auto m : s.wildcards[i]) out.at(m - 1) = v[i];
  return out;
}

std::vector<Word> subspace_image(const CombinatorialSubspace& s, unsigned k) {
  std::vector<Word> out;
  for (auto& v : all_words(k, s.dim())) out.push_back(subspace_embed(s, v));
  return out;
}

Word letter_replace(const std::vector<unsigned>& e, unsigned i, const Word& w) {
  Word out = w;
  for (auto& c : out)
    if (std::find(e.begin(), e.end(), static_cast<unsigned>(c - '0')) != e.end())
      c = static_cast<char>('0' + i);
  return out;
}

namespace {

// positions get a letter 1..k or a wildcard class k+1..k+n; classes appear in order
template <class Fn>
void for_each_pattern(unsigned k, std::size_t n, std::size_t N, Fn&& fn) {
  std::vector<unsigned> pat(N);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t cls) -> void {
    if (pos == N) {
      if (cls == n) fn(pat);
      return;
    }
    if (n - cls > N - pos) return;
    for (unsigned a = 1; a <= k; ++a) {
      pat[pos] = a;
      self(self, pos + 1, cls);
    }
    if (cls > 0) {
      pat[pos] = k + static_cast<unsigned>(cls);
      self(self, pos + 1, cls);
    }
    if (cls < n) {
      pat[pos] = k + static_cast<unsigned>(cls + 1);
      self(self, pos + 1, cls + 1);
    }
  };
  rec(rec, 0, 0);
}

CombinatorialSubspace from_pattern(const std::vector<unsigned>& pat, unsigned k, std::size_t n) {
  CombinatorialSubspace s;
  s.templ.assign(pat.size(), '1');
  s.wildcards.assign(n, {});
  for (std::size_t m = 0; m < pat.size(); ++m) {
    if (pat[m] <= k) s.templ[m] = static_cast<char>('0' + pat[m]);
    else s.wildcards[pat[m] - k - 1].push_back(m + 1);
  }
  // windows end just before the next class starts
  for (std::size_t i = 0; i < n; ++i)
    s.breakpoints.push_back(i + 1 < n ? s.wildcards[i + 1].front() - 1 : pat.size());
  return s;
}

}  // namespace

std::vector<Line> enumerate_lines(unsigned k, std::size_t N) {
  validate_alphabet(k);
  if (N < 1) throw InvalidInput("lines need N >= 1");
  std::vector<Line> out;
  for_each_pattern(k, 1, N, [&](const std::vector<unsigned>& pat) {
    CombinatorialSubspace s = from_pattern(pat, k, 1);
    Line l;
    for (auto& w : subspace_image(s, k)) l.push_back(word_index(w, k));
    out.push_back(std::move(l));
  });
  std::sort(out.begin(), out.end());
  // over a one-letter alphabet every variable word collapses to the single point 1...1
  if (k == 1) return out;
  const std::size_t before = out.size();
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != before) throw InternalInconsistency("two line encodings share a point set");
  return out;
}

std::vector<CombinatorialSubspace> enumerate_subspaces(unsigned k, std::size_t n, std::size_t N) {
  validate_alphabet(k);
  std::vector<CombinatorialSubspace> out;
  std::set<std::vector<Word>> seen;
  for_each_pattern(k, n, N, [&](const std::vector<unsigned>& pat) {
    CombinatorialSubspace s = from_pattern(pat, k, n);
    if (seen.insert(subspace_image(s, k)).second) out.push_back(std::move(s));
  });
  return out;
}

}  // namespace ergolab
