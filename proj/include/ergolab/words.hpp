#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ergolab {

// Letters are the characters '1'..'9'; k <= 9.
using Word = std::string;

void validate_word(const Word& w, unsigned k);
void validate_alphabet(unsigned k);

std::uint64_t ipow(std::uint64_t base, std::size_t exp);
// index in [k]^N, first letter most significant
std::size_t word_index(const Word& w, unsigned k);
Word word_from_index(std::size_t index, unsigned k, std::size_t length);
std::vector<Word> all_words(unsigned k, std::size_t length);

struct CombinatorialSubspace {
  std::vector<std::size_t> breakpoints;            // N_1 < ... < N_n
  std::vector<std::vector<std::size_t>> wildcards;  // I_1..I_n, 1-based positions
  Word templ;                                       // length N_n

  std::size_t dim() const { return breakpoints.size(); }
  std::size_t length() const { return templ.size(); }
  void validate(unsigned k) const;
  friend bool operator==(const CombinatorialSubspace&, const CombinatorialSubspace&) = default;
};

Word subspace_embed(const CombinatorialSubspace& s, const Word& v);
// images of all of [k]^n in lexicographic order of the argument
std::vector<Word> subspace_image(const CombinatorialSubspace& s, unsigned k);

// every letter in e becomes i
Word letter_replace(const std::vector<unsigned>& e, unsigned i, const Word& w);

// A line as the indices of phi(1), ..., phi(k) in [k]^N. For k = 1 one entry per
// variable word is returned, all equal.
using Line = std::vector<std::size_t>;
std::vector<Line> enumerate_lines(unsigned k, std::size_t N);
// every n-dimensional subspace of [k]^N, by its point set
std::vector<CombinatorialSubspace> enumerate_subspaces(unsigned k, std::size_t n, std::size_t N);

}  // namespace ergolab
