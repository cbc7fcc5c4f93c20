#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ergolab/measure.hpp"
#include "ergolab/words.hpp"

namespace ergolab {

struct LineFreeResult {
  std::size_t size = 0;
  IndexSet set;  // word indices, lexicographically least among maxima when exhaustive
  bool exhaustive = true;
  std::uint64_t nodes = 0;
};

// largest subset of [k]^N containing no combinatorial line; k^N <= 64
LineFreeResult max_line_free(unsigned k, std::size_t N, std::uint64_t budget = 50'000'000);

bool contains_line(const IndexSet& a, unsigned k, std::size_t N);

struct ForcingResult {
  bool holds = true;
  bool special_family_holds = true;  // subspaces u (+) w, u ranging over [k]^L
  bool general_holds = true;         // any L-dimensional subspace
  std::optional<IndexSet> counterexample;
  std::uint64_t sets_checked = 0;
};

// every A with d(A) > 1 - k^{-2L} contains an L-dimensional subspace
ForcingResult subspace_forcing_check(unsigned k, std::size_t L, std::size_t N,
                                     std::uint64_t budget = 10'000'000);

}  // namespace ergolab
