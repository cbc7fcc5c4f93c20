#pragma once

#include <cstdint>
#include <random>

#include "ergolab/measure.hpp"
#include "ergolab/zd_system.hpp"

namespace ergolab::gen {

using Rng = std::mt19937_64;

std::size_t index(Rng& rng, std::size_t n);  // uniform in [0, n)
bool coin(Rng& rng);

// Disjoint union of random finite rotations; labels are shuffled.
// Exactly n points when exact_size, otherwise 1..n.
FiniteZdSystem random_system(Rng& rng, std::size_t n, std::size_t dim, bool exact_size = false,
                             bool allow_null = false);
ExactProbabilitySpace random_space(Rng& rng, std::size_t n, bool allow_null = false);
Partition random_partition(Rng& rng, std::size_t n);
Partition random_coarsening(Rng& rng, const Partition& p);
IndexSet random_subset(Rng& rng, std::size_t n);
IndexSet random_union_of_blocks(Rng& rng, const Partition& p);
Rational random_rational(Rng& rng, long max_abs_num, long max_den);

std::vector<Partition> all_partitions(std::size_t n);

}  // namespace ergolab::gen
