#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ergolab/measure.hpp"
#include "ergolab/upset.hpp"
#include "ergolab/zd_system.hpp"

namespace ergolab {

// lcm of the orders of the listed generators (all of them when coords is empty)
std::uint64_t period(const FiniteZdSystem& sys, const std::vector<std::size_t>& coords = {});

// (1/N) sum_{n=1}^{N} prod_i f_i(T^{n e_i} x)
SimpleFunction nonconventional_average(const FiniteZdSystem& sys,
                                       const std::vector<SimpleFunction>& fs, std::uint64_t N);

// lim (1/N) sum_n mu(T^{-n e_1} A_1 cap ... cap T^{-n e_d} A_d), averaged over one period
Rational cesaro_limit_scalar(const FiniteZdSystem& sys, const std::vector<IndexSet>& sets);

struct FurstenbergJoining {
  FiniteZdSystem base;
  std::vector<std::size_t> coords;  // the index set e, 0-based and increasing
  Coupling coupling;                // arity |e|
  std::uint64_t period = 1;
};

FurstenbergJoining furstenberg_joining(const FiniteZdSystem& sys, std::vector<std::size_t> coords);
FurstenbergJoining furstenberg_joining(const FiniteZdSystem& sys);

// invariance under T^{e_{i_1}} x ... x T^{e_{i_k}}
bool check_offdiag_invariance(const FurstenbergJoining& fj);
// invariance under T^{v} x ... x T^{v} for each generator v
bool check_diagonal_invariance(const FurstenbergJoining& fj);
// pushforward onto the coordinates sub (a subset of fj.coords)
Coupling project_joining(const FurstenbergJoining& fj, const std::vector<std::size_t>& sub);
bool check_project_lemma(const FurstenbergJoining& fj, const std::vector<std::size_t>& sub);
// Phi_e-blocks of all coordinates coincide on the support
bool check_diag_lemma(const FurstenbergJoining& fj);

SubgroupSpec difference_subgroup(std::size_t dim, const std::vector<std::size_t>& e);
Partition oblique_factor(const FiniteZdSystem& sys, const std::vector<std::size_t>& e);
// partition of the support tuples of fj.coupling (support_space order)
Partition oblique_copy(const FurstenbergJoining& fj, const std::vector<std::size_t>& e);

struct RecurrenceCertificate {
  Rational limit;
  std::optional<std::uint64_t> witness_n;
};

RecurrenceCertificate recurrence_certificate(const FiniteZdSystem& sys, const IndexSet& set);

// Per-system precomputation answering recurrence queries for many sets; |X| <= 64.
class RecurrenceProfile {
 public:
  explicit RecurrenceProfile(const FiniteZdSystem& sys);
  RecurrenceCertificate query(std::uint64_t set_mask) const;
  std::uint64_t period() const { return period_; }

 private:
  struct Entry {
    std::uint64_t mask;
    mpz_class weight;             // numerator over common_den_
    std::uint64_t first_n;        // least n in [1, L] realizing this mask
  };
  std::vector<Entry> entries_;
  mpz_class common_den_;
  std::uint64_t period_ = 1;
};

bool multirec2_check(const FiniteZdSystem& sys, const std::vector<IndexSet>& sets);

struct VectorSequence {
  std::vector<std::vector<Rational>> entries;  // entries[0] is u_1
  void validate() const;
};

struct VdcResult {
  Rational lhs;
  Rational rhs;
  bool holds = true;
};

VdcResult vdc_inequality(const VectorSequence& seq, std::size_t N, std::size_t H);

struct FbergStructureReport {
  JoiningCheck clause1;
  JoiningCheck clause2;
  std::optional<std::pair<UpSet, UpSet>> clause2_pair;
  std::size_t pairs_checked = 0;
};

std::vector<UpSet> structure_upsets(unsigned d);
FbergStructureReport fberg_structure_predicates(const FiniteZdSystem& sys);

}  // namespace ergolab
