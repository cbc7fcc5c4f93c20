#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ergolab {

using Mask = std::uint32_t;  // subset of [d], bit i = coordinate i (0-based)

// Upward-closed family of subsets of [d] of size >= 2; d <= 6.
class UpSet {
 public:
  UpSet() = default;
  explicit UpSet(unsigned d) : d_(check_dim(d)) {}

  static UpSet generate(unsigned d, const std::vector<Mask>& antichain);
  static UpSet principal(unsigned d, Mask e);
  static UpSet from_members(unsigned d, const std::vector<Mask>& members);

  unsigned dim() const { return d_; }
  std::uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  bool contains(Mask e) const { return (bits_ >> e) & 1U; }
  std::vector<Mask> members() const;
  std::vector<Mask> minimal_members() const;
  // least member size; 0 for the empty up-set
  unsigned depth() const;

  UpSet intersect(const UpSet& other) const;
  bool is_upward_closed() const;
  std::string to_string() const;  // e.g. {{1,2},{1,2,3}}, 1-based

  friend bool operator==(const UpSet&, const UpSet&) = default;
  friend bool operator<(const UpSet& a, const UpSet& b) { return a.bits_ < b.bits_; }

 private:
  static unsigned check_dim(unsigned d);
  unsigned d_ = 0;
  std::uint64_t bits_ = 0;
};

unsigned popcount(Mask m);
Mask full_mask(unsigned d);
std::string mask_to_string(Mask m);  // 1-based, e.g. {1,3}

// all up-sets (including the empty one), by brute force; d <= 4
std::vector<UpSet> enumerate_all_upsets(unsigned d);
// the principal up-sets <e> for every e with |e| >= 2
std::vector<UpSet> principal_upsets(unsigned d);
// <i> = principal up-set of {i} in the sense of supersets of size >= 2 containing i
UpSet star(unsigned d, unsigned i);

}  // namespace ergolab
