#include "ergolab/upset.hpp"

#include <algorithm>
#include <bit>

#include "ergolab/errors.hpp"

namespace ergolab {

unsigned popcount(Mask m) { return static_cast<unsigned>(std::popcount(m)); }

Mask full_mask(unsigned d) { return (Mask{1} << d) - 1; }

std::string mask_to_string(Mask m) {
  std::string s = "{";
  bool first = true;
  for (unsigned i = 0; i < 32; ++i)
    if ((m >> i) & 1U) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  return s + "}";
}

unsigned UpSet::check_dim(unsigned d) {
  if (d > 6) throw InvalidInput("up-sets are supported for d <= 6");
  return d;
}

UpSet UpSet::generate(unsigned d, const std::vector<Mask>& antichain) {
  UpSet u(d);
  const Mask full = full_mask(d);
  for (Mask e : antichain) {
    if ((e & ~full) != 0) throw InvalidInput("subset " + mask_to_string(e) + " exceeds [d]");
    if (popcount(e) < 2) throw InvalidInput("up-set member " + mask_to_string(e) + " has size < 2");
    for (Mask v = 0; v <= full; ++v)
      if ((v & e) == e) u.bits_ |= std::uint64_t{1} << v;
  }
  return u;
}

UpSet UpSet::principal(unsigned d, Mask e) { return generate(d, {e}); }

UpSet UpSet::from_members(unsigned d, const std::vector<Mask>& members) {
  UpSet u = generate(d, members);
  UpSet raw(d);
  for (Mask e : members) raw.bits_ |= std::uint64_t{1} << e;
  if (raw.bits_ != u.bits_) throw InvalidInput("member list is not upward closed");
  return u;
}

std::vector<Mask> UpSet::members() const {
  std::vector<Mask> out;
  for (Mask v = 0; v <= full_mask(d_); ++v)
    if (contains(v)) out.push_back(v);
  return out;
}

std::vector<Mask> UpSet::minimal_members() const {
  std::vector<Mask> out;
  for (Mask v : members()) {
    bool minimal = true;
    for (unsigned i = 0; i < d_ && minimal; ++i)
      if (((v >> i) & 1U) && contains(v & ~(Mask{1} << i))) minimal = false;
    if (minimal) out.push_back(v);
  }
  return out;
}

unsigned UpSet::depth() const {
  unsigned best = 0;
  for (Mask v : members())
    if (best == 0 || popcount(v) < best) best = popcount(v);
  return best;
}

UpSet UpSet::intersect(const UpSet& other) const {
  if (other.d_ != d_) throw DimensionMismatch("up-sets over different d");
  UpSet u(d_);
  u.bits_ = bits_ & other.bits_;
  return u;
}

bool UpSet::is_upward_closed() const {
  for (Mask v : members()) {
    if (popcount(v) < 2) return false;
    for (unsigned i = 0; i < d_; ++i)
      if (!contains(v | (Mask{1} << i))) return false;
  }
  return true;
}

std::string UpSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (Mask v : members()) {
    if (!first) s += ",";
    s += mask_to_string(v);
    first = false;
  }
  return s + "}";
}

std::vector<UpSet> enumerate_all_upsets(unsigned d) {
  if (d > 4) throw BudgetExceeded("exhaustive up-set enumeration is limited to d <= 4");
  std::vector<Mask> elems;
  for (Mask v = 0; v <= full_mask(d); ++v)
    if (popcount(v) >= 2) elems.push_back(v);
  std::vector<UpSet> out;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << elems.size()); ++pick) {
    std::vector<Mask> chosen;
    for (std::size_t j = 0; j < elems.size(); ++j)
      if ((pick >> j) & 1U) chosen.push_back(elems[j]);
    UpSet u = UpSet::generate(d, chosen);
    if (u.members().size() == chosen.size()) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<UpSet> principal_upsets(unsigned d) {
  std::vector<UpSet> out;
  for (Mask v = 0; v <= full_mask(d); ++v)
    if (popcount(v) >= 2) out.push_back(UpSet::principal(d, v));
  return out;
}

UpSet star(unsigned d, unsigned i) {
  std::vector<Mask> gens;
  for (unsigned j = 0; j < d; ++j)
    if (j != i) gens.push_back((Mask{1} << i) | (Mask{1} << j));
  return UpSet::generate(d, gens);
}

}  // namespace ergolab
