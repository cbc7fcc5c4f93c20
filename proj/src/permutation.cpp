#include "ergolab/permutation.hpp"

#include <numeric>

#include "ergolab/errors.hpp"

namespace ergolab {

Permutation::Permutation(std::vector<std::size_t> images) : img_(std::move(images)) {
  std::vector<char> hit(img_.size(), 0);
  for (std::size_t x = 0; x < img_.size(); ++x) {
    if (img_[x] >= img_.size())
      throw InvalidInput("permutation image " + std::to_string(img_[x]) + " out of range");
    if (hit[img_[x]]) throw InvalidInput("permutation is not injective at " + std::to_string(img_[x]));
    hit[img_[x]] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  Permutation p;
  p.img_ = std::move(v);
  return p;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw DimensionMismatch("permutation sizes differ");
  Permutation r;
  r.img_.resize(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r.img_[x] = a.img_[b.img_[x]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.img_.resize(size());
  for (std::size_t x = 0; x < size(); ++x) r.img_[img_[x]] = x;
  return r;
}

Permutation Permutation::power(long n) const {
  Permutation base = n < 0 ? inverse() : *this;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  Permutation r = identity(size());
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < size(); ++x)
    if (img_[x] != x) return false;
  return true;
}

std::uint64_t Permutation::order() const {
  std::uint64_t l = 1;
  for (auto& c : cycles()) l = std::lcm(l, static_cast<std::uint64_t>(c.size()));
  return l;
}

std::vector<std::vector<std::size_t>> Permutation::cycles() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<char> seen(size(), 0);
  for (std::size_t x = 0; x < size(); ++x) {
    if (seen[x]) continue;
    std::vector<std::size_t> c;
    for (std::size_t y = x; !seen[y]; y = img_[y]) {
      seen[y] = 1;
      c.push_back(y);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace ergolab
