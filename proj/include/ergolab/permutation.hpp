#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ergolab {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return img_.size(); }
  std::size_t operator()(std::size_t x) const { return img_[x]; }
  const std::vector<std::size_t>& images() const { return img_; }

  // (a * b)(x) = a(b(x))
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  Permutation inverse() const;
  Permutation power(long n) const;
  bool is_identity() const;
  std::uint64_t order() const;
  std::vector<std::vector<std::size_t>> cycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> img_;
};

}  // namespace ergolab
