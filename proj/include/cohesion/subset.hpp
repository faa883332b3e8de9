#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace cohesion {

/// A subset of variable indices {0..n-1}, one bit per variable.
struct SubsetMask {
  std::uint32_t bits = 0;

  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint32_t b) : bits(b) {}

  static constexpr SubsetMask full(int n) {
    return SubsetMask(n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
  }
  static constexpr SubsetMask single(int i) { return SubsetMask(std::uint32_t{1} << i); }
  static SubsetMask of(const std::vector<int>& indices) {
    SubsetMask m;
    for (int i : indices) m.bits |= std::uint32_t{1} << i;
    return m;
  }

  constexpr bool empty() const { return bits == 0; }
  constexpr int size() const { return std::popcount(bits); }
  constexpr bool contains(int i) const { return (bits >> i) & 1u; }
  constexpr bool fits(int n) const { return n >= 32 || (bits >> n) == 0; }
  constexpr bool subset_of(SubsetMask o) const { return (bits & ~o.bits) == 0; }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::uint32_t b = bits; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) { return SubsetMask(a.bits | b.bits); }
  friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) { return SubsetMask(a.bits & b.bits); }
  friend constexpr bool operator==(SubsetMask a, SubsetMask b) = default;
};

/// Exact binomial coefficient; returns 0 when k is outside [0, n].
constexpr std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// All masks over n variables with exactly k members, in increasing numeric order.
std::vector<SubsetMask> masks_of_size(int n, int k);

}  // namespace cohesion
