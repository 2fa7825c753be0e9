#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace intricacy {

/// A subset S of n* = {0, ..., n-1}, n <= 64, stored as a bitmask.
class SubsetSpec {
 public:
  static constexpr int kMaxHorizon = 64;

  SubsetSpec(int n, std::uint64_t mask);
  static SubsetSpec from_elements(int n, std::span<const int> elements);
  static SubsetSpec from_elements(int n, std::initializer_list<int> elements) {
    return from_elements(n, std::span<const int>(elements.begin(), elements.size()));
  }
  static SubsetSpec full(int n) { return {n, full_mask(n)}; }

  static std::uint64_t full_mask(int n) { return n >= 64 ? ~0ULL : (1ULL << n) - 1; }

  int horizon() const { return n_; }
  std::uint64_t mask() const { return mask_; }
  int size() const;
  bool empty() const { return mask_ == 0; }
  bool contains(int i) const { return i >= 0 && i < n_ && ((mask_ >> i) & 1U); }

  /// s_0 < s_1 < ... < s_{|S|-1}
  std::vector<int> elements() const;
  /// g_i = s_{i+1} - s_i
  std::vector<int> gaps() const;
  /// Lengths of the maximal runs of consecutive elements, left to right.
  std::vector<int> run_lengths() const;

  SubsetSpec complement() const { return {n_, full_mask(n_) ^ mask_}; }
  /// S - s_0, same horizon.
  SubsetSpec canonical() const;
  /// S + {0, ..., width-1}; the horizon grows by width-1.
  SubsetSpec thickened(int width) const;

  friend bool operator==(const SubsetSpec&, const SubsetSpec&) = default;

 private:
  int n_;
  std::uint64_t mask_;
};

}  // namespace intricacy
