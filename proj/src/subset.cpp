#include "intricacy/subset.hpp"

#include <bit>
#include <string>

#include "intricacy/error.hpp"

namespace intricacy {

SubsetSpec::SubsetSpec(int n, std::uint64_t mask) : n_(n), mask_(mask) {
  if (n < 0 || n > kMaxHorizon)
    throw CapExceeded("subset horizon " + std::to_string(n) + " outside [0, 64]");
  if ((mask & ~full_mask(n)) != 0) throw InputError("subset mask has bits outside n*");
}

SubsetSpec SubsetSpec::from_elements(int n, std::span<const int> elements) {
  std::uint64_t mask = 0;
  for (int e : elements) {
    if (e < 0 || e >= n) throw InputError("subset element " + std::to_string(e) + " outside n*");
    mask |= 1ULL << e;
  }
  return {n, mask};
}

int SubsetSpec::size() const { return std::popcount(mask_); }

std::vector<int> SubsetSpec::elements() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::vector<int> SubsetSpec::gaps() const {
  const auto e = elements();
  std::vector<int> g;
  for (std::size_t i = 1; i < e.size(); ++i) g.push_back(e[i] - e[i - 1]);
  return g;
}

std::vector<int> SubsetSpec::run_lengths() const {
  std::vector<int> runs;
  const auto e = elements();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i == 0 || e[i] != e[i - 1] + 1) {
      runs.push_back(1);
    } else {
      ++runs.back();
    }
  }
  return runs;
}

SubsetSpec SubsetSpec::canonical() const {
  if (mask_ == 0) return *this;
  return {n_, mask_ >> std::countr_zero(mask_)};
}

SubsetSpec SubsetSpec::thickened(int width) const {
  if (width < 1) throw InputError("thickening width must be >= 1");
  const int horizon = n_ + width - 1;
  if (horizon > kMaxHorizon)
    throw CapExceeded("thickened subset horizon " + std::to_string(horizon) + " exceeds 64");
  std::uint64_t m = 0;
  for (int j = 0; j < width; ++j) m |= mask_ << j;
  return {horizon, m};
}

}  // namespace intricacy
