#pragma once

// Path-sum kernels shared by word counting (Scalar = u128, unit weights)
// and weighted counting for pressure (Scalar = double, weights e^f).

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "intricacy/error.hpp"
#include "intricacy/numeric.hpp"
#include "intricacy/sft.hpp"

namespace intricacy::detail {

inline u128 add(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r)) throw CapExceeded("word count overflows 128 bits");
  return r;
}
inline u128 mul(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapExceeded("word count overflows 128 bits");
  return r;
}
inline double add(double a, double b) { return a + b; }
inline double mul(double a, double b) { return a * b; }

/// out = (v^T R) ∘ w
template <typename Scalar>
void step(const BoolMatrix& reach, const std::vector<Scalar>& v, const std::vector<Scalar>& w,
          std::vector<Scalar>& out) {
  const auto s = static_cast<Eigen::Index>(v.size());
  for (Eigen::Index j = 0; j < s; ++j) {
    Scalar acc = 0;
    for (Eigen::Index i = 0; i < s; ++i) {
      if (reach(i, j)) acc = add(acc, v[i]);
    }
    out[j] = mul(acc, w[j]);
  }
}

template <typename Scalar>
Scalar total(const std::vector<Scalar>& v) {
  Scalar t = 0;
  for (const auto& x : v) t = add(t, x);
  return t;
}

template <typename Scalar>
std::vector<Scalar> state_weights(const Sft& sft, const std::vector<Scalar>& symbol_weight) {
  std::vector<Scalar> w(sft.state_count());
  for (int u = 0; u < sft.state_count(); ++u) w[u] = symbol_weight[sft.symbol_of_state()[u]];
  return w;
}

/// Σ over state paths visiting the sorted places `elements`, of the product
/// of state weights at those places. Equals the word sum when the
/// state->symbol map is injective.
template <typename Scalar>
Scalar path_sum(const Sft& sft, std::span<const int> elements,
                const std::vector<Scalar>& state_weight) {
  if (elements.empty()) return Scalar(1);
  std::vector<Scalar> v = state_weight;
  std::vector<Scalar> next(v.size());
  for (std::size_t i = 1; i < elements.size(); ++i) {
    step(sft.reach(elements[i] - elements[i - 1]), v, state_weight, next);
    v.swap(next);
  }
  return total(v);
}

/// Σ over distinct symbol words w at the places `elements` of
/// Π symbol_weight[w_i], by a determinized walk over sets of states.
template <typename Scalar>
Scalar determinized_sum(const Sft& sft, std::span<const int> elements,
                        const std::vector<Scalar>& symbol_weight) {
  if (elements.empty()) return Scalar(1);
  const int states = sft.state_count();
  if (states > 64) throw CapExceeded("determinized word count supports at most 64 states");
  const int r = sft.alphabet_size();
  std::vector<std::uint64_t> by_symbol(r, 0);
  for (int u = 0; u < states; ++u) by_symbol[sft.symbol_of_state()[u]] |= 1ULL << u;

  std::map<std::uint64_t, Scalar> frontier;
  for (int a = 0; a < r; ++a) {
    if (by_symbol[a] != 0) frontier[by_symbol[a]] = symbol_weight[a];
  }
  std::vector<std::uint64_t> successors(states);
  for (std::size_t i = 1; i < elements.size(); ++i) {
    const BoolMatrix& reach = sft.reach(elements[i] - elements[i - 1]);
    for (int u = 0; u < states; ++u) {
      std::uint64_t m = 0;
      for (int v = 0; v < states; ++v) {
        if (reach(u, v)) m |= 1ULL << v;
      }
      successors[u] = m;
    }
    std::map<std::uint64_t, Scalar> next;
    for (const auto& [set, weight] : frontier) {
      std::uint64_t reachable = 0;
      for (std::uint64_t m = set; m != 0; m &= m - 1) reachable |= successors[std::countr_zero(m)];
      for (int a = 0; a < r; ++a) {
        const std::uint64_t target = reachable & by_symbol[a];
        if (target == 0) continue;
        auto& slot = next[target];
        slot = add(slot, mul(weight, symbol_weight[a]));
      }
    }
    frontier.swap(next);
  }
  Scalar t = 0;
  for (const auto& [set, weight] : frontier) t = add(t, weight);
  return t;
}

template <typename Scalar>
Scalar word_sum(const Sft& sft, std::span<const int> elements,
                const std::vector<Scalar>& symbol_weight) {
  if (sft.symbols_injective())
    return path_sum(sft, elements, state_weights(sft, symbol_weight));
  return determinized_sum(sft, elements, symbol_weight);
}

/// totals[mask] = word_sum(S) (as double) for every S ⊂ n*, thickened by
/// `width` when width > 1. Injective shifts with width 1 share prefix work
/// through a depth-first walk over subsets; otherwise each mask is counted
/// on its own. Output is identical for any thread count.
template <typename Scalar>
std::vector<double> subset_totals(const Sft& sft, int n, int width,
                                  const std::vector<Scalar>& symbol_weight, int threads) {
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> totals(count, 0.0);
  totals[0] = 1.0;

  if (!sft.symbols_injective() || width > 1) {
    const std::size_t chunk = 1024;
    const std::size_t tasks = (count + chunk - 1) / chunk;
    parallel_for(tasks, threads, [&](std::size_t t) {
      const std::size_t end = std::min(count, (t + 1) * chunk);
      for (std::size_t m = t * chunk; m < end; ++m) {
        if (m == 0) continue;
        const SubsetSpec s = SubsetSpec(n, m).thickened(width);
        const auto e = s.elements();
        totals[m] = static_cast<double>(word_sum(sft, std::span<const int>(e), symbol_weight));
      }
    });
    return totals;
  }

  const std::vector<Scalar> w = state_weights(sft, symbol_weight);
  const int states = sft.state_count();
  const int prefix_bits = std::min(n, 10);
  const std::size_t tasks = std::size_t{1} << prefix_bits;

  parallel_for(tasks, threads, [&](std::size_t prefix) {
    // Stack of per-depth vectors; depth d holds the walk after d chosen places.
    std::vector<std::vector<Scalar>> stack(n + 1, std::vector<Scalar>(states));
    int depth = 0;
    int last = -1;
    for (int j = 0; j < prefix_bits; ++j) {
      if (!((prefix >> j) & 1U)) continue;
      if (last < 0) {
        stack[depth + 1] = w;
      } else {
        step(sft.reach(j - last), stack[depth], w, stack[depth + 1]);
      }
      ++depth;
      last = j;
    }
    if (prefix != 0) totals[prefix] = static_cast<double>(total(stack[depth]));

    // Recursive walk over the places prefix_bits..n-1.
    auto walk = [&](auto&& self, int start, int d, int prev, std::uint64_t mask) -> void {
      for (int j = start; j < n; ++j) {
        if (prev < 0) {
          stack[d + 1] = w;
        } else {
          step(sft.reach(j - prev), stack[d], w, stack[d + 1]);
        }
        const std::uint64_t m = mask | (1ULL << j);
        totals[m] = static_cast<double>(total(stack[d + 1]));
        self(self, j + 1, d + 1, j, m);
      }
    };
    walk(walk, prefix_bits, depth, last, prefix);
  });
  return totals;
}

}  // namespace intricacy::detail
