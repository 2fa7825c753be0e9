#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace intricacy {

using u128 = unsigned __int128;

inline double to_double(u128 x) { return static_cast<double>(x); }
std::string to_string(u128 x);

/// x log x with the 0 log 0 = 0 convention, no branch on x.
inline double xlogx(double x) { return x * std::log(x + static_cast<double>(x == 0.0)); }

/// Pairwise (cascade) summation of term(i) for i in [begin, end).
/// The reduction tree depends only on the range, so results are bit-stable.
template <typename Term>
double pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
  constexpr std::size_t kLeaf = 64;
  if (end - begin <= kLeaf) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(0, v.size(), [&](std::size_t i) { return v[i]; });
}

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Runs body(task) for task in [0, tasks) over up to `threads` workers.
/// Tasks must write to disjoint outputs; scheduling never affects results.
template <typename Body>
void parallel_for(std::size_t tasks, int threads, const Body& body) {
  const std::size_t workers = std::min<std::size_t>(tasks, resolve_threads(threads));
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) body(t);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < tasks; t += workers) body(t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// C(n, k) as a long double (exact for n <= 64).
long double binomial(int n, int k);

/// Format with `digits` significant digits ("%.*g").
std::string format_sig(double x, int digits = 12);
/// Fixed 3-decimal rendering.
std::string format_fixed3(double x);

}  // namespace intricacy
