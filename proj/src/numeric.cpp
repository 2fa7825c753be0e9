#include "intricacy/error.hpp"
#include "intricacy/numeric.hpp"

#include <cstdio>
#include <iostream>
#include <mutex>

namespace intricacy {

void warn(const std::string& message) {
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::cerr << "warning: " << message << '\n';
}

std::string to_string(u128 x) {
  if (x == 0) return "0";
  std::string digits;
  while (x > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  return {digits.rbegin(), digits.rend()};
}

long double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0L;
  k = std::min(k, n - k);
  long double c = 1.0L;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

std::string format_sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string format_fixed3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

}  // namespace intricacy
