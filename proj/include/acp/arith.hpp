#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <tuple>

#include "acp/error.hpp"

namespace acp {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

inline i64 add_checked(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::Overflow, "addition");
  return r;
}

inline i64 sub_checked(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::Overflow, "subtraction");
  return r;
}

inline i64 mul_checked(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::Overflow, "multiplication");
  return r;
}

inline i64 narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) fail(ErrorKind::Overflow, "value exceeds 64 bits");
  return static_cast<i64>(v);
}

// Least nonnegative residue.
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mod(i128 a, i64 m) {
  i128 r = a % m;
  return static_cast<i64>(r < 0 ? r + m : r);
}

// Representative in (-m/2, m/2].
inline i64 balanced(i64 a, i64 m) {
  i64 r = mod(a, m);
  return 2 * r > m ? r - m : r;
}

inline i64 gcd64(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

inline i64 mulmod(i64 a, i64 b, i64 m) {
  return mod(static_cast<i128>(mod(a, m)) * mod(b, m), m);
}

// Inverse of a modulo m, or 0 when a is not a unit.
inline i64 inv_mod(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 g = m, x = 0, r = mod(a, m), y = 1;
  while (r != 0) {
    i64 q = g / r;
    std::tie(g, r) = std::pair{r, g - q * r};
    std::tie(x, y) = std::pair{y, x - q * y};
  }
  return g == 1 ? mod(x, m) : 0;
}

inline bool is_unit(i64 a, i64 m) { return gcd64(a, m) == 1; }

struct PrimePower {
  i64 p;
  int e;
  i64 q;  // p^e
};

inline std::vector<PrimePower> factor(i64 n) {
  std::vector<PrimePower> out;
  if (n < 0) n = -n;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.e;
      pp.q *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

// Combine x = r_k mod m_k for pairwise coprime m_k.
inline std::pair<i64, i64> crt(const std::vector<std::pair<i64, i64>>& parts) {
  i64 r = 0, m = 1;
  for (auto [rk, mk] : parts) {
    i64 t = mulmod(mod(rk - r, mk), inv_mod(m % mk, mk), mk);
    r = narrow(static_cast<i128>(r) + static_cast<i128>(m) * t);
    m = mul_checked(m, mk);
    r = mod(r, m);
  }
  return {r, m};
}

inline bool is_square(i64 n) {
  if (n < 0) return false;
  i64 r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

// Floor of sqrt for nonnegative values.
inline i64 isqrt(i128 n) {
  if (n <= 0) return 0;
  i64 r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string s;
  while (v != 0) {
    int d = static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

}  // namespace acp
