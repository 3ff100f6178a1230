#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "acp/arith.hpp"

namespace acp {

namespace detail {

inline u64 mulmod_u(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 powmod_u(u64 b, u64 e, u64 m) {
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u(r, b, m);
    b = mulmod_u(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

// Deterministic Miller-Rabin; this base set is exact for all n < 2^64.
struct PrimalityTester {
  bool operator()(i64 n) const {
    if (n < 2) return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
      if (static_cast<u64>(n) == p) return true;
      if (static_cast<u64>(n) % p == 0) return false;
    }
    if (n < 41 * 41) return true;
    u64 m = static_cast<u64>(n), d = m - 1;
    int s = 0;
    while ((d & 1) == 0) {
      d >>= 1;
      ++s;
    }
    static constexpr u64 bases[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
    for (u64 a : bases) {
      a %= m;
      if (a == 0) continue;
      u64 x = detail::powmod_u(a, d, m);
      if (x == 1 || x == m - 1) continue;
      bool composite = true;
      for (int r = 1; r < s; ++r) {
        x = detail::mulmod_u(x, x, m);
        if (x == m - 1) {
          composite = false;
          break;
        }
      }
      if (composite) return false;
    }
    return true;
  }
};

inline bool is_prime(i64 n) { return PrimalityTester{}(n); }

inline bool is_odd_prime_curvature(i64 n) { return n > 2 && (n & 1) && is_prime(n); }

// Odd-only bit sieve for O(1) lookups below a limit; falls back to Miller-Rabin above it.
class PrimeSieve {
 public:
  PrimeSieve() = default;
  explicit PrimeSieve(i64 limit) : limit_(limit < 2 ? 2 : limit) {
    u64 nbits = static_cast<u64>(limit_ / 2 + 1);
    bits_.assign((nbits + 63) / 64, ~u64{0});
    clear(0);  // 1 is not prime
    for (i64 p = 3; p * p <= limit_; p += 2) {
      if (!test(static_cast<u64>(p / 2))) continue;
      for (i64 q = p * p; q <= limit_; q += 2 * p) clear(static_cast<u64>(q / 2));
    }
  }

  i64 limit() const { return limit_; }

  bool is_prime(i64 n) const {
    if (n > limit_) return acp::is_prime(n);
    if (n < 3) return n == 2;
    if ((n & 1) == 0) return false;
    return test(static_cast<u64>(n / 2));
  }

  bool is_odd_prime(i64 n) const { return n > 2 && (n & 1) && is_prime(n); }

 private:
  bool test(u64 i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }
  void clear(u64 i) { bits_[i >> 6] &= ~(u64{1} << (i & 63)); }

  i64 limit_ = 2;
  std::vector<u64> bits_;
};

// Prime counts at each of the ascending points, by one segmented sieve pass.
inline std::vector<i64> prime_pi_many(const std::vector<i64>& xs) {
  std::vector<i64> out(xs.size(), 0);
  if (xs.empty()) return out;
  i64 top = 0;
  for (i64 x : xs) top = std::max(top, x);
  if (top >= (i64{1} << 40)) fail(ErrorKind::MemoryBudgetExceeded, "prime_pi needs X < 2^40");
  if (top < 2) return out;
  i64 root = isqrt(top);
  std::vector<i64> base;
  {
    std::vector<char> small(static_cast<size_t>(root + 1), 1);
    for (i64 i = 2; i <= root; ++i) {
      if (!small[i]) continue;
      base.push_back(i);
      for (i64 j = i * i; j <= root; j += i) small[j] = 0;
    }
  }
  const i64 seg = i64{1} << 19;
  std::vector<char> mark(seg);
  std::vector<std::pair<i64, size_t>> queries;
  for (size_t k = 0; k < xs.size(); ++k) queries.push_back({xs[k], k});
  std::sort(queries.begin(), queries.end());
  size_t qi = 0;
  i64 count = 0;
  for (i64 lo = 2; lo <= top; lo += seg) {
    i64 hi = std::min(top, lo + seg - 1);
    std::fill(mark.begin(), mark.begin() + (hi - lo + 1), 1);
    for (i64 p : base) {
      if (p * p > hi) break;
      i64 start = std::max(p * p, (lo + p - 1) / p * p);
      for (i64 j = start; j <= hi; j += p) mark[j - lo] = 0;
    }
    for (i64 n = lo; n <= hi; ++n) {
      while (qi < queries.size() && queries[qi].first < n) out[queries[qi++].second] = count;
      count += mark[n - lo];
    }
  }
  while (qi < queries.size()) out[queries[qi++].second] = count;
  return out;
}

inline i64 prime_pi(i64 x) { return prime_pi_many({x})[0]; }

}  // namespace acp
