#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acp/pinch.hpp"

namespace acp {

using Matrix4 = std::array<std::array<i64, 4>, 4>;

inline Matrix4 identity4() {
  Matrix4 m{};
  for (size_t k = 0; k < 4; ++k) m[k][k] = 1;
  return m;
}

inline Matrix4 generator(int i) {
  Matrix4 m = identity4();
  size_t r = static_cast<size_t>(i - 1);
  for (size_t k = 0; k < 4; ++k) m[r][k] = k == r ? -1 : 2;
  return m;
}

inline Matrix4 operator*(const Matrix4& x, const Matrix4& y) {
  Matrix4 z{};
  for (size_t r = 0; r < 4; ++r)
    for (size_t c = 0; c < 4; ++c) {
      i128 s = 0;
      for (size_t k = 0; k < 4; ++k) s += static_cast<i128>(x[r][k]) * y[k][c];
      z[r][c] = narrow(s);
    }
  return z;
}

inline Quadruple operator*(const Matrix4& x, const Quadruple& q) {
  Quadruple out;
  for (size_t r = 0; r < 4; ++r) {
    i128 s = 0;
    for (size_t k = 0; k < 4; ++k) s += static_cast<i128>(x[r][k]) * q[static_cast<int>(k)];
    out[static_cast<int>(r)] = narrow(s);
  }
  return out;
}

// Letters of W_ji(s) in the order they act: S_i first, then S_j, alternating.
// Negative s gives the inverse word (letters of W_ji(|s|) reversed).
inline Word swap_word(int j, int i, i64 s) {
  Word w;
  for (i64 t = 1; t <= (s < 0 ? -s : s); ++t) w.push_back(t % 2 ? i : j);
  if (s < 0) std::reverse(w.begin(), w.end());
  return w;
}

inline Matrix4 word_matrix(const Word& w) {
  Matrix4 m = identity4();
  for (int letter : w) m = generator(letter) * m;
  return m;
}

struct SwapProduct {
  int j, i;
  i64 s;
  Matrix4 matrix;
};

// Closed form: identity with rows i and j replaced. For odd s, row i is -s at column i,
// s+1 at column j and s(s+1) elsewhere; row j is s at column j, -(s-1) at column i and
// s(s-1) elsewhere. For even s the two rows trade places.
inline SwapProduct swap_product(int j, int i, i64 s) {
  if (i == j || i < 1 || i > 4 || j < 1 || j > 4 || s < 0) fail(ErrorKind::BadQuadruple, "bad swap product");
  Matrix4 m = identity4();
  if (s > 0) {
    std::array<i64, 4> row_i{}, row_j{};
    for (int k = 1; k <= 4; ++k) {
      size_t kk = static_cast<size_t>(k - 1);
      row_i[kk] = k == i ? -s : k == j ? s + 1 : mul_checked(s, s + 1);
      row_j[kk] = k == j ? s : k == i ? -(s - 1) : mul_checked(s, s - 1);
    }
    if (s % 2 == 0) std::swap(row_i, row_j);
    m[static_cast<size_t>(i - 1)] = row_i;
    m[static_cast<size_t>(j - 1)] = row_j;
  }
  return {j, i, s, m};
}

// W_ji(s) for any integer s, negative values by the inverse word.
inline Matrix4 swap_matrix(int j, int i, i64 s) {
  return s >= 0 ? swap_product(j, i, s).matrix : word_matrix(swap_word(j, i, s));
}

struct SpecialRowParams {
  i64 m = 0, s0 = 0, r0 = 0;
  i64 A = 0, C = 0, D = 0;  // third row of W43(s0) W32(r0) is (A, -A, C, D) mod m
  std::array<i64, 4> row{};  // that row reduced into [0, m)
};

inline Matrix4 special_word_matrix(const SpecialRowParams& p) {
  return swap_product(4, 3, p.s0).matrix * swap_product(3, 2, p.r0).matrix;
}

inline i64 odd_positive_lift(i64 r, i64 m) { return (r > 0 && r % 2 == 1) ? r : r + m; }

inline SpecialRowParams construct_special_row(i64 m) {
  if (m <= 1 || gcd64(m, 30) != 1) fail(ErrorKind::BadModulus, "need m > 1 coprime to 30");
  std::vector<std::pair<i64, i64>> sp, rp;
  for (auto pp : factor(m)) {
    sp.push_back({mulmod(4, inv_mod(5, pp.q), pp.q), pp.q});
    rp.push_back({mulmod(-2, inv_mod(4, pp.q), pp.q), pp.q});
  }
  SpecialRowParams p;
  p.m = m;
  p.s0 = odd_positive_lift(crt(sp).first, m);
  p.r0 = odd_positive_lift(crt(rp).first, m);
  Matrix4 w = special_word_matrix(p);
  for (size_t k = 0; k < 4; ++k) p.row[k] = mod(w[2][k], m);
  p.A = p.row[0];
  p.C = p.row[2];
  p.D = p.row[3];
  if (mod(p.row[0] + p.row[1], m) != 0 || gcd64(p.A, m) != 1)
    fail(ErrorKind::InconsistentCase, "special row invariant failed for m = " + std::to_string(m));
  return p;
}

// slope * t + intercept (mod m), valid for even t.
struct LinearResidue {
  i64 slope = 0, intercept = 0, m = 1;
  i64 at(i64 t) const { return mod(static_cast<i128>(slope) * t + intercept, m); }
};

inline std::string format_linear(const LinearResidue& f) {
  i64 s = balanced(f.slope, f.m), c = balanced(f.intercept, f.m);
  std::string out;
  if (s != 0) out = s == 1 ? "t" : s == -1 ? "-t" : std::to_string(s) + "t";
  if (c != 0 || out.empty()) {
    if (out.empty()) out = std::to_string(c);
    else out += (c < 0 ? " - " : " + ") + std::to_string(c < 0 ? -c : c);
  }
  return out;
}

inline LinearResidue family_residue_poly(const SpecialRowParams& p, const Quadruple& q) {
  i64 m = p.m, a = q[0], b = q[1], c = q[2], d = q[3];
  if (gcd64(mod(c + d, m), m) != 1) fail(ErrorKind::BadQuadruple, "need gcd(c + d, m) = 1");
  LinearResidue f;
  f.m = m;
  f.slope = mulmod(mulmod(-2, p.A, m), mod(c + d, m), m);
  f.intercept = mod(static_cast<i128>(p.A) * mod(a - b, m) + static_cast<i128>(p.C) * mod(c, m) +
                        static_cast<i128>(p.D) * mod(d, m),
                    m);
  return f;
}

struct TargetSolution {
  i64 t0 = 0;      // even, of least absolute value
  i64 length = 0;  // s0 + r0 + |t0|
};

inline TargetSolution solve_target(const SpecialRowParams& p, const Quadruple& q, i64 ell) {
  LinearResidue f = family_residue_poly(p, q);
  i64 m = p.m;
  i64 tr = mulmod(mod(ell - f.intercept, m), inv_mod(f.slope, m), m);  // in [0, m)
  i64 t0 = tr % 2 == 0 ? tr : tr - m;
  i64 alt = t0 >= 0 ? t0 - 2 * m : t0 + 2 * m;  // the other even lift in (-2m, 2m)
  if ((alt < 0 ? -alt : alt) < (t0 < 0 ? -t0 : t0)) t0 = alt;
  TargetSolution s{t0, p.s0 + p.r0 + (t0 < 0 ? -t0 : t0)};
  if (s.length > 5 * m) fail(ErrorKind::InconsistentCase, "word longer than 5m");
  return s;
}

// Reorders q to (a, b, c, p0) with p0 = q.at(slot) and a odd, then walks the W32 family
// (slots 2 and 3 move, a and p0 stay) over even k until c' > 0, gcd(c' + p0, m p0) = 1
// and c' p0 is not a square.
inline Quadruple good_quadruple(const Quadruple& q, int slot, i64 m, i64 cap = 1000) {
  require_valid(q);
  i64 p0 = q.at(slot);
  if (!is_prime(p0)) fail(ErrorKind::SeedNotPrime, "p0 must be prime");
  std::vector<i64> rest;
  for (int t = 1; t <= 4; ++t)
    if (t != slot) rest.push_back(q.at(t));
  auto odd = std::find_if(rest.begin(), rest.end(), [](i64 x) { return x % 2 != 0; });
  if (odd == rest.end()) fail(ErrorKind::BadQuadruple, "no odd entry besides p0");
  std::rotate(rest.begin(), odd, odd + 1);
  Quadruple v = make_quadruple(rest[0], rest[1], rest[2], p0);
  for (i64 k = 0; k <= cap; k += 2) {
    Quadruple w = apply_word(v, swap_word(3, 2, k));
    i64 c = w[2];
    if (c > 0 && gcd64(c + p0, mul_checked(m, p0)) == 1 && !is_square(mul_checked(c, p0))) return w;
  }
  fail(ErrorKind::SearchExhausted, "no good quadruple within the cap");
}

// Residues (a, b) mod m with a - b = k, a and a + d units, a tangent to d mod m, and b in the
// pinch residues of (a, d). Solved prime power by prime power and glued by CRT.
struct ResiduePair {
  i64 a, b;
};

inline bool special_pair_ok(i64 a, i64 b, i64 d, i64 k, i64 q) {
  auto fs = factor(q);
  i64 p = fs[0].p;
  if (mod(a, p) == 0 || mod(a + d, p) == 0) return false;
  if (!residue_set_Sm(d, q).contains(a)) return false;
  if (mod(a - b - k, q) != 0) return false;
  i64 disc = mod(static_cast<i128>(a) * d + static_cast<i128>(b) * (a + d), q);
  return squares_mod(q).contains(disc);
}

inline ResiduePair special_residues(i64 d, i64 k, i64 m) {
  if (m <= 1 || gcd64(m, 30) != 1) fail(ErrorKind::BadModulus, "need m > 1 coprime to 30");
  if (gcd64(d, m) != 1) fail(ErrorKind::BadModulus, "d must be a unit mod m");
  std::vector<std::pair<i64, i64>> as;
  for (auto pp : factor(m)) {
    i64 q = pp.q, dd = mod(d, q), kk = mod(k, q), half = inv_mod(2, q), third = inv_mod(3, q);
    std::vector<i64> cand;
    if (pp.p % 4 == 1) {
      cand = {-dd, kk - dd, mulmod(kk, half, q), mulmod(kk, half, q) - 2 * dd, dd, -3 * dd};
    } else {
      cand = {-2 * dd, kk, 0, kk - 2 * dd, mulmod(mulmod(5, third, q), dd, q)};
    }
    // The Case II fallback 5/3 d gives g = 7 d^2 / 9, not a square when 7 is a non-residue
    // (p = 11, 43, 67, ...), and prime powers can defeat the whole list; scan Z/qZ after it.
    for (i64 a = 0; a < q; ++a) cand.push_back(a);
    auto it = std::find_if(cand.begin(), cand.end(), [&](i64 a) { return special_pair_ok(a, a - kk, dd, kk, q); });
    if (it == cand.end()) fail(ErrorKind::InconsistentCase, "no residue a satisfies the conditions");
    as.push_back({mod(*it, q), q});
  }
  i64 a = crt(as).first;
  return {a, mod(a - k, m)};
}

struct SpecialQuadruple {
  ResiduePair residues;
  Quadruple v;  // (a, b, c, d) with a prime, a = residues.a and b = residues.b mod m
};

// Lifts the residue pair: a prime circle a tangent to C_d, then b in the pinch chain of (a, d).
inline SpecialQuadruple special_quadruple(const Quadruple& q, int slot, i64 k, i64 m, i64 cap = 1000000) {
  i64 d = q.at(slot);
  ResiduePair r = special_residues(d, k, m);
  auto tangents = tangent_quadruples(q, slot, cap);
  std::stable_sort(tangents.begin(), tangents.end(),
                   [](const auto& u, const auto& v) { return u.curvature < v.curvature; });
  for (const auto& t : tangents) {
    if (!is_odd_prime_curvature(t.curvature) || mod(t.curvature - r.a, m) != 0) continue;
    PinchPoly pp = pinch_poly(t.quad, t.slot, slot);
    for (i64 n = 0; n < 4 * m + 4; ++n) {
      i64 x = n % 2 ? -(n + 1) / 2 : n / 2;  // 0, -1, 1, -2, 2, ...
      if (mod(pp(x) - r.b, m) != 0) continue;
      Quadruple v = make_quadruple(pp.a, pp(x), pp(x + 1), d);
      require_valid(v);
      return {r, v};
    }
    fail(ErrorKind::InconsistentCase, "pinch residue predicted but not found");
  }
  fail(ErrorKind::SearchExhausted, "no prime tangent circle in the residue class below the cap");
}

struct GeodesicStep {
  i64 curvature;
  Quadruple quad;
};

struct Geodesic {
  Quadruple start;
  Word word;  // generators in the order they act on `start`
  std::vector<GeodesicStep> steps;
  bool core = false;
  std::optional<std::string> conditional_on;
};

// Replays the word swap by swap, checks tangency of consecutive circles and primality of
// interior circles. Returns false on any failure.
inline bool validate_geodesic(const Geodesic& g) {
  if (g.steps.empty()) return false;
  auto contains = [](const Quadruple& q, i64 c) { return std::find(q.v.begin(), q.v.end(), c) != q.v.end(); };
  for (const auto& s : g.steps)
    if (!is_descartes(s.quad) || !contains(s.quad, s.curvature)) return false;
  for (size_t k = 1; k < g.steps.size(); ++k)
    if (!contains(g.steps[k].quad, g.steps[k - 1].curvature)) return false;
  if (apply_word(g.start, g.word) != g.steps.back().quad) return false;
  bool core = true;
  for (size_t k = 0; k + 1 < g.steps.size(); ++k) core &= is_odd_prime_curvature(g.steps[k].curvature);
  return core == g.core;
}

struct GeodesicCaps {
  i64 tangent_cap = 1000000;  // curvature bound for tangent-circle searches
  i64 pinch_cap = 1000000;    // W21 parameters tried in the conditional route
  bool allow_shortcut = true;
};

// A core geodesic from the prime circle q.at(slot) to a circle congruent to ell mod m.
inline Geodesic core_geodesic(const Quadruple& q, int slot, i64 ell, i64 m, const GeodesicCaps& caps = {}) {
  if (m <= 1 || gcd64(m, 30) != 1) fail(ErrorKind::BadModulus, "need m > 1 coprime to 30");
  require_valid(q);
  i64 d = q.at(slot);
  if (!is_odd_prime_curvature(d)) fail(ErrorKind::SeedNotPrime, "seed must have odd prime curvature");
  if (gcd64(d, m) != 1) fail(ErrorKind::BadModulus, "seed curvature must be a unit mod m");
  Geodesic g;
  if (caps.allow_shortcut) {
    auto tangents = tangent_quadruples(q, slot, caps.tangent_cap);
    std::stable_sort(tangents.begin(), tangents.end(),
                     [](const auto& u, const auto& v) { return u.curvature < v.curvature; });
    for (const auto& t : tangents)
      if (mod(t.curvature - ell, m) == 0) {
        g.start = t.quad;
        g.steps = {{d, t.quad}, {t.curvature, t.quad}};
        g.core = true;
        return g;
      }
  }
  SpecialRowParams p = construct_special_row(m);
  Word tail = swap_word(3, 2, p.r0);
  Word w43 = swap_word(4, 3, p.s0);
  tail.insert(tail.end(), w43.begin(), w43.end());
  if (p.C == 0) {
    i64 k = mulmod(inv_mod(p.A, m), ell - mulmod(p.D, d, m), m);
    SpecialQuadruple sq = special_quadruple(q, slot, k, m, caps.tangent_cap);
    Quadruple fin = special_word_matrix(p) * sq.v;
    g.start = sq.v;
    g.word = tail;
    g.steps = {{d, sq.v}, {sq.v[0], sq.v}, {fin[2], fin}};
  } else {
    Quadruple v = good_quadruple(q, slot, m);
    TargetSolution ts = solve_target(p, v, ell);
    bool found = false;
    for (i64 j = 0; j < caps.pinch_cap && !found; ++j) {
      i64 t = ts.t0 + 2 * m * (j % 2 ? -(j + 1) / 2 : j / 2);  // t0, t0 - 2m, t0 + 2m, ...
      Quadruple mid = swap_matrix(2, 1, t) * v;
      if (!is_odd_prime_curvature(mid[0])) continue;
      Quadruple fin = special_word_matrix(p) * mid;
      Word w = swap_word(2, 1, t);
      w.insert(w.end(), tail.begin(), tail.end());
      g.start = v;
      g.word = w;
      g.steps = {{d, v}, {mid[0], mid}, {fin[2], fin}};
      g.conditional_on = "Bunyakovsky";
      found = true;
    }
    if (!found) fail(ErrorKind::SearchExhausted, "no prime in the W21 family below the cap");
  }
  if (mod(g.steps.back().curvature - ell, m) != 0)
    fail(ErrorKind::InconsistentCase, "terminal circle misses the target class");
  g.core = is_odd_prime_curvature(g.steps[0].curvature) && is_odd_prime_curvature(g.steps[1].curvature);
  return g;
}

}  // namespace acp
