#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "acp/primes.hpp"
#include "acp/residues.hpp"

namespace acp {

struct BinaryForm {
  i64 A = 0, B = 0, C = 0;
  i128 disc() const { return static_cast<i128>(B) * B - static_cast<i128>(4) * A * C; }
  i128 eval(i64 x, i64 y) const {
    return static_cast<i128>(A) * x * x + static_cast<i128>(B) * x * y + static_cast<i128>(C) * y * y;
  }
  bool operator==(const BinaryForm&) const = default;
};

// A curvature form: values f(x,y) - shift over coprime (x,y) are the curvatures tangent
// to a circle of curvature `shift`.
struct ShiftedForm {
  BinaryForm form;
  i64 shift = 0;
};

inline std::string format_form(const ShiftedForm& sf) {
  return std::to_string(sf.form.A) + "," + std::to_string(sf.form.B) + "," + std::to_string(sf.form.C) + ";" +
         std::to_string(sf.shift);
}

inline ShiftedForm curvature_form(const Quadruple& q, int slot) {
  require_valid(q);
  i64 a = q.at(slot), o[3];
  int k = 0;
  for (int t = 1; t <= 4; ++t)
    if (t != slot) o[k++] = q.at(t);
  i64 b = o[0], c = o[1], d = o[2];
  ShiftedForm sf{{add_checked(b, a), sub_checked(add_checked(add_checked(a, b), d), c), add_checked(d, a)}, a};
  if (sf.form.disc() != -static_cast<i128>(4) * a * a)
    fail(ErrorKind::DiscriminantMismatch, "curvature form of " + format_quadruple(q));
  return sf;
}

struct RepValue {
  i64 value, x, y;
  auto operator<=>(const RepValue&) const = default;
};

// Values f(x,y) - shift <= X, one (x,y) per sign class, sorted by (value, x, y).
inline std::vector<RepValue> represented_with_witness(const ShiftedForm& sf, i64 X, bool primitive_only) {
  const BinaryForm& f = sf.form;
  i128 D = -f.disc();  // 4AC - B^2
  if (f.A <= 0 || D <= 0) fail(ErrorKind::DiscriminantMismatch, "form is not positive definite");
  std::vector<RepValue> out;
  i128 T = static_cast<i128>(X) + sf.shift;  // bound on f(x,y)
  if (T < 0) return out;
  i64 ymax = isqrt(static_cast<i128>(4) * f.A * T / D) + 1;
  for (i64 y = -ymax; y <= ymax; ++y) {
    // A x^2 + B y x + C y^2 <= T  <=>  (2Ax + By)^2 <= 4AT - D y^2
    i128 rhs = static_cast<i128>(4) * f.A * T - D * y * y;
    if (rhs < 0) continue;
    i64 r = isqrt(rhs);
    i128 lo_num = -static_cast<i128>(f.B) * y - r, hi_num = -static_cast<i128>(f.B) * y + r;
    i64 xlo = static_cast<i64>(lo_num / (2 * f.A)) - 1, xhi = static_cast<i64>(hi_num / (2 * f.A)) + 1;
    for (i64 x = xlo; x <= xhi; ++x) {
      if (x < 0 || (x == 0 && y <= 0)) continue;  // one representative per +- pair
      if (primitive_only ? gcd64(x, y) != 1 : (x == 0 && y == 0)) continue;
      i128 v = f.eval(x, y);
      if (v > T) continue;
      out.push_back({narrow(v - sf.shift), x, y});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<i64> represented_values(const ShiftedForm& sf, i64 X, bool primitive_only) {
  std::vector<i64> out;
  for (const auto& r : represented_with_witness(sf, X, primitive_only)) out.push_back(r.value);
  return out;
}

// A circle tangent to a fixed one, with a Descartes quadruple containing both.
struct TangentCircle {
  i64 curvature;
  Quadruple quad;
  int slot;  // slot of this circle in quad; the fixed circle keeps its slot
};

// All circles tangent to q.at(slot) with curvature <= cap, in traversal order.
// Walks the orbit of the three swaps that keep `slot`, starting from its well.
inline std::vector<TangentCircle> tangent_quadruples(const Quadruple& q, int slot, i64 cap,
                                                     i64 node_cap = 50000000) {
  require_valid(q);
  if (q.at(slot) == 0) fail(ErrorKind::BadQuadruple, "circles tangent to a line are unbounded");
  Quadruple w = q;
  for (i64 it = 0;; ++it) {
    if (it > node_cap) fail(ErrorKind::NonTerminating, "well search");
    int best = -1;
    for (int t = 1; t <= 4; ++t)
      if (t != slot && (best < 0 || w.at(t) > w.at(best))) best = t;
    i64 v = swapped_value(w, best);
    if (v >= w.at(best)) break;
    w[best - 1] = v;
  }
  std::vector<TangentCircle> out;
  for (int t = 1; t <= 4; ++t)
    if (t != slot && w.at(t) <= cap) out.push_back({w.at(t), w, t});
  struct Node {
    Quadruple q;
    int last;
    int next;
  };
  std::vector<Node> stack{{w, 0, 1}};
  i64 nodes = 0;
  while (!stack.empty()) {
    Node& n = stack.back();
    if (n.next > 4) {
      stack.pop_back();
      continue;
    }
    int t = n.next++;
    if (t == slot || t == n.last) continue;
    i64 v = swapped_value(n.q, t);
    if (v > cap) continue;
    if (v <= n.q.at(t) && (n.last != 0 || v < n.q.at(t)))
      fail(ErrorKind::NonTerminating, "tangent chain does not grow");
    if (++nodes > node_cap) fail(ErrorKind::NonTerminating, "tangent search node cap");
    Quadruple c = n.q;
    c[t - 1] = v;
    out.push_back({v, c, t});
    stack.push_back({c, t, 1});
  }
  return out;
}

// S_m(a): residues of curvatures tangent to a circle of curvature a, i.e. primitive
// values of f - a for a form of discriminant -4a^2. Computed prime by prime: only
// primes p = 3 mod 4 obstruct, and they exclude b = -a mod p.
inline ResidueClassSet residue_set_Sm(i64 a, i64 m) {
  if (m < 3 || m % 2 == 0 || gcd64(a, m) != 1)
    fail(ErrorKind::BadModulus, "need gcd(m, 2a) = 1");
  std::vector<i64> obstructing;
  for (auto pp : factor(m))
    if (pp.p % 4 == 3) obstructing.push_back(pp.p);
  ResidueClassSet out(m);
  for (i64 b = 0; b < m; ++b) {
    bool ok = true;
    for (i64 p : obstructing) ok &= mod(a + b, p) != 0;
    if (ok) out.insert(b);
  }
  return out;
}

struct Congruence {
  i64 ell, m;
};

struct FamilyPrimes {
  std::vector<RepValue> primes;
  double ratio = 0;  // count / (X / (log X)^{3/2})
};

inline FamilyPrimes primes_in_family(const ShiftedForm& sf, i64 X, std::optional<Congruence> constraint = {}) {
  if (constraint) {
    auto [ell, m] = *constraint;
    if (m < 2 || gcd64(mod(2 * sf.form.disc(), m), m) != 1 || gcd64(ell + sf.shift, m) != 1)
      fail(ErrorKind::ConstraintViolation, "need gcd(m, 2 disc) = 1 and gcd(l + shift, m) = 1");
  }
  FamilyPrimes out;
  for (const auto& r : represented_with_witness(sf, X, true)) {
    if (!is_odd_prime_curvature(r.value)) continue;
    if (constraint && mod(r.value - constraint->ell, constraint->m) != 0) continue;
    out.primes.push_back(r);
  }
  if (X > 2) out.ratio = static_cast<double>(out.primes.size()) / (X / std::pow(std::log(double(X)), 1.5));
  return out;
}

struct PathStep {
  i64 curvature;
  Quadruple quad;  // contains this circle and the previous one
  int slot;
};

// A prime congruent to ell within two tangencies of an odd prime circle.
inline std::vector<PathStep> two_step_prime(const Quadruple& q, int slot, i64 ell, i64 m, i64 cap) {
  if (m < 2 || gcd64(m, 6) != 1) fail(ErrorKind::BadModulus, "need gcd(m, 6) = 1");
  if (gcd64(ell, m) != 1) fail(ErrorKind::ConstraintViolation, "l must be invertible mod m");
  i64 a = q.at(slot);
  if (!is_odd_prime_curvature(a)) fail(ErrorKind::SeedNotPrime, "base circle must be an odd prime");
  std::vector<PathStep> path{{a, q, slot}};
  auto tangents = tangent_quadruples(q, slot, cap);
  std::stable_sort(tangents.begin(), tangents.end(),
                   [](const auto& u, const auto& v) { return u.curvature < v.curvature; });
  if (gcd64(ell + a, m) == 1) {
    for (const auto& t : tangents)
      if (is_odd_prime_curvature(t.curvature) && mod(t.curvature - ell, m) == 0) {
        path.push_back({t.curvature, t.quad, t.slot});
        return path;
      }
    fail(ErrorKind::SearchExhausted, "no tangent prime in the class below the cap");
  }
  i64 k = 1;
  for (; k < m; ++k)
    if (gcd64(k, m) == 1 && gcd64(k + a, m) == 1 && gcd64(ell + k, m) == 1) break;
  if (k == m) fail(ErrorKind::SearchExhausted, "no intermediate residue");
  for (const auto& t : tangents) {
    if (!is_odd_prime_curvature(t.curvature) || mod(t.curvature - k, m) != 0) continue;
    auto second = tangent_quadruples(t.quad, t.slot, cap);
    std::stable_sort(second.begin(), second.end(),
                     [](const auto& u, const auto& v) { return u.curvature < v.curvature; });
    for (const auto& s : second)
      if (is_odd_prime_curvature(s.curvature) && mod(s.curvature - ell, m) == 0) {
        path.push_back({t.curvature, t.quad, t.slot});
        path.push_back({s.curvature, s.quad, s.slot});
        return path;
      }
  }
  fail(ErrorKind::SearchExhausted, "no two-step prime below the cap");
}

}  // namespace acp
