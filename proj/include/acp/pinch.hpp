#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acp/forms.hpp"

namespace acp {

// Circles tangent to both governors a and b form a chain f(x) = (a+b)x^2 - (a+b+c-d)x + c,
// with f(0) = c and f(1) = d; consecutive members together with a, b are Descartes quadruples.
struct PinchPoly {
  i64 a = 0, b = 0, c = 0, d = 0;
  std::array<int, 4> slots{1, 2, 3, 4};  // original slots of a, b, c, d

  i64 lead() const { return add_checked(a, b); }
  i64 lin() const { return -add_checked(add_checked(a, b), sub_checked(c, d)); }
  i128 disc() const { return static_cast<i128>(lin()) * lin() - static_cast<i128>(4) * lead() * c; }
  i64 operator()(i64 x) const {
    i128 v = static_cast<i128>(lead()) * x * x + static_cast<i128>(lin()) * x + c;
    return narrow(v);
  }
  // (a, b, f(x), f(x+1)) in governor-first order.
  Quadruple chain(i64 x) const { return make_quadruple(a, b, (*this)(x), (*this)(x + 1)); }
  // The same quadruple with entries put back in the original slots.
  Quadruple chain_in_slots(i64 x) const {
    Quadruple g = chain(x), out;
    for (int k = 0; k < 4; ++k) out[slots[static_cast<size_t>(k)] - 1] = g[k];
    return out;
  }
};

inline PinchPoly pinch_poly(const Quadruple& q, int i, int j) {
  require_valid(q);
  if (i == j || i < 1 || i > 4 || j < 1 || j > 4) fail(ErrorKind::BadQuadruple, "governing slots must differ");
  PinchPoly pp;
  pp.a = q.at(i);
  pp.b = q.at(j);
  pp.slots[0] = i;
  pp.slots[1] = j;
  int k = 2;
  for (int t = 1; t <= 4; ++t)
    if (t != i && t != j) pp.slots[static_cast<size_t>(k++)] = t;
  pp.c = q.at(pp.slots[2]);
  pp.d = q.at(pp.slots[3]);
  if (pp.disc() != static_cast<i128>(4) * pp.a * pp.b)
    fail(ErrorKind::DiscriminantMismatch, "pinch polynomial of " + format_quadruple(q));
  return pp;
}

inline Quadruple quadruple_at(const PinchPoly& pp, i64 s) { return pp.chain(mul_checked(4, s)); }

enum class FmKind { Degenerate, Full, Scaled };

struct PinchValueSet {
  FmKind kind;
  ResidueClassSet set;  // for Degenerate, filled only when the caller supplies c and d
};

// Residues of the pinch family of governors (a, b) modulo an odd prime power.
inline PinchValueSet value_set_Fm(i64 a, i64 b, i64 m, std::optional<std::pair<i64, i64>> cd = {}) {
  auto fs = factor(m);
  if (m < 3 || fs.size() != 1 || fs[0].p == 2) fail(ErrorKind::BadModulus, "need an odd prime power");
  i64 p = fs[0].p;
  if (mod(a, p) == 0 && mod(b, p) == 0) {
    PinchValueSet out{FmKind::Degenerate, ResidueClassSet(m)};
    if (cd) {
      auto [c, d] = *cd;
      // Here f depends on c and d; mod p it is the constant c, mod p^n it need not be.
      for (i64 x = 0; x < m; ++x)
        out.set.insert(mod(static_cast<i128>(a + b) * x * x - static_cast<i128>(a + b + c - d) * x + c, m));
    }
    return out;
  }
  if (mod(a + b, p) == 0) return {FmKind::Full, ResidueClassSet(m, true)};
  ResidueClassSet out(m);
  i64 s = mod(a + b, m), shift = mulmod(mulmod(a, b, m), inv_mod(s, m), m);
  for (i64 q : squares_mod(m).members()) out.insert(mulmod(s, q, m) - shift);
  return {FmKind::Scaled, out};
}

struct PinchSearch {
  bool found = false;
  i64 x = 0, value = 0;
  bool hypotheses_ok = true;
  std::string reason;
};

inline bool pinch_hypotheses(const PinchPoly& pp) {
  return pp.lead() > 0 && !is_square(static_cast<i64>(static_cast<i128>(pp.a) * pp.b)) && (pp.c & 1);
}

// Smallest x >= 0 with f(x) an odd prime (congruent to ell mod m when constrained).
inline PinchSearch find_prime_in_pinch(const PinchPoly& pp, std::optional<Congruence> constraint, i64 cap,
                                       bool strict = false) {
  PinchSearch out;
  out.hypotheses_ok = pinch_hypotheses(pp);
  if (!out.hypotheses_ok && strict) fail(ErrorKind::HypothesisViolation, "need a+b > 0, ab not a square, c odd");
  if (constraint) {
    ResidueClassSet hit(constraint->m);
    for (i64 x = 0; x < constraint->m; ++x) hit.insert(pp(x));
    if (!hit.contains(constraint->ell)) {
      out.reason = "residue not represented";
      return out;
    }
  }
  for (i64 x = 0; x < cap; ++x) {
    i64 v = pp(x);
    if (!is_odd_prime_curvature(v)) continue;
    if (constraint && mod(v - constraint->ell, constraint->m) != 0) continue;
    out.found = true;
    out.x = x;
    out.value = v;
    return out;
  }
  out.reason = "cap reached";
  return out;
}

struct PinchRow {
  i64 x, value;
  bool prime;
  i64 residue;
};

inline std::vector<PinchRow> pinch_scan(const PinchPoly& pp, i64 x0, i64 x1, i64 m) {
  std::vector<PinchRow> rows;
  for (i64 x = x0; x <= x1; ++x) {
    i64 v = pp(x);
    rows.push_back({x, v, is_odd_prime_curvature(v), mod(v, m)});
  }
  return rows;
}

struct TriangleWitness {
  i64 curvature;
  i64 x;           // chain position; x = 0 marks the inner circle itself
  Quadruple quad;  // governor-first (inner, tangent, f(x), f(x+1)), or the input quadruple
};

// An odd prime circle inside the interstice that holds q.at(inner_slot), bounded by the other
// three circles of q. The inner circle is tried first; then the pinch chain of the inner
// circle and q.at(tangent_slot), whose members at x >= 2 and x <= -1 lie in the interstice.
inline TriangleWitness find_prime_in_triangle(const Quadruple& q, int inner_slot, int tangent_slot, i64 cap) {
  if (cap <= 0) fail(ErrorKind::SearchExhausted, "cap is zero");
  i64 inner = q.at(inner_slot);
  if (is_odd_prime_curvature(inner)) return {inner, 0, q};
  PinchPoly pp = pinch_poly(q, inner_slot, tangent_slot);
  i64 up = 2, down = -1;
  for (i64 used = 1; used < cap; ++used) {
    i64 vu = pp(up), vd = pp(down);
    i64 x = vu <= vd ? up++ : down--;
    i64 v = pp(x);
    if (is_odd_prime_curvature(v)) return {v, x, pp.chain(x)};
  }
  fail(ErrorKind::SearchExhausted, "no prime in the interstice below the cap");
}

}  // namespace acp
