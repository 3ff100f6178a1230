#pragma once

#include <algorithm>
#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "acp/arith.hpp"

namespace acp {

// Four signed curvatures. Slots are numbered 1..4 in every public interface.
struct Quadruple {
  std::array<i64, 4> v{};

  i64& operator[](int slot0) { return v[static_cast<size_t>(slot0)]; }
  i64 operator[](int slot0) const { return v[static_cast<size_t>(slot0)]; }
  i64 at(int slot) const { return v[static_cast<size_t>(slot - 1)]; }
  i64 max() const { return *std::max_element(v.begin(), v.end()); }
  i64 sum() const { return v[0] + v[1] + v[2] + v[3]; }
  Quadruple sorted() const {
    Quadruple s = *this;
    std::sort(s.v.begin(), s.v.end());
    return s;
  }
  auto operator<=>(const Quadruple&) const = default;
};

using Word = std::vector<int>;

inline Quadruple make_quadruple(i64 a, i64 b, i64 c, i64 d) { return Quadruple{{a, b, c, d}}; }

inline std::string format_quadruple(const Quadruple& q) {
  return std::to_string(q[0]) + "," + std::to_string(q[1]) + "," + std::to_string(q[2]) + "," +
         std::to_string(q[3]);
}

inline std::string format_word(const Word& w) {
  std::string s = "[";
  for (size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + std::to_string(w[k]);
  return s + "]";
}

inline Quadruple parse_quadruple(const std::string& text) {
  Quadruple q;
  std::stringstream ss(text);
  std::string item;
  int n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 4) fail(ErrorKind::BadQuadruple, "expected four entries: " + text);
    size_t used = 0;
    try {
      q[n] = std::stoll(item, &used);
    } catch (const std::exception&) {
      fail(ErrorKind::BadQuadruple, "not an integer: " + item);
    }
    if (used != item.size()) fail(ErrorKind::BadQuadruple, "not an integer: " + item);
    ++n;
  }
  if (n != 4) fail(ErrorKind::BadQuadruple, "expected four entries: " + text);
  return q;
}

// Q(a,b,c,d) = 2(a^2+b^2+c^2+d^2) - (a+b+c+d)^2, exact.
inline i64 descartes_form(const Quadruple& q) {
  i128 squares = 0, sum = 0;
  for (i64 x : q.v) {
    i128 sq;
    if (__builtin_mul_overflow(static_cast<i128>(x), static_cast<i128>(x), &sq) ||
        __builtin_add_overflow(squares, sq, &squares))
      fail(ErrorKind::Overflow, "descartes_form");
    sum += x;
  }
  i128 two, s2, r;
  if (__builtin_mul_overflow(squares, static_cast<i128>(2), &two) ||
      __builtin_mul_overflow(sum, sum, &s2) || __builtin_sub_overflow(two, s2, &r))
    fail(ErrorKind::Overflow, "descartes_form");
  return narrow(r);
}

inline bool is_descartes(const Quadruple& q) { return descartes_form(q) == 0; }

inline void require_valid(const Quadruple& q) {
  if (!is_descartes(q)) fail(ErrorKind::BadQuadruple, "not a Descartes quadruple: " + format_quadruple(q));
}

inline bool is_primitive(const Quadruple& q) {
  return gcd64(gcd64(q[0], q[1]), gcd64(q[2], q[3])) == 1;
}

inline i64 swapped_value(const Quadruple& q, int slot) {
  i64 others = sub_checked(add_checked(add_checked(q[0], q[1]), add_checked(q[2], q[3])), q[slot - 1]);
  return sub_checked(mul_checked(2, others), q[slot - 1]);
}

inline Quadruple apply_swap(Quadruple q, int slot) {
  if (slot < 1 || slot > 4) fail(ErrorKind::BadQuadruple, "swap index out of range");
  q[slot - 1] = swapped_value(q, slot);
  return q;
}

inline Quadruple apply_word(Quadruple q, const Word& w) {
  for (int s : w) q = apply_swap(q, s);
  return q;
}

inline bool is_root(const Quadruple& q) {
  return q[0] <= q[1] && q[1] <= q[2] && q[2] <= q[3] && q[0] <= 0 && q[0] + q[1] + q[2] >= q[3];
}

struct Reduction {
  Quadruple root;     // sorted ascending
  Word word;          // swaps applied, in original slot positions
  Quadruple reduced;  // the reduced vector before sorting
};

inline Reduction reduce_to_root(const Quadruple& q, i64 cap = 100000000) {
  require_valid(q);
  if (!is_primitive(q)) fail(ErrorKind::BadQuadruple, "not primitive: " + format_quadruple(q));
  Reduction r{q, {}, q};
  for (i64 it = 0;; ++it) {
    if (it > cap) fail(ErrorKind::NonTerminating, "reduction cap reached");
    int best = 0;
    for (int k = 1; k < 4; ++k)
      if (r.reduced[k] > r.reduced[best]) best = k;
    i64 nv = swapped_value(r.reduced, best + 1);
    if (nv >= r.reduced[best]) break;
    r.reduced[best] = nv;
    r.word.push_back(best + 1);
  }
  r.root = r.reduced.sorted();
  return r;
}

}  // namespace acp
