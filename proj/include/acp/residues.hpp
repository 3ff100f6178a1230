#pragma once

#include <vector>

#include "acp/quadruple.hpp"

namespace acp {

class ResidueClassSet {
 public:
  ResidueClassSet() = default;
  explicit ResidueClassSet(i64 m, bool full = false) : m_(m), bits_(static_cast<size_t>(m), full) {}

  i64 modulus() const { return m_; }
  bool contains(i64 r) const { return bits_[static_cast<size_t>(mod(r, m_))]; }
  void insert(i64 r) { bits_[static_cast<size_t>(mod(r, m_))] = true; }
  size_t size() const { return static_cast<size_t>(std::count(bits_.begin(), bits_.end(), true)); }
  std::vector<i64> members() const {
    std::vector<i64> out;
    for (i64 r = 0; r < m_; ++r)
      if (bits_[static_cast<size_t>(r)]) out.push_back(r);
    return out;
  }
  bool operator==(const ResidueClassSet&) const = default;

 private:
  i64 m_ = 1;
  std::vector<bool> bits_;
};

inline ResidueClassSet units_mod(i64 m) {
  ResidueClassSet s(m);
  for (i64 r = 0; r < m; ++r)
    if (is_unit(r, m)) s.insert(r);
  return s;
}

inline ResidueClassSet squares_mod(i64 m) {
  ResidueClassSet s(m);
  for (i64 x = 0; x < m; ++x) s.insert(mulmod(x, x, m));
  return s;
}

// Every state of the swap action on q reduced mod m, as packed base-m codes.
inline std::vector<u64> closure_states(const Quadruple& q, i64 m) {
  if (m < 1) fail(ErrorKind::BadModulus, "modulus must be positive");
  if (m > 150) fail(ErrorKind::MemoryBudgetExceeded, "closure needs m <= 150");
  const u64 mm = static_cast<u64>(m);
  auto encode = [&](const std::array<i64, 4>& s) {
    return ((static_cast<u64>(s[0]) * mm + static_cast<u64>(s[1])) * mm + static_cast<u64>(s[2])) * mm +
           static_cast<u64>(s[3]);
  };
  std::vector<bool> seen(mm * mm * mm * mm, false);
  std::vector<u64> out;
  std::array<i64, 4> s0{mod(q[0], m), mod(q[1], m), mod(q[2], m), mod(q[3], m)};
  seen[encode(s0)] = true;
  out.push_back(encode(s0));
  for (size_t head = 0; head < out.size(); ++head) {
    u64 c = out[head];
    std::array<i64, 4> s{};
    for (int k = 3; k >= 0; --k) {
      s[static_cast<size_t>(k)] = static_cast<i64>(c % mm);
      c /= mm;
    }
    i64 total = s[0] + s[1] + s[2] + s[3];
    for (size_t k = 0; k < 4; ++k) {
      auto t = s;
      t[k] = mod(2 * (total - s[k]) - s[k], m);
      u64 e = encode(t);
      if (!seen[e]) {
        seen[e] = true;
        out.push_back(e);
      }
    }
  }
  return out;
}

inline std::array<i64, 4> decode_state(u64 code, i64 m) {
  std::array<i64, 4> s{};
  for (int k = 3; k >= 0; --k) {
    s[static_cast<size_t>(k)] = static_cast<i64>(code % static_cast<u64>(m));
    code /= static_cast<u64>(m);
  }
  return s;
}

inline ResidueClassSet admissible_residues(const Quadruple& q, i64 m) {
  ResidueClassSet out(m);
  for (u64 code : closure_states(q, m))
    for (i64 r : decode_state(code, m)) out.insert(r);
  return out;
}

enum class Mod8Case { All1, All5, Mixed37 };

inline const char* mod8_name(Mod8Case c) {
  switch (c) {
    case Mod8Case::All1: return "All1";
    case Mod8Case::All5: return "All5";
    case Mod8Case::Mixed37: return "Mixed37";
  }
  return "?";
}

inline Mod8Case mod8_case(const Quadruple& root) {
  bool seen[8] = {};
  for (u64 code : closure_states(root, 8)) {
    auto s = decode_state(code, 8);
    int odd = 0;
    for (i64 r : s)
      if (r & 1) {
        seen[r] = true;
        ++odd;
      }
    if (odd != 2) fail(ErrorKind::InconsistentCase, "state without exactly two odd entries");
  }
  if (seen[1] && !seen[3] && !seen[5] && !seen[7]) return Mod8Case::All1;
  if (seen[5] && !seen[1] && !seen[3] && !seen[7]) return Mod8Case::All5;
  if (!seen[1] && !seen[5]) return Mod8Case::Mixed37;
  fail(ErrorKind::InconsistentCase, "odd residues mod 8 break the trichotomy");
}

}  // namespace acp
