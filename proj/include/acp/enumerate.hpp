#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "acp/budget.hpp"
#include "acp/tree.hpp"

namespace acp {

struct CircleRecord {
  i64 id = 0;
  i64 curvature = 0;
  int root_slot = 0;       // 1..4 for root circles, 0 otherwise
  int birth_slot = 0;      // slot of the new maximum in the birth quadruple
  i64 birth_node = -1;     // dense id of the birth quadruple (root quadruple is 0)
  std::array<i64, 3> parents{};
  int nparents = 0;
  i64 depth = 0;
};

struct EnumerationReport {
  i64 bound = 0;
  i64 circles = 0;
  i64 distinct = 0;
  i64 quadruples = 0;
};

// Visits every circle of the packing with curvature <= X, once per circle.
// Ids are dense in depth-first order: root slots first, then births in visiting order.
// `sink(record, birth_quadruple)` is called for each circle.
template <class Sink>
EnumerationReport enumerate_orbit(const Quadruple& root, i64 X, Sink&& sink, bool track_distinct = false) {
  require_root(root);
  require_bound(X);
  EnumerationReport rep;
  rep.bound = X;
  std::vector<u64> seen;
  if (track_distinct && X > 0) {
    check_budget(static_cast<u64>(X / 8 + 8), "distinct bit set");
    seen.assign(static_cast<size_t>(X / 64 + 1), 0);
  }
  auto note = [&](i64 c) {
    ++rep.circles;
    if (track_distinct && c >= 1 && c <= X) {
      u64& w = seen[static_cast<size_t>(c >> 6)];
      u64 bit = u64{1} << (c & 63);
      if (!(w & bit)) {
        w |= bit;
        ++rep.distinct;
      }
    }
  };
  Frame<i64> start = root_frame<i64>(root);
  for (int s = 1; s <= 4; ++s) {
    start.pl[static_cast<size_t>(s - 1)] = s - 1;
    if (root[s - 1] > X) continue;
    CircleRecord r;
    r.id = s - 1;
    r.curvature = root[s - 1];
    r.root_slot = s;
    r.birth_node = 0;
    r.birth_slot = s;
    int k = 0;
    for (int t = 1; t <= 4; ++t)
      if (t != s) r.parents[static_cast<size_t>(k++)] = t - 1;
    r.nparents = 0;
    note(r.curvature);
    sink(static_cast<const CircleRecord&>(r), static_cast<const Quadruple&>(root));
  }
  i64 next_id = 4;
  struct Policy {
    i64& next_id;
    EnumerationReport& rep;
    decltype(note)& note_fn;
    Sink& sink;
    bool child(const Frame<i64>& parent, int slot, Frame<i64>& c) {
      CircleRecord r;
      r.id = next_id++;
      r.curvature = c.q[slot - 1];
      r.birth_slot = slot;
      r.birth_node = rep.quadruples;  // id the child node is about to receive
      int k = 0;
      for (int t = 1; t <= 4; ++t)
        if (t != slot) r.parents[static_cast<size_t>(k++)] = parent.pl[static_cast<size_t>(t - 1)];
      r.nparents = 3;
      r.depth = c.depth;
      c.pl[static_cast<size_t>(slot - 1)] = r.id;
      note_fn(r.curvature);
      sink(static_cast<const CircleRecord&>(r), static_cast<const Quadruple&>(c.q));
      return true;
    }
    void enter(const Frame<i64>&) { ++rep.quadruples; }
    void leave(const Frame<i64>&) {}
  } pol{next_id, rep, note, sink};
  walk_subtree(start, X, root_skip_mask(root), pol);
  return rep;
}

namespace detail {

struct CountPolicy {
  i64 circles = 0, nodes = 0;
  bool child(const Frame<NoPayload>&, int, Frame<NoPayload>&) { return true; }
  void enter(const Frame<NoPayload>&) {
    ++nodes;
    ++circles;
  }
  void leave(const Frame<NoPayload>&) {}
  void begin_task(size_t) {}
  void end_task(size_t) {}
};

}  // namespace detail

inline i64 root_circles_below(const Quadruple& root, i64 X) {
  i64 n = 0;
  for (i64 v : root.v) n += v <= X;
  return n;
}

// Circles with curvature <= X, with multiplicity.
inline EnumerationReport count_circles(const Quadruple& root, i64 X, int workers = 1) {
  require_root(root);
  require_bound(X);
  auto res = walk_partitioned(root_frame<NoPayload>(root), X, root_skip_mask(root), workers,
                              [] { return detail::CountPolicy{}; });
  EnumerationReport rep;
  rep.bound = X;
  for (auto& p : res.policies) {
    rep.quadruples += p.nodes;
    rep.circles += p.circles;
  }
  rep.circles += root_circles_below(root, X) - 1;  // the root node counted itself once
  return rep;
}

namespace detail {

struct DistinctPolicy {
  std::vector<std::atomic<u64>>* bits;
  i64 nodes = 0;
  bool child(const Frame<NoPayload>&, int, Frame<NoPayload>&) { return true; }
  void mark(i64 c) {
    if (c >= 1) (*bits)[static_cast<size_t>(c >> 6)].fetch_or(u64{1} << (c & 63), std::memory_order_relaxed);
  }
  void enter(const Frame<NoPayload>& f) {
    ++nodes;
    if (f.last) mark(f.q[f.last - 1]);
  }
  void leave(const Frame<NoPayload>&) {}
  void begin_task(size_t) {}
  void end_task(size_t) {}
};

}  // namespace detail

// Distinct positive curvatures <= X.
inline EnumerationReport count_distinct(const Quadruple& root, i64 X, int workers = 1) {
  require_root(root);
  require_bound(X);
  check_budget(static_cast<u64>(X / 8 + 8), "distinct bit set");
  std::vector<std::atomic<u64>> bits(static_cast<size_t>(X / 64 + 1));
  auto res = walk_partitioned(root_frame<NoPayload>(root), X, root_skip_mask(root), workers,
                              [&] { return detail::DistinctPolicy{&bits}; });
  EnumerationReport rep;
  rep.bound = X;
  for (auto& p : res.policies) rep.quadruples += p.nodes;
  for (i64 v : root.v)
    if (v >= 1 && v <= X) bits[static_cast<size_t>(v >> 6)].fetch_or(u64{1} << (v & 63));
  rep.circles = rep.quadruples - 1 + root_circles_below(root, X);
  for (auto& w : bits) rep.distinct += __builtin_popcountll(w.load());
  return rep;
}

struct MultiplicityWindow {
  i64 lo = 0, hi = 0;  // counts curvatures n with lo <= n < hi
  std::vector<std::uint32_t> counters;
  std::uint32_t at(i64 n) const { return counters[static_cast<size_t>(n - lo)]; }
};

namespace detail {

struct WindowPolicy {
  i64 lo, hi;
  std::vector<std::uint32_t> counts;
  bool child(const Frame<NoPayload>&, int, Frame<NoPayload>&) { return true; }
  void enter(const Frame<NoPayload>& f) {
    if (!f.last) return;
    i64 c = f.q[f.last - 1];
    if (c >= lo) ++counts[static_cast<size_t>(c - lo)];
  }
  void leave(const Frame<NoPayload>&) {}
  void begin_task(size_t) {}
  void end_task(size_t) {}
};

}  // namespace detail

inline MultiplicityWindow multiplicity_window(const Quadruple& root, i64 lo, i64 hi, int workers = 1) {
  if (!(lo < hi)) fail(ErrorKind::BadQuadruple, "window needs lo < hi");
  require_root(root);
  require_bound(hi);
  int nw = std::max(workers, 1);
  check_budget(static_cast<u64>(hi - lo) * 4 * static_cast<u64>(nw + 2), "multiplicity window");
  MultiplicityWindow w{lo, hi, std::vector<std::uint32_t>(static_cast<size_t>(hi - lo), 0)};
  auto res = walk_partitioned(root_frame<NoPayload>(root), hi - 1, root_skip_mask(root), nw, [&] {
    return detail::WindowPolicy{lo, hi, std::vector<std::uint32_t>(static_cast<size_t>(hi - lo), 0)};
  });
  for (auto& p : res.policies)
    for (size_t k = 0; k < w.counters.size(); ++k) w.counters[k] += p.counts[k];
  for (i64 v : root.v)
    if (v >= lo && v < hi) ++w.counters[static_cast<size_t>(v - lo)];
  return w;
}

// Least-squares slope of log C against log X.
inline double fit_exponent(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3) fail(ErrorKind::DegenerateFit, "need at least 3 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = static_cast<double>(samples.size());
  for (auto [x, c] : samples) {
    double lx = std::log(x), ly = std::log(c);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double den = n * sxx - sx * sx;
  if (den == 0) fail(ErrorKind::DegenerateFit, "samples share one X");
  return (n * sxy - sx * sy) / den;
}

// Curvatures of every circle tangent to circle `id`, with both curvatures <= X.
inline std::vector<i64> neighbor_curvatures(const Quadruple& root, i64 X, i64 id) {
  std::vector<i64> out;
  std::array<i64, 3> own{};
  bool own_root = id < 4;
  enumerate_orbit(root, X, [&](const CircleRecord& r, const Quadruple&) {
    if (r.id == id) {
      own = r.parents;
      return;
    }
    if (r.root_slot) {
      if (own_root) out.push_back(r.curvature);
      return;
    }
    for (i64 p : r.parents)
      if (p == id) out.push_back(r.curvature);
  });
  if (!own_root) {
    // parents are born before the circle itself; collect their curvatures in a second pass
    std::vector<i64> want(own.begin(), own.end());
    enumerate_orbit(root, X, [&](const CircleRecord& r, const Quadruple&) {
      for (i64 p : want)
        if (r.id == p) out.push_back(r.curvature);
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CircleLocation {
  i64 id = -1;
  Quadruple birth;  // the quadruple in which the circle appears, in slot `slot`
  int slot = 0;
};

// First circle of the given curvature in enumeration order.
inline CircleLocation locate_circle(const Quadruple& root, i64 curvature) {
  CircleLocation loc;
  if (curvature < *std::min_element(root.v.begin(), root.v.end())) fail(ErrorKind::SeedNotPrime, "curvature below the packing's smallest");
  enumerate_orbit(root, std::max(curvature, root.max()), [&](const CircleRecord& r, const Quadruple& q) {
    if (loc.id < 0 && r.curvature == curvature) loc = {r.id, q, r.birth_slot};
  });
  if (loc.id < 0) fail(ErrorKind::SeedNotPrime, "no circle of curvature " + std::to_string(curvature));
  return loc;
}

}  // namespace acp
