#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "acp/enumerate.hpp"
#include "acp/forms.hpp"
#include "acp/primes.hpp"
#include "acp/residues.hpp"
#include "acp/union_find.hpp"

namespace acp {

// d is the maximum and prime; the other three entries are not prime (1, 0 and negatives included).
inline bool is_prime_root(const Quadruple& q) {
  Quadruple s = q.sorted();
  if (!is_prime(s[3])) return false;
  for (int k = 0; k < 3; ++k)
    if (is_prime(s[k])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Reference route: store every circle, then union-find over odd prime circles.

struct CircleTable {
  Quadruple root;
  i64 bound = 0;
  std::vector<i64> curvature;
  std::vector<std::array<i64, 3>> parents;  // unused for root circles
  std::vector<char> is_root;
};

inline CircleTable build_circle_table(const Quadruple& root, i64 X) {
  i64 n = count_circles(root, X).circles + 4;
  check_budget(static_cast<u64>(n) * 40, "circle table");
  CircleTable t;
  t.root = root;
  t.bound = X;
  t.curvature.reserve(static_cast<size_t>(n));
  t.parents.reserve(static_cast<size_t>(n));
  enumerate_orbit(root, X, [&](const CircleRecord& r, const Quadruple&) {
    while (static_cast<i64>(t.curvature.size()) < r.id) {  // root circles above X keep their ids
      t.curvature.push_back(INT64_MAX);
      t.parents.push_back({});
      t.is_root.push_back(1);
    }
    t.curvature.push_back(r.curvature);
    t.parents.push_back(r.parents);
    t.is_root.push_back(r.root_slot != 0);
  });
  return t;
}

inline i64 find_circle(const CircleTable& t, i64 curvature) {
  for (size_t k = 0; k < t.curvature.size(); ++k)
    if (t.curvature[k] == curvature) return static_cast<i64>(k);
  return -1;
}

// Birth quadruple of circle `id` (the root quadruple for root circles).
inline Quadruple birth_quadruple(const Quadruple& root, i64 X, i64 id) {
  Quadruple out = root;
  enumerate_orbit(root, X, [&](const CircleRecord& r, const Quadruple& q) {
    if (r.id == id) out = q;
  });
  return out;
}

struct ComponentSnapshot {
  i64 bound = 0;
  Quadruple packing_root;
  i64 seed = -1;
  std::vector<i64> members, thickening;  // circle ids, ascending
  std::vector<i64> member_curvatures, thickening_curvatures;  // ascending
  std::optional<Quadruple> root_quadruple;  // birth quadruple of the smallest member
  bool root_valid = false;                   // that quadruple is a prime component root
  bool touches_root = false;                 // contains a circle of the packing's root quadruple
};

// Component labels (union-find representatives) for every odd prime circle; -1 otherwise.
inline std::vector<i64> component_labels(const CircleTable& t) {
  size_t n = t.curvature.size();
  UnionFind uf(n);
  std::vector<char> prime(n);
  for (size_t k = 0; k < n; ++k) prime[k] = t.curvature[k] <= t.bound && is_odd_prime_curvature(t.curvature[k]);
  for (size_t k = 0; k < n; ++k) {
    if (!prime[k]) continue;
    if (t.is_root[k]) {
      for (size_t j = 0; j < 4 && j < n; ++j)
        if (j != k && t.is_root[j] && prime[j]) uf.unite(k, j);
    } else {
      for (i64 p : t.parents[k])
        if (prime[static_cast<size_t>(p)]) uf.unite(k, static_cast<size_t>(p));
    }
  }
  std::vector<i64> label(n, -1);
  for (size_t k = 0; k < n; ++k)
    if (prime[k]) label[k] = static_cast<i64>(uf.find(k));
  return label;
}

inline ComponentSnapshot snapshot_from_labels(const CircleTable& t, const std::vector<i64>& label, i64 seed) {
  if (seed < 0 || static_cast<size_t>(seed) >= t.curvature.size() || label[static_cast<size_t>(seed)] < 0)
    fail(ErrorKind::SeedNotPrime, "seed is not an odd prime circle within the bound");
  size_t n = t.curvature.size();
  i64 L = label[static_cast<size_t>(seed)];
  auto member = [&](size_t k) { return label[k] == L; };
  std::vector<char> thick(n, 0);
  for (size_t k = 0; k < n; ++k) {
    if (t.curvature[k] > t.bound) continue;
    if (t.is_root[k]) {
      for (size_t j = 0; j < 4; ++j)
        if (j != k && t.is_root[j] && t.curvature[j] <= t.bound && member(j) && !member(k)) thick[k] = 1;
      continue;
    }
    for (i64 p : t.parents[k]) {
      size_t pp = static_cast<size_t>(p);
      if (member(k) && !member(pp)) thick[pp] = 1;
      if (member(pp) && !member(k)) thick[k] = 1;
    }
  }
  ComponentSnapshot s;
  s.bound = t.bound;
  s.packing_root = t.root;
  s.seed = seed;
  for (size_t k = 0; k < n; ++k) {
    if (member(k)) {
      s.members.push_back(static_cast<i64>(k));
      s.member_curvatures.push_back(t.curvature[k]);
      if (t.is_root[k]) s.touches_root = true;
    } else if (thick[k]) {
      s.thickening.push_back(static_cast<i64>(k));
      s.thickening_curvatures.push_back(t.curvature[k]);
    }
  }
  std::sort(s.member_curvatures.begin(), s.member_curvatures.end());
  std::sort(s.thickening_curvatures.begin(), s.thickening_curvatures.end());
  i64 smallest = -1;
  for (i64 k : s.members)
    if (smallest < 0 || t.curvature[static_cast<size_t>(k)] < t.curvature[static_cast<size_t>(smallest)]) smallest = k;
  if (!s.touches_root) {
    s.root_quadruple = birth_quadruple(t.root, t.bound, smallest);
    s.root_valid = is_prime_root(*s.root_quadruple);
  }
  return s;
}

inline ComponentSnapshot extract_component(const CircleTable& t, i64 seed) {
  return snapshot_from_labels(t, component_labels(t), seed);
}

inline ComponentSnapshot extract_component(const Quadruple& root, i64 seed_curvature, i64 X) {
  if (!is_odd_prime_curvature(seed_curvature) || seed_curvature > X)
    fail(ErrorKind::SeedNotPrime, "seed curvature must be an odd prime <= X");
  CircleTable t = build_circle_table(root, X);
  i64 id = find_circle(t, seed_curvature);
  if (id < 0) fail(ErrorKind::SeedNotPrime, "no circle of that curvature in the packing");
  return extract_component(t, id);
}

// ---------------------------------------------------------------------------
// Streaming route. Each odd prime circle either has an odd prime parent, and then lies in
// that parent's component, or starts a component of its own: the three parents bound an
// interstice holding the whole component. Labels therefore propagate down the tree, and
// subtrees whose bounding circles are all outside the target hold nothing of it.

// Which component to follow: the one through the root quadruple, or the one whose smallest
// circle is born at the end of `word` (a reduced word from the root, 1-based slots).
struct ComponentTarget {
  bool root_component = true;
  Word word;
};

struct ScanOptions {
  std::vector<i64> grid;  // ascending bounds X
  i64 lo = 0, hi = 0;     // optional window [lo, hi) of thickened-component multiplicities
  std::vector<i64> moduli;
  const PrimeSieve* sieve = nullptr;
};

struct ComponentScan {
  std::vector<i64> grid;
  std::vector<i64> members;    // C_pr(X) per grid point
  std::vector<i64> thickened;  // C_th(X) = members + thickening, per grid point
  MultiplicityWindow window;   // thickened-component multiplicities in [lo, hi)
  std::vector<ResidueClassSet> member_residues, thickened_residues;  // at the top bound
  i64 nodes = 0;
};

namespace detail {

enum : signed char { kNone = -1, kTarget = 0, kOther = 1 };

struct ScanSlot {
  signed char label = kNone;
  bool on_path = false;
  std::int32_t idx = 0;
};

struct ScanPolicy {
  const PrimeSieve& sieve;
  const ComponentTarget& target;
  const ScanOptions& opt;
  ComponentScan& out;
  i64 top;
  struct Entry {
    i64 curvature;
    i64 adj_min;  // smallest adjacent target member, INT64_MAX if none
    signed char label;
  };
  std::vector<Entry> stack;
  std::vector<i64> member_bucket, thick_bucket;

  size_t bucket(i64 v) const {
    return static_cast<size_t>(std::lower_bound(out.grid.begin(), out.grid.end(), v) - out.grid.begin());
  }

  bool child(const Frame<ScanSlot>& parent, int slot, Frame<ScanSlot>& c) {
    i64 v = c.q[slot - 1];
    bool kept_target = false;
    signed char inherited = kNone;
    for (int t = 1; t <= 4; ++t) {
      if (t == slot) continue;
      signed char l = c.pl[static_cast<size_t>(t - 1)].label;
      if (l == kTarget) kept_target = true;
      if (l != kNone && inherited != kTarget) inherited = l;
    }
    bool parent_on_path = parent.last == 0 ? !target.root_component
                                           : parent.pl[static_cast<size_t>(parent.last - 1)].on_path;
    size_t d = static_cast<size_t>(parent.depth);
    bool on_path = parent_on_path && d < target.word.size() && target.word[d] == slot;
    if (!kept_target && !on_path) return false;
    ScanSlot s;
    s.on_path = on_path;
    s.idx = static_cast<std::int32_t>(stack.size());
    if (sieve.is_odd_prime(v)) {
      if (inherited != kNone) {
        s.label = inherited;
      } else {
        bool is_target = on_path && d + 1 == target.word.size();
        s.label = is_target ? kTarget : kOther;
      }
    } else if (on_path && d + 1 == target.word.size()) {
      fail(ErrorKind::BadQuadruple, "target word does not end at a component's smallest circle");
    }
    c.pl[static_cast<size_t>(slot - 1)] = s;
    return true;
  }

  void enter(const Frame<ScanSlot>& f) {
    ++out.nodes;
    if (f.last == 0) return;
    const ScanSlot& s = f.pl[static_cast<size_t>(f.last - 1)];
    i64 v = f.q[f.last - 1];
    Entry e{v, INT64_MAX, s.label};
    for (int t = 1; t <= 4; ++t) {
      if (t == f.last) continue;
      Entry& p = stack[static_cast<size_t>(f.pl[static_cast<size_t>(t - 1)].idx)];
      if (s.label == kTarget && p.label != kTarget) p.adj_min = std::min(p.adj_min, v);
      if (p.label == kTarget && s.label != kTarget) e.adj_min = std::min(e.adj_min, p.curvature);
    }
    stack.push_back(e);
  }

  void finish(const Entry& e) {
    if (e.curvature > top) return;
    if (e.label == kTarget) {
      ++member_bucket[bucket(e.curvature)];
      ++thick_bucket[bucket(e.curvature)];
      for (size_t k = 0; k < opt.moduli.size(); ++k) {
        out.member_residues[k].insert(e.curvature);
        out.thickened_residues[k].insert(e.curvature);
      }
    } else if (e.adj_min != INT64_MAX) {
      ++thick_bucket[bucket(std::max(e.curvature, e.adj_min))];
      for (size_t k = 0; k < opt.moduli.size(); ++k) out.thickened_residues[k].insert(e.curvature);
    } else {
      return;
    }
    if (opt.hi > opt.lo && e.curvature >= opt.lo && e.curvature < opt.hi &&
        (e.label == kTarget || e.adj_min < opt.hi))
      ++out.window.counters[static_cast<size_t>(e.curvature - opt.lo)];
  }

  void leave(const Frame<ScanSlot>& f) {
    if (f.last == 0) return;
    finish(stack.back());
    stack.pop_back();
  }
};

}  // namespace detail

inline ComponentScan scan_component(const Quadruple& root, const ComponentTarget& target, const ScanOptions& opt) {
  require_root(root);
  ComponentScan out;
  out.grid = opt.grid;
  if (!std::is_sorted(out.grid.begin(), out.grid.end())) fail(ErrorKind::BadQuadruple, "grid must ascend");
  i64 top = out.grid.empty() ? 0 : out.grid.back();
  if (opt.hi > opt.lo) {
    top = std::max(top, opt.hi - 1);
    check_budget(static_cast<u64>(opt.hi - opt.lo) * 4, "multiplicity window");
    out.window = {opt.lo, opt.hi, std::vector<std::uint32_t>(static_cast<size_t>(opt.hi - opt.lo), 0)};
  }
  require_bound(top);
  if (out.grid.empty() || out.grid.back() < top) out.grid.push_back(top);
  std::optional<PrimeSieve> own;
  const PrimeSieve* sieve = opt.sieve;
  if (!sieve || sieve->limit() < top) {
    check_budget(static_cast<u64>(top / 16 + 64), "prime sieve");
    own.emplace(top);
    sieve = &*own;
  }
  for (i64 m : opt.moduli) {
    out.member_residues.emplace_back(m);
    out.thickened_residues.emplace_back(m);
  }
  detail::ScanPolicy pol{*sieve, target, opt, out, top, {}, std::vector<i64>(out.grid.size() + 1, 0),
                         std::vector<i64>(out.grid.size() + 1, 0)};
  Frame<detail::ScanSlot> start = root_frame<detail::ScanSlot>(root);
  for (int s = 0; s < 4; ++s) {
    bool prime = sieve->is_odd_prime(root[s]);
    start.pl[static_cast<size_t>(s)] = {
        prime ? (target.root_component ? detail::kTarget : detail::kOther) : detail::kNone, false, s};
    pol.stack.push_back({root[s], INT64_MAX, start.pl[static_cast<size_t>(s)].label});
  }
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t)
      if (s != t && pol.stack[static_cast<size_t>(t)].label == detail::kTarget &&
          pol.stack[static_cast<size_t>(s)].label != detail::kTarget)
        pol.stack[static_cast<size_t>(s)].adj_min =
            std::min(pol.stack[static_cast<size_t>(s)].adj_min, pol.stack[static_cast<size_t>(t)].curvature);
  walk_subtree(start, top, root_skip_mask(root), pol);
  for (int s = 0; s < 4; ++s) pol.finish(pol.stack[static_cast<size_t>(s)]);
  out.members.assign(out.grid.size(), 0);
  out.thickened.assign(out.grid.size(), 0);
  i64 m = 0, t = 0;
  for (size_t k = 0; k < out.grid.size(); ++k) {
    m += pol.member_bucket[k];
    t += pol.thick_bucket[k];
    out.members[k] = m;
    out.thickened[k] = t;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Census of every component at bound X, streaming with dense labels.

struct ComponentSummary {
  i64 label = 0;
  i64 smallest = 0;      // curvature of the smallest member
  i64 members = 0;
  Quadruple birth;       // birth quadruple of the smallest member (root quadruple for label 0)
  bool prime_root = false;
  Word word;             // reduced word from the packing root to `birth`
};

struct Census {
  i64 bound = 0;
  std::vector<ComponentSummary> components;  // label order; label 0 is the root component
  // residue sets of members, for components whose smallest member is <= residue_root_max
  std::map<i64, std::vector<ResidueClassSet>> residues;
  i64 label_conflicts = 0;  // odd prime circles whose prime parents disagree; zero in theory
  i64 largest() const {
    i64 best = 0;
    for (const auto& c : components)
      if (c.members > components[static_cast<size_t>(best)].members) best = c.label;
    return best;
  }
};

inline Census component_census(const Quadruple& root, i64 X, const std::vector<i64>& moduli = {},
                               i64 residue_root_max = 0) {
  require_root(root);
  require_bound(X);
  check_budget(static_cast<u64>(X / 16 + 64), "prime sieve");
  PrimeSieve sieve(X);
  Census out;
  out.bound = X;
  out.components.push_back({0, INT64_MAX, 0, root, false, {}});
  struct Policy {
    const PrimeSieve& sieve;
    Census& out;
    const std::vector<i64>& moduli;
    i64 rmax;
    Word word;
    bool child(const Frame<i64>& parent, int slot, Frame<i64>& c) {
      (void)parent;
      i64 v = c.q[slot - 1];
      i64 label = -1;
      if (sieve.is_odd_prime(v)) {
        for (int t = 1; t <= 4; ++t) {
          i64 l = c.pl[static_cast<size_t>(t - 1)];
          if (t == slot || l < 0) continue;
          if (label >= 0 && l != label) ++out.label_conflicts;
          label = l;
        }
        if (label < 0) {
          label = static_cast<i64>(out.components.size());
          Word w = word;
          w.push_back(slot);
          out.components.push_back({label, v, 0, c.q, is_prime_root(c.q), w});
          if (v <= rmax) {
            auto& sets = out.residues[label];
            for (i64 m : moduli) sets.emplace_back(m);
          }
        }
        auto& comp = out.components[static_cast<size_t>(label)];
        ++comp.members;
        comp.smallest = std::min(comp.smallest, v);
        auto it = out.residues.find(label);
        if (it != out.residues.end())
          for (auto& s : it->second) s.insert(v);
      }
      c.pl[static_cast<size_t>(slot - 1)] = label;
      return true;
    }
    void enter(const Frame<i64>& f) {
      if (f.last) word.push_back(f.last);
    }
    void leave(const Frame<i64>& f) {
      if (f.last) word.pop_back();
    }
  } pol{sieve, out, moduli, residue_root_max, {}};
  Frame<i64> start = root_frame<i64>(root);
  bool any_root_prime = false;
  for (int s = 0; s < 4; ++s) {
    bool prime = sieve.is_odd_prime(root[s]) && root[s] <= X;
    start.pl[static_cast<size_t>(s)] = prime ? 0 : -1;
    if (prime) {
      any_root_prime = true;
      ++out.components[0].members;
      out.components[0].smallest = std::min(out.components[0].smallest, root[s]);
    }
  }
  if (any_root_prime && out.components[0].smallest <= residue_root_max) {
    auto& sets = out.residues[0];
    for (i64 m : moduli) sets.emplace_back(m);
    for (int s = 0; s < 4; ++s)
      if (start.pl[static_cast<size_t>(s)] == 0)
        for (auto& set : sets) set.insert(root[s]);
  }
  // residues of root-component members born later are added in child()
  walk_subtree(start, X, root_skip_mask(root), pol);
  return out;
}

// ---------------------------------------------------------------------------
// Prime component roots: N^root = Sigma1 - Sigma2 over tree nodes with max <= X.

struct RootCounts {
  std::vector<i64> grid;
  std::vector<i64> quadruples, circles, sigma1, sigma2, nroot;
  std::vector<double> psi, pair_log;  // sum of log p over prime circles, over tangent prime pairs
};

namespace detail {

struct RootCountPolicy {
  const PrimeSieve* sieve;
  const std::vector<i64>* grid;
  std::vector<i64> q, c, s1, s2, nr;
  std::map<size_t, std::pair<std::vector<double>, std::vector<double>>> partial;
  std::vector<double>* psi = nullptr;
  std::vector<double>* pair = nullptr;

  explicit RootCountPolicy(const PrimeSieve* s, const std::vector<i64>* g)
      : sieve(s), grid(g), q(g->size()), c(g->size()), s1(g->size()), s2(g->size()), nr(g->size()) {
    begin_task(SIZE_MAX);
  }
  bool child(const Frame<NoPayload>&, int, Frame<NoPayload>&) { return true; }
  void begin_task(size_t k) {
    auto& p = partial[k];
    p.first.assign(grid->size(), 0.0);
    p.second.assign(grid->size(), 0.0);
    psi = &p.first;
    pair = &p.second;
  }
  void end_task(size_t) { begin_task(SIZE_MAX); }
  void enter(const Frame<NoPayload>& f) {
    if (f.last == 0) return;
    i64 v = f.q[f.last - 1];
    size_t b = static_cast<size_t>(std::lower_bound(grid->begin(), grid->end(), v) - grid->begin());
    ++q[b];
    ++c[b];
    if (!sieve->is_prime(v)) return;
    double lv = std::log(static_cast<double>(v));
    (*psi)[b] += lv;
    ++s1[b];
    int others = 0;
    for (int t = 1; t <= 4; ++t) {
      if (t == f.last) continue;
      i64 p = f.q[t - 1];
      if (sieve->is_prime(p)) {
        ++others;
        (*pair)[b] += lv * std::log(static_cast<double>(p));
      }
    }
    if (others) ++s2[b];
    else ++nr[b];
  }
  void leave(const Frame<NoPayload>&) {}
};

}  // namespace detail

inline RootCounts count_prime_roots_series(const Quadruple& root, std::vector<i64> grid, int workers = 1) {
  require_root(root);
  if (grid.empty() || !std::is_sorted(grid.begin(), grid.end())) fail(ErrorKind::BadQuadruple, "grid must ascend");
  i64 top = grid.back();
  require_bound(top);
  check_budget(static_cast<u64>(std::max(top, root.max()) / 16 + 64), "prime sieve");
  PrimeSieve sieve(std::max(top, root.max()));
  auto res = walk_partitioned(root_frame<NoPayload>(root), top, root_skip_mask(root), workers,
                              [&] { return detail::RootCountPolicy(&sieve, &grid); });
  size_t n = grid.size();
  RootCounts out{grid, std::vector<i64>(n), std::vector<i64>(n), std::vector<i64>(n), std::vector<i64>(n),
                 std::vector<i64>(n), std::vector<double>(n), std::vector<double>(n)};
  std::vector<i64> q(n), c(n), s1(n), s2(n), nr(n);
  std::map<size_t, std::pair<std::vector<double>, std::vector<double>>> partial;
  for (size_t w = 0; w < res.policies.size(); ++w) {
    auto& p = res.policies[w];
    for (size_t k = 0; k < n; ++k) {
      q[k] += p.q[k];
      c[k] += p.c[k];
      s1[k] += p.s1[k];
      s2[k] += p.s2[k];
      nr[k] += p.nr[k];
    }
    for (auto& [task, sums] : p.partial) {
      if (task == SIZE_MAX && w != 0) continue;  // idle scratch of worker policies
      partial[task == SIZE_MAX ? 0 : task + 1] = sums;
    }
  }
  // the root node: its circles, its internal tangencies, and its own root test; entries
  // above the top bound are left out
  std::vector<double> psi0(n, 0.0), pair0(n, 0.0);
  size_t rb = static_cast<size_t>(std::lower_bound(grid.begin(), grid.end(), root.max()) - grid.begin());
  if (rb < n) ++q[rb];
  for (int s = 0; s < 4; ++s) {
    i64 v = root[s];
    size_t b = static_cast<size_t>(std::lower_bound(grid.begin(), grid.end(), std::max<i64>(v, grid.front())) -
                                   grid.begin());
    if (b == n) continue;
    ++c[b];
    if (sieve.is_prime(v)) psi0[b] += std::log(static_cast<double>(v));
    for (int t = s + 1; t < 4; ++t)
      if (sieve.is_prime(v) && sieve.is_prime(root[t])) {
        size_t bb = static_cast<size_t>(std::lower_bound(grid.begin(), grid.end(), std::max(v, root[t])) -
                                        grid.begin());
        if (bb < n) pair0[bb] += std::log(static_cast<double>(v)) * std::log(static_cast<double>(root[t]));
      }
  }
  if (rb < n && sieve.is_prime(root.max())) {
    ++s1[rb];
    if (is_prime_root(root)) ++nr[rb];
    else ++s2[rb];
  }
  double psum = 0, qsum = 0;
  std::vector<double> psi(n, 0.0), pair(n, 0.0);
  for (size_t k = 0; k < n; ++k) {
    psi[k] = psi0[k];
    pair[k] = pair0[k];
  }
  for (auto& [task, sums] : partial)
    for (size_t k = 0; k < n; ++k) {
      psi[k] += sums.first[k];
      pair[k] += sums.second[k];
    }
  i64 aq = 0, ac = 0, a1 = 0, a2 = 0, ar = 0;
  for (size_t k = 0; k < n; ++k) {
    out.quadruples[k] = aq += q[k];
    out.circles[k] = ac += c[k];
    out.sigma1[k] = a1 += s1[k];
    out.sigma2[k] = a2 += s2[k];
    out.nroot[k] = ar += nr[k];
    out.psi[k] = psum += psi[k];
    out.pair_log[k] = qsum += pair[k];
  }
  return out;
}

struct RootCount {
  i64 nroot, sigma1, sigma2;
};

inline RootCount count_prime_roots(const Quadruple& root, i64 X, int workers = 1) {
  auto r = count_prime_roots_series(root, {X}, workers);
  return {r.nroot[0], r.sigma1[0], r.sigma2[0]};
}

// ---------------------------------------------------------------------------

struct Coverage {
  ResidueClassSet present, expected;
  std::vector<i64> missing;
};

inline Coverage residue_coverage(const std::vector<i64>& curvatures, i64 m, const ResidueClassSet& expected) {
  Coverage c{ResidueClassSet(m), expected, {}};
  for (i64 v : curvatures) c.present.insert(v);
  for (i64 r : expected.members())
    if (!c.present.contains(r)) c.missing.push_back(r);
  return c;
}

inline Coverage residue_coverage(const ResidueClassSet& present, const ResidueClassSet& expected) {
  Coverage c{present, expected, {}};
  for (i64 r : expected.members())
    if (!present.contains(r)) c.missing.push_back(r);
  return c;
}

// Prime component: expected classes are the units. Thickened: the packing's admissible classes.
inline Coverage prime_coverage(const ComponentSnapshot& s, i64 m) {
  return residue_coverage(s.member_curvatures, m, units_mod(m));
}

inline Coverage thickened_coverage(const ComponentSnapshot& s, i64 m) {
  std::vector<i64> all = s.member_curvatures;
  all.insert(all.end(), s.thickening_curvatures.begin(), s.thickening_curvatures.end());
  return residue_coverage(all, m, admissible_residues(s.packing_root, m));
}

// ---------------------------------------------------------------------------
// Curvatures within two tangencies of the circle q.at(slot): layer one is the set B of odd
// primes <= bmax tangent to it; layer two unions the tangent values of one circle per prime.

struct Kappa2 {
  i64 distinct = 0;     // distinct positive curvatures <= X in the union
  i64 nonpositive = 0;  // distinct curvatures <= 0 in the union
  i64 total = 0;        // sum of |S_alpha|
  std::vector<i64> layer1;  // the primes alpha, ascending
  std::vector<std::vector<i64>> sets;  // S_alpha, ascending, in layer1 order
};

inline Kappa2 two_layer_kappa2(const Quadruple& q, int slot, i64 bmax, i64 X, bool keep_sets = false) {
  require_bound(X);
  check_budget(static_cast<u64>(X / 8 + 64), "kappa2 bit set");
  Kappa2 out;
  if (bmax < 3) return out;
  std::map<i64, TangentCircle> chosen;  // first occurrence in traversal order
  for (const auto& t : tangent_quadruples(q, slot, bmax))
    if (is_odd_prime_curvature(t.curvature)) chosen.emplace(t.curvature, t);
  std::vector<u64> bits(static_cast<size_t>(X / 64 + 1), 0);
  std::vector<i64> nonpos;
  for (auto& [alpha, t] : chosen) {
    out.layer1.push_back(alpha);
    std::vector<i64> vals = represented_values(curvature_form(t.quad, t.slot), X, true);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    out.total += static_cast<i64>(vals.size());
    for (i64 v : vals) {
      if (v >= 1) bits[static_cast<size_t>(v >> 6)] |= u64{1} << (v & 63);
      else nonpos.push_back(v);
    }
    if (keep_sets) out.sets.push_back(std::move(vals));
  }
  for (u64 w : bits) out.distinct += __builtin_popcountll(w);
  std::sort(nonpos.begin(), nonpos.end());
  out.nonpositive = std::unique(nonpos.begin(), nonpos.end()) - nonpos.begin();
  return out;
}

}  // namespace acp
