#pragma once

#include <atomic>
#include <deque>
#include <thread>
#include <vector>

#include "acp/quadruple.hpp"

namespace acp {

// One node of the reduced-word tree. `last` is the slot swapped to reach it (0 at the root).
template <class P>
struct Frame {
  Quadruple q;
  std::array<P, 4> pl{};
  i64 depth = 0;
  int last = 0;
  int next = 1;
};

struct NoPayload {};

// Slots skipped at the root: when two or more swaps fix the root, the packing is
// invariant under a translation and those swaps are quotiented out.
inline std::array<bool, 4> root_skip_mask(const Quadruple& root) {
  std::array<bool, 4> fixes{};
  int n = 0;
  for (int s = 1; s <= 4; ++s) {
    fixes[static_cast<size_t>(s - 1)] = swapped_value(root, s) == root[s - 1];
    n += fixes[static_cast<size_t>(s - 1)];
  }
  if (n < 2) fixes = {};
  return fixes;
}

inline void require_root(const Quadruple& root) {
  require_valid(root);
  if (!is_root(root) || !is_primitive(root) || reduce_to_root(root).root != root)
    fail(ErrorKind::InvalidRoot, format_quadruple(root) + " is not a reduced primitive root");
  if (root.max() > (i64{1} << 58)) fail(ErrorKind::Overflow, "root too large");
}

inline void require_bound(i64 bound) {
  if (bound > (i64{1} << 58)) fail(ErrorKind::Overflow, "bound above 2^58");
}

// Policy interface:
//   bool child(const Frame<P>& parent, int slot, Frame<P>& c)  fill c.pl, return false to prune
//   void enter(const Frame<P>& f)
//   void leave(const Frame<P>& f)
template <class P, class Policy>
void walk_subtree(const Frame<P>& start, i64 bound, const std::array<bool, 4>& root_skip, Policy& pol) {
  std::vector<Frame<P>> stack;
  stack.reserve(1024);
  stack.push_back(start);
  pol.enter(stack.back());
  while (!stack.empty()) {
    Frame<P>& f = stack.back();
    if (f.next > 4) {
      pol.leave(f);
      stack.pop_back();
      continue;
    }
    int s = f.next++;
    if (s == f.last || (f.last == 0 && root_skip[static_cast<size_t>(s - 1)])) continue;
    i64 v = 2 * (f.q.sum() - f.q[s - 1]) - f.q[s - 1];
    if (v > bound) continue;
    Frame<P> c = f;
    c.q[s - 1] = v;
    c.last = s;
    c.next = 1;
    c.depth = f.depth + 1;
    if (!pol.child(f, s, c)) continue;
    stack.push_back(c);
    pol.enter(stack.back());
  }
}

// Splits the tree below `start` into a serial prefix plus independent subtrees.
// `make()` builds one policy per worker plus one for the prefix (index 0). Policies
// see begin_task(k)/end_task(k) around subtree k, so partial results can be kept
// per task and merged in task order, which makes results independent of `workers`.
// Only enter() matters here; leave() is not delivered for prefix nodes.
template <class P, class Make>
auto walk_partitioned(const Frame<P>& start, i64 bound, const std::array<bool, 4>& root_skip,
                      int workers, Make make) {
  using Policy = decltype(make());
  std::vector<Policy> pols;
  pols.push_back(make());
  Policy& pre = pols[0];
  std::deque<Frame<P>> frontier{start};
  // The split is fixed so that it does not depend on `workers`.
  const size_t fixed_target = 1024;
  size_t expanded = 0;
  while (!frontier.empty() && frontier.size() < fixed_target && expanded < 4 * fixed_target) {
    Frame<P> f = frontier.front();
    frontier.pop_front();
    pre.enter(f);
    ++expanded;
    for (int s = 1; s <= 4; ++s) {
      if (s == f.last || (f.last == 0 && root_skip[static_cast<size_t>(s - 1)])) continue;
      i64 v = 2 * (f.q.sum() - f.q[s - 1]) - f.q[s - 1];
      if (v > bound) continue;
      Frame<P> c = f;
      c.q[s - 1] = v;
      c.last = s;
      c.next = 1;
      c.depth = f.depth + 1;
      if (pre.child(f, s, c)) frontier.push_back(c);
    }
  }
  std::vector<Frame<P>> tasks(frontier.begin(), frontier.end());
  int nw = std::max(workers, 1);
  for (int w = 0; w < nw; ++w) pols.push_back(make());
  std::atomic<size_t> cursor{0};
  auto run = [&](Policy& pol) {
    for (size_t k; (k = cursor.fetch_add(1)) < tasks.size();) {
      pol.begin_task(k);
      walk_subtree(tasks[k], bound, root_skip, pol);
      pol.end_task(k);
    }
  };
  if (nw == 1) {
    run(pols[1]);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < nw; ++w) threads.emplace_back(run, std::ref(pols[static_cast<size_t>(w + 1)]));
    for (auto& t : threads) t.join();
  }
  struct Result {
    std::vector<Policy> policies;
    size_t tasks;
  };
  return Result{std::move(pols), tasks.size()};
}

template <class P>
Frame<P> root_frame(const Quadruple& root) {
  Frame<P> f;
  f.q = root;
  return f;
}

}  // namespace acp
