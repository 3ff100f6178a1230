#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "acp/components.hpp"

namespace acp {

using cplx = std::complex<double>;

struct PlacedCircle {
  i64 id = 0;
  i64 curvature = 0;
  double x = 0, y = 0, r = 0;  // for a line: (x, y) is the outward unit normal, r the offset
  bool line = false;
  std::array<i64, 3> parents{};
  int nparents = 0;
};

namespace detail {

struct PlaceSlot {
  i64 id = 0;
  cplx w{};  // curvature times center; the outward unit normal for a line
};

inline PlacedCircle to_placed(i64 id, i64 k, cplx w, double line_offset = 0) {
  PlacedCircle c;
  c.id = id;
  c.curvature = k;
  if (k == 0) {
    c.line = true;
    c.x = w.real();
    c.y = w.imag();
    c.r = line_offset;
  } else {
    cplx z = w / static_cast<double>(k);
    c.x = z.real();
    c.y = z.imag();
    c.r = 1.0 / std::abs(static_cast<double>(k));
  }
  return c;
}

}  // namespace detail

// Distance defect between two tangent circles, relative to the larger finite radius.
inline double tangency_residual(const PlacedCircle& a, const PlacedCircle& b) {
  if (a.line && b.line) return 0;
  if (a.line || b.line) {
    const PlacedCircle& l = a.line ? a : b;
    const PlacedCircle& c = a.line ? b : a;
    double gap = l.r - (c.x * l.x + c.y * l.y);
    return std::abs(gap - c.r) / c.r;
  }
  double d = std::hypot(a.x - b.x, a.y - b.y);
  double want = (a.curvature < 0 || b.curvature < 0) ? std::abs(a.r - b.r) : a.r + b.r;
  return std::abs(d - want) / std::max(a.r, b.r);
}

inline constexpr i64 kRenderMax = 1000000;

// Places every circle with curvature <= X; index k of the result is circle id k, matching
// enumerate_orbit. Root circles are always placed.
inline std::vector<PlacedCircle> place_circles(const Quadruple& root, i64 X) {
  require_root(root);
  if (X > kRenderMax) fail(ErrorKind::PlacementUnavailable, "double precision placement stops at X = 10^6");
  std::array<cplx, 4> w{};
  std::array<double, 4> offset{};
  std::vector<PlacedCircle> out;
  if (root == make_quadruple(0, 0, 1, 1)) {
    // the strip between y = 1 and y = -1, unit circles at 0 and 2
    w = {cplx(0, 1), cplx(0, -1), cplx(0, 0), cplx(2, 0)};
    offset = {1, 1, 0, 0};
  } else if (root[0] < 0 && root[1] > 0) {
    double ra = 1.0 / static_cast<double>(-root[0]), rb = 1.0 / static_cast<double>(root[1]);
    double rc = 1.0 / static_cast<double>(root[2]);
    double xb = ra - rb;
    cplx zb(xb, 0), zc;
    if (xb == 0) {
      fail(ErrorKind::PlacementUnavailable, "concentric seed");
    } else {
      double dc = ra - rc, dbc = rb + rc;
      double x = (dc * dc - dbc * dbc + xb * xb) / (2 * xb);
      zc = cplx(x, std::sqrt(std::max(0.0, dc * dc - x * x)));
    }
    w[0] = 0;
    w[1] = static_cast<double>(root[1]) * zb;
    w[2] = static_cast<double>(root[2]) * zc;
    cplx s = w[0] + w[1] + w[2];
    cplx disc = 2.0 * std::sqrt(w[0] * w[1] + w[1] * w[2] + w[2] * w[0]);
    double best = INFINITY;
    for (cplx cand : {s + disc, s - disc}) {
      PlacedCircle d = detail::to_placed(3, root[3], cand);
      double res = 0;
      for (int k = 0; k < 3; ++k) res = std::max(res, tangency_residual(d, detail::to_placed(k, root[k], w[k])));
      if (res < best) {
        best = res;
        w[3] = cand;
      }
    }
  } else {
    fail(ErrorKind::PlacementUnavailable, "no seed placement for root " + format_quadruple(root));
  }
  for (int k = 0; k < 4; ++k) out.push_back(detail::to_placed(k, root[k], w[static_cast<size_t>(k)], offset[static_cast<size_t>(k)]));

  Frame<detail::PlaceSlot> start = root_frame<detail::PlaceSlot>(root);
  for (size_t k = 0; k < 4; ++k) start.pl[k] = {static_cast<i64>(k), w[k]};
  struct Policy {
    std::vector<PlacedCircle>& out;
    bool child(const Frame<detail::PlaceSlot>& p, int slot, Frame<detail::PlaceSlot>& c) {
      size_t s = static_cast<size_t>(slot - 1);
      cplx nw = -p.pl[s].w;
      PlacedCircle pc;
      int k = 0;
      for (size_t t = 0; t < 4; ++t)
        if (t != s) {
          nw += 2.0 * p.pl[t].w;
          pc.parents[static_cast<size_t>(k++)] = p.pl[t].id;
        }
      i64 id = static_cast<i64>(out.size());
      PlacedCircle placed = detail::to_placed(id, c.q[slot - 1], nw);
      placed.parents = pc.parents;
      placed.nparents = 3;
      out.push_back(placed);
      c.pl[s] = {id, nw};
      return true;
    }
    void enter(const Frame<detail::PlaceSlot>&) {}
    void leave(const Frame<detail::PlaceSlot>&) {}
  } pol{out};
  check_budget(static_cast<u64>(count_circles(root, X).circles + 4) * sizeof(PlacedCircle), "placement");
  walk_subtree(start, X, root_skip_mask(root), pol);
  return out;
}

// Largest tangency residual of any placed circle against its parents.
inline double max_residual(const std::vector<PlacedCircle>& placed) {
  double worst = 0;
  for (const auto& c : placed)
    for (int k = 0; k < c.nparents; ++k)
      worst = std::max(worst, tangency_residual(c, placed[static_cast<size_t>(c.parents[static_cast<size_t>(k)])]));
  return worst;
}

struct Coloring {
  enum class Kind { ResidueMod, PrimeVsComposite, Component } kind = Kind::PrimeVsComposite;
  i64 m = 7;
  const ComponentSnapshot* snapshot = nullptr;
  std::vector<i64> focus;  // when non-empty, only these ids are colored
};

namespace detail {

inline std::string hsl_hex(double h) {
  // evenly spaced saturated hues
  double s = 0.65, l = 0.55;
  auto f = [&](double n) {
    double k = std::fmod(n + h / 30.0, 12.0);
    double a = s * std::min(l, 1 - l);
    return l - a * std::max(-1.0, std::min({k - 3, 9 - k, 1.0}));
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(f(0) * 255)),
                static_cast<int>(std::lround(f(8) * 255)), static_cast<int>(std::lround(f(4) * 255)));
  return buf;
}

}  // namespace detail

inline constexpr const char* kMemberFill = "#f4a6c8";     // pink
inline constexpr const char* kThickeningFill = "#8fb8f0";  // blue
inline constexpr const char* kOtherFill = "#b59ad6";       // purple
inline constexpr const char* kPlainFill = "#ffffff";

inline std::string circle_fill(const PlacedCircle& c, const Coloring& col) {
  if (c.line) return "none";
  if (!col.focus.empty() && !std::binary_search(col.focus.begin(), col.focus.end(), c.id)) return kPlainFill;
  switch (col.kind) {
    case Coloring::Kind::ResidueMod:
      return detail::hsl_hex(360.0 * static_cast<double>(mod(c.curvature, col.m)) / static_cast<double>(col.m));
    case Coloring::Kind::PrimeVsComposite:
      return is_odd_prime_curvature(c.curvature) ? "#d9534f" : "#d8d8d8";
    case Coloring::Kind::Component: {
      if (!col.snapshot) fail(ErrorKind::ConstraintViolation, "component coloring needs a snapshot");
      const auto& s = *col.snapshot;
      if (std::binary_search(s.members.begin(), s.members.end(), c.id)) return kMemberFill;
      if (std::binary_search(s.thickening.begin(), s.thickening.end(), c.id)) return kThickeningFill;
      return kOtherFill;
    }
  }
  return kPlainFill;
}

inline std::string render_svg(const std::vector<PlacedCircle>& placed, const Coloring& col, int size = 1024) {
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  for (const auto& c : placed) {
    if (c.line) continue;
    x0 = std::min(x0, c.x - c.r);
    x1 = std::max(x1, c.x + c.r);
    y0 = std::min(y0, c.y - c.r);
    y1 = std::max(y1, c.y + c.r);
  }
  if (!(x0 < x1)) x0 = y0 = -1, x1 = y1 = 1;
  for (const auto& c : placed)  // lines bound the strip vertically
    if (c.line) {
      y0 = std::min(y0, -c.r);
      y1 = std::max(y1, c.r);
    }
  double w = x1 - x0, h = y1 - y0, pad = 0.02 * std::max(w, h);
  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%d\" height=\"%d\" "
                "viewBox=\"%.9g %.9g %.9g %.9g\">\n<g transform=\"scale(1,-1) translate(0,%.9g)\">\n",
                size, static_cast<int>(std::lround(size * (h + 2 * pad) / (w + 2 * pad))), x0 - pad, y0 - pad,
                w + 2 * pad, h + 2 * pad, -(y0 + y1));
  out += buf;
  double stroke = 0.0008 * std::max(w, h);
  for (const auto& c : placed) {
    if (c.line) {
      // the line {p : <p, n> = r}, drawn across the box
      double px = c.x * c.r, py = c.y * c.r, span = 2 * (w + h);
      std::snprintf(buf, sizeof buf,
                    "<line x1=\"%.9g\" y1=\"%.9g\" x2=\"%.9g\" y2=\"%.9g\" stroke=\"#000\" stroke-width=\"%.6g\"/>\n",
                    px - c.y * span, py + c.x * span, px + c.y * span, py - c.x * span, stroke);
    } else {
      std::snprintf(buf, sizeof buf,
                    "<circle cx=\"%.9g\" cy=\"%.9g\" r=\"%.9g\" fill=\"%s\" stroke=\"#000\" stroke-width=\"%.6g\"/>\n",
                    c.x, c.y, c.r, c.curvature < 0 ? "none" : circle_fill(c, col).c_str(),
                    std::min(stroke, c.r / 20));
    }
    out += buf;
  }
  out += "</g>\n<g font-family=\"sans-serif\" text-anchor=\"middle\" dominant-baseline=\"central\">\n";
  for (const auto& c : placed) {
    if (c.line || c.curvature <= 0) continue;
    std::string label = std::to_string(c.curvature);
    double fs = 1.2 * c.r / static_cast<double>(label.size());
    std::snprintf(buf, sizeof buf, "<text x=\"%.9g\" y=\"%.9g\" font-size=\"%.6g\">%s</text>\n", c.x,
                  y0 + y1 - c.y, fs, label.c_str());
    out += buf;
  }
  out += "</g>\n</svg>\n";
  return out;
}

inline void emit_svg(const std::vector<PlacedCircle>& placed, const Coloring& col, const std::string& path,
                     int size = 1024) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::IOError, "cannot open " + path);
  f << render_svg(placed, col, size);
  if (!f) fail(ErrorKind::IOError, "write failed for " + path);
}

inline std::string placement_csv(const std::vector<PlacedCircle>& placed, const Coloring& col) {
  std::string out = "curvature,x,y,r,tag\n";
  char buf[160];
  for (const auto& c : placed) {
    std::snprintf(buf, sizeof buf, "%lld,%.12g,%.12g,%.12g,%s\n", static_cast<long long>(c.curvature), c.x, c.y,
                  c.line ? 0.0 : c.r, c.line ? "line" : circle_fill(c, col).c_str());
    out += buf;
  }
  return out;
}

}  // namespace acp
