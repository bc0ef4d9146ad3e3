#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pushlab/geometry.hpp"
#include "pushlab/util.hpp"

namespace testutil {

using pushlab::geom::Polygon;
using pushlab::geom::Vec2;

// Andrew monotone chain; returns a CCW convex hull.
inline Polygon convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  auto half = [&](bool upper) {
    std::vector<Vec2> h;
    for (size_t k = 0; k < pts.size(); ++k) {
      Vec2 p = pts[upper ? pts.size() - 1 - k : k];
      while (h.size() >= 2 &&
             pushlab::geom::cross(h.back() - h[h.size() - 2], p - h[h.size() - 2]) <= 0)
        h.pop_back();
      h.push_back(p);
    }
    h.pop_back();
    return h;
  };
  auto lo = half(false), hi = half(true);
  lo.insert(lo.end(), hi.begin(), hi.end());
  return Polygon{lo};
}

// Random convex polygon with diameter roughly in [dmin, dmax], centered near c.
inline Polygon random_convex(pushlab::util::Rng& rng, Vec2 c, double dmin, double dmax) {
  for (;;) {
    double d = rng.uniform(dmin, dmax);
    int k = rng.uniform_int(5, 10);
    std::vector<Vec2> pts;
    for (int i = 0; i < k; ++i) {
      double a = rng.uniform(-pushlab::geom::kPi, pushlab::geom::kPi);
      double r = rng.uniform(0.35 * d, 0.5 * d);
      pts.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
    }
    Polygon h = convex_hull(pts);
    if (h.v.size() >= 3 && pushlab::geom::area(h) > 0.25 * d * d) return h;
  }
}

}  // namespace testutil
