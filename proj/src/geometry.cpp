#include "pushlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pushlab/kernels.hpp"

namespace pushlab::geom {

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Vec2 normalized(Vec2 a) {
  double n = norm(a);
  return n > 0.0 ? Vec2{a.x / n, a.y / n} : Vec2{0.0, 0.0};
}

Vec2 rotate(Vec2 v, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

double wrap_angle(double t) {
  double r = std::remainder(t, 2.0 * kPi);  // lands in [-pi, pi]
  if (r <= -kPi) r = kPi;
  return r;
}

Pose2 compose(const Pose2& a, const Pose2& b) {
  Vec2 t = rotate({b.x, b.y}, a.theta);
  return {a.x + t.x, a.y + t.y, wrap_angle(a.theta + b.theta)};
}

Pose2 invert(const Pose2& p) {
  Vec2 t = rotate({-p.x, -p.y}, -p.theta);
  return {t.x, t.y, wrap_angle(-p.theta)};
}

Vec2 apply(const Pose2& p, Vec2 v) {
  Vec2 r = rotate(v, p.theta);
  return {r.x + p.x, r.y + p.y};
}

Pose2 normalization_transform(const Pose2& p) {
  return compose(kPushFrame, invert(p));
}

Pose2 motion_about(double dtheta, Vec2 pivot, Vec2 translate) {
  // f(q) = R q + (pivot + t - R pivot)
  Vec2 rp = rotate(pivot, dtheta);
  return {pivot.x + translate.x - rp.x, pivot.y + translate.y - rp.y,
          wrap_angle(dtheta)};
}

double area(const Polygon& p) {
  double a = 0.0;
  size_t n = p.v.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2 u = p.v[i], w = p.v[(i + 1) % n];
    a += cross(u, w);
  }
  return 0.5 * a;
}

Vec2 centroid(const Polygon& p) {
  double a = 0.0, cx = 0.0, cy = 0.0;
  size_t n = p.v.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2 u = p.v[i], w = p.v[(i + 1) % n];
    double c = cross(u, w);
    a += c;
    cx += (u.x + w.x) * c;
    cy += (u.y + w.y) * c;
  }
  if (std::abs(a) < 1e-12) {
    // degenerate: fall back to vertex mean
    Vec2 m{0, 0};
    for (Vec2 v : p.v) m = m + v;
    return m * (1.0 / static_cast<double>(p.v.size()));
  }
  double s = 1.0 / (3.0 * a);
  return {cx * s, cy * s};
}

Polygon transformed(const Polygon& p, const Pose2& t) {
  Polygon out;
  out.v.reserve(p.v.size());
  for (Vec2 v : p.v) out.v.push_back(apply(t, v));
  return out;
}

bool contains(const Polygon& p, Vec2 q) {
  size_t n = p.v.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2 a = p.v[i], b = p.v[(i + 1) % n];
    if (cross(b - a, q - a) < 0.0) return false;
  }
  return true;
}

double extent_along(const Polygon& p, Vec2 d) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Vec2 v : p.v) {
    double s = dot(v, d);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return hi - lo;
}

double min_width(const Polygon& p) {
  double best = std::numeric_limits<double>::infinity();
  size_t n = p.v.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2 e = p.v[(i + 1) % n] - p.v[i];
    Vec2 nrm = normalized({e.y, -e.x});
    best = std::min(best, extent_along(p, nrm));
  }
  return best;
}

std::optional<Mtv> sat_mtv(const Polygon& a, const Polygon& b) {
  double best_depth = std::numeric_limits<double>::infinity();
  Vec2 best_axis{0, 0};
  auto test_edges = [&](const Polygon& poly) -> bool {
    size_t n = poly.v.size();
    for (size_t i = 0; i < n; ++i) {
      Vec2 e = poly.v[(i + 1) % n] - poly.v[i];
      Vec2 axis = normalized({e.y, -e.x});
      if (axis.x == 0.0 && axis.y == 0.0) continue;
      double amin = std::numeric_limits<double>::infinity(), amax = -amin;
      for (Vec2 v : a.v) {
        double s = dot(v, axis);
        amin = std::min(amin, s);
        amax = std::max(amax, s);
      }
      double bmin = std::numeric_limits<double>::infinity(), bmax = -bmin;
      for (Vec2 v : b.v) {
        double s = dot(v, axis);
        bmin = std::min(bmin, s);
        bmax = std::max(bmax, s);
      }
      double overlap = std::min(amax, bmax) - std::max(amin, bmin);
      if (overlap < 0.0) return false;  // separating axis
      if (overlap < best_depth) {
        best_depth = overlap;
        best_axis = axis;
      }
    }
    return true;
  };
  if (!test_edges(a) || !test_edges(b)) return std::nullopt;
  Vec2 d = centroid(a) - centroid(b);
  if (dot(d, best_axis) < 0.0) best_axis = -best_axis;
  return Mtv{best_axis, best_depth};
}

Polygon clip_convex(const Polygon& subject, const Polygon& clip) {
  Polygon out = subject;
  size_t cn = clip.v.size();
  for (size_t i = 0; i < cn && out.v.size() >= 1; ++i) {
    Vec2 a = clip.v[i], b = clip.v[(i + 1) % cn];
    Vec2 edge = b - a;
    Polygon in = std::move(out);
    out.v.clear();
    size_t n = in.v.size();
    for (size_t j = 0; j < n; ++j) {
      Vec2 p = in.v[j], q = in.v[(j + 1) % n];
      double dp = cross(edge, p - a);
      double dq = cross(edge, q - a);
      if (dp >= 0.0) out.v.push_back(p);
      if ((dp > 0.0 && dq < 0.0) || (dp < 0.0 && dq > 0.0)) {
        double t = dp / (dp - dq);
        out.v.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
      }
    }
  }
  return out;
}

double iou_analytic(const Polygon& a, const Polygon& b) {
  Polygon inter = clip_convex(a, b);
  double ai = inter.v.size() >= 3 ? area(inter) : 0.0;
  double u = area(a) + area(b) - ai;
  if (u <= 0.0) return 0.0;
  return ai / u;
}

BitMask::BitMask(int w, int h) : w_(w), h_(h), wpr_((w + 63) / 64) {
  if (w <= 0 || h <= 0) throw std::invalid_argument("BitMask: non-positive size");
  words_.assign(static_cast<size_t>(wpr_) * h_, 0);
}

int64_t BitMask::popcount() const {
  return static_cast<int64_t>(kern::ops().popcnt(words_.data(), words_.size()));
}

void BitMask::or_with(const BitMask& o) {
  if (o.w_ != w_ || o.h_ != h_) throw std::invalid_argument("BitMask: size mismatch");
  for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
}

bool BitMask::intersects(const BitMask& o) const {
  if (o.w_ != w_ || o.h_ != h_) throw std::invalid_argument("BitMask: size mismatch");
  return kern::ops().popcnt_and(words_.data(), o.words_.data(), words_.size()) != 0;
}

Vec2 BitMask::centroid() const {
  double sx = 0.0, sy = 0.0;
  int64_t n = 0;
  for (int y = 0; y < h_; ++y)
    for (int x = 0; x < w_; ++x)
      if (get(x, y)) {
        sx += x;
        sy += y;
        ++n;
      }
  if (n == 0) return {0, 0};
  return {sx / n, sy / n};
}

BitMask rasterize(const Polygon& p, int w, int h) {
  BitMask out(w, h);
  if (p.v.size() < 3) return out;
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (Vec2 v : p.v) {
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  int y0 = std::max(0, static_cast<int>(std::floor(ymin - 0.5)));
  int y1 = std::min(h - 1, static_cast<int>(std::ceil(ymax)));
  size_t n = p.v.size();
  for (int iy = y0; iy <= y1; ++iy) {
    double yc = iy + 0.5;
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    bool any = false;
    for (size_t i = 0; i < n; ++i) {
      Vec2 a = p.v[i], b = p.v[(i + 1) % n];
      if (a.y == b.y) {
        if (a.y == yc) {
          xlo = std::min({xlo, a.x, b.x});
          xhi = std::max({xhi, a.x, b.x});
          any = true;
        }
        continue;
      }
      if ((a.y <= yc && b.y >= yc) || (b.y <= yc && a.y >= yc)) {
        double t = (yc - a.y) / (b.y - a.y);
        double x = a.x + t * (b.x - a.x);
        xlo = std::min(xlo, x);
        xhi = std::max(xhi, x);
        any = true;
      }
    }
    if (!any) continue;
    int ix0 = static_cast<int>(std::ceil(xlo - 0.5));
    int ix1 = static_cast<int>(std::floor(xhi - 0.5));
    ix0 = std::max(ix0, 0);
    ix1 = std::min(ix1, w - 1);
    for (int ix = ix0; ix <= ix1; ++ix) out.set(ix, iy);
  }
  return out;
}

double mask_iou(const BitMask& a, const BitMask& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw std::invalid_argument("mask_iou: dimension mismatch");
  const auto& k = kern::ops();
  uint64_t inter = k.popcnt_and(a.words().data(), b.words().data(), a.words().size());
  uint64_t uni = k.popcnt_or(a.words().data(), b.words().data(), a.words().size());
  if (uni == 0) return 1.0;  // both empty: nothing mispredicted
  return static_cast<double>(inter) / static_cast<double>(uni);
}

BitMask warp_mask(const BitMask& src, const Pose2& t) {
  BitMask out(src.width(), src.height());
  Pose2 inv = invert(t);
  double c = std::cos(inv.theta), s = std::sin(inv.theta);
  for (int iy = 0; iy < out.height(); ++iy) {
    double py = iy + 0.5;
    for (int ix = 0; ix < out.width(); ++ix) {
      double px = ix + 0.5;
      double qx = c * px - s * py + inv.x;
      double qy = s * px + c * py + inv.y;
      int sx = static_cast<int>(std::floor(qx));
      int sy = static_cast<int>(std::floor(qy));
      if (src.in_bounds(sx, sy) && src.get(sx, sy)) out.set(ix, iy);
    }
  }
  return out;
}

BitMask dilate_disc(const BitMask& src, int r) {
  int w = src.width(), h = src.height(), wpr = src.words_per_row();
  BitMask out(w, h);
  if (r <= 0) return src;
  // span(dy) = max k with dy^2 + k^2 <= r^2
  std::vector<int> span(r + 1);
  for (int dy = 0; dy <= r; ++dy)
    span[dy] = static_cast<int>(std::floor(std::sqrt(double(r) * r - double(dy) * dy)));

  // Horizontal dilation of every row by +-s, cached per distinct span.
  uint64_t top_mask = (w & 63) ? ((uint64_t{1} << (w & 63)) - 1) : ~uint64_t{0};
  auto hdilate_row = [&](const uint64_t* in, uint64_t* outrow, int s) {
    std::vector<uint64_t> acc(in, in + wpr), tmp(wpr);
    auto shl = [&](const std::vector<uint64_t>& v, int k, std::vector<uint64_t>& dst) {
      int wshift = k >> 6, bshift = k & 63;
      for (int i = wpr - 1; i >= 0; --i) {
        uint64_t lo = (i - wshift >= 0) ? v[i - wshift] : 0;
        uint64_t hi = (bshift && i - wshift - 1 >= 0) ? v[i - wshift - 1] : 0;
        dst[i] = bshift ? (lo << bshift) | (hi >> (64 - bshift)) : lo;
      }
      dst[wpr - 1] &= top_mask;
    };
    auto shr = [&](const std::vector<uint64_t>& v, int k, std::vector<uint64_t>& dst) {
      int wshift = k >> 6, bshift = k & 63;
      for (int i = 0; i < wpr; ++i) {
        uint64_t lo = (i + wshift < wpr) ? v[i + wshift] : 0;
        uint64_t hi = (bshift && i + wshift + 1 < wpr) ? v[i + wshift + 1] : 0;
        dst[i] = bshift ? (lo >> bshift) | (hi << (64 - bshift)) : lo;
      }
    };
    // grow leftward and rightward by doubling
    std::vector<uint64_t> left(acc), right(acc);
    for (int covered = 0; covered < s;) {
      int step = std::min(covered ? covered : 1, s - covered);
      shl(left, step, tmp);
      for (int i = 0; i < wpr; ++i) left[i] |= tmp[i];
      shr(right, step, tmp);
      for (int i = 0; i < wpr; ++i) right[i] |= tmp[i];
      covered += step;
    }
    for (int i = 0; i < wpr; ++i) outrow[i] = left[i] | right[i];
  };

  std::vector<std::vector<uint64_t>> cache(r + 1);
  auto rows_for_span = [&](int s) -> const std::vector<uint64_t>& {
    auto& c = cache[s];
    if (c.empty()) {
      c.assign(static_cast<size_t>(wpr) * h, 0);
      for (int y = 0; y < h; ++y)
        hdilate_row(src.words().data() + static_cast<size_t>(y) * wpr,
                    c.data() + static_cast<size_t>(y) * wpr, s);
    }
    return c;
  };

  for (int dy = -r; dy <= r; ++dy) {
    const auto& rows = rows_for_span(span[std::abs(dy)]);
    for (int y = 0; y < h; ++y) {
      int sy = y - dy;
      if (sy < 0 || sy >= h) continue;
      uint64_t* dst = out.words().data() + static_cast<size_t>(y) * wpr;
      const uint64_t* srcrow = rows.data() + static_cast<size_t>(sy) * wpr;
      for (int i = 0; i < wpr; ++i) dst[i] |= srcrow[i];
    }
  }
  return out;
}

}  // namespace pushlab::geom
