#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace pushlab::geom {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);
Vec2 normalized(Vec2 a);
Vec2 rotate(Vec2 v, double theta);

// Wraps an angle into (-pi, pi].
double wrap_angle(double t);

// SE(2) element: translation in workspace cells, rotation in radians.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  static Pose2 identity() { return {}; }
};

// Result applies b first, then a (matrix product semantics).
Pose2 compose(const Pose2& a, const Pose2& b);
Pose2 invert(const Pose2& p);
// Applies p as a rigid map to a point.
Vec2 apply(const Pose2& p, Vec2 v);

// Canonical push frame: every push is normalized to start here, pointing
// along +x.
inline constexpr Pose2 kPushFrame{40.0, 112.0, 0.0};

// Rigid transform T with compose(T, p) == kPushFrame.
Pose2 normalization_transform(const Pose2& p);

// The rigid map sending point q to rotate(q - pivot, dtheta) + pivot + t,
// expressed as a Pose2.
Pose2 motion_about(double dtheta, Vec2 pivot, Vec2 translate);

// Convex polygon, counter-clockwise, >= 3 vertices, implicit closure.
struct Polygon {
  std::vector<Vec2> v;
};

double area(const Polygon& p);
Vec2 centroid(const Polygon& p);
Polygon transformed(const Polygon& p, const Pose2& t);
// Inclusive point-in-convex-polygon test (boundary counts as inside).
bool contains(const Polygon& p, Vec2 q);
// Support width of a convex polygon along direction d (|d| = 1).
double extent_along(const Polygon& p, Vec2 d);
// Minimum width over all directions; decides graspability.
double min_width(const Polygon& p);

// Minimum translation vector separating overlapping convex polygons.
// depth == 0 means the polygons merely touch.
struct Mtv {
  Vec2 axis;     // unit, points from b toward a
  double depth;  // >= 0
};

// Empty iff a and b are strictly disjoint.
std::optional<Mtv> sat_mtv(const Polygon& a, const Polygon& b);

// Sutherland-Hodgman intersection of convex polygons. May return a polygon
// with fewer than 3 vertices (empty/degenerate intersection).
Polygon clip_convex(const Polygon& subject, const Polygon& clip);
// Intersection-over-union from exact polygon areas.
double iou_analytic(const Polygon& a, const Polygon& b);

// Row-padded binary grid. Rows start at 64-bit word boundaries; padding bits
// are always zero.
class BitMask {
 public:
  BitMask() = default;
  BitMask(int w, int h);

  int width() const { return w_; }
  int height() const { return h_; }
  int words_per_row() const { return wpr_; }
  const std::vector<uint64_t>& words() const { return words_; }
  std::vector<uint64_t>& words() { return words_; }

  bool get(int x, int y) const {
    return (words_[static_cast<size_t>(y) * wpr_ + (x >> 6)] >> (x & 63)) & 1u;
  }
  void set(int x, int y) {
    words_[static_cast<size_t>(y) * wpr_ + (x >> 6)] |= uint64_t{1} << (x & 63);
  }
  void clear(int x, int y) {
    words_[static_cast<size_t>(y) * wpr_ + (x >> 6)] &= ~(uint64_t{1} << (x & 63));
  }
  bool in_bounds(int x, int y) const { return x >= 0 && x < w_ && y >= 0 && y < h_; }

  int64_t popcount() const;
  bool empty() const { return popcount() == 0; }
  void or_with(const BitMask& o);
  bool intersects(const BitMask& o) const;
  // Mean of set cell indices; valid only for non-empty masks.
  Vec2 centroid() const;

  bool operator==(const BitMask& o) const = default;

 private:
  int w_ = 0, h_ = 0, wpr_ = 0;
  std::vector<uint64_t> words_;
};

// A cell (ix, iy) is set iff its center (ix + 0.5, iy + 0.5) lies inside the
// polygon (boundary inclusive); cells outside the canvas are dropped.
BitMask rasterize(const Polygon& p, int w, int h);

// |a&b| / |a|b|; two empty masks count as identical (IoU 1). Throws on
// dimension mismatch.
double mask_iou(const BitMask& a, const BitMask& b);

// Nearest-neighbor warp: dst(ix,iy) = src cell containing the inverse image
// of the cell center. Identity and integer translations are exact.
BitMask warp_mask(const BitMask& src, const Pose2& t);

// Euclidean disc dilation: dst set iff some src cell within distance r
// (integer-delta test dx*dx + dy*dy <= r*r).
BitMask dilate_disc(const BitMask& src, int r);

}  // namespace pushlab::geom
