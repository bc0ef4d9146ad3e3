#include "pushlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

namespace pushlab::samp {

using geom::BitMask;
using geom::Vec2;

geom::BitMask foreground_mask(const scene::Observation& obs) {
  BitMask fg(obs.color.w, obs.color.h);
  for (const auto& inst : obs.instances) fg.or_with(inst.mask);
  return fg;
}

std::vector<std::pair<int, int>> trace_contour(const BitMask& comp) {
  // Moore boundary tracing, clockwise, starting from the row-major first
  // cell whose west neighbor is outside the component.
  static constexpr int dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
  static constexpr int dy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
  int w = comp.width(), h = comp.height();
  int sx = -1, sy = -1;
  for (int y = 0; y < h && sx < 0; ++y)
    for (int x = 0; x < w; ++x)
      if (comp.get(x, y)) {
        sx = x;
        sy = y;
        break;
      }
  std::vector<std::pair<int, int>> contour;
  if (sx < 0) return contour;
  contour.push_back({sx, sy});

  auto is_set = [&](int x, int y) {
    return x >= 0 && x < w && y >= 0 && y < h && comp.get(x, y);
  };
  int cx = sx, cy = sy;
  int px = sx - 1, py = sy;  // backtrack cell (outside by scan order)
  const int ipx = px, ipy = py;
  size_t cap = static_cast<size_t>(comp.popcount()) * 4 + 8;
  for (size_t it = 0; it < cap; ++it) {
    int dir0 = 0;
    for (int d = 0; d < 8; ++d)
      if (cx + dx[d] == px && cy + dy[d] == py) {
        dir0 = d;
        break;
      }
    bool moved = false;
    for (int k = 1; k <= 8; ++k) {
      int d = (dir0 + k) % 8;
      int nx = cx + dx[d], ny = cy + dy[d];
      if (is_set(nx, ny)) {
        int pd = (d + 7) % 8;
        px = cx + dx[pd];
        py = cy + dy[pd];
        cx = nx;
        cy = ny;
        moved = true;
        break;
      }
    }
    if (!moved) return contour;  // isolated cell
    if (cx == sx && cy == sy && px == ipx && py == ipy) return contour;
    contour.push_back({cx, cy});
  }
  return contour;
}

std::vector<phys::PushAction> sample_pushes(const scene::Observation& obs,
                                            double spacing, double distance,
                                            const phys::GripperModel& g) {
  std::vector<phys::PushAction> out;
  BitMask fg = foreground_mask(obs);
  if (fg.popcount() == 0) return out;
  int r = static_cast<int>(std::lround(g.footprint_width / 2.0));
  BitMask dil = geom::dilate_disc(fg, r);

  int w = dil.width(), h = dil.height();
  std::vector<int> label(static_cast<size_t>(w) * h, -1);
  int n_comp = 0;
  std::deque<std::pair<int, int>> queue;
  for (int y0 = 0; y0 < h; ++y0)
    for (int x0 = 0; x0 < w; ++x0) {
      if (!dil.get(x0, y0) || label[static_cast<size_t>(y0) * w + x0] >= 0) continue;
      int id = n_comp++;
      queue.push_back({x0, y0});
      label[static_cast<size_t>(y0) * w + x0] = id;
      while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        for (int ddy = -1; ddy <= 1; ++ddy)
          for (int ddx = -1; ddx <= 1; ++ddx) {
            int nx = x + ddx, ny = y + ddy;
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            size_t idx = static_cast<size_t>(ny) * w + nx;
            if (!dil.get(nx, ny) || label[idx] >= 0) continue;
            label[idx] = id;
            queue.push_back({nx, ny});
          }
      }
    }

  for (int comp = 0; comp < n_comp; ++comp) {
    BitMask cmask(w, h);
    double fsx = 0, fsy = 0;
    int64_t fn = 0;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        if (label[static_cast<size_t>(y) * w + x] != comp) continue;
        cmask.set(x, y);
        if (fg.get(x, y)) {
          fsx += x;
          fsy += y;
          ++fn;
        }
      }
    if (fn == 0) continue;
    Vec2 target{fsx / fn, fsy / fn};  // bundle foreground centroid

    auto contour = trace_contour(cmask);
    size_t m = contour.size();
    if (m == 0) continue;
    std::vector<double> cum(m + 1, 0.0);
    for (size_t i = 0; i < m; ++i) {
      auto [x0, y0] = contour[i];
      auto [x1, y1] = contour[(i + 1) % m];
      double step = (x0 != x1 && y0 != y1) ? std::numbers::sqrt2 : 1.0;
      cum[i + 1] = cum[i] + step;
    }
    double total = cum[m];
    size_t seg = 0;
    for (double t = 0.0; t < total; t += spacing) {
      while (seg + 1 < m && cum[seg + 1] <= t) ++seg;
      auto [cx, cy] = contour[seg];
      double theta = std::atan2(target.y - cy, target.x - cx);
      phys::PushAction a{{static_cast<double>(cx), static_cast<double>(cy),
                          geom::wrap_angle(theta)},
                         distance};
      geom::Polygon foot = phys::pusher_polygon(a.start, g);
      bool inside = true;
      for (Vec2 v : foot.v)
        if (v.x < 0 || v.x > w || v.y < 0 || v.y > h) inside = false;
      if (!inside) continue;
      BitMask fm = geom::rasterize(foot, w, h);
      if (fm.intersects(fg)) continue;
      out.push_back(a);
    }
  }
  return out;
}

std::vector<phys::GraspAction> enumerate_grasps(const scene::Observation& obs,
                                                int stride) {
  std::vector<phys::GraspAction> out;
  if (stride < 1) throw std::invalid_argument("enumerate_grasps: stride < 1");
  BitMask fg = foreground_mask(obs);
  if (fg.popcount() == 0) return out;
  BitMask band = geom::dilate_disc(fg, kGraspBand);
  for (int y = 0; y < band.height(); y += stride)
    for (int x = 0; x < band.width(); x += stride) {
      if (!band.get(x, y)) continue;
      for (int k = 0; k < phys::kGraspRotations; ++k) {
        double theta = geom::wrap_angle(2.0 * geom::kPi * k / phys::kGraspRotations);
        out.push_back({{static_cast<double>(x), static_cast<double>(y), theta}});
      }
    }
  return out;
}

}  // namespace pushlab::samp
