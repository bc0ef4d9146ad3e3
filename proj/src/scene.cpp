#include "pushlab/scene.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "json.hpp"
#include "pushlab/util.hpp"

namespace pushlab::scene {

using geom::BitMask;
using geom::Polygon;
using geom::Pose2;
using geom::Vec2;

geom::Polygon world_polygon(const PlacedObject& o) {
  return geom::transformed(o.spec.shape, o.pose);
}

namespace {

Polygon centered(Polygon p) {
  Vec2 c = geom::centroid(p);
  for (auto& v : p.v) v = v - c;
  return p;
}

// Shape library: squares, rectangles, triangles, hexagons, and convex hulls
// of L-shaped cutouts. Diameters 14-40 cells; every shape has a direction of
// width under the gripper stroke.
Polygon make_shape(util::Rng& rng) {
  int kind = rng.uniform_int(0, 4);
  switch (kind) {
    case 0: {  // square
      double s = rng.uniform(14.0, 26.0);
      double h = s / 2;
      return {{{-h, -h}, {h, -h}, {h, h}, {-h, h}}};
    }
    case 1: {  // rectangle
      double w = rng.uniform(18.0, 36.0);
      double h = rng.uniform(10.0, 20.0);
      double d = std::hypot(w, h);
      if (d > 40.0) {
        w *= 40.0 / d;
        h *= 40.0 / d;
      }
      return {{{-w / 2, -h / 2}, {w / 2, -h / 2}, {w / 2, h / 2}, {-w / 2, h / 2}}};
    }
    case 2: {  // isoceles triangle, centroid at origin
      double b = rng.uniform(16.0, 30.0);
      double h = rng.uniform(14.0, 26.0);
      return {{{-b / 2, -h / 3}, {b / 2, -h / 3}, {0.0, 2.0 * h / 3}}};
    }
    case 3: {  // regular hexagon
      double r = rng.uniform(8.0, 13.0);
      Polygon p;
      for (int k = 0; k < 6; ++k) {
        double a = geom::kPi / 3.0 * k;
        p.v.push_back({r * std::cos(a), r * std::sin(a)});
      }
      return p;
    }
    default: {  // convex hull of an L cutout: a pentagon
      double w = rng.uniform(18.0, 30.0);
      double h = rng.uniform(18.0, 30.0);
      double f = rng.uniform(0.35, 0.6);
      Polygon p{{{0, 0}, {w, 0}, {w, h * (1 - f)}, {w * (1 - f), h}, {0, h}}};
      return centered(p);
    }
  }
}

}  // namespace

Scene generate_scene(int n_objects, uint64_t seed) {
  if (n_objects < 1 || n_objects > 30)
    throw std::invalid_argument("generate_scene: n_objects out of [1,30]");
  util::Rng rng(util::mix_seed(seed, 0x5ce8e));
  Scene s;
  s.seed = seed;
  double margin = 30.0;
  double radius = std::min(88.0, 24.0 * std::sqrt(static_cast<double>(n_objects)) + 4.0);
  Vec2 center{kWorkspace / 2.0, kWorkspace / 2.0};
  for (int i = 0; i < n_objects; ++i) {
    PlacedObject o;
    o.spec.shape = make_shape(rng);
    o.spec.color_id = i + 1;
    o.spec.mass = rng.uniform(0.5, 2.0);
    o.spec.friction = rng.uniform(0.2, 1.0);
    double rr = radius * std::sqrt(rng.uniform(0.0, 1.0));
    double phi = rng.uniform(-geom::kPi, geom::kPi);
    o.pose = {center.x + rr * std::cos(phi), center.y + rr * std::sin(phi),
              rng.uniform(-geom::kPi, geom::kPi)};
    s.objects.push_back(std::move(o));
  }

  // MTV relaxation until no pair interpenetrates.
  std::vector<Polygon> polys(s.objects.size());
  auto refresh = [&](size_t i) { polys[i] = world_polygon(s.objects[i]); };
  for (size_t i = 0; i < s.objects.size(); ++i) refresh(i);
  const int cap = 600;
  bool settled = false;
  for (int iter = 0; iter < cap && !settled; ++iter) {
    settled = true;
    for (size_t i = 0; i < s.objects.size(); ++i) {
      for (size_t j = i + 1; j < s.objects.size(); ++j) {
        auto mtv = geom::sat_mtv(polys[i], polys[j]);
        if (!mtv || mtv->depth <= 1e-9) continue;
        settled = false;
        Vec2 shift = mtv->axis * (0.5 * mtv->depth * 1.05);
        s.objects[i].pose.x += shift.x;
        s.objects[i].pose.y += shift.y;
        s.objects[j].pose.x -= shift.x;
        s.objects[j].pose.y -= shift.y;
        for (size_t k : {i, j}) {
          auto& p = s.objects[k].pose;
          p.x = std::clamp(p.x, margin, kWorkspace - margin);
          p.y = std::clamp(p.y, margin, kWorkspace - margin);
        }
        refresh(i);
        refresh(j);
      }
    }
  }
  if (!settled) throw SceneGenError("generate_scene: relaxation did not settle");
  return s;
}

Observation render(const Scene& s) {
  Observation obs;
  obs.color = Grid8(s.width, s.height);
  obs.height = Grid8(s.width, s.height);
  for (const auto& o : s.objects) {
    BitMask m = geom::rasterize(world_polygon(o), s.width, s.height);
    for (int y = 0; y < s.height; ++y)
      for (int x = 0; x < s.width; ++x)
        if (m.get(x, y)) {
          obs.color.at(x, y) = static_cast<uint8_t>(o.spec.color_id);
          obs.height.at(x, y) = 1;
        }
  }
  obs.instances = segment(obs.color);
  return obs;
}

std::vector<Instance> segment(const Grid8& color) {
  std::vector<Instance> out;
  int w = color.w, h = color.h;
  std::vector<int8_t> seen(static_cast<size_t>(w) * h, 0);
  std::deque<std::pair<int, int>> queue;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      if (seen[static_cast<size_t>(y0) * w + x0] || color.at(x0, y0) == 0) continue;
      uint8_t cid = color.at(x0, y0);
      BitMask mask(w, h);
      int64_t count = 0;
      double sx = 0, sy = 0;
      queue.clear();
      queue.push_back({x0, y0});
      seen[static_cast<size_t>(y0) * w + x0] = 1;
      while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        mask.set(x, y);
        sx += x;
        sy += y;
        ++count;
        constexpr int dx[4] = {1, -1, 0, 0};
        constexpr int dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          int nx = x + dx[k], ny = y + dy[k];
          if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
          size_t idx = static_cast<size_t>(ny) * w + nx;
          if (seen[idx] || color.at(nx, ny) != cid) continue;
          seen[idx] = 1;
          queue.push_back({nx, ny});
        }
      }
      if (count < kMinInstanceCells) continue;
      Instance inst;
      inst.mask = std::move(mask);
      inst.cx = static_cast<int>(std::llround(sx / count));
      inst.cy = static_cast<int>(std::llround(sy / count));
      inst.color_id = cid;
      inst.id = static_cast<int>(out.size());
      out.push_back(std::move(inst));
    }
  }
  return out;
}

CropResult crop_mask(const geom::BitMask& m, int cx, int cy) {
  CropResult r{BitMask(kCropSize, kCropSize), false};
  int64_t kept = 0;
  for (int wy = 0; wy < kCropSize; ++wy) {
    int sy = cy - kCropSize / 2 + wy;
    if (sy < 0 || sy >= m.height()) continue;
    for (int wx = 0; wx < kCropSize; ++wx) {
      int sx = cx - kCropSize / 2 + wx;
      if (sx < 0 || sx >= m.width()) continue;
      if (m.get(sx, sy)) {
        r.mask.set(wx, wy);
        ++kept;
      }
    }
  }
  r.truncated = kept != m.popcount();
  return r;
}

std::string scene_to_json(const Scene& s) {
  nlohmann::json j;
  j["seed"] = s.seed;
  j["objects"] = nlohmann::json::array();
  for (const auto& o : s.objects) {
    nlohmann::json jo;
    auto shape = nlohmann::json::array();
    for (const auto& v : o.spec.shape.v) shape.push_back({v.x, v.y});
    jo["shape"] = shape;
    jo["color_id"] = o.spec.color_id;
    jo["mass"] = o.spec.mass;
    jo["friction"] = o.spec.friction;
    jo["pose"] = {o.pose.x, o.pose.y, o.pose.theta * 180.0 / geom::kPi};
    j["objects"].push_back(jo);
  }
  return j.dump();
}

Scene scene_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Scene s;
  s.seed = j.value("seed", uint64_t{0});
  for (const auto& jo : j.at("objects")) {
    PlacedObject o;
    for (const auto& v : jo.at("shape"))
      o.spec.shape.v.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    o.spec.color_id = jo.at("color_id").get<int>();
    o.spec.mass = jo.at("mass").get<double>();
    o.spec.friction = jo.at("friction").get<double>();
    const auto& p = jo.at("pose");
    o.pose = {p.at(0).get<double>(), p.at(1).get<double>(),
              geom::wrap_angle(p.at(2).get<double>() * geom::kPi / 180.0)};
    s.objects.push_back(std::move(o));
  }
  return s;
}

void save_scene(const Scene& s, const std::string& path) {
  util::write_file_atomic(path, scene_to_json(s) + "\n");
}

Scene load_scene(const std::string& path) {
  return scene_from_json(util::read_file(path));
}

}  // namespace pushlab::scene
