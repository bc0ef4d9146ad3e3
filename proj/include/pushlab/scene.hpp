#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pushlab/geometry.hpp"

namespace pushlab::scene {

inline constexpr int kWorkspace = 224;  // cells per side, 1 cell = 2 mm

struct ObjectSpec {
  geom::Polygon shape;  // body frame, centroid at the origin
  int color_id = 0;     // unique per scene, > 0
  double mass = 1.0;
  double friction = 0.5;
};

struct PlacedObject {
  ObjectSpec spec;
  geom::Pose2 pose;
};

struct Scene {
  std::vector<PlacedObject> objects;
  int width = kWorkspace;
  int height = kWorkspace;
  uint64_t seed = 0;
};

geom::Polygon world_polygon(const PlacedObject& o);

struct Grid8 {
  int w = 0, h = 0;
  std::vector<uint8_t> d;

  Grid8() = default;
  Grid8(int w_, int h_) : w(w_), h(h_), d(static_cast<size_t>(w_) * h_, 0) {}
  uint8_t at(int x, int y) const { return d[static_cast<size_t>(y) * w + x]; }
  uint8_t& at(int x, int y) { return d[static_cast<size_t>(y) * w + x]; }
  bool in_bounds(int x, int y) const { return x >= 0 && x < w && y >= 0 && y < h; }
};

struct Instance {
  geom::BitMask mask;
  int cx = 0, cy = 0;  // mask centroid rounded to the nearest cell
  int color_id = 0;
  int id = 0;  // stable index within the observation
};

struct Observation {
  Grid8 color;   // color_id per cell, 0 = background
  Grid8 height;  // occupancy height (1 where occupied)
  std::vector<Instance> instances;
};

class SceneGenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deterministic clutter generator: shapes from the library, poses drawn in a
// central disc, overlaps resolved by iterated MTV separation.
Scene generate_scene(int n_objects, uint64_t seed);

Observation render(const Scene& s);

// 4-connected components of equal non-zero color. Components under
// kMinInstanceCells cells are dropped as rasterization noise.
inline constexpr int kMinInstanceCells = 8;
std::vector<Instance> segment(const Grid8& color);

// 60x60 window of m centered at (cx, cy), zero-padded at borders.
inline constexpr int kCropSize = 60;
struct CropResult {
  geom::BitMask mask;
  bool truncated = false;  // object did not fit in the window
};
CropResult crop_mask(const geom::BitMask& m, int cx, int cy);

// Scene file format: {seed, objects:[{shape, color_id, mass, friction,
// pose:[x,y,theta_deg]}]}. Angles are degrees at this boundary.
std::string scene_to_json(const Scene& s);
Scene scene_from_json(const std::string& text);
void save_scene(const Scene& s, const std::string& path);
Scene load_scene(const std::string& path);

}  // namespace pushlab::scene
