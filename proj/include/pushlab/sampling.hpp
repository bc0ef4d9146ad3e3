#pragma once

#include <vector>

#include "pushlab/physics.hpp"
#include "pushlab/scene.hpp"

namespace pushlab::samp {

// Contour-based push candidates: the foreground is dilated by the pusher
// half-width, each dilated bundle's outer contour is sampled at uniform arc
// length, and directions point at the bundle's foreground centroid. Pushes
// whose start footprint leaves the workspace or overlaps any instance are
// filtered out.
std::vector<phys::PushAction> sample_pushes(const scene::Observation& obs,
                                            double spacing = 10.0,
                                            double distance = phys::kDefaultPushDistance,
                                            const phys::GripperModel& g = {});

// Grasp candidates: stride grid over cells within kGraspBand cells of the
// foreground, crossed with the 16 gripper rotations. Stride 1 recovers the
// full per-pixel action space.
inline constexpr int kGraspBand = 16;
std::vector<phys::GraspAction> enumerate_grasps(const scene::Observation& obs,
                                                int stride = 4);

// Outer boundary of one 8-connected component as an ordered cell sequence
// (Moore tracing). Exposed for tests.
std::vector<std::pair<int, int>> trace_contour(const geom::BitMask& component);

// Union of instance masks.
geom::BitMask foreground_mask(const scene::Observation& obs);

}  // namespace pushlab::samp
