#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pushlab/geometry.hpp"
#include "pushlab/scene.hpp"

namespace pushlab::phys {

inline constexpr double kDefaultPushDistance = 25.0;  // 5 cm at 2 mm/cell

struct PushAction {
  geom::Pose2 start;  // (x, y) start cell, theta = push direction
  double distance = kDefaultPushDistance;
};

struct GraspAction {
  geom::Pose2 center;  // (x, y) grasp center, theta = gripper closing axis
};

inline constexpr int kGraspRotations = 16;

struct GripperModel {
  // Pusher footprint during a push: trailing rectangle behind the start
  // pose, leading edge through (x, y).
  double footprint_width = 24.0;  // across the push direction
  double footprint_depth = 25.0;  // along the push direction
  // Two-finger pinch geometry.
  double stroke = 34.0;  // opening between finger inner faces (~68 mm)
  double finger_thickness = 5.0;
  double finger_length = 24.0;
};

// Closed-gripper footprint at pose p: local x in [-depth, 0],
// local y in [-width/2, width/2].
geom::Polygon pusher_polygon(const geom::Pose2& p, const GripperModel& g);

struct PushOutcome {
  // Per-object world-frame displacement: final centroid = initial + (x, y),
  // final orientation = wrap(initial + theta).
  std::vector<geom::Pose2> transforms;
  scene::Scene final_scene;
  std::vector<int> exited;   // objects whose centroid left the workspace
  std::vector<uint8_t> touched;  // entered the contact relaxation set
  bool jammed = false;
};

// Quasi-static push: the footprint advances one cell per step along theta;
// after each step contacts are relaxed by MTV translation plus a rotation
// about the contact lever arm. Deterministic.
PushOutcome simulate_push(const scene::Scene& s, const PushAction& a,
                          const GripperModel& g = {});

struct GraspOutcome {
  enum class Kind { success, finger_collision, miss };
  Kind kind = Kind::miss;
  std::vector<int> object_ids;  // enclosed objects on success (may be several)
};

// Purely geometric adjudication: finger placement collision check, then a
// pinch test on objects inside the closing region.
GraspOutcome adjudicate_grasp(const scene::Scene& s, const GraspAction& g,
                              const GripperModel& grip = {});

scene::Scene remove_objects(const scene::Scene& s, const std::vector<int>& ids);

// One executed push, as stored in push dataset JSONL records.
struct PushRecord {
  scene::Scene scene_before;
  PushAction push;
  std::vector<geom::Pose2> transforms;  // degrees at the file boundary
  std::vector<int> exited;
};

std::string push_record_to_json(const PushRecord& r);
PushRecord push_record_from_json(const std::string& line);

}  // namespace pushlab::phys
