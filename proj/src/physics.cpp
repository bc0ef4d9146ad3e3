#include "pushlab/physics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace pushlab::phys {

using geom::Polygon;
using geom::Pose2;
using geom::Vec2;
using scene::Scene;

geom::Polygon pusher_polygon(const Pose2& p, const GripperModel& g) {
  double hw = g.footprint_width / 2.0;
  Polygon local{{{-g.footprint_depth, -hw},
                 {0.0, -hw},
                 {0.0, hw},
                 {-g.footprint_depth, hw}}};
  return geom::transformed(local, p);
}

namespace {

struct Body {
  Polygon poly;  // world frame, refreshed after every move
  Pose2 pose;
  double load;  // mass * friction: resistance to being displaced
  double krot;  // 1 / (1 + load)
  bool touched = false;
};

// Bounding-circle prefilter before the SAT test.
struct Bound {
  Vec2 c;
  double r;
};

Bound bound_of(const Polygon& p) {
  Vec2 c = geom::centroid(p);
  double r = 0;
  for (Vec2 v : p.v) r = std::max(r, geom::norm(v - c));
  return {c, r};
}

void move_body(Body& b, Vec2 t, Vec2 contact) {
  Vec2 r = contact - Vec2{b.pose.x, b.pose.y};
  double r2 = geom::dot(r, r);
  double dtheta = r2 > 1e-9 ? b.krot * geom::cross(r, t) / r2 : 0.0;
  b.pose.x += t.x;
  b.pose.y += t.y;
  b.pose.theta = geom::wrap_angle(b.pose.theta + dtheta);
  b.touched = true;
}

Vec2 contact_point(const Polygon& a, const Polygon& b) {
  Polygon inter = geom::clip_convex(a, b);
  if (inter.v.size() >= 3) return geom::centroid(inter);
  if (!inter.v.empty()) {
    Vec2 m{0, 0};
    for (Vec2 v : inter.v) m = m + v;
    return m * (1.0 / static_cast<double>(inter.v.size()));
  }
  return geom::centroid(a);
}

constexpr double kDepthEps = 1e-9;
constexpr int kRelaxCap = 50;

// One relaxation sweep; returns true when any body moved.
bool relax_once(std::vector<Body>& bodies, const Polygon* pusher,
                const Bound* pusher_bound, const Scene& s) {
  bool any = false;
  std::vector<Bound> bounds(bodies.size());
  for (size_t i = 0; i < bodies.size(); ++i) bounds[i] = bound_of(bodies[i].poly);

  if (pusher) {
    for (size_t i = 0; i < bodies.size(); ++i) {
      if (geom::norm(bounds[i].c - pusher_bound->c) > bounds[i].r + pusher_bound->r)
        continue;
      auto mtv = geom::sat_mtv(bodies[i].poly, *pusher);
      if (!mtv || mtv->depth <= kDepthEps) continue;
      Vec2 cp = contact_point(bodies[i].poly, *pusher);
      move_body(bodies[i], mtv->axis * mtv->depth, cp);
      bodies[i].poly = geom::transformed(s.objects[i].spec.shape, bodies[i].pose);
      bounds[i] = bound_of(bodies[i].poly);
      any = true;
    }
  }
  for (size_t i = 0; i < bodies.size(); ++i) {
    for (size_t j = i + 1; j < bodies.size(); ++j) {
      if (geom::norm(bounds[i].c - bounds[j].c) > bounds[i].r + bounds[j].r) continue;
      auto mtv = geom::sat_mtv(bodies[i].poly, bodies[j].poly);
      if (!mtv || mtv->depth <= kDepthEps) continue;
      // The lighter-loaded body yields; ties go to the later index.
      size_t mover = bodies[i].load < bodies[j].load ? i : j;
      Vec2 dir = mover == i ? mtv->axis : -mtv->axis;
      Vec2 cp = contact_point(bodies[i].poly, bodies[j].poly);
      move_body(bodies[mover], dir * mtv->depth, cp);
      bodies[mover].poly =
          geom::transformed(s.objects[mover].spec.shape, bodies[mover].pose);
      bounds[mover] = bound_of(bodies[mover].poly);
      any = true;
    }
  }
  return any;
}

// Residual penetration left after a capped relaxation is resolved by pure
// translation so final scenes stay disjoint even when flagged jammed.
void final_projection(std::vector<Body>& bodies, const Polygon* pusher,
                      const Scene& s) {
  for (int it = 0; it < 200; ++it) {
    bool any = false;
    for (size_t i = 0; i < bodies.size(); ++i) {
      if (pusher) {
        auto mtv = geom::sat_mtv(bodies[i].poly, *pusher);
        if (mtv && mtv->depth > kDepthEps) {
          bodies[i].pose.x += mtv->axis.x * mtv->depth;
          bodies[i].pose.y += mtv->axis.y * mtv->depth;
          bodies[i].poly = geom::transformed(s.objects[i].spec.shape, bodies[i].pose);
          bodies[i].touched = true;
          any = true;
        }
      }
      for (size_t j = i + 1; j < bodies.size(); ++j) {
        auto mtv = geom::sat_mtv(bodies[i].poly, bodies[j].poly);
        if (!mtv || mtv->depth <= kDepthEps) continue;
        size_t mover = bodies[i].load < bodies[j].load ? i : j;
        Vec2 dir = mover == i ? mtv->axis : -mtv->axis;
        bodies[mover].pose.x += dir.x * mtv->depth;
        bodies[mover].pose.y += dir.y * mtv->depth;
        bodies[mover].poly =
            geom::transformed(s.objects[mover].spec.shape, bodies[mover].pose);
        bodies[mover].touched = true;
        any = true;
      }
    }
    if (!any) return;
  }
}

}  // namespace

PushOutcome simulate_push(const Scene& s, const PushAction& a, const GripperModel& g) {
  if (a.distance < 0) throw std::invalid_argument("simulate_push: negative distance");
  std::vector<Body> bodies;
  bodies.reserve(s.objects.size());
  for (const auto& o : s.objects) {
    Body b;
    b.pose = o.pose;
    b.poly = scene::world_polygon(o);
    b.load = o.spec.mass * o.spec.friction;
    b.krot = 1.0 / (1.0 + b.load);
    bodies.push_back(std::move(b));
  }

  PushOutcome out;
  out.final_scene = s;
  Pose2 pusher_pose = a.start;
  double c = std::cos(a.start.theta), sn = std::sin(a.start.theta);
  int steps = static_cast<int>(std::llround(a.distance));
  for (int step = 0; step < steps; ++step) {
    pusher_pose.x = a.start.x + c * (step + 1);
    pusher_pose.y = a.start.y + sn * (step + 1);
    Polygon pusher = pusher_polygon(pusher_pose, g);
    Bound pb = bound_of(pusher);
    int it = 0;
    for (; it < kRelaxCap; ++it)
      if (!relax_once(bodies, &pusher, &pb, s)) break;
    if (it == kRelaxCap) {
      out.jammed = true;
      final_projection(bodies, &pusher, s);
    }
  }

  out.transforms.resize(bodies.size());
  out.touched.resize(bodies.size());
  for (size_t i = 0; i < bodies.size(); ++i) {
    out.touched[i] = bodies[i].touched ? 1 : 0;
    const Pose2& p0 = s.objects[i].pose;
    const Pose2& p1 = bodies[i].pose;
    if (!bodies[i].touched) {
      out.transforms[i] = Pose2::identity();
    } else {
      out.transforms[i] = {p1.x - p0.x, p1.y - p0.y, geom::wrap_angle(p1.theta - p0.theta)};
    }
    out.final_scene.objects[i].pose = p1;
    if (p1.x < 0 || p1.x >= s.width || p1.y < 0 || p1.y >= s.height)
      out.exited.push_back(static_cast<int>(i));
  }
  return out;
}

GraspOutcome adjudicate_grasp(const Scene& s, const GraspAction& g,
                              const GripperModel& grip) {
  const Pose2& c = g.center;
  if (c.x < 0 || c.x >= s.width || c.y < 0 || c.y >= s.height)
    throw std::invalid_argument("adjudicate_grasp: center outside workspace");
  double hs = grip.stroke / 2.0;
  double hl = grip.finger_length / 2.0;
  auto finger = [&](double u0, double u1) {
    Polygon local{{{u0, -hl}, {u1, -hl}, {u1, hl}, {u0, hl}}};
    return geom::transformed(local, c);
  };
  Polygon finger_a = finger(hs, hs + grip.finger_thickness);
  Polygon finger_b = finger(-hs - grip.finger_thickness, -hs);
  for (const auto& o : s.objects) {
    Polygon poly = scene::world_polygon(o);
    for (const Polygon* f : {&finger_a, &finger_b}) {
      auto mtv = geom::sat_mtv(poly, *f);
      if (mtv && mtv->depth > 1e-9)
        return {GraspOutcome::Kind::finger_collision, {}};
    }
  }
  Polygon closing = finger(-hs, hs);
  Vec2 axis{std::cos(c.theta), std::sin(c.theta)};
  GraspOutcome out;
  for (size_t i = 0; i < s.objects.size(); ++i) {
    Polygon poly = scene::world_polygon(s.objects[i]);
    Polygon inter = geom::clip_convex(poly, closing);
    if (inter.v.size() < 3 || geom::area(inter) <= 1e-9) continue;
    double extent = geom::extent_along(poly, axis);
    // Pinchable: narrow enough to fit the stroke, thick enough to hold.
    if (extent <= grip.stroke && extent >= 4.0)
      out.object_ids.push_back(static_cast<int>(i));
  }
  out.kind = out.object_ids.empty() ? GraspOutcome::Kind::miss
                                    : GraspOutcome::Kind::success;
  return out;
}

scene::Scene remove_objects(const Scene& s, const std::vector<int>& ids) {
  std::vector<bool> drop(s.objects.size(), false);
  for (int id : ids) {
    if (id < 0 || id >= static_cast<int>(s.objects.size()))
      throw std::invalid_argument("remove_objects: unknown id");
    drop[id] = true;
  }
  Scene out = s;
  out.objects.clear();
  for (size_t i = 0; i < s.objects.size(); ++i)
    if (!drop[i]) out.objects.push_back(s.objects[i]);
  return out;
}

std::string push_record_to_json(const PushRecord& r) {
  nlohmann::json j;
  j["scene_before"] = nlohmann::json::parse(scene::scene_to_json(r.scene_before));
  j["push"] = {{"x", r.push.start.x},
               {"y", r.push.start.y},
               {"theta_deg", r.push.start.theta * 180.0 / geom::kPi},
               {"distance", r.push.distance}};
  auto tf = nlohmann::json::array();
  for (const auto& t : r.transforms)
    tf.push_back({t.x, t.y, t.theta * 180.0 / geom::kPi});
  j["transforms"] = tf;
  j["exited"] = r.exited;
  return j.dump();
}

PushRecord push_record_from_json(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  PushRecord r;
  r.scene_before = scene::scene_from_json(j.at("scene_before").dump());
  const auto& p = j.at("push");
  r.push.start = {p.at("x").get<double>(), p.at("y").get<double>(),
                  geom::wrap_angle(p.at("theta_deg").get<double>() * geom::kPi / 180.0)};
  r.push.distance = p.at("distance").get<double>();
  for (const auto& t : j.at("transforms"))
    r.transforms.push_back({t.at(0).get<double>(), t.at(1).get<double>(),
                            t.at(2).get<double>() * geom::kPi / 180.0});
  r.exited = j.at("exited").get<std::vector<int>>();
  return r;
}

}  // namespace pushlab::phys
