#include "cogmap/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "cogmap/bitmap.hpp"

namespace cogmap {

using nlohmann::json;

std::vector<JointConfig> decimate(const std::vector<JointConfig>& samples, std::size_t max_points) {
  if (samples.size() <= max_points || max_points < 2) return samples;
  std::vector<JointConfig> out;
  out.reserve(max_points);
  const double stride = static_cast<double>(samples.size() - 1) / static_cast<double>(max_points - 1);
  for (std::size_t i = 0; i < max_points; ++i) {
    out.push_back(samples[static_cast<std::size_t>(std::llround(static_cast<double>(i) * stride))]);
  }
  return out;
}

namespace {

std::vector<double> to_vector(const JointConfig& q) { return {q.data(), q.data() + q.size()}; }

std::vector<double> to_vector(const Point3& p) { return {p.x(), p.y(), p.z()}; }

Point3 to_point(const json& j) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 2 && v.size() != 3) throw std::invalid_argument("position needs 2 or 3 values");
  return {v[0], v[1], v.size() == 3 ? v[2] : 0.0};
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("field '") + key + "' has the wrong type");
  }
}

json obstacle_to_json(const Obstacle& o) {
  json j{{"id", o.id}, {"shape", o.shape == ShapeKind::Box ? "box" : "sphere"}, {"center", to_vector(o.center)}};
  if (o.shape == ShapeKind::Box) j["half_extents"] = to_vector(o.half_extents);
  else j["radius"] = o.radius;
  return j;
}

Obstacle obstacle_from_json(const json& j) {
  Obstacle o;
  o.id = get<int>(j, "id");
  const auto shape = get<std::string>(j, "shape");
  o.center = to_point(field(j, "center"));
  if (shape == "box") {
    o.shape = ShapeKind::Box;
    o.half_extents = to_point(field(j, "half_extents"));
  } else if (shape == "sphere") {
    o.shape = ShapeKind::Sphere;
    o.radius = get<double>(j, "radius");
  } else {
    throw std::invalid_argument("unknown obstacle shape '" + shape + "'");
  }
  return o;
}

}  // namespace

Snapshot take_snapshot(const LiveSimulator& sim) {
  const WorldState& w = sim.state();
  Snapshot s;
  s.time = w.time;
  s.paused = w.paused;
  s.robot_config = to_vector(w.robot_config);
  s.goal = to_vector(w.goal);
  for (const auto& o : w.obstacles.obstacles) {
    s.obstacles.push_back({o.id, o.shape, o.position_at(w.time), o.half_extents, o.radius});
  }
  if (w.replan.current_path) s.path = w.replan.current_path->neuron_ids;
  for (const auto& q : decimate(w.trajectory, kMaxTrajectoryPoints)) s.trajectory.push_back(to_vector(q));
  s.blocked_count = w.replan.blocked.size();
  if (w.last_decision) {
    s.last_decision = to_string(w.last_decision->decision.kind);
    s.last_reason = to_string(w.last_decision->decision.reason);
    s.last_decision_time = w.last_decision->time;
  }
  const BitmapLayout layout = bitmap_layout(sim.network());
  s.bitmap_width = layout.width;
  s.bitmap_height = layout.height;
  s.blocked_rle = rle_encode(blocked_mask(layout, w.replan.blocked));
  s.path_rle = rle_encode(path_mask(layout, s.path));
  return s;
}

json snapshot_to_json(const Snapshot& s) {
  json obstacles = json::array();
  for (const auto& o : s.obstacles) {
    json j{{"id", o.id}, {"shape", o.shape == ShapeKind::Box ? "box" : "sphere"}, {"position", to_vector(o.position)}};
    if (o.shape == ShapeKind::Box) j["half_extents"] = to_vector(o.half_extents);
    else j["radius"] = o.radius;
    obstacles.push_back(std::move(j));
  }
  return json{{"type", "snapshot"},
              {"time", s.time},
              {"paused", s.paused},
              {"robot_config", s.robot_config},
              {"goal", s.goal},
              {"obstacles", std::move(obstacles)},
              {"path", s.path},
              {"trajectory", s.trajectory},
              {"blocked_count", s.blocked_count},
              {"last_decision", {{"kind", s.last_decision}, {"reason", s.last_reason}, {"time", s.last_decision_time}}},
              {"bitmap",
               {{"width", s.bitmap_width}, {"height", s.bitmap_height}, {"blocked_rle", s.blocked_rle},
                {"path_rle", s.path_rle}}}};
}

Snapshot snapshot_from_json(const json& j) {
  if (get<std::string>(j, "type") != "snapshot") throw std::invalid_argument("not a snapshot message");
  Snapshot s;
  s.time = get<double>(j, "time");
  s.paused = get<bool>(j, "paused");
  s.robot_config = get<std::vector<double>>(j, "robot_config");
  s.goal = get<std::vector<double>>(j, "goal");
  for (const auto& o : field(j, "obstacles")) {
    ObstacleView v;
    v.id = get<int>(o, "id");
    const auto shape = get<std::string>(o, "shape");
    if (shape != "box" && shape != "sphere") throw std::invalid_argument("unknown obstacle shape");
    v.shape = shape == "box" ? ShapeKind::Box : ShapeKind::Sphere;
    v.position = to_point(field(o, "position"));
    if (v.shape == ShapeKind::Box) v.half_extents = to_point(field(o, "half_extents"));
    else v.radius = get<double>(o, "radius");
    s.obstacles.push_back(v);
  }
  s.path = get<std::vector<NeuronId>>(j, "path");
  s.trajectory = get<std::vector<std::vector<double>>>(j, "trajectory");
  s.blocked_count = get<std::size_t>(j, "blocked_count");
  const json& d = field(j, "last_decision");
  s.last_decision = get<std::string>(d, "kind");
  s.last_reason = get<std::string>(d, "reason");
  s.last_decision_time = get<double>(d, "time");
  const json& b = field(j, "bitmap");
  s.bitmap_width = get<std::uint32_t>(b, "width");
  s.bitmap_height = get<std::uint32_t>(b, "height");
  s.blocked_rle = get<std::vector<std::uint32_t>>(b, "blocked_rle");
  s.path_rle = get<std::vector<std::uint32_t>>(b, "path_rle");
  return s;
}

json event_to_json(const LiveEvent& e) {
  json j{{"type", "event"}, {"time", e.time}, {"kind", to_string(e.kind)}};
  if (e.kind == LiveEvent::Kind::Decision) {
    j["decision"] = to_string(e.decision.kind);
    j["reason"] = to_string(e.decision.reason);
    if (e.decision.kind == DecisionKind::Adopt) {
      j["hops"] = e.hops;
      j["length"] = e.length;
      j["degree"] = e.smoothing_degree;
    }
  } else {
    j["message"] = e.message;
  }
  return j;
}

json command_to_json(const Command& c) {
  json j{{"type", "command"}};
  if (const auto* a = std::get_if<AddObstacle>(&c)) {
    j["action"] = "add_obstacle";
    j["obstacle"] = obstacle_to_json(a->obstacle);
  } else if (const auto* m = std::get_if<MoveObstacle>(&c)) {
    j["action"] = "move_obstacle";
    j["id"] = m->id;
    j["position"] = to_vector(m->position);
  } else if (const auto* r = std::get_if<RemoveObstacle>(&c)) {
    j["action"] = "remove_obstacle";
    j["id"] = r->id;
  } else if (const auto* g = std::get_if<SetGoal>(&c)) {
    j["action"] = "set_goal";
    j["goal"] = to_vector(g->goal);
  } else if (std::holds_alternative<Pause>(c)) {
    j["action"] = "pause";
  } else {
    j["action"] = "resume";
  }
  return j;
}

Command command_from_json(const json& j) {
  if (get<std::string>(j, "type") != "command") throw std::invalid_argument("not a command message");
  const auto action = get<std::string>(j, "action");
  try {
    if (action == "add_obstacle") return AddObstacle{obstacle_from_json(field(j, "obstacle"))};
    if (action == "move_obstacle") return MoveObstacle{get<int>(j, "id"), to_point(field(j, "position"))};
    if (action == "remove_obstacle") return RemoveObstacle{get<int>(j, "id")};
    if (action == "set_goal") {
      const auto v = get<std::vector<double>>(j, "goal");
      return SetGoal{Eigen::Map<const JointConfig>(v.data(), static_cast<Eigen::Index>(v.size()))};
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed command: ") + e.what());
  }
  if (action == "pause") return Pause{};
  if (action == "resume") return Resume{};
  throw std::invalid_argument("unknown command action '" + action + "'");
}

json error_message(const std::string& message) { return json{{"type", "error"}, {"message", message}}; }

std::vector<std::uint8_t> encode_frame(const json& message) {
  const std::string payload = message.dump();
  if (payload.size() > kMaxFrameBytes) throw std::invalid_argument("message exceeds frame limit");
  const auto n = static_cast<std::uint32_t>(payload.size());
  std::vector<std::uint8_t> out{static_cast<std::uint8_t>(n >> 24), static_cast<std::uint8_t>(n >> 16),
                                static_cast<std::uint8_t>(n >> 8), static_cast<std::uint8_t>(n)};
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

void FrameDecoder::feed(std::span<const std::uint8_t> bytes) { buffer_.insert(buffer_.end(), bytes.begin(), bytes.end()); }

std::optional<std::string> FrameDecoder::next() {
  if (buffer_.size() < 4) return std::nullopt;
  const std::uint32_t n = (std::uint32_t{buffer_[0]} << 24) | (std::uint32_t{buffer_[1]} << 16) |
                          (std::uint32_t{buffer_[2]} << 8) | std::uint32_t{buffer_[3]};
  if (n > kMaxFrameBytes) throw std::runtime_error("frame of " + std::to_string(n) + " bytes exceeds limit");
  if (buffer_.size() < 4 + static_cast<std::size_t>(n)) return std::nullopt;
  std::string payload(buffer_.begin() + 4, buffer_.begin() + 4 + n);
  buffer_.erase(buffer_.begin(), buffer_.begin() + 4 + n);
  return payload;
}

}  // namespace cogmap
