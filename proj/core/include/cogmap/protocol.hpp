#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogmap/commands.hpp"
#include "cogmap/live.hpp"

namespace cogmap {

/// Wire form of an obstacle at the snapshot time.
struct ObstacleView {
  int id = 0;
  ShapeKind shape = ShapeKind::Box;
  Point3 position = Point3::Zero();
  Point3 half_extents = Point3::Zero();
  double radius = 0.0;
  bool operator==(const ObstacleView&) const = default;
};

/// State visible to a UI between two ticks. See docs/wire_protocol.md.
struct Snapshot {
  double time = 0.0;
  bool paused = false;
  std::vector<double> robot_config;
  std::vector<double> goal;
  std::vector<ObstacleView> obstacles;
  std::vector<NeuronId> path;
  std::vector<std::vector<double>> trajectory;  ///< decimated to <= kMaxTrajectoryPoints
  std::size_t blocked_count = 0;
  std::string last_decision;  ///< "keep" / "adopt" / "fail", empty before the first cycle
  std::string last_reason;
  double last_decision_time = 0.0;
  std::uint32_t bitmap_width = 0;
  std::uint32_t bitmap_height = 0;
  std::vector<std::uint32_t> blocked_rle;
  std::vector<std::uint32_t> path_rle;

  bool operator==(const Snapshot&) const = default;
};

inline constexpr std::size_t kMaxTrajectoryPoints = 200;

/// At most max_points evenly spaced entries, first and last always kept.
std::vector<JointConfig> decimate(const std::vector<JointConfig>& samples, std::size_t max_points);

Snapshot take_snapshot(const LiveSimulator& sim);

nlohmann::json snapshot_to_json(const Snapshot& s);
/// Throws std::invalid_argument on missing or mistyped fields.
Snapshot snapshot_from_json(const nlohmann::json& j);

nlohmann::json event_to_json(const LiveEvent& e);
nlohmann::json command_to_json(const Command& c);
/// Parses a `{"type": "command", "action": ...}` message. Planar positions
/// may omit z. Throws std::invalid_argument when malformed.
Command command_from_json(const nlohmann::json& j);
nlohmann::json error_message(const std::string& message);

/// Frames are a 4-byte big-endian payload length followed by UTF-8 JSON.
inline constexpr std::uint32_t kMaxFrameBytes = 16u << 20;

std::vector<std::uint8_t> encode_frame(const nlohmann::json& message);

/// Incremental frame splitter for a byte stream.
class FrameDecoder {
 public:
  void feed(std::span<const std::uint8_t> bytes);
  /// Next complete payload, if any. Throws std::runtime_error when a frame
  /// header announces more than kMaxFrameBytes.
  std::optional<std::string> next();

 private:
  std::vector<std::uint8_t> buffer_;
};

}  // namespace cogmap
