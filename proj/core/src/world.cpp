#include "crowdbench/world.hpp"

#include <cmath>

namespace crowdbench {

Vector2 flow_direction(FlowGroup group) {
  switch (group) {
    case FlowGroup::PlusX: return {1.0, 0.0};
    case FlowGroup::MinusX: return {-1.0, 0.0};
    case FlowGroup::PlusY: return {0.0, 1.0};
    case FlowGroup::MinusY: return {0.0, -1.0};
  }
  return {1.0, 0.0};
}

bool flows_along_x(FlowGroup group) {
  return group == FlowGroup::PlusX || group == FlowGroup::MinusX;
}

const char* to_string(FlowGroup group) {
  switch (group) {
    case FlowGroup::PlusX: return "+x";
    case FlowGroup::MinusX: return "-x";
    case FlowGroup::PlusY: return "+y";
    case FlowGroup::MinusY: return "-y";
  }
  return "+x";
}

FlowGroup flow_group_from_string(const std::string& name) {
  if (name == "+x") return FlowGroup::PlusX;
  if (name == "-x") return FlowGroup::MinusX;
  if (name == "+y") return FlowGroup::PlusY;
  if (name == "-y") return FlowGroup::MinusY;
  throw std::invalid_argument("unknown flow group '" + name + "'");
}

std::array<Segment, 4> WorldSpec::walls() const {
  const Vector2 a{0.0, 0.0};
  const Vector2 b{length, 0.0};
  const Vector2 c{length, width};
  const Vector2 d{0.0, width};
  return {Segment{a, b}, Segment{b, c}, Segment{c, d}, Segment{d, a}};
}

Vector2 RobotState::world_velocity() const {
  return {v * std::cos(pose.theta), v * std::sin(pose.theta)};
}

}  // namespace crowdbench
