#include "evohandoff/kinematics.hpp"

#include <cmath>

#include "evohandoff/errors.hpp"

namespace evohandoff {

namespace {

// Folds an unbounded coordinate into [0, extent] (triangle wave of period
// 2 * extent); returns true when the direction component ends up reversed.
bool fold(double& coord, double extent) noexcept {
  const double period = 2.0 * extent;
  double m = std::fmod(coord, period);
  if (m < 0.0) {
    m += period;
  }
  bool flipped = false;
  if (m > extent) {
    m = period - m;
    flipped = true;
  }
  coord = m;
  return flipped;
}

}  // namespace

double distance(Vec2 a, Vec2 b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double acceleration_for(double total_distance, double total_time) {
  if (!(total_distance > 0.0) || !(total_time > 0.0)) {
    throw DomainError("acceleration_for requires positive distance and time");
  }
  return 2.0 * total_distance / (total_time * total_time);
}

AcceleratedState accelerated_state(double acceleration, double t, VelocityMode mode) {
  if (t < 0.0) {
    throw DomainError("accelerated_state: negative time");
  }
  if (acceleration < 0.0) {
    throw DomainError("accelerated_state: negative acceleration");
  }
  const double x = 0.5 * acceleration * t * t;
  const double v = mode == VelocityMode::Verbatim ? std::sqrt(2.0 * acceleration * t) : acceleration * t;
  return {x, v};
}

double steady_position(double speed, double t) noexcept {
  return speed * t;
}

MotionPlan MotionPlan::steady(double speed) {
  if (speed < 0.0) {
    throw DomainError("steady motion requires a non-negative speed");
  }
  MotionPlan plan;
  plan.kind_ = Kind::Steady;
  plan.speed_ = speed;
  return plan;
}

MotionPlan MotionPlan::accelerated(double total_distance, double horizon) {
  MotionPlan plan;
  plan.kind_ = Kind::Accelerated;
  plan.total_distance_ = total_distance;
  plan.horizon_ = horizon;
  plan.acceleration_ = acceleration_for(total_distance, horizon);
  return plan;
}

double MotionPlan::displacement_at(double t) const {
  if (kind_ == Kind::Steady) {
    return steady_position(speed_, t);
  }
  return accelerated_state(acceleration_, t).displacement;
}

double MotionPlan::speed_at(double t, VelocityMode mode) const {
  if (kind_ == Kind::Steady) {
    return speed_;
  }
  return accelerated_state(acceleration_, t, mode).speed;
}

Pose move_with_reflection(Pose start, double path_length, double width, double height) noexcept {
  double x = start.position.x + start.direction.x * path_length;
  double y = start.position.y + start.direction.y * path_length;
  Vec2 dir = start.direction;
  if (fold(x, width)) {
    dir.x = -dir.x;
  }
  if (fold(y, height)) {
    dir.y = -dir.y;
  }
  return {{x, y}, dir};
}

}  // namespace evohandoff
