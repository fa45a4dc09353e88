#pragma once

namespace evohandoff {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Vec2&) const = default;
};

double distance(Vec2 a, Vec2 b) noexcept;

/// How the instantaneous speed of an accelerated terminal is reported.
/// Positions always follow x = a t^2 / 2.
enum class VelocityMode {
  Derivative,  ///< v = a t, the time derivative of the position law
  Verbatim,    ///< v = sqrt(2 a t), the closed form as printed
};

/// a = 2 dx / t^2. Throws DomainError unless dx > 0 and t > 0.
double acceleration_for(double total_distance, double total_time);

struct AcceleratedState {
  double displacement;
  double speed;
};

/// Displacement and speed at time t from rest under constant acceleration a.
AcceleratedState accelerated_state(double acceleration, double t,
                                   VelocityMode mode = VelocityMode::Derivative);

/// x = v t.
double steady_position(double speed, double t) noexcept;

/// One terminal's motion law along its heading.
class MotionPlan {
 public:
  enum class Kind { Steady, Accelerated };

  static MotionPlan steady(double speed);
  /// Covers `total_distance` from rest in exactly `horizon` time units.
  static MotionPlan accelerated(double total_distance, double horizon);

  Kind kind() const noexcept { return kind_; }
  double speed() const noexcept { return speed_; }
  double total_distance() const noexcept { return total_distance_; }
  double horizon() const noexcept { return horizon_; }
  double acceleration() const noexcept { return acceleration_; }

  /// Path length covered since t = 0.
  double displacement_at(double t) const;
  double speed_at(double t, VelocityMode mode) const;

  bool operator==(const MotionPlan&) const = default;

 private:
  Kind kind_ = Kind::Steady;
  double speed_ = 0.0;
  double total_distance_ = 0.0;
  double horizon_ = 0.0;
  double acceleration_ = 0.0;
};

struct Pose {
  Vec2 position;
  Vec2 direction;  ///< unit vector
};

/// Moves `path_length` along the direction inside [0, width] x [0, height],
/// reflecting specularly off the walls as many times as needed.
Pose move_with_reflection(Pose start, double path_length, double width, double height) noexcept;

}  // namespace evohandoff
