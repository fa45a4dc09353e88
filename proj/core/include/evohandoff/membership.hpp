#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace evohandoff {

enum class Shape { Triangular, Trapezoidal };

/// Piecewise-linear fuzzy set: a triangle (a, b, c) or trapezoid (a, b, c, d).
///
/// A triangle is stored as the degenerate trapezoid (a, b, b, c). The degree is
/// 1 on [b, c], 0 outside [a, d], and linear on the two shoulders. A shoulder
/// of zero width (a == b or c == d) makes that end a vertical edge, so the
/// set reaches 1 exactly at the universe boundary.
class MembershipFunction {
 public:
  static MembershipFunction triangular(std::string label, double a, double b, double c);
  static MembershipFunction trapezoidal(std::string label, double a, double b, double c, double d);

  double degree(double x) const noexcept;

  const std::string& label() const noexcept { return label_; }
  Shape shape() const noexcept { return shape_; }
  /// 3 points for a triangle, 4 for a trapezoid, as given at construction.
  std::vector<double> breakpoints() const;
  /// Midpoint of the plateau; the apex for a triangle.
  double peak() const noexcept { return 0.5 * (pts_[1] + pts_[2]); }
  double support_lo() const noexcept { return pts_[0]; }
  double support_hi() const noexcept { return pts_[3]; }

  bool operator==(const MembershipFunction&) const = default;

 private:
  MembershipFunction(std::string label, Shape shape, std::array<double, 4> pts);

  std::string label_;
  Shape shape_;
  std::array<double, 4> pts_;
};

inline double membership_degree(const MembershipFunction& mf, double x) noexcept {
  return mf.degree(x);
}

/// A named universe [lo, hi] partitioned by ordered fuzzy terms.
///
/// Construction enforces lo < hi, unique labels, strictly increasing peaks and
/// full coverage (every point of the universe has a nonzero degree in some term).
class LinguisticVariable {
 public:
  LinguisticVariable(std::string name, double lo, double hi, std::vector<MembershipFunction> terms);

  const std::string& name() const noexcept { return name_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::span<const MembershipFunction> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  double clamp(double x) const noexcept;

  /// Degree per term after clamping x into the universe.
  std::vector<double> fuzzify(double x) const;
  /// Allocation-free variant; `out` must hold size() entries.
  void fuzzify_into(double x, std::span<double> out) const;

  bool operator==(const LinguisticVariable&) const = default;

 private:
  std::string name_;
  double lo_;
  double hi_;
  std::vector<MembershipFunction> terms_;
};

inline std::vector<double> fuzzify(const LinguisticVariable& var, double x) {
  return var.fuzzify(x);
}

}  // namespace evohandoff
