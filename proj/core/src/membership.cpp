#include "evohandoff/membership.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "evohandoff/errors.hpp"

namespace evohandoff {

MembershipFunction::MembershipFunction(std::string label, Shape shape, std::array<double, 4> pts)
    : label_(std::move(label)), shape_(shape), pts_(pts) {
  for (double p : pts_) {
    if (!std::isfinite(p)) {
      throw ValidationError("membership function '" + label_ + "': non-finite breakpoint");
    }
  }
  if (!std::is_sorted(pts_.begin(), pts_.end())) {
    throw ValidationError("membership function '" + label_ + "': breakpoints must be non-decreasing");
  }
}

MembershipFunction MembershipFunction::triangular(std::string label, double a, double b, double c) {
  return {std::move(label), Shape::Triangular, {a, b, b, c}};
}

MembershipFunction MembershipFunction::trapezoidal(std::string label, double a, double b, double c,
                                                   double d) {
  return {std::move(label), Shape::Trapezoidal, {a, b, c, d}};
}

double MembershipFunction::degree(double x) const noexcept {
  const auto [a, b, c, d] = pts_;
  if (x >= b && x <= c) {
    return 1.0;
  }
  if (x <= a || x >= d) {
    return 0.0;
  }
  const double y = x < b ? (x - a) / (b - a) : (d - x) / (d - c);
  return std::clamp(y, 0.0, 1.0);
}

std::vector<double> MembershipFunction::breakpoints() const {
  if (shape_ == Shape::Triangular) {
    return {pts_[0], pts_[1], pts_[3]};
  }
  return {pts_.begin(), pts_.end()};
}

LinguisticVariable::LinguisticVariable(std::string name, double lo, double hi,
                                       std::vector<MembershipFunction> terms)
    : name_(std::move(name)), lo_(lo), hi_(hi), terms_(std::move(terms)) {
  const std::string where = "linguistic variable '" + name_ + "': ";
  if (!(std::isfinite(lo_) && std::isfinite(hi_) && lo_ < hi_)) {
    throw ValidationError(where + "universe requires lo < hi");
  }
  if (terms_.empty()) {
    throw ValidationError(where + "needs at least one term");
  }
  std::set<std::string> labels;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!labels.insert(terms_[i].label()).second) {
      throw ValidationError(where + "duplicate term label '" + terms_[i].label() + "'");
    }
    if (i > 0 && !(terms_[i].peak() > terms_[i - 1].peak())) {
      throw ValidationError(where + "term peaks must strictly increase");
    }
  }

  // Coverage. Between consecutive breakpoints every degree is linear and
  // non-negative, so if the upper envelope vanishes anywhere inside such an
  // interval it vanishes at the interval midpoint too. Checking all
  // breakpoints and all midpoints is therefore exact.
  std::vector<double> critical{lo_, hi_};
  for (const auto& t : terms_) {
    for (double p : t.breakpoints()) {
      if (p > lo_ && p < hi_) {
        critical.push_back(p);
      }
    }
  }
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());
  const auto covered = [this](double x) {
    return std::any_of(terms_.begin(), terms_.end(),
                       [x](const MembershipFunction& t) { return t.degree(x) > 0.0; });
  };
  for (std::size_t i = 0; i < critical.size(); ++i) {
    if (!covered(critical[i]) ||
        (i + 1 < critical.size() && !covered(0.5 * (critical[i] + critical[i + 1])))) {
      throw ValidationError(where + "terms do not cover the universe");
    }
  }
}

double LinguisticVariable::clamp(double x) const noexcept {
  if (std::isnan(x)) {
    return lo_;
  }
  return std::clamp(x, lo_, hi_);
}

std::vector<double> LinguisticVariable::fuzzify(double x) const {
  std::vector<double> out(terms_.size());
  fuzzify_into(x, out);
  return out;
}

void LinguisticVariable::fuzzify_into(double x, std::span<double> out) const {
  const double cx = clamp(x);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    out[i] = terms_[i].degree(cx);
  }
}

}  // namespace evohandoff
