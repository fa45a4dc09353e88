#pragma once

#include <span>
#include <string>
#include <vector>

#include "evohandoff/inference.hpp"

namespace evohandoff {

/// Integer-encoded rule consequents, one gene per grid cell in rule order.
/// 27 genes for the three-input grid, 9 for the channel-free grid; every gene in 1..5.
class Chromosome {
 public:
  explicit Chromosome(std::vector<int> genes);

  static Chromosome from_rule_base(const RuleBase& rules);
  RuleBase to_rule_base() const;

  std::span<const int> genes() const noexcept { return genes_; }
  std::size_t size() const noexcept { return genes_.size(); }
  int operator[](std::size_t i) const noexcept { return genes_[i]; }
  std::size_t arity() const noexcept { return genes_.size() == 27 ? 3 : 2; }

  /// "[2,2,3,...]"
  std::string to_string() const;

  auto operator<=>(const Chromosome&) const = default;

 private:
  std::vector<int> genes_;
};

}  // namespace evohandoff
