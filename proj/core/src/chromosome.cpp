#include "evohandoff/chromosome.hpp"

#include "evohandoff/errors.hpp"

namespace evohandoff {

Chromosome::Chromosome(std::vector<int> genes) : genes_(std::move(genes)) {
  if (genes_.size() != RuleBase::cell_count(3) && genes_.size() != RuleBase::cell_count(2)) {
    throw ValidationError("chromosome length must be 27 or 9, got " + std::to_string(genes_.size()));
  }
  for (int g : genes_) {
    if (g < 1 || g > kOutputLevels) {
      throw ValidationError("gene out of range 1..5: " + std::to_string(g));
    }
  }
}

Chromosome Chromosome::from_rule_base(const RuleBase& rules) {
  const auto c = rules.consequents();
  return Chromosome(std::vector<int>(c.begin(), c.end()));
}

RuleBase Chromosome::to_rule_base() const {
  return RuleBase(arity(), genes_);
}

std::string Chromosome::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < genes_.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += std::to_string(genes_[i]);
  }
  out += ']';
  return out;
}

}  // namespace evohandoff
