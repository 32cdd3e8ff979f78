// SPDX-License-Identifier: Apache-2.0
#include "illspec/operators/operator_id.hpp"

#include "illspec/util/errors.hpp"

namespace illspec {

Space OperatorId::domain() const {
  switch (tag) {
    case OpTag::D:
    case OpTag::Hastar: return Space::Seq;
    default: return Space::L2;
  }
}

Space OperatorId::codomain() const {
  switch (tag) {
    case OpTag::D:
    case OpTag::Ha: return Space::Seq;
    default: return Space::L2;
  }
}

std::string OperatorId::name() const {
  switch (tag) {
    case OpTag::J: return "J";
    case OpTag::Jstar: return "Jstar";
    case OpTag::C: return "C";
    case OpTag::Cstar: return "Cstar";
    case OpTag::D: return "D";
    case OpTag::Ha: return "Ha";
    case OpTag::Hastar: return "Hastar";
    case OpTag::Mult: return "M_t";
  }
  return "?";
}

CompositionSpec::CompositionSpec(std::vector<OperatorId> factors, std::string name)
    : factors_(std::move(factors)), name_(std::move(name)) {
  if (factors_.empty()) throw ValidationError("CompositionSpec: no factors");
  for (std::size_t i = 0; i + 1 < factors_.size(); ++i) {
    if (factors_[i].domain() != factors_[i + 1].codomain()) {
      throw ValidationError("CompositionSpec: " + factors_[i].name() + " cannot follow " +
                            factors_[i + 1].name() + " (space mismatch)");
    }
  }
}

std::string CompositionSpec::product_string() const {
  std::string s;
  for (const auto& f : factors_) {
    if (!s.empty()) s += "*";
    s += f.name();
  }
  return s;
}

Space CompositionSpec::domain() const { return factors_.back().domain(); }
Space CompositionSpec::codomain() const { return factors_.front().codomain(); }

CompositionSpec CompositionSpec::from_short_name(std::string_view name) {
  if (name == "J") return compositions::j();
  if (name == "CJ") return compositions::cj();
  if (name == "J2") return compositions::j2();
  if (name == "MJ") return compositions::mj();
  if (name == "HaJ") return compositions::ha_j();
  if (name == "DHa") return compositions::d_ha();
  if (name == "HaCstar") return compositions::ha_cstar();
  if (name == "HN") return compositions::hilbert();
  throw ValidationError("unknown operator '" + std::string(name) +
                        "' (expected J|CJ|J2|MJ|HaJ|DHa|HN)");
}

namespace compositions {
CompositionSpec j() { return CompositionSpec({kJ}, "J"); }
CompositionSpec cj() { return CompositionSpec({kC, kJ}, "CJ"); }
CompositionSpec j2() { return CompositionSpec({kJ, kJ}, "J2"); }
CompositionSpec mj() { return CompositionSpec({kMultT, kJ}, "MJ"); }
CompositionSpec ha_j() { return CompositionSpec({kHa, kJ}, "HaJ"); }
CompositionSpec d_ha() { return CompositionSpec({kD, kHa}, "DHa"); }
CompositionSpec ha_cstar() { return CompositionSpec({kHa, kCstar}, "HaCstar"); }
CompositionSpec hilbert() { return CompositionSpec({kHa, kHastar}, "HN"); }
}  // namespace compositions

}  // namespace illspec
