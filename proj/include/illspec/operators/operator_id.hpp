// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace illspec {

/// The operators of the catalog. All act on L2(0,1) or on l2.
///   J       (Jx)(s)   = int_0^s x(t) dt
///   Jstar   (J*x)(t)  = int_t^1 x(s) ds
///   C       (Cx)(s)   = (1/s) int_0^s x(t) dt          (Cesaro)
///   Cstar   (C*x)(t)  = int_t^1 x(s)/s ds
///   D       (Dy)_j    = y_j / j
///   Ha      (Ha x)_j  = int_0^1 x(t) t^(j-1) dt        (Hausdorff moments)
///   Hastar  (Ha*y)(t) = sum_j y_j t^(j-1)
///   Mult    (Mx)(t)   = m(t) x(t), only m(t) = t
enum class OpTag { J, Jstar, C, Cstar, D, Ha, Hastar, Mult };

enum class Space { L2, Seq };

struct OperatorId {
  OpTag tag = OpTag::J;

  Space domain() const;
  Space codomain() const;
  std::string name() const;

  friend bool operator==(const OperatorId&, const OperatorId&) = default;
};

inline constexpr OperatorId kJ{OpTag::J};
inline constexpr OperatorId kJstar{OpTag::Jstar};
inline constexpr OperatorId kC{OpTag::C};
inline constexpr OperatorId kCstar{OpTag::Cstar};
inline constexpr OperatorId kD{OpTag::D};
inline constexpr OperatorId kHa{OpTag::Ha};
inline constexpr OperatorId kHastar{OpTag::Hastar};
inline constexpr OperatorId kMultT{OpTag::Mult};

/// An ordered product of catalog operators. factors.front() is applied last,
/// so {D, Ha} denotes D * Ha.
class CompositionSpec {
 public:
  /// Throws ValidationError if adjacent factors have mismatched spaces.
  CompositionSpec(std::vector<OperatorId> factors, std::string name);

  /// Short names used on the command line: J, CJ, J2, MJ, HaJ, DHa, HN
  /// (HN is Ha*Ha^*, whose Gram is the Hilbert matrix).
  static CompositionSpec from_short_name(std::string_view name);

  const std::vector<OperatorId>& factors() const { return factors_; }
  const std::string& name() const { return name_; }
  /// Canonical product string, e.g. "D*Ha".
  std::string product_string() const;
  Space domain() const;
  Space codomain() const;

  bool same_operator(const CompositionSpec& other) const { return factors_ == other.factors_; }
  friend bool operator==(const CompositionSpec&, const CompositionSpec&) = default;

 private:
  std::vector<OperatorId> factors_;
  std::string name_;
};

namespace compositions {
CompositionSpec j();
CompositionSpec cj();
CompositionSpec j2();
CompositionSpec mj();
CompositionSpec ha_j();
CompositionSpec d_ha();
CompositionSpec ha_cstar();
CompositionSpec hilbert();
}  // namespace compositions

}  // namespace illspec
