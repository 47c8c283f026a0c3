#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "chabauty/group.hpp"

namespace chabauty {

// Catalog of subgroup families. The declaration order is the canonical
// tag order used for tie-breaking in classification.
enum class Family {
  Levi,               // SL(2,R) x {0}
  MaximalCompact,     // SO(2)
  Diagonal,           // diag(a, 1/a), a > 0
  Borel,              // upper triangular, positive diagonal
  BorelFull,          // Borel x| R^2
  UnipotentUpper,     // u(x) = [[1,x],[0,1]]
  UnipotentC,         // (u(x), (c x, 0))
  TildeNPlus,         // (+-u(s), 0), two components
  LineV,              // (I, t (1, c)) or (I, (0, t)) for the vertical line
  HeisenbergLine,     // (u(a t), (c t + a b t^2/2, b t))
  NPlusSemidirectR2,  // u(x) x| R^2, the Heisenberg group
  R2Full,             // (I, v)
  NPlusTimesXAxis,    // (u(s), (t, 0))
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// A catalog family together with its parameters and an outer conjugator.
// The represented subgroup is conjugator * F(params) * conjugator^-1.
struct SubgroupDescriptor {
  Family family = Family::Levi;
  std::vector<double> params;   // family parameters, see parametrize()
  bool line_infinite = false;   // LineV only: the vertical line V_inf
  GroupElementd conjugator;     // defaults to identity

  static SubgroupDescriptor make(Family f, std::vector<double> params = {});
  static SubgroupDescriptor line_v(double c);
  static SubgroupDescriptor line_v_infinity();
  static SubgroupDescriptor unipotent_c(double c);
  static SubgroupDescriptor heisenberg_line(double a, double b, double c);
};

// Intrinsic dimension (TildeNPlus has dimension 1 with two components).
int dimension(const SubgroupDescriptor& d);

/// Element of the family at the given parameters, conjugated by d.conjugator.
/// Throws std::invalid_argument on wrong parameter arity.
GroupElementd parametrize(const SubgroupDescriptor& d, std::span<const double> params);

GroupElementd parametrize1(const SubgroupDescriptor& d, double t);

// Replaces the conjugator by h * d.conjugator.
SubgroupDescriptor conjugate_descriptor(const GroupElementd& h, const SubgroupDescriptor& d);

// Basis of the tangent space at the identity (dimension(d) elements).
// For TildeNPlus this is the basis of the identity component N+.
std::vector<LieAlgebraElementd> lie_algebra_basis(const SubgroupDescriptor& d);

/// dist(P(t) P(s), P(t+s)) for a one-dimensional family.
double one_param_check(const SubgroupDescriptor& d, double t, double s);

// True for the families whose elements carry all of R^2 in the translation part.
bool contains_full_r2(Family f);

// One-parameter chart of a connected piece of the family (conjugator applied).
// Most families have a single chart; TildeNPlus has one per sheet. seeds are
// parameter values from which in-window search starts (for MaximalCompact the
// central element at theta = pi gets its own seed).
struct ComponentChart {
  std::function<GroupElementd(double)> elem;
  std::vector<double> seeds{0.0};
  bool periodic = false;
  double period = 0.0;
};

// Charts for the one-dimensional families only.
std::vector<ComponentChart> component_charts_1d(const SubgroupDescriptor& d);

}  // namespace chabauty
