#pragma once

#include <map>
#include <string>
#include <vector>

#include "chabauty/group.hpp"

namespace chabauty {

// Scalar growth map n -> real, serializable. PowerSum covers the
// two-term combinations the diagonal witnesses need.
struct GrowthSpec {
  enum class Kind { Constant, Power, Log, PowerSum };
  Kind kind = Kind::Constant;
  double coeff = 0.0;     // Constant value, Power/Log coefficient, PowerSum first term
  double exponent = 1.0;  // Power exponent, PowerSum first exponent
  double coeff2 = 0.0;    // PowerSum second term
  double exponent2 = 0.0;

  double operator()(double n) const;

  static GrowthSpec constant(double v);
  static GrowthSpec power(double coeff, double exponent);
  static GrowthSpec log(double coeff);
  static GrowthSpec power_sum(double c1, double p1, double c2, double p2);

  std::string describe() const;
};

// Rule producing the conjugating element for each index n.
class ConjugatorSchema {
 public:
  enum class Kind { TranslationAlong, Iwasawa, Explicit };

  // (I, growth(n) * direction)
  static ConjugatorSchema translation_along(const Vector2d& direction, GrowthSpec growth,
                                            std::string description = "");
  // (u(s(n)) a(loga(n)) k(stheta(n)), (vx(n), vy(n)))
  static ConjugatorSchema iwasawa(GrowthSpec stheta, GrowthSpec loga, GrowthSpec s, GrowthSpec vx,
                                  GrowthSpec vy, std::string description = "");
  static ConjugatorSchema explicit_list(std::map<long, GroupElementd> elements,
                                        std::string description = "");

  // Fixed outer element applied after the n-dependent part.
  ConjugatorSchema with_outer(const GroupElementd& outer) const;

  GroupElementd at(long n) const;

  Kind kind() const { return kind_; }
  const std::string& description() const { return description_; }

  // serialization accessors
  const Vector2d& direction() const { return direction_; }
  const GrowthSpec& growth(int i) const { return growth_[i]; }
  const std::map<long, GroupElementd>& elements() const { return elements_; }
  bool has_outer() const { return has_outer_; }
  const GroupElementd& outer() const { return outer_; }

 private:
  Kind kind_ = Kind::TranslationAlong;
  std::string description_;
  Vector2d direction_ = Vector2d::Zero();
  GrowthSpec growth_[5];  // TranslationAlong uses [0]; Iwasawa uses all five
  std::map<long, GroupElementd> elements_;
  bool has_outer_ = false;
  GroupElementd outer_;
};

}  // namespace chabauty
