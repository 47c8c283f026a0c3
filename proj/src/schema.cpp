#include "chabauty/schema.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chabauty {

double GrowthSpec::operator()(double n) const {
  switch (kind) {
    case Kind::Constant: return coeff;
    case Kind::Power: return coeff * std::pow(n, exponent);
    case Kind::Log: return coeff * std::log(n);
    case Kind::PowerSum: return coeff * std::pow(n, exponent) + coeff2 * std::pow(n, exponent2);
  }
  return 0.0;
}

GrowthSpec GrowthSpec::constant(double v) {
  GrowthSpec g;
  g.kind = Kind::Constant;
  g.coeff = v;
  return g;
}

GrowthSpec GrowthSpec::power(double coeff, double exponent) {
  GrowthSpec g;
  g.kind = Kind::Power;
  g.coeff = coeff;
  g.exponent = exponent;
  return g;
}

GrowthSpec GrowthSpec::log(double coeff) {
  GrowthSpec g;
  g.kind = Kind::Log;
  g.coeff = coeff;
  return g;
}

GrowthSpec GrowthSpec::power_sum(double c1, double p1, double c2, double p2) {
  GrowthSpec g;
  g.kind = Kind::PowerSum;
  g.coeff = c1;
  g.exponent = p1;
  g.coeff2 = c2;
  g.exponent2 = p2;
  return g;
}

std::string GrowthSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Constant: os << coeff; break;
    case Kind::Power: os << coeff << "*n^" << exponent; break;
    case Kind::Log: os << coeff << "*log(n)"; break;
    case Kind::PowerSum: os << coeff << "*n^" << exponent << "+" << coeff2 << "*n^" << exponent2; break;
  }
  return os.str();
}

ConjugatorSchema ConjugatorSchema::translation_along(const Vector2d& direction, GrowthSpec growth,
                                                     std::string description) {
  ConjugatorSchema s;
  s.kind_ = Kind::TranslationAlong;
  s.direction_ = direction;
  s.growth_[0] = growth;
  s.description_ = description.empty()
                       ? "translation along (" + std::to_string(direction.x()) + ", " +
                             std::to_string(direction.y()) + ") with growth " + growth.describe()
                       : std::move(description);
  return s;
}

ConjugatorSchema ConjugatorSchema::iwasawa(GrowthSpec stheta, GrowthSpec loga, GrowthSpec s,
                                           GrowthSpec vx, GrowthSpec vy, std::string description) {
  ConjugatorSchema out;
  out.kind_ = Kind::Iwasawa;
  out.growth_[0] = stheta;
  out.growth_[1] = loga;
  out.growth_[2] = s;
  out.growth_[3] = vx;
  out.growth_[4] = vy;
  out.description_ = description.empty()
                         ? "iwasawa theta=" + stheta.describe() + " loga=" + loga.describe() +
                               " s=" + s.describe() + " v=(" + vx.describe() + ", " + vy.describe() + ")"
                         : std::move(description);
  return out;
}

ConjugatorSchema ConjugatorSchema::explicit_list(std::map<long, GroupElementd> elements,
                                                 std::string description) {
  ConjugatorSchema s;
  s.kind_ = Kind::Explicit;
  s.elements_ = std::move(elements);
  s.description_ = description.empty() ? "explicit list" : std::move(description);
  return s;
}

ConjugatorSchema ConjugatorSchema::with_outer(const GroupElementd& outer) const {
  ConjugatorSchema s = *this;
  s.has_outer_ = true;
  s.outer_ = outer;
  s.description_ += " (with fixed outer conjugator)";
  return s;
}

GroupElementd ConjugatorSchema::at(long n) const {
  if (n <= 0) throw std::invalid_argument("ConjugatorSchema::at: n must be positive");
  GroupElementd g;
  const double nn = static_cast<double>(n);
  switch (kind_) {
    case Kind::TranslationAlong:
      g.translation = growth_[0](nn) * direction_;
      break;
    case Kind::Iwasawa: {
      g.matrix = iwasawa_compose<double>({growth_[2](nn), growth_[1](nn), growth_[0](nn)});
      g.translation = Vector2d(growth_[3](nn), growth_[4](nn));
      break;
    }
    case Kind::Explicit: {
      const auto it = elements_.find(n);
      if (it == elements_.end()) {
        throw std::invalid_argument("ConjugatorSchema::at: no explicit element for n=" +
                                    std::to_string(n));
      }
      g = it->second;
      break;
    }
  }
  return has_outer_ ? mul(outer_, g) : g;
}

}  // namespace chabauty
