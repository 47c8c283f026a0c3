#include "chabauty/descriptor.hpp"

#include <cmath>
#include <stdexcept>

namespace chabauty {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_arity(const SubgroupDescriptor& d, std::size_t got, std::size_t want) {
  if (got != want) {
    throw std::invalid_argument(std::string("parametrize: family ") + family_name(d.family) +
                                " expects " + std::to_string(want) + " parameter(s), got " +
                                std::to_string(got));
  }
}

Vector2d line_direction(const SubgroupDescriptor& d) {
  if (d.line_infinite) return Vector2d(0.0, 1.0);
  return Vector2d(1.0, d.params.at(0));
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::Levi: return "Levi";
    case Family::MaximalCompact: return "MaximalCompact";
    case Family::Diagonal: return "Diagonal";
    case Family::Borel: return "Borel";
    case Family::BorelFull: return "BorelFull";
    case Family::UnipotentUpper: return "UnipotentUpper";
    case Family::UnipotentC: return "UnipotentC";
    case Family::TildeNPlus: return "TildeNPlus";
    case Family::LineV: return "LineV";
    case Family::HeisenbergLine: return "HeisenbergLine";
    case Family::NPlusSemidirectR2: return "NPlusSemidirectR2";
    case Family::R2Full: return "R2Full";
    case Family::NPlusTimesXAxis: return "NPlusTimesXAxis";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  static const Family all[] = {
      Family::Levi,           Family::MaximalCompact, Family::Diagonal,
      Family::Borel,          Family::BorelFull,      Family::UnipotentUpper,
      Family::UnipotentC,     Family::TildeNPlus,     Family::LineV,
      Family::HeisenbergLine, Family::NPlusSemidirectR2, Family::R2Full,
      Family::NPlusTimesXAxis};
  for (Family f : all) {
    if (name == family_name(f)) return f;
  }
  throw std::invalid_argument("unknown family name: " + name);
}

SubgroupDescriptor SubgroupDescriptor::make(Family f, std::vector<double> params) {
  SubgroupDescriptor d;
  d.family = f;
  d.params = std::move(params);
  if (f == Family::UnipotentC) {
    if (d.params.size() != 1) throw std::invalid_argument("UnipotentC needs one parameter");
  } else if (f == Family::LineV) {
    if (d.params.size() != 1) throw std::invalid_argument("LineV needs one parameter");
  } else if (f == Family::HeisenbergLine) {
    if (d.params.size() != 3) throw std::invalid_argument("HeisenbergLine needs (a, b, c)");
    if (d.params[0] == 0.0 && d.params[1] == 0.0 && d.params[2] == 0.0) {
      throw std::invalid_argument("HeisenbergLine: (a, b, c) must not all be zero");
    }
  } else if (!d.params.empty()) {
    throw std::invalid_argument(std::string(family_name(f)) + " takes no parameters");
  }
  return d;
}

SubgroupDescriptor SubgroupDescriptor::line_v(double c) {
  return make(Family::LineV, {c});
}

SubgroupDescriptor SubgroupDescriptor::line_v_infinity() {
  SubgroupDescriptor d;
  d.family = Family::LineV;
  d.line_infinite = true;
  return d;
}

SubgroupDescriptor SubgroupDescriptor::unipotent_c(double c) {
  return make(Family::UnipotentC, {c});
}

SubgroupDescriptor SubgroupDescriptor::heisenberg_line(double a, double b, double c) {
  return make(Family::HeisenbergLine, {a, b, c});
}

int dimension(const SubgroupDescriptor& d) {
  switch (d.family) {
    case Family::Levi: return 3;
    case Family::MaximalCompact: return 1;
    case Family::Diagonal: return 1;
    case Family::Borel: return 2;
    case Family::BorelFull: return 4;
    case Family::UnipotentUpper: return 1;
    case Family::UnipotentC: return 1;
    case Family::TildeNPlus: return 1;
    case Family::LineV: return 1;
    case Family::HeisenbergLine: return 1;
    case Family::NPlusSemidirectR2: return 3;
    case Family::R2Full: return 2;
    case Family::NPlusTimesXAxis: return 2;
  }
  return 0;
}

GroupElementd parametrize(const SubgroupDescriptor& d, std::span<const double> p) {
  GroupElementd raw;
  switch (d.family) {
    case Family::Levi: {
      require_arity(d, p.size(), 3);
      raw.matrix = iwasawa_compose<double>({p[0], p[1], p[2]});
      break;
    }
    case Family::MaximalCompact: {
      require_arity(d, p.size(), 1);
      raw.matrix = rotation(p[0]);
      break;
    }
    case Family::Diagonal: {
      require_arity(d, p.size(), 1);
      raw.matrix = diagonal_log(p[0]);
      break;
    }
    case Family::Borel: {
      require_arity(d, p.size(), 2);
      raw.matrix = unipotent_upper(p[1]) * diagonal_log(p[0]);
      break;
    }
    case Family::BorelFull: {
      require_arity(d, p.size(), 4);
      raw.matrix = unipotent_upper(p[1]) * diagonal_log(p[0]);
      raw.translation = Vector2d(p[2], p[3]);
      break;
    }
    case Family::UnipotentUpper: {
      require_arity(d, p.size(), 1);
      raw.matrix = unipotent_upper(p[0]);
      break;
    }
    case Family::UnipotentC: {
      require_arity(d, p.size(), 1);
      raw.matrix = unipotent_upper(p[0]);
      raw.translation = Vector2d(d.params[0] * p[0], 0.0);
      break;
    }
    case Family::TildeNPlus: {
      require_arity(d, p.size(), 1);
      raw.matrix = unipotent_upper(p[0]);
      break;
    }
    case Family::LineV: {
      require_arity(d, p.size(), 1);
      raw.translation = p[0] * line_direction(d);
      break;
    }
    case Family::HeisenbergLine: {
      require_arity(d, p.size(), 1);
      const double a = d.params[0], b = d.params[1], c = d.params[2], t = p[0];
      raw.matrix = unipotent_upper(a * t);
      raw.translation = Vector2d(c * t + a * b * t * t / 2.0, b * t);
      break;
    }
    case Family::NPlusSemidirectR2: {
      require_arity(d, p.size(), 3);
      raw.matrix = unipotent_upper(p[0]);
      raw.translation = Vector2d(p[1], p[2]);
      break;
    }
    case Family::R2Full: {
      require_arity(d, p.size(), 2);
      raw.translation = Vector2d(p[0], p[1]);
      break;
    }
    case Family::NPlusTimesXAxis: {
      require_arity(d, p.size(), 2);
      raw.matrix = unipotent_upper(p[0]);
      raw.translation = Vector2d(p[1], 0.0);
      break;
    }
  }
  return conj(d.conjugator, raw);
}

GroupElementd parametrize1(const SubgroupDescriptor& d, double t) {
  return parametrize(d, std::span<const double>(&t, 1));
}

SubgroupDescriptor conjugate_descriptor(const GroupElementd& h, const SubgroupDescriptor& d) {
  SubgroupDescriptor out = d;
  out.conjugator = mul(h, d.conjugator);
  return out;
}

std::vector<LieAlgebraElementd> lie_algebra_basis(const SubgroupDescriptor& d) {
  const Matrix2d nplus = (Matrix2d() << 0, 1, 0, 0).finished();
  const Matrix2d diag = (Matrix2d() << 1, 0, 0, -1).finished();
  const Matrix2d so2 = (Matrix2d() << 0, 1, -1, 0).finished();
  const Matrix2d nminus = (Matrix2d() << 0, 0, 1, 0).finished();

  std::vector<LieAlgebraElementd> raw;
  auto add = [&raw](const Matrix2d& m, const Vector2d& w) { raw.push_back({m, w}); };
  switch (d.family) {
    case Family::Levi:
      add(nplus, Vector2d::Zero());
      add(diag, Vector2d::Zero());
      add(nminus, Vector2d::Zero());
      break;
    case Family::MaximalCompact:
      add(so2, Vector2d::Zero());
      break;
    case Family::Diagonal:
      add(diag, Vector2d::Zero());
      break;
    case Family::Borel:
      add(diag, Vector2d::Zero());
      add(nplus, Vector2d::Zero());
      break;
    case Family::BorelFull:
      add(diag, Vector2d::Zero());
      add(nplus, Vector2d::Zero());
      add(Matrix2d::Zero(), Vector2d(1, 0));
      add(Matrix2d::Zero(), Vector2d(0, 1));
      break;
    case Family::UnipotentUpper:
    case Family::TildeNPlus:
      add(nplus, Vector2d::Zero());
      break;
    case Family::UnipotentC:
      add(nplus, Vector2d(d.params[0], 0.0));
      break;
    case Family::LineV:
      add(Matrix2d::Zero(), line_direction(d));
      break;
    case Family::HeisenbergLine:
      add(d.params[0] * nplus, Vector2d(d.params[2], d.params[1]));
      break;
    case Family::NPlusSemidirectR2:
      add(nplus, Vector2d::Zero());
      add(Matrix2d::Zero(), Vector2d(1, 0));
      add(Matrix2d::Zero(), Vector2d(0, 1));
      break;
    case Family::R2Full:
      add(Matrix2d::Zero(), Vector2d(1, 0));
      add(Matrix2d::Zero(), Vector2d(0, 1));
      break;
    case Family::NPlusTimesXAxis:
      add(nplus, Vector2d::Zero());
      add(Matrix2d::Zero(), Vector2d(1, 0));
      break;
  }
  std::vector<LieAlgebraElementd> out;
  out.reserve(raw.size());
  for (const auto& x : raw) out.push_back(adjoint(d.conjugator, x));
  return out;
}

double one_param_check(const SubgroupDescriptor& d, double t, double s) {
  if (dimension(d) != 1) throw std::invalid_argument("one_param_check: family is not one-dimensional");
  return dist(mul(parametrize1(d, t), parametrize1(d, s)), parametrize1(d, t + s));
}

bool contains_full_r2(Family f) {
  return f == Family::NPlusSemidirectR2 || f == Family::BorelFull || f == Family::R2Full;
}

std::vector<ComponentChart> component_charts_1d(const SubgroupDescriptor& d) {
  if (dimension(d) != 1) {
    throw std::invalid_argument("component_charts_1d: family is not one-dimensional");
  }
  const GroupElementd h = d.conjugator;
  std::vector<ComponentChart> charts;
  if (d.family == Family::TildeNPlus) {
    ComponentChart plus;
    plus.elem = [h](double t) {
      GroupElementd raw;
      raw.matrix = unipotent_upper(t);
      return conj(h, raw);
    };
    ComponentChart minus;
    minus.elem = [h](double t) {
      GroupElementd raw;
      raw.matrix = -unipotent_upper(t);
      return conj(h, raw);
    };
    charts.push_back(std::move(plus));
    charts.push_back(std::move(minus));
    return charts;
  }
  ComponentChart main;
  SubgroupDescriptor dd = d;
  main.elem = [dd](double t) { return parametrize1(dd, t); };
  if (d.family == Family::MaximalCompact) {
    main.periodic = true;
    main.period = 2 * kPi;
    main.seeds = {0.0, kPi};  // theta = pi holds the central element -I
  }
  charts.push_back(std::move(main));
  return charts;
}

}  // namespace chabauty
