#include "chabauty/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "chabauty/metric.hpp"
#include "chabauty/parallel.hpp"
#include "chabauty/sampling.hpp"
#include "chabauty/witness.hpp"

namespace chabauty {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) { return format_sig9(v); }

bool in_catalog(const std::vector<LimitClass>& catalog, LimitClass c) {
  return std::find(catalog.begin(), catalog.end(), c) != catalog.end();
}

long final_index(Profile p) { return p == Profile::Quick ? 300 : 1000; }

// ---- witness soundness -----------------------------------------------------

struct WitnessSweep {
  double worst_1e3 = 0.0;
  double worst_1e4 = 0.0;
  int targets = 0;
};

template <typename WitnessFn>
WitnessSweep sweep_witness(const WitnessFn& witness_at, const std::vector<double>& t_grid,
                           double radius) {
  WitnessSweep sw;
  for (double t : t_grid) {
    const WitnessSample probe = witness_at(t, 1000L);
    if (norm(probe.target) > radius) continue;
    ++sw.targets;
    sw.worst_1e3 = std::max(sw.worst_1e3, dist(probe.element, probe.target));
    const WitnessSample fine = witness_at(t, 10000L);
    sw.worst_1e4 = std::max(sw.worst_1e4, dist(fine.element, fine.target));
  }
  return sw;
}

CaseResult witness_case(const std::string& id, const WitnessSweep& sw, double bound_1e3,
                        double bound_1e4) {
  CaseResult r;
  r.id = id;
  r.pass = sw.targets > 0 && sw.worst_1e3 <= bound_1e3 && sw.worst_1e4 <= bound_1e4;
  r.detail = "targets=" + std::to_string(sw.targets) + " worst@1e3=" + fmt(sw.worst_1e3) +
             " worst@1e4=" + fmt(sw.worst_1e4);
  r.data = Json{{"targets", sw.targets},
                {"worst_1e3", sw.worst_1e3},
                {"worst_1e4", sw.worst_1e4},
                {"bound_1e3", bound_1e3},
                {"bound_1e4", bound_1e4}};
  return r;
}

// ---- named sequence cases ---------------------------------------------------

CaseResult sequence_case(const std::string& id, const SubgroupDescriptor& base,
                         const ConjugatorSchema& schema, const SubgroupDescriptor& candidate,
                         const Window& w, const std::vector<long>& indices, double tol,
                         bool expect_converged, double decade_drop = 0.0) {
  CaseResult r;
  r.id = id;
  const auto report = run_sequence(base, schema, candidate, w, indices, tol);
  r.data = to_json(report);
  r.inconclusive = report.verdict == Verdict::Inconclusive;
  bool ok = expect_converged ? report.verdict == Verdict::Converged
                             : report.verdict == Verdict::Diverged;
  if (ok && decade_drop > 0.0 && report.distances.size() >= 2) {
    ok = report.final_distance <= report.distances.front() / decade_drop;
  }
  r.pass = ok;
  r.detail = std::string(verdict_name(report.verdict)) + " final=" + fmt(report.final_distance);
  return r;
}

struct ClassifyExpectation {
  std::vector<LimitClass> allowed;
  double tol = 0.05;
  int expect_components = 0;       // 0 = no constraint
  double expect_slope = 0.0;       // for TranslationLine
  double slope_tol = -1.0;         // < 0 = no constraint
  bool expect_infinite_line = false;
  bool require_finite_nonzero_slope = false;
};

CaseResult classify_case(const std::string& id, const SubgroupDescriptor& base,
                         const ConjugatorSchema& schema, long n, const Window& w,
                         const ClassifyExpectation& x) {
  CaseResult r;
  r.id = id;
  const auto cloud = sample_detailed(conjugate_descriptor(schema.at(n), base), w);
  const auto report = classify_limit(cloud.points, w, x.tol);
  r.data = to_json(report, "");
  r.inconclusive = !report.definitive;

  std::ostringstream os;
  os << (report.definitive ? "" : "unresolved ") << family_name(report.family.family)
     << " residual=" << fmt(report.residual);
  bool ok = report.definitive && in_catalog(x.allowed, limit_class(report.family));
  if (ok && x.expect_components > 0) {
    ok = report.flags.component_count == x.expect_components;
  }
  if (ok && report.family.family == Family::LineV) {
    if (x.expect_infinite_line) {
      ok = report.family.line_infinite;
    } else if (x.require_finite_nonzero_slope) {
      ok = !report.family.line_infinite && std::abs(report.family.params[0]) > 0.05;
      if (ok) os << " slope=" << fmt(report.family.params[0]);
    } else if (x.slope_tol >= 0.0) {
      ok = !report.family.line_infinite &&
           std::abs(report.family.params[0] - x.expect_slope) <= x.slope_tol;
      if (!report.family.line_infinite) os << " slope=" << fmt(report.family.params[0]);
    }
  } else if (ok && (x.expect_infinite_line || x.require_finite_nonzero_slope || x.slope_tol >= 0.0)) {
    ok = false;  // expected a translation line
  }
  r.pass = ok;
  r.detail = os.str();
  return r;
}

// ---- randomized catalog closure ---------------------------------------------

GrowthSpec random_growth(std::mt19937_64& rng, bool allow_zero) {
  std::uniform_real_distribution<double> coeff(0.5, 2.0);
  std::uniform_real_distribution<double> sign01(0.0, 1.0);
  const double sgn = sign01(rng) < 0.5 ? -1.0 : 1.0;
  std::uniform_int_distribution<int> kind(0, allow_zero ? 3 : 2);
  switch (kind(rng)) {
    case 0: {
      std::uniform_real_distribution<double> c(-3.0, 3.0);
      return GrowthSpec::constant(c(rng));
    }
    case 1:
      return GrowthSpec::log(sgn * coeff(rng));
    case 2: {
      const double exps[] = {0.5, 0.8, 1.0, 2.0};
      std::uniform_int_distribution<int> pick(0, 3);
      return GrowthSpec::power(sgn * coeff(rng), exps[pick(rng)]);
    }
    default:
      return GrowthSpec::constant(0.0);
  }
}

GrowthSpec random_loga(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> c(-1.2, 1.2);
  std::uniform_real_distribution<double> lc(0.3, 1.2);
  switch (kind(rng)) {
    case 0: return GrowthSpec::constant(c(rng));
    case 1: return GrowthSpec::log(lc(rng));  // a_n = n^coeff
    default: return GrowthSpec::constant(0.0);
  }
}

GroupElementd random_bounded_element(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  GroupElementd e;
  e.matrix = iwasawa_compose<double>({u(rng), 0.4 * u(rng), u(rng)});
  e.translation << u(rng), u(rng);
  return e;
}

ConjugatorSchema random_schema(const std::string& theorem_id, std::mt19937_64& rng) {
  const auto zero = GrowthSpec::constant(0.0);
  if (theorem_id == "1.1") {
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    const double phi = ang(rng);
    auto schema = ConjugatorSchema::translation_along(Vector2d(std::cos(phi), std::sin(phi)),
                                                      random_growth(rng, false));
    std::uniform_real_distribution<double> p(0.0, 1.0);
    if (p(rng) < 0.3) schema = schema.with_outer(random_bounded_element(rng, 1.0));
    return schema;
  }
  if (theorem_id == "1.2") {
    return ConjugatorSchema::iwasawa(zero, random_loga(rng), random_growth(rng, true),
                                     random_growth(rng, true), random_growth(rng, true));
  }
  if (theorem_id == "1.3") {
    return ConjugatorSchema::iwasawa(zero, zero, random_growth(rng, true),
                                     random_growth(rng, true), random_growth(rng, true));
  }
  if (theorem_id == "1.4") {
    return ConjugatorSchema::iwasawa(zero, zero, zero, random_growth(rng, true),
                                     random_growth(rng, true));
  }
  // 1.5
  auto schema = ConjugatorSchema::iwasawa(zero, zero, zero, random_growth(rng, true),
                                          random_growth(rng, true));
  std::uniform_real_distribution<double> p(0.0, 1.0);
  if (p(rng) < 0.3) schema = schema.with_outer(random_bounded_element(rng, 1.0));
  return schema;
}

SubgroupDescriptor theorem_base(const std::string& theorem_id) {
  if (theorem_id == "1.1") return SubgroupDescriptor::make(Family::Levi);
  if (theorem_id == "1.2") return SubgroupDescriptor::make(Family::MaximalCompact);
  if (theorem_id == "1.3") return SubgroupDescriptor::make(Family::Diagonal);
  if (theorem_id == "1.4") return SubgroupDescriptor::make(Family::Borel);
  if (theorem_id == "1.5") return SubgroupDescriptor::make(Family::UnipotentUpper);
  throw std::invalid_argument("unknown theorem id: " + theorem_id);
}

CaseResult closure_case(const std::string& theorem_id, Profile profile, unsigned long seed,
                        const Window& w) {
  CaseResult r;
  r.id = theorem_id + "/catalog_closure";
  const int runs = profile == Profile::Quick ? 12 : 50;
  const long n = final_index(profile);
  const auto base = theorem_base(theorem_id);
  const auto catalog = theorem_catalog(theorem_id);

  std::mt19937_64 rng(seed);
  std::vector<ConjugatorSchema> schemas;
  schemas.reserve(runs);
  for (int i = 0; i < runs; ++i) schemas.push_back(random_schema(theorem_id, rng));

  std::vector<LimitReport> reports(runs);
  std::vector<std::string> descriptions(runs);
  parallel_for(static_cast<std::size_t>(runs), [&](std::size_t i) {
    const auto cloud = sample_detailed(conjugate_descriptor(schemas[i].at(n), base), w);
    reports[i] = classify_limit(cloud.points, w, 0.05);
    descriptions[i] = schemas[i].description();
  });

  int inconclusive = 0, outside = 0;
  Json runs_json = Json::array();
  for (int i = 0; i < runs; ++i) {
    const auto& rep = reports[i];
    Json entry;
    entry["schema"] = descriptions[i];
    entry["definitive"] = rep.definitive;
    entry["residual"] = rep.residual;
    if (rep.definitive) {
      const LimitClass c = limit_class(rep.family);
      entry["family"] = family_name(rep.family.family);
      entry["class"] = limit_class_name(c);
      if (!in_catalog(catalog, c)) {
        ++outside;
        entry["outside_catalog"] = true;
      }
    } else {
      ++inconclusive;
    }
    runs_json.push_back(entry);
  }
  const double inconclusive_rate = static_cast<double>(inconclusive) / runs;
  r.pass = outside == 0 && inconclusive_rate <= 0.20;
  r.inconclusive = false;
  r.detail = "runs=" + std::to_string(runs) + " outside_catalog=" + std::to_string(outside) +
             " inconclusive=" + std::to_string(inconclusive);
  r.data = Json{{"runs", runs_json},
                {"outside_catalog", outside},
                {"inconclusive", inconclusive},
                {"inconclusive_rate", inconclusive_rate}};
  return r;
}

// ---- per-theorem batteries ----------------------------------------------

void battery_1_1(BatteryResult& out, Profile profile, const Window& w,
                 const std::vector<long>& indices) {
  const auto levi = SubgroupDescriptor::make(Family::Levi);
  const auto npr2 = SubgroupDescriptor::make(Family::NPlusSemidirectR2);
  const long n_final = final_index(profile);

  out.cases.push_back(sequence_case(
      "1.1/horizontal_translation", levi,
      ConjugatorSchema::translation_along(Vector2d(1, 0), GrowthSpec::power(1, 1)), npr2, w,
      indices, 0.05, true, 10.0));

  {
    // targets on a grid inside the limit family
    double worst_1e3 = 0.0, worst_1e4 = 0.0;
    int targets = 0;
    for (double x : {-1.4, 0.0, 1.4}) {
      for (double s : {-1.3, 0.0, 1.3}) {
        for (double t : {-1.3, 0.0, 1.3}) {
          GroupElementd target;
          target.matrix = unipotent_upper(x);
          target.translation << s, t;
          if (norm(target) > w.radius) continue;
          ++targets;
          worst_1e3 = std::max(worst_1e3, dist(levi_approximator(target, 1000.0), target));
          worst_1e4 = std::max(worst_1e4, dist(levi_approximator(target, 10000.0), target));
        }
      }
    }
    WitnessSweep sw;
    sw.targets = targets;
    sw.worst_1e3 = worst_1e3;
    sw.worst_1e4 = worst_1e4;
    out.cases.push_back(witness_case("1.1/levi_witnesses", sw, 0.1, 0.02));
  }

  {
    ClassifyExpectation x;
    x.allowed = {LimitClass::NPlusSemidirectR2};
    const auto rotated = ConjugatorSchema::translation_along(
        Vector2d(std::cos(0.7), std::sin(0.7)), GrowthSpec::power(1, 1), "rotated translation");
    out.cases.push_back(classify_case("1.1/rotated_translation", levi, rotated, n_final, w, x));
  }
  {
    ClassifyExpectation x;
    x.allowed = {LimitClass::Levi};
    const auto bounded = ConjugatorSchema::translation_along(Vector2d(1.5, -0.8),
                                                             GrowthSpec::constant(1.0), "bounded");
    out.cases.push_back(classify_case("1.1/bounded", levi, bounded, n_final, w, x));
  }
}

void battery_1_2(BatteryResult& out, Profile profile, const Window& w,
                 const std::vector<long>& indices) {
  const auto compact = SubgroupDescriptor::make(Family::MaximalCompact);
  const long n_final = final_index(profile);

  {
    ClassifyExpectation x;
    x.allowed = {LimitClass::TranslationLine};
    x.expect_slope = 0.0;
    x.slope_tol = 0.02;
    out.cases.push_back(classify_case("1.2/vertical_to_v0", compact,
                                      compact_case_schema(CompactCase::VerticalToV0), n_final, w, x));
  }
  {
    ClassifyExpectation x;
    x.allowed = {LimitClass::TranslationLine};
    x.expect_infinite_line = true;
    out.cases.push_back(classify_case("1.2/horizontal_to_vinf", compact,
                                      compact_case_schema(CompactCase::HorizontalToVInf), n_final,
                                      w, x));
  }
  {
    ClassifyExpectation x;
    x.allowed = {LimitClass::TildeNPlus};
    x.expect_components = 2;
    out.cases.push_back(classify_case("1.2/shear_to_tilde", compact,
                                      compact_case_schema(CompactCase::TildeSheetPlus), n_final, w,
                                      x));
  }
  {
    // ratio schema (n, 2n): a line with finite nonzero slope; the sign is
    // recorded rather than asserted
    ClassifyExpectation x;
    x.allowed = {LimitClass::TranslationLine};
    x.require_finite_nonzero_slope = true;
    const auto schema = ConjugatorSchema::translation_along(Vector2d(1, 2), GrowthSpec::power(1, 1),
                                                            "ratio translation (n, 2n)");
    out.cases.push_back(classify_case("1.2/ratio_line", compact, schema, n_final, w, x));
  }

  out.cases.push_back(sequence_case("1.2/vertical_line_candidate", compact,
                                    compact_case_schema(CompactCase::VerticalToV0),
                                    SubgroupDescriptor::line_v(0.0), w, indices, 0.05, true));
  {
    // the wrong candidate must be rejected with a distance bounded below
    auto r = sequence_case("1.2/vertical_wrong_candidate", compact,
                           compact_case_schema(CompactCase::VerticalToV0),
                           SubgroupDescriptor::line_v_infinity(), w, indices, 0.05, false);
    if (r.pass) {
      const double final_d = r.data["final_distance"].get<double>();
      r.pass = final_d >= 1.8;
      r.detail += " (expected a gap of about the window radius)";
    }
    out.cases.push_back(r);
  }

  out.cases.push_back(witness_case(
      "1.2/witness_vertical",
      sweep_witness([&](double t, long n) { return compact_witness(CompactCase::VerticalToV0, t, n); },
                    {-2.5, -1.5, -0.5, 0.5, 1.5, 2.5}, w.radius),
      0.1, 0.02));
  out.cases.push_back(witness_case(
      "1.2/witness_horizontal",
      sweep_witness(
          [&](double t, long n) { return compact_witness(CompactCase::HorizontalToVInf, t, n); },
          {-2.5, -1.5, -0.5, 0.5, 1.5, 2.5}, w.radius),
      0.1, 0.02));
  out.cases.push_back(witness_case(
      "1.2/witness_ratio",
      sweep_witness([&](double t, long n) { return compact_witness(CompactCase::RatioLine, t, n, 2.0); },
                    {-1.2, -0.6, 0.6, 1.2}, w.radius),
      0.1, 0.02));
  out.cases.push_back(witness_case(
      "1.2/witness_tilde_plus",
      sweep_witness([&](double t, long n) { return compact_witness(CompactCase::TildeSheetPlus, t, n); },
                    {-2.5, -1.0, 1.0, 2.5}, w.radius),
      0.1, 0.02));
  out.cases.push_back(witness_case(
      "1.2/witness_tilde_minus",
      sweep_witness(
          [&](double t, long n) { return compact_witness(CompactCase::TildeSheetMinus, t, n); },
          {-0.9, -0.4, 0.4, 0.9}, w.radius),
      0.1, 0.02));
  (void)profile;
}

void battery_1_3(BatteryResult& out, Profile profile, const Window& w,
                 const std::vector<long>& indices) {
  const auto diagonal = SubgroupDescriptor::make(Family::Diagonal);
  const long n_final = final_index(profile);
  std::vector<LimitReport> definitive_reports;

  auto classify_named = [&](const std::string& id, DiagonalCase c, const ClassifyExpectation& x,
                            double ratio = 2.0) {
    auto r = classify_case(id, diagonal, diagonal_case_schema(c, ratio), n_final, w, x);
    if (r.pass) {
      LimitReport rep;
      rep.definitive = true;
      rep.family = descriptor_from_json(r.data["family"]);
      definitive_reports.push_back(rep);
    }
    out.cases.push_back(r);
  };

  {
    ClassifyExpectation x;
    x.allowed = {LimitClass::TranslationLine};
    x.expect_slope = 0.0;
    x.slope_tol = 0.02;
    classify_named("1.3/horizontal_to_v0", DiagonalCase::HorizontalToV0, x);
  }
  {
    ClassifyExpectation x;
    x.allowed = {LimitClass::TranslationLine};
    x.expect_infinite_line = true;
    classify_named("1.3/vertical_to_vinf", DiagonalCase::VerticalToVInf, x);
  }
  {
    // ratio 2 gives the line of slope -2
    ClassifyExpectation x;
    x.allowed = {LimitClass::TranslationLine};
    x.expect_slope = -2.0;
    x.slope_tol = 0.05;
    classify_named("1.3/ratio_line", DiagonalCase::RatioLine, x);
  }
  {
    ClassifyExpectation x;
    x.allowed = {LimitClass::HeisenbergLine, LimitClass::UnipotentLine, LimitClass::TranslationLine};
    classify_named("1.3/shear_balanced", DiagonalCase::ShearBalanced, x);
  }
  {
    ClassifyExpectation x;
    x.allowed = {LimitClass::HeisenbergLine, LimitClass::UnipotentLine, LimitClass::TranslationLine};
    classify_named("1.3/shear_dominated", DiagonalCase::ShearDominated, x);
  }
  {
    CaseResult r;
    r.id = "1.3/dimension_semicontinuity";
    r.pass = !definitive_reports.empty() && dimension_check(definitive_reports, 1);
    r.detail = "definitive_reports=" + std::to_string(definitive_reports.size());
    out.cases.push_back(r);
  }

  out.cases.push_back(sequence_case("1.3/ratio_sequence", diagonal,
                                    diagonal_case_schema(DiagonalCase::RatioLine, 2.0),
                                    SubgroupDescriptor::line_v(-2.0), w, indices, 0.05, true));

  out.cases.push_back(witness_case(
      "1.3/witness_horizontal",
      sweep_witness(
          [&](double t, long n) { return diagonal_witness(DiagonalCase::HorizontalToV0, t, n); },
          {-2.5, -1.5, -0.5, 0.5, 1.5, 2.5}, w.radius),
      0.1, 0.02));
  out.cases.push_back(witness_case(
      "1.3/witness_vertical",
      sweep_witness(
          [&](double t, long n) { return diagonal_witness(DiagonalCase::VerticalToVInf, t, n); },
          {-2.5, -1.5, -0.5, 0.5, 1.5, 2.5}, w.radius),
      0.1, 0.02));
  out.cases.push_back(witness_case(
      "1.3/witness_ratio",
      sweep_witness([&](double t, long n) { return diagonal_witness(DiagonalCase::RatioLine, t, n); },
                    {-1.2, -0.6, 0.6, 1.2}, w.radius),
      0.1, 0.02));
  // the shear witnesses converge at the square-root rate of their schemas
  out.cases.push_back(witness_case(
      "1.3/witness_shear_balanced",
      sweep_witness(
          [&](double t, long n) { return diagonal_witness(DiagonalCase::ShearBalanced, t, n); },
          {-2.0, -1.0, 1.0, 2.0}, w.radius),
      0.45, 0.15));
  out.cases.push_back(witness_case(
      "1.3/witness_shear_dominated",
      sweep_witness(
          [&](double t, long n) { return diagonal_witness(DiagonalCase::ShearDominated, t, n); },
          {-2.0, -1.0, 1.0, 2.0}, w.radius),
      0.45, 0.15));
}

void battery_1_4(BatteryResult& out, Profile profile, const Window& w,
                 const std::vector<long>& indices) {
  const auto borel = SubgroupDescriptor::make(Family::Borel);
  const long n_final = final_index(profile);

  {
    ClassifyExpectation x;
    x.allowed = {LimitClass::R2Full};
    out.cases.push_back(classify_case("1.4/vertical_to_r2", borel,
                                      borel_case_schema(BorelCase::VerticalToR2), n_final, w, x));
  }
  {
    ClassifyExpectation x;
    x.allowed = {LimitClass::NPlusTimesXAxis};
    out.cases.push_back(classify_case("1.4/horizontal_to_axis", borel,
                                      borel_case_schema(BorelCase::HorizontalToAxis), n_final, w,
                                      x));
  }
  // (n, s sqrt(n)) variants stay inside the catalog triple
  for (double s : {0.05, -0.1, 0.1}) {
    ClassifyExpectation x;
    x.allowed = {LimitClass::Borel, LimitClass::NPlusTimesXAxis, LimitClass::R2Full};
    const auto schema = ConjugatorSchema::iwasawa(
        GrowthSpec::constant(0), GrowthSpec::constant(0), GrowthSpec::constant(0),
        GrowthSpec::power(1, 1), GrowthSpec::power(s, 0.5),
        "translation (n, " + std::to_string(s) + " sqrt(n))");
    std::ostringstream id;
    id << "1.4/sqrt_variant_s=" << s;
    out.cases.push_back(classify_case(id.str(), borel, schema, n_final, w, x));
  }
  {
    // steeper shear: the window sees the exactly matching conjugate of the
    // base, which still lies inside the catalog triple
    ClassifyExpectation x;
    x.allowed = {LimitClass::Borel, LimitClass::NPlusTimesXAxis, LimitClass::R2Full};
    const auto schema = ConjugatorSchema::iwasawa(
        GrowthSpec::constant(0), GrowthSpec::constant(0), GrowthSpec::constant(0),
        GrowthSpec::power(1, 1), GrowthSpec::power(1.0, 0.5), "translation (n, sqrt(n))");
    out.cases.push_back(classify_case("1.4/sqrt_variant_s=1_diagnostic", borel, schema, n_final, w, x));
  }

  out.cases.push_back(sequence_case("1.4/vertical_sequence", borel,
                                    borel_case_schema(BorelCase::VerticalToR2),
                                    SubgroupDescriptor::make(Family::R2Full), w, indices, 0.05,
                                    true));

  out.cases.push_back(witness_case(
      "1.4/witness_vertical",
      sweep_witness([&](double t, long n) { return borel_witness(BorelCase::VerticalToR2, t, 0.7 * t, n); },
                    {-2.0, -1.0, 1.0, 2.0}, w.radius),
      0.1, 0.02));
  out.cases.push_back(witness_case(
      "1.4/witness_horizontal",
      sweep_witness(
          [&](double t, long n) { return borel_witness(BorelCase::HorizontalToAxis, t, 0.8 * t, n); },
          {-1.5, -0.8, 0.8, 1.5}, w.radius),
      0.1, 0.02));
  (void)profile;
}

void battery_1_5(BatteryResult& out, Profile profile, const Window& w,
                 const std::vector<long>& indices) {
  const auto nplus = SubgroupDescriptor::make(Family::UnipotentUpper);
  const long n_final = final_index(profile);

  {
    ClassifyExpectation x;
    x.allowed = {LimitClass::TranslationLine};
    x.expect_slope = 0.0;
    x.slope_tol = 0.02;
    out.cases.push_back(
        classify_case("1.5/vertical_to_v0", nplus, unipotent_case_schema(), n_final, w, x));
  }
  out.cases.push_back(sequence_case("1.5/vertical_sequence", nplus, unipotent_case_schema(),
                                    SubgroupDescriptor::line_v(0.0), w, indices, 0.05, true));
  out.cases.push_back(witness_case(
      "1.5/witness",
      sweep_witness([&](double t, long n) { return unipotent_witness(t, n); }, {-2.0, -1.0, 1.0, 2.0},
                    w.radius),
      0.1, 0.02));
  (void)profile;
}

}  // namespace

bool BatteryResult::pass() const {
  for (const auto& c : cases) {
    if (!c.pass) return false;
  }
  return true;
}

int BatteryResult::inconclusive_count() const {
  int n = 0;
  for (const auto& c : cases) n += c.inconclusive ? 1 : 0;
  return n;
}

Json BatteryResult::to_json() const {
  Json cases_json = Json::array();
  for (const auto& c : cases) {
    cases_json.push_back(Json{{"id", c.id},
                              {"pass", c.pass},
                              {"inconclusive", c.inconclusive},
                              {"detail", c.detail},
                              {"data", c.data}});
  }
  return Json{{"theorem", theorem}, {"pass", pass()}, {"cases", cases_json}};
}

std::vector<LimitClass> theorem_catalog(const std::string& theorem_id) {
  if (theorem_id == "1.1") return {LimitClass::Levi, LimitClass::NPlusSemidirectR2};
  if (theorem_id == "1.2") {
    // a conjugated second sheet may sit outside the window, leaving only the
    // unipotent component visible
    return {LimitClass::Compact, LimitClass::TranslationLine, LimitClass::TildeNPlus,
            LimitClass::UnipotentLine};
  }
  if (theorem_id == "1.3") {
    return {LimitClass::Diagonal, LimitClass::HeisenbergLine, LimitClass::UnipotentLine,
            LimitClass::TranslationLine};
  }
  if (theorem_id == "1.4") {
    return {LimitClass::Borel, LimitClass::NPlusTimesXAxis, LimitClass::R2Full};
  }
  if (theorem_id == "1.5") return {LimitClass::UnipotentLine, LimitClass::TranslationLine};
  throw std::invalid_argument("unknown theorem id: " + theorem_id);
}

std::vector<long> profile_indices(Profile p) {
  return p == Profile::Quick ? std::vector<long>{10, 100, 1000}
                             : std::vector<long>{10, 31, 100, 316, 1000};
}

LimitReport classify_at_index(const SubgroupDescriptor& base, const ConjugatorSchema& schema,
                              long n, const Window& w, double tol) {
  const auto cloud = sample_detailed(conjugate_descriptor(schema.at(n), base), w);
  return classify_limit(cloud.points, w, tol);
}

BatteryResult run_theorem_battery(const std::string& theorem_id, Profile profile,
                                  unsigned long seed, const Window& w) {
  BatteryResult out;
  out.theorem = theorem_id;
  const auto indices = profile_indices(profile);
  if (theorem_id == "1.1") {
    battery_1_1(out, profile, w, indices);
  } else if (theorem_id == "1.2") {
    battery_1_2(out, profile, w, indices);
  } else if (theorem_id == "1.3") {
    battery_1_3(out, profile, w, indices);
  } else if (theorem_id == "1.4") {
    battery_1_4(out, profile, w, indices);
  } else if (theorem_id == "1.5") {
    battery_1_5(out, profile, w, indices);
  } else {
    throw std::invalid_argument("unknown theorem id: " + theorem_id);
  }
  out.cases.push_back(closure_case(theorem_id, profile, seed, w));
  return out;
}

}  // namespace chabauty
