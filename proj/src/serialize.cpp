#include "chabauty/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chabauty {

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw std::invalid_argument("config field '" + field + "': " + what);
}

double number_at(const Json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number()) config_error(field, "expected a number");
  return j[field].get<double>();
}

}  // namespace

void ExperimentConfig::validate() const {
  window.validate();
  if (indices.empty()) config_error("indices", "must be nonempty");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] <= 0) config_error("indices", "entries must be positive");
    if (i > 0 && indices[i] <= indices[i - 1]) {
      config_error("indices", "must be strictly increasing");
    }
  }
  if (!(tol > 0)) config_error("tol", "must be positive");
}

Json to_json(const GroupElementd& e) {
  return Json{{"matrix", {{e.matrix(0, 0), e.matrix(0, 1)}, {e.matrix(1, 0), e.matrix(1, 1)}}},
              {"translation", {e.translation.x(), e.translation.y()}}};
}

GroupElementd element_from_json(const Json& j) {
  GroupElementd e;
  const auto& m = j.at("matrix");
  if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) {
    config_error("matrix", "expected a 2x2 array");
  }
  e.matrix << m[0][0].get<double>(), m[0][1].get<double>(), m[1][0].get<double>(),
      m[1][1].get<double>();
  const auto& t = j.at("translation");
  if (!t.is_array() || t.size() != 2) config_error("translation", "expected two entries");
  e.translation << t[0].get<double>(), t[1].get<double>();
  return e;
}

Json to_json(const SubgroupDescriptor& d) {
  Json params = Json::array();
  if (d.family == Family::LineV) {
    if (d.line_infinite) {
      params.push_back(nullptr);  // the vertical line
    } else {
      params.push_back(d.params[0]);
    }
  } else {
    for (double p : d.params) params.push_back(p);
  }
  return Json{{"family", family_name(d.family)}, {"params", params},
              {"conjugator", to_json(d.conjugator)}};
}

SubgroupDescriptor descriptor_from_json(const Json& j) {
  if (!j.contains("family") || !j["family"].is_string()) config_error("family", "expected a string");
  const Family f = family_from_name(j["family"].get<std::string>());
  std::vector<double> params;
  bool infinite = false;
  if (j.contains("params")) {
    if (!j["params"].is_array()) config_error("params", "expected an array");
    for (const auto& p : j["params"]) {
      if (p.is_null()) {
        infinite = true;
      } else if (p.is_string() && (p.get<std::string>() == "inf" || p.get<std::string>() == "Inf")) {
        infinite = true;
      } else if (p.is_number()) {
        params.push_back(p.get<double>());
      } else {
        config_error("params", "entries must be numbers, null or \"inf\"");
      }
    }
  }
  SubgroupDescriptor d;
  if (f == Family::LineV && infinite) {
    d = SubgroupDescriptor::line_v_infinity();
  } else {
    try {
      d = SubgroupDescriptor::make(f, params);
    } catch (const std::invalid_argument& e) {
      config_error("params", e.what());
    }
  }
  if (j.contains("conjugator")) d.conjugator = element_from_json(j["conjugator"]);
  return d;
}

Json to_json(const Window& w) { return Json{{"radius", w.radius}, {"mesh", w.mesh}}; }

Window window_from_json(const Json& j) {
  Window w;
  w.radius = number_at(j, "radius");
  w.mesh = number_at(j, "mesh");
  try {
    w.validate();
  } catch (const std::invalid_argument& e) {
    config_error("window", e.what());
  }
  return w;
}

Json to_json(const GrowthSpec& g) {
  switch (g.kind) {
    case GrowthSpec::Kind::Constant: return Json{{"type", "const"}, {"value", g.coeff}};
    case GrowthSpec::Kind::Power:
      return Json{{"type", "power"}, {"coeff", g.coeff}, {"exponent", g.exponent}};
    case GrowthSpec::Kind::Log: return Json{{"type", "log"}, {"coeff", g.coeff}};
    case GrowthSpec::Kind::PowerSum:
      return Json{{"type", "power2"},
                  {"coeff", g.coeff},
                  {"exponent", g.exponent},
                  {"coeff2", g.coeff2},
                  {"exponent2", g.exponent2}};
  }
  return {};
}

GrowthSpec growth_from_json(const Json& j) {
  if (!j.contains("type") || !j["type"].is_string()) config_error("growth.type", "expected a string");
  const std::string type = j["type"].get<std::string>();
  if (type == "const") return GrowthSpec::constant(number_at(j, "value"));
  if (type == "power") return GrowthSpec::power(number_at(j, "coeff"), number_at(j, "exponent"));
  if (type == "log") return GrowthSpec::log(number_at(j, "coeff"));
  if (type == "power2") {
    return GrowthSpec::power_sum(number_at(j, "coeff"), number_at(j, "exponent"),
                                 number_at(j, "coeff2"), number_at(j, "exponent2"));
  }
  config_error("growth.type", "unknown type '" + type + "'");
}

Json to_json(const ConjugatorSchema& s) {
  Json j;
  switch (s.kind()) {
    case ConjugatorSchema::Kind::TranslationAlong:
      j["kind"] = "translation";
      j["direction"] = {s.direction().x(), s.direction().y()};
      j["growth"] = to_json(s.growth(0));
      break;
    case ConjugatorSchema::Kind::Iwasawa:
      j["kind"] = "iwasawa";
      j["stheta"] = to_json(s.growth(0));
      j["loga"] = to_json(s.growth(1));
      j["s"] = to_json(s.growth(2));
      j["v"] = {to_json(s.growth(3)), to_json(s.growth(4))};
      break;
    case ConjugatorSchema::Kind::Explicit: {
      j["kind"] = "explicit";
      Json list = Json::array();
      for (const auto& [n, e] : s.elements()) {
        list.push_back(Json{{"n", n}, {"element", to_json(e)}});
      }
      j["elements"] = list;
      break;
    }
  }
  if (s.has_outer()) j["outer"] = to_json(s.outer());
  j["description"] = s.description();
  return j;
}

ConjugatorSchema schema_from_json(const Json& j) {
  if (!j.contains("kind") || !j["kind"].is_string()) config_error("schema.kind", "expected a string");
  const std::string kind = j["kind"].get<std::string>();
  std::string desc = j.value("description", std::string());
  ConjugatorSchema out =
      ConjugatorSchema::translation_along(Vector2d(1, 0), GrowthSpec::power(1, 1));
  if (kind == "translation") {
    const auto& dir = j.at("direction");
    if (!dir.is_array() || dir.size() != 2) config_error("schema.direction", "expected two entries");
    out = ConjugatorSchema::translation_along(
        Vector2d(dir[0].get<double>(), dir[1].get<double>()), growth_from_json(j.at("growth")), desc);
  } else if (kind == "iwasawa") {
    const auto& v = j.at("v");
    if (!v.is_array() || v.size() != 2) config_error("schema.v", "expected two growth entries");
    out = ConjugatorSchema::iwasawa(growth_from_json(j.at("stheta")), growth_from_json(j.at("loga")),
                                    growth_from_json(j.at("s")), growth_from_json(v[0]),
                                    growth_from_json(v[1]), desc);
  } else if (kind == "explicit") {
    std::map<long, GroupElementd> elements;
    for (const auto& item : j.at("elements")) {
      elements[item.at("n").get<long>()] = element_from_json(item.at("element"));
    }
    out = ConjugatorSchema::explicit_list(std::move(elements), desc);
  } else {
    config_error("schema.kind", "unknown kind '" + kind + "'");
  }
  if (j.contains("outer")) out = out.with_outer(element_from_json(j["outer"]));
  return out;
}

Json to_json(const ExperimentConfig& c) {
  return Json{{"version", "v1"},      {"base", to_json(c.base)}, {"schema", to_json(c.schema)},
              {"window", to_json(c.window)}, {"indices", c.indices},    {"tol", c.tol},
              {"seed", c.seed}};
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  if (j.contains("version") && j["version"].is_string() && j["version"].get<std::string>() != "v1") {
    config_error("version", "unsupported config version");
  }
  if (!j.contains("base")) config_error("base", "missing");
  c.base = descriptor_from_json(j["base"]);
  if (!j.contains("schema")) config_error("schema", "missing");
  c.schema = schema_from_json(j["schema"]);
  if (j.contains("window")) c.window = window_from_json(j["window"]);
  if (j.contains("indices")) {
    if (!j["indices"].is_array()) config_error("indices", "expected an array");
    c.indices.clear();
    for (const auto& n : j["indices"]) c.indices.push_back(n.get<long>());
  }
  if (j.contains("tol")) c.tol = number_at(j, "tol");
  if (j.contains("seed")) c.seed = j["seed"].get<unsigned long>();
  c.validate();
  return c;
}

Json to_json(const ConvergenceReport& r) {
  return Json{{"indices", r.indices},
              {"distances", r.distances},
              {"forward", r.forward},
              {"backward", r.backward},
              {"verdict", verdict_name(r.verdict)},
              {"final_distance", r.final_distance},
              {"residual_flag", r.residual_flag},
              {"tol", r.tol},
              {"window", to_json(r.window)},
              {"schema", r.schema_description}};
}

Json to_json(const StructuralFlags& f) {
  return Json{{"contains_full_R2", f.contains_full_r2},
              {"all_matrix_parts_unipotent", f.all_matrix_parts_unipotent},
              {"component_count", f.component_count},
              {"abelian", f.abelian}};
}

Json to_json(const LimitReport& r, const std::string& trace_ref) {
  Json ties = Json::array();
  for (const auto& t : r.ties) ties.push_back(to_json(t));
  return Json{{"family", to_json(r.family)},
              {"definitive", r.definitive},
              {"residual", r.residual},
              {"conjugator_norm", r.conjugator_norm},
              {"flags", to_json(r.flags)},
              {"ties", ties},
              {"trace_ref", trace_ref}};
}

std::string format_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string trace_csv(const ConvergenceReport& r) {
  std::ostringstream os;
  os << "n,forward,backward,value\n";
  for (std::size_t i = 0; i < r.indices.size(); ++i) {
    os << r.indices[i] << ',' << format_sig9(r.forward[i]) << ',' << format_sig9(r.backward[i])
       << ',' << format_sig9(r.distances[i]) << '\n';
  }
  return os.str();
}

std::string witness_csv(const std::vector<long>& indices, const std::vector<double>& dists) {
  std::ostringstream os;
  os << "n,dist_to_target\n";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    os << indices[i] << ',' << format_sig9(dists[i]) << '\n';
  }
  return os.str();
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config parse error in " + path + ": " + e.what());
  }
  return config_from_json(j);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace chabauty
