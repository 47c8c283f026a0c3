#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "chabauty/classify.hpp"
#include "chabauty/descriptor.hpp"
#include "chabauty/schema.hpp"
#include "chabauty/sequence.hpp"
#include "chabauty/window.hpp"

namespace chabauty {

using Json = nlohmann::ordered_json;

// Experiment configuration (schema version "v1").
struct ExperimentConfig {
  SubgroupDescriptor base;
  ConjugatorSchema schema = ConjugatorSchema::translation_along(Vector2d(1, 0), GrowthSpec::power(1, 1));
  Window window;
  std::vector<long> indices = {10, 31, 100, 316, 1000};
  double tol = 0.05;
  unsigned long seed = 0;

  void validate() const;
};

Json to_json(const GroupElementd& e);
GroupElementd element_from_json(const Json& j);

Json to_json(const SubgroupDescriptor& d);
SubgroupDescriptor descriptor_from_json(const Json& j);

Json to_json(const Window& w);
Window window_from_json(const Json& j);

Json to_json(const GrowthSpec& g);
GrowthSpec growth_from_json(const Json& j);

Json to_json(const ConjugatorSchema& s);
ConjugatorSchema schema_from_json(const Json& j);

Json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const Json& j);

Json to_json(const ConvergenceReport& r);
Json to_json(const StructuralFlags& f);
Json to_json(const LimitReport& r, const std::string& trace_ref);

// CSV with header "n,forward,backward,value", 9 significant digits.
std::string trace_csv(const ConvergenceReport& r);
// CSV with header "n,dist_to_target".
std::string witness_csv(const std::vector<long>& indices, const std::vector<double>& dists);

std::string format_sig9(double v);

// Reads and validates a config file; error messages carry the failing field.
ExperimentConfig load_config(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace chabauty
