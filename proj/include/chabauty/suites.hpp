#pragma once

#include <string>
#include <vector>

#include "chabauty/classify.hpp"
#include "chabauty/schema.hpp"
#include "chabauty/sequence.hpp"
#include "chabauty/serialize.hpp"
#include "chabauty/window.hpp"

namespace chabauty {

enum class Profile { Quick, Full };

struct CaseResult {
  std::string id;
  bool pass = false;
  bool inconclusive = false;
  std::string detail;
  Json data = Json::object();
};

struct BatteryResult {
  std::string theorem;
  std::vector<CaseResult> cases;

  bool pass() const;
  int inconclusive_count() const;
  Json to_json() const;
};

// Families whose conjugacy classes may appear as limits of each orbit.
std::vector<LimitClass> theorem_catalog(const std::string& theorem_id);

// Named experiments, witness soundness checks and (Full profile) the
// randomized catalog-closure battery for one theorem.
BatteryResult run_theorem_battery(const std::string& theorem_id, Profile profile,
                                  unsigned long seed, const Window& w);

// Classification of the conjugated base at the final index (helper shared
// with the CLI's auto-candidate mode).
LimitReport classify_at_index(const SubgroupDescriptor& base, const ConjugatorSchema& schema,
                              long n, const Window& w, double tol);

std::vector<long> profile_indices(Profile p);

}  // namespace chabauty
