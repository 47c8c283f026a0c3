// Command-line front end: verify the theorem batteries, run ad-hoc limit
// experiments, compute windowed distances, sample families and emit plot data.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chabauty/metric.hpp"
#include "chabauty/parallel.hpp"
#include "chabauty/sampling.hpp"
#include "chabauty/serialize.hpp"
#include "chabauty/suites.hpp"
#include "chabauty/witness.hpp"

namespace {

using namespace chabauty;
namespace fs = std::filesystem;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

struct CommonOpts {
  double radius = 3.0;
  double mesh = 0.05;
  double tol = 0.05;
  std::string indices = "10,31,100,316,1000";
  unsigned long seed = 2024;
  std::string out_dir = ".";
  int jobs = 0;
  CLI::Option* radius_opt = nullptr;
  CLI::Option* mesh_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* indices_opt = nullptr;
};

void add_window_flags(CLI::App* cmd, CommonOpts& o) {
  o.radius_opt = cmd->add_option("--radius", o.radius, "window radius around the identity");
  o.mesh_opt = cmd->add_option("--mesh", o.mesh, "sampling cover fineness");
  o.tol_opt = cmd->add_option("--tol", o.tol, "convergence tolerance");
  o.indices_opt = cmd->add_option("--indices", o.indices, "comma-separated sequence indices");
  cmd->add_option("--seed", o.seed, "random seed for randomized batteries");
  cmd->add_option("--out-dir", o.out_dir, "directory for report files");
  cmd->add_option("--jobs", o.jobs, "worker threads (default: all cores)");
}

std::vector<long> parse_indices(const std::string& csv) {
  std::vector<long> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stol(item));
  }
  return out;
}

// Descriptor arguments accept inline JSON, @file, or Family[:p1,p2,...].
SubgroupDescriptor parse_descriptor_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') {
    return descriptor_from_json(Json::parse(arg));
  }
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::invalid_argument("cannot open descriptor file " + arg.substr(1));
    return descriptor_from_json(Json::parse(in));
  }
  const auto colon = arg.find(':');
  const std::string name = arg.substr(0, colon);
  std::vector<double> params;
  bool infinite = false;
  if (colon != std::string::npos) {
    std::stringstream ss(arg.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "inf" || item == "Inf") {
        infinite = true;
      } else {
        params.push_back(std::stod(item));
      }
    }
  }
  const Family f = family_from_name(name);
  if (f == Family::LineV && infinite) return SubgroupDescriptor::line_v_infinity();
  return SubgroupDescriptor::make(f, params);
}

void write_meta(const fs::path& dir, const std::string& stem) {
  Json meta;
  meta["generated_by"] = "chab";
  meta["timestamp"] = static_cast<long>(std::time(nullptr));
  write_text_file((dir / (stem + ".meta.json")).string(), meta.dump(2) + "\n");
}

int cmd_verify(const std::string& theorem_id, const std::string& profile_name,
               const CommonOpts& opts) {
  Profile profile = Profile::Quick;
  if (profile_name == "full") {
    profile = Profile::Full;
  } else if (profile_name != "quick") {
    std::cerr << "unknown profile: " << profile_name << "\n";
    return kExitUsage;
  }
  std::vector<std::string> ids;
  if (theorem_id == "all") {
    ids = {"1.1", "1.2", "1.3", "1.4", "1.5"};
  } else {
    ids = {theorem_id};
  }
  const Window w{opts.radius, opts.mesh};
  w.validate();

  fs::create_directories(opts.out_dir);
  bool any_fail = false, any_inconclusive = false;
  for (const auto& id : ids) {
    BatteryResult battery;
    try {
      battery = run_theorem_battery(id, profile, opts.seed, w);
    } catch (const std::invalid_argument& e) {
      std::cerr << e.what() << "\n";
      return kExitUsage;
    }
    for (const auto& c : battery.cases) {
      std::cout << (c.pass ? "PASS " : (c.inconclusive ? "INCONCLUSIVE " : "FAIL ")) << c.id
                << "  " << c.detail << "\n";
      if (!c.pass) {
        std::cerr << "failing case: " << c.id << "\n";
        if (c.inconclusive) {
          any_inconclusive = true;
        } else {
          any_fail = true;
        }
      }
    }
    const std::string stem = "verify-" + id + "-" + (profile == Profile::Full ? "full" : "quick");
    write_text_file((fs::path(opts.out_dir) / (stem + ".json")).string(),
                    battery.to_json().dump(2) + "\n");
    write_meta(opts.out_dir, stem);

    // plot-ready traces for the sequence cases
    for (const auto& c : battery.cases) {
      if (!c.data.contains("indices") || !c.data.contains("forward")) continue;
      ConvergenceReport r;
      r.indices = c.data["indices"].get<std::vector<long>>();
      r.forward = c.data["forward"].get<std::vector<double>>();
      r.backward = c.data["backward"].get<std::vector<double>>();
      r.distances = c.data["distances"].get<std::vector<double>>();
      std::string name = c.id;
      std::replace(name.begin(), name.end(), '/', '_');
      write_text_file((fs::path(opts.out_dir) / (name + ".csv")).string(), trace_csv(r));
    }
    std::cout << "battery " << id << ": " << (battery.pass() ? "PASS" : "FAIL") << "\n";
  }
  if (any_fail) return kExitFail;
  if (any_inconclusive) return kExitInconclusive;
  return kExitPass;
}

int cmd_limit(const std::string& config_path, const CommonOpts& opts) {
  ExperimentConfig config;
  try {
    config = load_config(config_path);
    // explicit flags override the config
    if (opts.radius_opt && opts.radius_opt->count() > 0) config.window.radius = opts.radius;
    if (opts.mesh_opt && opts.mesh_opt->count() > 0) config.window.mesh = opts.mesh;
    if (opts.tol_opt && opts.tol_opt->count() > 0) config.tol = opts.tol;
    if (opts.indices_opt && opts.indices_opt->count() > 0) {
      config.indices = parse_indices(opts.indices);
    }
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  const Window& w = config.window;

  // classifier-driven candidate at the final index
  const LimitReport fitted =
      classify_at_index(config.base, config.schema, config.indices.back(), w, config.tol);

  ConvergenceReport trace;
  if (fitted.definitive) {
    trace = run_sequence(config.base, config.schema, fitted.family, w, config.indices, config.tol);
  }

  fs::create_directories(opts.out_dir);
  const std::string stem = fs::path(config_path).stem().string() + "-limit";
  Json report = to_json(fitted, stem + ".csv");
  report["config"] = to_json(config);
  report["trace"] = fitted.definitive ? to_json(trace) : Json(nullptr);
  write_text_file((fs::path(opts.out_dir) / (stem + ".json")).string(), report.dump(2) + "\n");
  if (fitted.definitive) {
    write_text_file((fs::path(opts.out_dir) / (stem + ".csv")).string(), trace_csv(trace));
  }
  write_meta(opts.out_dir, stem);

  std::cout << "family: " << family_name(fitted.family.family) << "\n"
            << "definitive: " << (fitted.definitive ? "yes" : "no") << "\n"
            << "residual: " << format_sig9(fitted.residual) << "\n";
  if (!fitted.definitive) {
    std::cerr << "unresolved classification (residual " << format_sig9(fitted.residual) << ")\n";
    return kExitInconclusive;
  }
  return kExitPass;
}

int cmd_distance(const std::string& d1_arg, const std::string& d2_arg, const CommonOpts& opts) {
  SubgroupDescriptor d1, d2;
  try {
    d1 = parse_descriptor_arg(d1_arg);
    d2 = parse_descriptor_arg(d2_arg);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  const Window w{opts.radius, opts.mesh};
  w.validate();
  const auto est = chabauty_distance(d1, d2, w);
  std::cout << "value: " << format_sig9(est.value) << "\n"
            << "forward: " << format_sig9(est.forward) << "\n"
            << "backward: " << format_sig9(est.backward) << "\n"
            << "samples: " << est.samples_forward << " / " << est.samples_backward << "\n"
            << "certified: " << (est.certified ? "yes" : "no") << "\n";
  return kExitPass;
}

int cmd_sample(const std::string& d_arg, const std::string& out_file, const CommonOpts& opts) {
  SubgroupDescriptor d;
  try {
    d = parse_descriptor_arg(d_arg);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  const Window w{opts.radius, opts.mesh};
  w.validate();
  const auto result = sample_detailed(d, w);
  std::ostringstream os;
  os << "m11,m12,m21,m22,t1,t2\n";
  for (const auto& p : result.points) {
    os << format_sig9(p.matrix(0, 0)) << ',' << format_sig9(p.matrix(0, 1)) << ','
       << format_sig9(p.matrix(1, 0)) << ',' << format_sig9(p.matrix(1, 1)) << ','
       << format_sig9(p.translation.x()) << ',' << format_sig9(p.translation.y()) << '\n';
  }
  if (out_file.empty() || out_file == "-") {
    std::cout << os.str();
  } else {
    write_text_file(out_file, os.str());
    std::cout << result.points.size() << " points (effective mesh "
              << format_sig9(result.effective_mesh) << ") -> " << out_file << "\n";
  }
  return kExitPass;
}

int cmd_emit_plot(const std::string& report_path, const CommonOpts& opts) {
  std::ifstream in(report_path);
  if (!in) {
    std::cerr << "cannot open report: " << report_path << "\n";
    return kExitUsage;
  }
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    std::cerr << "report parse error: " << e.what() << "\n";
    return kExitUsage;
  }
  const Json* trace = nullptr;
  if (j.contains("trace") && j["trace"].is_object()) trace = &j["trace"];
  if (!trace && j.contains("indices")) trace = &j;
  if (!trace) {
    std::cerr << "report carries no trace data\n";
    return kExitUsage;
  }
  ConvergenceReport r;
  r.indices = (*trace)["indices"].get<std::vector<long>>();
  r.forward = (*trace)["forward"].get<std::vector<double>>();
  r.backward = (*trace)["backward"].get<std::vector<double>>();
  r.distances = (*trace)["distances"].get<std::vector<double>>();
  fs::create_directories(opts.out_dir);
  const std::string stem = fs::path(report_path).stem().string() + "-plot";
  const auto out = fs::path(opts.out_dir) / (stem + ".csv");
  write_text_file(out.string(), trace_csv(r));
  std::cout << out.string() << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"windowed conjugacy-limit engine for SL(2,R) x| R^2"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* verify = app.add_subcommand("verify", "run a theorem battery");
  std::string theorem_id;
  std::string profile = "quick";
  verify->add_option("theorem", theorem_id, "theorem id (1.1 .. 1.5, or 'all')")->required();
  verify->add_option("--profile", profile, "quick or full");
  add_window_flags(verify, opts);

  auto* limit = app.add_subcommand("limit", "classify the limit of a configured sequence");
  std::string config_path;
  limit->add_option("config", config_path, "experiment config JSON")->required();
  add_window_flags(limit, opts);

  auto* distance = app.add_subcommand("distance", "windowed distance between two families");
  std::string d1_arg, d2_arg;
  distance->add_option("d1", d1_arg, "first descriptor (JSON, @file or Family[:params])")->required();
  distance->add_option("d2", d2_arg, "second descriptor")->required();
  add_window_flags(distance, opts);

  auto* sample_cmd = app.add_subcommand("sample", "sample a family inside the window");
  std::string sample_arg, sample_out;
  sample_cmd->add_option("descriptor", sample_arg, "descriptor (JSON, @file or Family[:params])")
      ->required();
  sample_cmd->add_option("--out", sample_out, "output CSV (default stdout)");
  add_window_flags(sample_cmd, opts);

  auto* emit = app.add_subcommand("emit-plot", "extract plot-ready CSV from a report");
  std::string report_path;
  emit->add_option("report", report_path, "report JSON produced by verify or limit")->required();
  add_window_flags(emit, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  if (opts.jobs > 0) chabauty::set_parallel_jobs(opts.jobs);

  try {
    if (verify->parsed()) return cmd_verify(theorem_id, profile, opts);
    if (limit->parsed()) return cmd_limit(config_path, opts);
    if (distance->parsed()) return cmd_distance(d1_arg, d2_arg, opts);
    if (sample_cmd->parsed()) return cmd_sample(sample_arg, sample_out, opts);
    if (emit->parsed()) return cmd_emit_plot(report_path, opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
