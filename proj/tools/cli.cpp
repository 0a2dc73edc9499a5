#include "cli.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <set>
#include <spdlog/version.h>

#include "pkf/assoc/permanent.hpp"
#include "pkf/core/errors.hpp"
#include "pkf/core/log.hpp"
#include "pkf/mot/config.hpp"
#include "pkf/mot/metrics.hpp"
#include "pkf/mot/mot_io.hpp"
#include "pkf/sim/experiments.hpp"
#include "pkf/sim/io.hpp"
#include "pkf/testing/oracles.hpp"

namespace pkf::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Bad flags, unreadable inputs and invalid configs: exit code 2.
class InputError : public Error {
public:
  using Error::Error;
};

struct Common {
  std::string config_path;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::vector<std::string> methods;
  int threads = 0;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* methods_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

/// Everything a run depends on, in the layout of a --config file.
struct Resolved {
  sim::ScenarioConfig scenario;
  sim::FilterConfig filter;
  mot::TrackerConfig tracker;
  json raw_options = json::object();
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("config " + path + ": " + e.what());
  }
}

/// Accepts a config file or a manifest written by an earlier run.
json config_sections(const std::string& path, std::string_view subcommand) {
  json j = read_json_file(path);
  if (!j.is_object()) throw InputError("config must be a JSON object");
  if (j.contains("manifest_version")) {
    if (j.value("subcommand", "") != subcommand) {
      throw InputError("manifest " + path + " was written by '" + j.value("subcommand", "") + "'");
    }
    j = j.at("config");
  }
  static const std::set<std::string> known{"scenario", "filter", "tracker", "options"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw InputError("config: unknown section '" + key + "'");
  }
  return j;
}

/// Flag if given, else the config value, else the fallback.
template <class T>
T pick(const CLI::Option* flag, const T& flag_value, const json& options, const char* key, const T& fallback) {
  if (flag != nullptr && flag->count() > 0) return flag_value;
  if (options.contains(key)) {
    try {
      return options.at(key).get<T>();
    } catch (const json::exception& e) {
      throw InputError(std::string("config option '") + key + "': " + e.what());
    }
  }
  return fallback;
}

void reject_unknown_options(const json& options, const std::set<std::string>& known) {
  for (const auto& [key, value] : options.items()) {
    if (!known.contains(key)) throw InputError("config: unknown option '" + key + "'");
  }
}

Resolved load(const Common& c, std::string_view subcommand, const sim::ScenarioConfig& scenario_base,
              const mot::TrackerConfig& tracker_base = {}) {
  Resolved r;
  r.scenario = scenario_base;
  r.tracker = tracker_base;
  if (c.config_path.empty()) return r;
  const json j = config_sections(c.config_path, subcommand);
  if (j.contains("scenario")) r.scenario = sim::scenario_config_from_json(j["scenario"], r.scenario);
  if (j.contains("filter")) r.filter = sim::filter_config_from_json(j["filter"], r.filter);
  if (j.contains("tracker")) r.tracker = mot::tracker_config_from_json(j["tracker"], r.tracker);
  if (j.contains("options")) {
    if (!j["options"].is_object()) throw InputError("config: options must be an object");
    r.raw_options = j["options"];
  }
  return r;
}

std::vector<sim::Method> resolve_methods(const std::vector<std::string>& names) {
  std::vector<sim::Method> out;
  for (const std::string& n : names) {
    if (n == "all") return sim::all_methods();
    try {
      out.push_back(sim::parse_method(n));
    } catch (const ContractViolation&) {
      throw InputError("unknown method '" + n + "'");
    }
  }
  if (out.empty()) throw InputError("no methods selected");
  return out;
}

std::vector<std::string> method_names(const std::vector<sim::Method>& methods) {
  std::vector<std::string> out;
  for (sim::Method m : methods) out.emplace_back(sim::to_string(m));
  return out;
}

json versions() {
  return {
      {"pkf", std::string(kVersion)},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"spdlog", std::to_string(SPDLOG_VER_MAJOR) + "." + std::to_string(SPDLOG_VER_MINOR) + "." +
                     std::to_string(SPDLOG_VER_PATCH)},
      {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                            std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                            std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
      {"cli11", CLI11_VERSION},
      {"compiler", __VERSION__},
  };
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << text;
}

fs::path prepare_out(const Common& c) {
  const fs::path dir(c.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory " + c.out_dir);
  return dir;
}

void write_manifest(const fs::path& dir, std::string_view subcommand, const std::vector<std::string>& args,
                    const json& config, const std::vector<std::string>& outputs) {
  const json manifest{
      {"manifest_version", 1},
      {"subcommand", subcommand},
      {"argv", args},
      {"config", config},
      {"outputs", outputs},
      {"versions", versions()},
  };
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

json health_json(const CovarianceHealth& h) {
  return {{"checked", h.checked},
          {"asymmetric", h.asymmetric},
          {"not_psd", h.not_psd},
          {"non_finite", h.non_finite},
          {"ok", h.ok()}};
}

// Subcommands. Each resolves its options, writes its artifacts and the
// manifest, and returns the stdout summary.

struct SimulateFlags {
  int objects = 3;
  int seeds = 20;
  CLI::Option* objects_opt = nullptr;
  CLI::Option* seeds_opt = nullptr;
};

json cmd_simulate(const Common& c, const SimulateFlags& f, const std::vector<std::string>& args) {
  Resolved r = load(c, "simulate", {});
  reject_unknown_options(r.raw_options, {"objects", "seeds", "seed", "methods", "threads"});
  const json& o = r.raw_options;
  r.scenario.n_objects = pick(f.objects_opt, f.objects, o, "objects", r.scenario.n_objects);
  r.scenario.seed = pick(c.seed_opt, c.seed, o, "seed", r.scenario.seed);
  const int seeds = pick(f.seeds_opt, f.seeds, o, "seeds", 20);
  const int threads = pick(c.threads_opt, c.threads, o, "threads", 0);
  const std::vector<sim::Method> methods =
      resolve_methods(pick(c.methods_opt, c.methods, o, "methods", std::vector<std::string>{"all"}));
  if (seeds < 1) throw InputError("--seeds must be at least 1");
  if (threads < 0) throw InputError("--threads must be >= 0");
  r.scenario.validate();
  r.filter.validate();

  const fs::path dir = prepare_out(c);
  const sim::BatchResult batch = sim::run_batch(r.scenario, methods, r.filter, seeds, threads);
  sim::write_table1_csv(dir / "table1.csv", batch);

  const json options{{"objects", r.scenario.n_objects},
                     {"seeds", seeds},
                     {"seed", r.scenario.seed},
                     {"methods", method_names(methods)},
                     {"threads", threads}};
  write_manifest(dir, "simulate", args,
                 {{"scenario", sim::to_json(r.scenario)}, {"filter", sim::to_json(r.filter)}, {"options", options}},
                 {"table1.csv"});

  json rows = json::array();
  CovarianceHealth health;
  for (const sim::MethodSummary& s : batch.methods) {
    rows.push_back({{"method", sim::to_string(s.method)},
                    {"avg", s.average_error},
                    {"std", s.std_error},
                    {"failed", s.mean_failed},
                    {"object_error", s.object_error}});
    health += s.health;
  }
  return {{"command", "simulate"},
          {"objects", r.scenario.n_objects},
          {"seeds", seeds},
          {"table", (dir / "table1.csv").string()},
          {"methods", rows},
          {"health", health_json(health)}};
}

struct SweepFlags {
  int objects = 10;
  int seeds = 10;
  std::vector<double> noise;
  CLI::Option* objects_opt = nullptr;
  CLI::Option* seeds_opt = nullptr;
  CLI::Option* noise_opt = nullptr;
};

json cmd_sweep(const Common& c, const SweepFlags& f, const std::vector<std::string>& args) {
  Resolved r = load(c, "sweep", sim::crowded_sweep_scenario());
  reject_unknown_options(r.raw_options, {"objects", "seeds", "seed", "methods", "threads", "noise"});
  const json& o = r.raw_options;
  r.scenario.n_objects = pick(f.objects_opt, f.objects, o, "objects", r.scenario.n_objects);
  r.scenario.seed = pick(c.seed_opt, c.seed, o, "seed", r.scenario.seed);
  const int seeds = pick(f.seeds_opt, f.seeds, o, "seeds", 10);
  const int threads = pick(c.threads_opt, c.threads, o, "threads", 0);
  const std::vector<double> noise = pick(f.noise_opt, f.noise, o, "noise", sim::default_noise_levels());
  const std::vector<sim::Method> methods =
      resolve_methods(pick(c.methods_opt, c.methods, o, "methods", std::vector<std::string>{"all"}));
  if (seeds < 1) throw InputError("--seeds must be at least 1");
  if (threads < 0) throw InputError("--threads must be >= 0");
  if (noise.empty()) throw InputError("--noise needs at least one level");
  for (double v : noise) {
    if (!(v >= 0)) throw InputError("noise levels must be nonnegative");
  }
  r.scenario.validate();
  r.filter.validate();

  const fs::path dir = prepare_out(c);
  const std::vector<sim::SweepRow> rows = sim::noise_sweep(r.scenario, noise, methods, r.filter, seeds, threads);
  sim::write_fig4_csv(dir / "fig4.csv", rows);

  const json options{{"objects", r.scenario.n_objects}, {"seeds", seeds},           {"seed", r.scenario.seed},
                     {"methods", method_names(methods)}, {"threads", threads},       {"noise", noise}};
  write_manifest(dir, "sweep", args,
                 {{"scenario", sim::to_json(r.scenario)}, {"filter", sim::to_json(r.filter)}, {"options", options}},
                 {"fig4.csv"});

  json out_rows = json::array();
  CovarianceHealth health;
  for (const sim::SweepRow& s : rows) {
    out_rows.push_back({{"noise", s.noise},
                        {"method", sim::to_string(s.method)},
                        {"error", s.mean_error},
                        {"failed", s.mean_failed}});
    health += s.health;
  }
  return {{"command", "sweep"},
          {"objects", r.scenario.n_objects},
          {"seeds", seeds},
          {"table", (dir / "fig4.csv").string()},
          {"rows", out_rows},
          {"health", health_json(health)}};
}

struct BenchFlags {
  std::vector<int> objects;
  int frames = 200;
  int repeats = 15;
  CLI::Option* objects_opt = nullptr;
  CLI::Option* frames_opt = nullptr;
  CLI::Option* repeats_opt = nullptr;
};

json cmd_bench(const Common& c, const BenchFlags& f, const std::vector<std::string>& args) {
  Resolved r = load(c, "bench", {});
  reject_unknown_options(r.raw_options, {"objects", "frames", "repeats", "seed", "methods", "threads"});
  const json& o = r.raw_options;
  const std::vector<int> counts = pick(f.objects_opt, f.objects, o, "objects", sim::default_bench_counts());
  sim::BenchOptions bo;
  bo.frames = pick(f.frames_opt, f.frames, o, "frames", bo.frames);
  bo.repeats = pick(f.repeats_opt, f.repeats, o, "repeats", bo.repeats);
  r.scenario.seed = pick(c.seed_opt, c.seed, o, "seed", r.scenario.seed);
  const int threads = pick(c.threads_opt, c.threads, o, "threads", 0);
  std::vector<std::string> methods =
      pick(c.methods_opt, c.methods, o, "methods", std::vector<std::string>{"all"});
  if (methods == std::vector<std::string>{"all"}) methods = sim::bench_methods();
  for (const std::string& m : methods) {
    if (std::find(sim::bench_methods().begin(), sim::bench_methods().end(), m) == sim::bench_methods().end()) {
      throw InputError("unknown bench method '" + m + "'");
    }
  }
  if (counts.empty()) throw InputError("--objects needs at least one count");
  for (int n : counts) {
    if (n < 1) throw InputError("object counts must be positive");
  }
  if (bo.frames < 1 || bo.repeats < 1) throw InputError("--frames and --repeats must be positive");
  r.scenario.validate();
  r.filter.validate();

  const fs::path dir = prepare_out(c);
  std::vector<sim::BenchRow> rows;
  for (sim::BenchRow& row : sim::bench_update(r.scenario, counts, r.filter, bo)) {
    if (std::find(methods.begin(), methods.end(), row.method) != methods.end()) rows.push_back(std::move(row));
  }
  sim::write_table2_csv(dir / "table2.csv", rows);

  // Timing is single-threaded; the flag is only recorded.
  const json options{{"objects", counts},      {"frames", bo.frames}, {"repeats", bo.repeats},
                     {"seed", r.scenario.seed}, {"methods", methods}, {"threads", threads}};
  write_manifest(dir, "bench", args,
                 {{"scenario", sim::to_json(r.scenario)}, {"filter", sim::to_json(r.filter)}, {"options", options}},
                 {"table2.csv"});

  json out_rows = json::array();
  for (const sim::BenchRow& b : rows) {
    out_rows.push_back(
        {{"objects", b.n_objects}, {"method", b.method}, {"best_ms", b.best_ms}, {"median_ms", b.median_ms}});
  }
  return {{"command", "bench"}, {"table", (dir / "table2.csv").string()}, {"rows", out_rows}};
}

struct TrackFlags {
  std::string detections;
  std::string ground_truth;
  std::string name = "result";
  double tau_ambig = 0.9;
  bool crowded = false;
  CLI::Option* detections_opt = nullptr;
  CLI::Option* gt_opt = nullptr;
  CLI::Option* name_opt = nullptr;
  CLI::Option* tau_opt = nullptr;
  CLI::Option* crowded_opt = nullptr;
};

json cmd_track(const Common& c, const TrackFlags& f, const std::vector<std::string>& args, std::ostream& err) {
  Resolved r = load(c, "track", {});
  // The preset is the base that a config's tracker section refines.
  const bool crowded = pick(f.crowded_opt, f.crowded, r.raw_options, "crowded", false);
  if (crowded) r = load(c, "track", {}, mot::crowded_tracker_config());
  reject_unknown_options(r.raw_options,
                         {"detections", "ground_truth", "name", "crowded", "methods", "seed", "threads"});
  const json& o = r.raw_options;
  const std::string det_path = pick(f.detections_opt, f.detections, o, "detections", std::string{});
  const std::string gt_path = pick(f.gt_opt, f.ground_truth, o, "ground_truth", std::string{});
  const std::string name = pick(f.name_opt, f.name, o, "name", std::string{"result"});
  const std::uint64_t seed = pick(c.seed_opt, c.seed, o, "seed", std::uint64_t{1});
  const int threads = pick(c.threads_opt, c.threads, o, "threads", 0);
  if (det_path.empty()) throw InputError("track needs --detections");
  if (!fs::is_regular_file(det_path)) throw InputError("cannot read detections " + det_path);
  if (!gt_path.empty() && !fs::is_regular_file(gt_path)) throw InputError("cannot read ground truth " + gt_path);
  if (name.empty() || name.find('/') != std::string::npos) throw InputError("--name must be a plain file name");

  if (c.methods_opt->count() > 0) {
    if (c.methods.size() != 1) throw InputError("track takes exactly one method: pkf or binary");
    try {
      r.tracker.mode = mot::parse_association_mode(c.methods.front());
    } catch (const ContractViolation&) {
      throw InputError("track method must be pkf or binary");
    }
  }
  if (f.tau_opt->count() > 0) r.tracker.tau_ambig = f.tau_ambig;
  try {
    r.tracker.validate();
  } catch (const ContractViolation& e) {
    throw InputError(e.what());
  }

  const mot::FrameDetections dets = mot::parse_mot_detections(det_path);
  const fs::path dir = prepare_out(c);
  const mot::SequenceResult res = mot::track_sequence(dets, r.tracker);
  const std::string result_file = name + ".txt";
  mot::write_mot_results(res.results, dir / result_file);

  const double fps = res.seconds > 0 ? res.frames / res.seconds : 0.0;
  err << "fps: " << fps << "\n";

  const json options{{"detections", fs::absolute(det_path).string()},
                     {"ground_truth", gt_path.empty() ? std::string{} : fs::absolute(gt_path).string()},
                     {"name", name},
                     {"crowded", false},
                     {"seed", seed},
                     {"threads", threads}};
  write_manifest(dir, "track", args, {{"tracker", mot::to_json(r.tracker)}, {"options", options}}, {result_file});

  std::set<int> ids;
  std::size_t boxes = 0;
  for (const auto& [frame, outs] : res.results) {
    boxes += outs.size();
    for (const mot::TrackOutput& t : outs) ids.insert(t.id);
  }
  json summary{{"command", "track"},
               {"result", (dir / result_file).string()},
               {"mode", mot::to_string(r.tracker.mode)},
               {"frames", res.frames},
               {"seconds", res.seconds},
               {"fps", fps},
               {"tracks", ids.size()},
               {"boxes", boxes},
               {"fallback_blocks", res.fallback_blocks},
               {"health", health_json(res.health)}};
  if (!gt_path.empty()) {
    summary["id_switches"] = mot::id_switch_count(mot::to_records(res.results), mot::parse_mot_file(gt_path));
  }
  return summary;
}

struct SelftestFlags {
  std::string fault;
  CLI::Option* fault_opt = nullptr;
};

int cmd_selftest(const Common& c, const SelftestFlags& f, const std::vector<std::string>& args,
                 std::ostream& out) {
  Resolved r = load(c, "selftest", {});
  reject_unknown_options(r.raw_options, {"seed", "fault", "threads"});
  const json& o = r.raw_options;
  const std::uint64_t seed = pick(c.seed_opt, c.seed, o, "seed", std::uint64_t{1});
  const std::string fault = pick(f.fault_opt, f.fault, o, "fault", std::string{});

  testing::PermanentFn perm = [](const Matrix& a) { return permanent(a); };
  if (fault == "permanent") {
    // Negative control: a relative error far above the suite tolerance.
    perm = [](const Matrix& a) { return permanent(a) * (1.0 + 1e-7); };
  } else if (!fault.empty()) {
    throw InputError("unknown fault '" + fault + "'");
  }

  const auto start = std::chrono::steady_clock::now();
  const std::vector<testing::SuiteResult> suites{
      testing::permanent_suite(seed, perm),  testing::pkf_weight_suite(seed + 1),
      testing::jpdaf_weight_suite(seed + 2), testing::update_suite(seed + 3),
      testing::assignment_suite(seed + 4),
  };
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string table = "suite,cases,failures,max_error,status\n";
  bool all = true;
  for (const testing::SuiteResult& s : suites) {
    all = all && s.passed();
    table += s.name + "," + std::to_string(s.cases) + "," + std::to_string(s.failures) + "," +
             json(s.max_error).dump() + "," + (s.passed() ? "PASS" : "FAIL") + "\n";
  }
  out << table;

  const fs::path dir = prepare_out(c);
  write_text(dir / "selftest.csv", table);
  write_manifest(dir, "selftest", args, {{"options", {{"seed", seed}, {"fault", fault}}}}, {"selftest.csv"});
  log::get().info("selftest took {:.2f} s", seconds);
  return all ? kOk : kInternalError;
}

void add_common(CLI::App* sub, Common& c, bool with_methods) {
  sub->add_option("--config", c.config_path, "JSON config or a manifest.json from an earlier run")
      ->check(CLI::ExistingFile);
  c.seed_opt = sub->add_option("--seed", c.seed, "Base random seed");
  sub->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
  c.threads_opt = sub->add_option("--threads", c.threads, "Worker cap, 0 for all cores")->check(CLI::NonNegativeNumber);
  if (with_methods) {
    c.methods_opt = sub->add_option("--methods", c.methods, "Comma-separated methods or 'all'")->delimiter(',');
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permanent-based probabilistic data association: experiments and MOT tracking", "pkf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // One set per subcommand so each keeps its own option handles.
  Common sim_c, sweep_c, bench_c, track_c, self_c;

  SimulateFlags sim_f;
  CLI::App* simulate = app.add_subcommand("simulate", "Figure-eight tracking runs; writes table1.csv");
  add_common(simulate, sim_c, true);
  sim_f.objects_opt = simulate->add_option("--objects", sim_f.objects, "Number of objects")->check(CLI::PositiveNumber);
  sim_f.seeds_opt = simulate->add_option("--seeds", sim_f.seeds, "Number of seeds")->check(CLI::PositiveNumber);

  SweepFlags sweep_f;
  CLI::App* sweep = app.add_subcommand("sweep", "Measurement-noise sweep; writes fig4.csv");
  add_common(sweep, sweep_c, true);
  sweep_f.objects_opt = sweep->add_option("--objects", sweep_f.objects, "Number of objects")->check(CLI::PositiveNumber);
  sweep_f.seeds_opt = sweep->add_option("--seeds", sweep_f.seeds, "Number of seeds")->check(CLI::PositiveNumber);
  sweep_f.noise_opt = sweep->add_option("--noise", sweep_f.noise, "Comma-separated noise variances")->delimiter(',');

  BenchFlags bench_f;
  CLI::App* bench = app.add_subcommand("bench", "Update-step timing; writes table2.csv");
  add_common(bench, bench_c, true);
  bench_f.objects_opt = bench->add_option("--objects", bench_f.objects, "Comma-separated object counts")->delimiter(',');
  bench_f.frames_opt = bench->add_option("--frames", bench_f.frames, "Recorded frames per scene");
  bench_f.repeats_opt = bench->add_option("--repeats", bench_f.repeats, "Timed passes per method");

  TrackFlags track_f;
  CLI::App* track = app.add_subcommand("track", "Track MOT-format detections; writes <name>.txt");
  add_common(track, track_c, true);
  track_f.detections_opt = track->add_option("--detections,-d", track_f.detections, "MOT detection file");
  track_f.gt_opt = track->add_option("--gt", track_f.ground_truth, "Ground truth file for the ID-switch count");
  track_f.name_opt = track->add_option("--name", track_f.name, "Result file stem");
  track_f.tau_opt = track->add_option("--tau-ambig", track_f.tau_ambig, "Ambiguity ratio; 1 disables probabilistic association");
  track_f.crowded_opt = track->add_flag("--crowded", track_f.crowded, "Use the crowded-scene preset");

  SelftestFlags self_f;
  CLI::App* selftest = app.add_subcommand("selftest", "Run the small oracle suites");
  add_common(selftest, self_c, false);
  self_f.fault_opt = selftest->add_option("--inject-fault", self_f.fault, "Deliberately break a routine (permanent)");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    if (e.get_name() != "RequiredError") err << "run with --help for usage\n";
    return kInputError;
  }

  try {
    json summary;
    if (*simulate) {
      summary = cmd_simulate(sim_c, sim_f, args);
    } else if (*sweep) {
      summary = cmd_sweep(sweep_c, sweep_f, args);
    } else if (*bench) {
      summary = cmd_bench(bench_c, bench_f, args);
    } else if (*track) {
      summary = cmd_track(track_c, track_f, args, err);
    } else {
      return cmd_selftest(self_c, self_f, args, out);
    }
    out << summary.dump() << "\n";
    return kOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ContractViolation& e) {
    err << "error: invalid configuration: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidDetection& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace pkf::cli
