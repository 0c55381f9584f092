#include "depscope/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "depscope/error.hpp"
#include "depscope/ingest.hpp"
#include "depscope/lifecycle.hpp"
#include "depscope/report.hpp"
#include "depscope/simulate.hpp"
#include "parallel.hpp"

namespace depscope {

namespace fs = std::filesystem;

namespace {

enum class Subcommand { Scan, Report, Simulate, Status };

struct RunConfig {
  Subcommand subcommand = Subcommand::Scan;
  std::string tree_path;
  std::string history_path;
  std::string kb_path;
  std::string input_path;
  SmoothingConfig smoothing;
  std::string time;
  std::string format = "text";
  bool lenient_history = false;
  bool include_non_deployed = false;
  std::uint64_t projects = 100;
  std::uint64_t deps = 12;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

// Failure carrying the file it happened in.
class ContextError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Fn>
auto in_file(const fs::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Io) throw ContextError("cannot read " + path.string());
    throw ContextError(path.string() + ": " + e.what());
  }
}

std::vector<fs::path> list_files(const fs::path& path,
                                 std::initializer_list<std::string_view> extensions) {
  if (!fs::exists(path)) throw ContextError("no such file or directory: " + path.string());
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    if (std::find(extensions.begin(), extensions.end(), ext) != extensions.end())
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

OutputFormat output_format(const RunConfig& cfg) {
  return *parse_output_format(cfg.format);
}

std::optional<Date> time_override(const RunConfig& cfg) {
  if (cfg.time.empty()) return std::nullopt;
  auto date = Date::parse(cfg.time);
  if (!date) throw ContextError("--time expects YYYY-MM-DD, got '" + cfg.time + "'");
  return date;
}

LifecycleOptions lifecycle_options(const RunConfig& cfg) {
  cfg.smoothing.validate();
  return LifecycleOptions{cfg.smoothing, cfg.lenient_history};
}

HistoryMap load_histories(const std::string& path) {
  return in_file(path, [&] { return load_release_history(read_file(path)); });
}

std::vector<VulnerabilityRecord> load_kb(const std::string& path) {
  return in_file(path, [&] { return load_vuln_kb(read_file(path)); });
}

int run_scan(const RunConfig& cfg, std::ostream& out) {
  const auto opts = ScanOptions{lifecycle_options(cfg), cfg.include_non_deployed};
  const auto override_time = time_override(cfg);
  const auto kb = load_kb(cfg.kb_path);
  const auto histories = load_histories(cfg.history_path);
  const bool single = !fs::is_directory(cfg.tree_path);
  const auto files = list_files(cfg.tree_path, {".txt", ".json"});
  const Date today = Date::today();

  std::vector<std::optional<ScanResult>> slots(files.size());
  detail::parallel_for(files.size(), cfg.jobs, [&](std::size_t i) {
    slots[i] = in_file(files[i], [&] {
      auto tree = load_tree_file(files[i]).tree;
      Date time = override_time.value_or(tree.analysis_time.value_or(today));
      return census(tree, kb, histories, time, opts);
    });
  });
  std::vector<ScanResult> results;
  for (auto& s : slots) results.push_back(std::move(*s));
  std::stable_sort(results.begin(), results.end(),
                   [](const ScanResult& a, const ScanResult& b) { return a.root < b.root; });

  const auto format = output_format(cfg);
  if (single && results.size() == 1) {
    out << render(results.front(), format);
  } else {
    out << render(std::span<const ScanResult>{results}, format);
    if (format == OutputFormat::Text) out << render(aggregate(results), format);
  }
  bool findings = std::any_of(results.begin(), results.end(),
                              [](const ScanResult& r) { return r.has_deployed_findings(); });
  return findings ? kExitFindings : kExitOk;
}

int run_report(const RunConfig& cfg, std::ostream& out) {
  std::vector<ScanResult> results;
  for (const auto& file : list_files(cfg.input_path, {".json"})) {
    auto parsed = in_file(file, [&] { return parse_scan_results_json(read_file(file)); });
    for (auto& r : parsed) results.push_back(std::move(r));
  }
  out << render(aggregate(results), output_format(cfg));
  return kExitOk;
}

int run_simulate(const RunConfig& cfg, std::ostream& out) {
  SimulationConfig sim;
  sim.projects = cfg.projects;
  sim.deps_per_project = cfg.deps;
  sim.seed = cfg.seed;
  sim.lifecycle = lifecycle_options(cfg);
  sim.time = time_override(cfg);
  sim.jobs = cfg.jobs;

  Pool pool;
  pool.kb = load_kb(cfg.kb_path);
  pool.histories = load_histories(cfg.history_path);
  for (const auto& file : list_files(cfg.tree_path, {".txt", ".json"}))
    pool.trees.push_back(in_file(file, [&] { return load_tree_file(file).tree; }));

  out << render_simulation(simulate(pool, sim), sim, output_format(cfg));
  return kExitOk;
}

int run_status(const RunConfig& cfg, std::ostream& out) {
  const auto smoothing = lifecycle_options(cfg).smoothing;
  const Date time = time_override(cfg).value_or(Date::today());
  const auto histories = load_histories(cfg.history_path);
  const auto format = output_format(cfg);

  nlohmann::json libraries = nlohmann::json::array();
  std::string text;
  if (format == OutputFormat::Csv)
    text = "library,releases,last_release,last_release_interval,expected_release_date,status\n";
  for (const auto& [ga, h] : histories) {
    const double lri = last_release_interval(h, smoothing);
    const auto expected = expected_release_date(h, smoothing);
    const auto status = std::string{to_string(library_status(h, time, smoothing))};
    char lri_text[32];
    std::snprintf(lri_text, sizeof lri_text, "%.2f", lri);
    switch (format) {
      case OutputFormat::Json:
        libraries.push_back({{"library", ga.to_string()},
                             {"releases", h.releases.size()},
                             {"last_release", h.last().date.to_string()},
                             {"last_release_interval", lri},
                             {"expected_release_date", expected.to_string()},
                             {"status", status}});
        break;
      case OutputFormat::Csv:
        text += ga.to_string() + ',' + std::to_string(h.releases.size()) + ',' +
                h.last().date.to_string() + ',' + lri_text + ',' + expected.to_string() + ',' +
                status + '\n';
        break;
      case OutputFormat::Text:
        text += ga.to_string() + "  " + status + "  last " + h.last().date.to_string() +
                "  interval " + lri_text + "d  expected " + expected.to_string() + '\n';
        break;
    }
  }
  if (format == OutputFormat::Json)
    out << nlohmann::json{{"time", time.to_string()}, {"libraries", libraries}}.dump(2) << '\n';
  else if (format == OutputFormat::Text)
    out << "TIME " << time.to_string() << '\n' << text;
  else
    out << text;
  return kExitOk;
}

void add_smoothing_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--alpha", cfg.smoothing.alpha, "Smoothing parameter in (0, 1)")
      ->capture_default_str();
  cmd->add_option("--default-interval-days", cfg.smoothing.default_interval_days,
                  "Interval used for libraries with few releases")
      ->capture_default_str();
  cmd->add_option("--min-releases", cfg.smoothing.min_releases,
                  "Releases needed before smoothing applies")
      ->capture_default_str();
  cmd->add_option("--time", cfg.time, "Analysis date YYYY-MM-DD");
}

void add_format_flag(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"depscope: vulnerable dependency analysis over resolved dependency trees",
               "depscope"};
  app.require_subcommand(1);

  auto* scan = app.add_subcommand("scan", "Analyse one tree file or a directory of trees");
  scan->add_option("--tree", cfg.tree_path, "Tree file (.txt/.json) or directory")->required();
  scan->add_option("--history", cfg.history_path, "Release-history CSV")->required();
  scan->add_option("--kb", cfg.kb_path, "Vulnerability knowledge base JSON")->required();
  scan->add_flag("--lenient-history", cfg.lenient_history,
                 "Treat libraries without history as alive");
  scan->add_flag("--include-non-deployed", cfg.include_non_deployed,
                 "Also report paths through test/provided dependencies");
  scan->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
  add_smoothing_flags(scan, cfg);
  add_format_flag(scan, cfg);

  auto* report = app.add_subcommand("report", "Aggregate JSON scan results");
  report->add_option("--input", cfg.input_path, "JSON scan result file or directory")
      ->required();
  add_format_flag(report, cfg);

  auto* sim = app.add_subcommand("simulate", "Compare methodologies on synthesized projects");
  sim->add_option("--pool", cfg.tree_path, "Directory of library-instance trees")->required();
  sim->add_option("--history", cfg.history_path, "Release-history CSV")->required();
  sim->add_option("--kb", cfg.kb_path, "Vulnerability knowledge base JSON")->required();
  sim->add_option("--projects", cfg.projects, "Number of synthesized projects")
      ->capture_default_str();
  sim->add_option("--deps", cfg.deps, "Direct dependencies per project")->capture_default_str();
  sim->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  sim->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
  sim->add_flag("--lenient-history", cfg.lenient_history,
                "Treat libraries without history as alive");
  add_smoothing_flags(sim, cfg);
  add_format_flag(sim, cfg);

  auto* status = app.add_subcommand("status", "Lifecycle status of every library in a history");
  status->add_option("--history", cfg.history_path, "Release-history CSV")->required();
  add_smoothing_flags(status, cfg);
  add_format_flag(status, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (scan->parsed()) return run_scan(cfg, out);
    if (report->parsed()) return run_report(cfg, out);
    if (sim->parsed()) {
      if (sim->count("--format") == 0) cfg.format = "csv";
      return run_simulate(cfg, out);
    }
    return run_status(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace depscope
