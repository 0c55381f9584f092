#include "depscope/simulate.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "depscope/analysis.hpp"
#include "depscope/error.hpp"
#include "parallel.hpp"

namespace depscope {

using json = nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void attach_unique(const DependencyNode& from, DependencyNode& to, std::set<Ga>& seen) {
  for (const auto& child : from.children) {
    if (!seen.insert(child.gav.ga()).second) continue;
    to.children.push_back(DependencyNode{child.gav, child.scope, {}});
    attach_unique(child, to.children.back(), seen);
  }
}

std::optional<Date> release_date(const HistoryMap& histories, const Gav& gav) {
  auto it = histories.find(gav.ga());
  if (it == histories.end()) return std::nullopt;
  const Release* r = it->second.find(gav.version());
  if (!r) return std::nullopt;
  return r->date;
}

Date project_time(const Pool& pool, const SynthesizedProject& project,
                  const SimulationConfig& cfg) {
  if (cfg.time) return *cfg.time;
  std::optional<Date> latest;
  for (const auto& gav : project.sampled)
    if (auto d = release_date(pool.histories, gav); d && (!latest || *d > *latest)) latest = d;
  if (latest) return *latest;
  for (const auto& [ga, h] : pool.histories)
    if (!latest || h.last().date > *latest) latest = h.last().date;
  if (!latest) throw Error(ErrorCode::InvalidArgument, "no release dates to derive TIME from");
  return *latest;
}

}  // namespace

std::uint64_t project_seed(std::uint64_t seed, std::uint64_t project) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL * project);
}

std::uint64_t PortableRng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidArgument, "empty sampling range");
  // Reject the low 2^64 mod bound values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

PoolIndex index_pool(const Pool& pool) {
  std::map<Ga, std::vector<std::size_t>> by_library;
  for (std::size_t i = 0; i < pool.trees.size(); ++i)
    by_library[pool.trees[i].root.gav.ga()].push_back(i);
  PoolIndex index;
  for (auto& [ga, trees] : by_library) {
    std::sort(trees.begin(), trees.end(), [&](std::size_t a, std::size_t b) {
      return pool.trees[a].root.gav < pool.trees[b].root.gav;
    });
    index.libraries.push_back(ga);
    index.instances.push_back(std::move(trees));
  }
  return index;
}

SynthesizedProject synthesize_project(const Pool& pool, const PoolIndex& index,
                                      const SimulationConfig& cfg, std::uint64_t project) {
  const std::size_t libraries = index.libraries.size();
  const std::size_t k = cfg.deps_per_project;
  if (libraries < k)
    throw Error(ErrorCode::InsufficientLibraries,
                std::to_string(libraries) + " libraries for " + std::to_string(k) + " draws");

  PortableRng rng{project_seed(cfg.seed, project)};
  std::vector<std::size_t> order(libraries);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<const DependencyTree*> drawn;
  for (std::size_t j = 0; j < k; ++j) {
    std::swap(order[j], order[j + rng.below(libraries - j)]);
    const auto& instances = index.instances[order[j]];
    drawn.push_back(&pool.trees[instances[rng.below(instances.size())]]);
  }

  char name[32];
  std::snprintf(name, sizeof name, "project-%04llu", static_cast<unsigned long long>(project));
  SynthesizedProject out{DependencyTree{DependencyNode{Gav{kSimulationGroup, name, "1.0"},
                                                       Scope::Compile, {}},
                                        std::nullopt},
                         {}};
  std::set<Ga> seen{out.tree.root.gav.ga()};
  for (const auto* tree : drawn) {
    seen.insert(tree->root.gav.ga());
    out.sampled.push_back(tree->root.gav);
    out.tree.root.children.push_back(DependencyNode{tree->root.gav, Scope::Compile, {}});
  }
  for (std::size_t j = 0; j < drawn.size(); ++j)
    attach_unique(drawn[j]->root, out.tree.root.children[j], seen);
  return out;
}

ProjectComparison compare_methodologies(const Pool& pool, const SynthesizedProject& project,
                                        std::uint64_t project_number,
                                        const SimulationConfig& cfg) {
  const auto& tree = project.tree;
  ProjectComparison cmp{project_number, tree.root.gav, project_time(pool, project, cfg)};
  cmp.direct_dependencies = tree.root.children.size();
  cmp.total_dependencies = node_count(tree) - 1;

  auto standard = extract_vulnerable_paths(match_vulnerabilities(tree, pool.kb));
  cmp.all_vuln = standard.size();
  cmp.controlled_standard = static_cast<std::uint64_t>(std::count_if(
      standard.begin(), standard.end(), [](const auto& p) { return p.raw_path.size() <= 2; }));

  auto result = census(tree, pool.kb, pool.histories, cmp.time, ScanOptions{cfg.lifecycle, false});
  cmp.deployed_vuln = result.deployed_path_count;
  std::set<Gav> halted;
  for (const auto& e : result.dependency_census)
    if (e.library_status == LibraryStatus::Halted) halted.insert(e.gav);
  for (const auto& p : result.paths) {
    if (p.responsibility != Responsibility::Transitive) ++cmp.controlled_proposed;
    if (halted.contains(p.vulnerable())) ++cmp.halted_vuln;
    if (p.via_halted) ++cmp.via_halted_vuln;
  }
  return cmp;
}

std::vector<ProjectComparison> simulate(const Pool& pool, const SimulationConfig& cfg) {
  if (pool.trees.empty()) throw Error(ErrorCode::EmptyPool, "");
  if (cfg.projects == 0 || cfg.deps_per_project == 0)
    throw Error(ErrorCode::InvalidArgument, "projects and deps per project must be positive");
  cfg.lifecycle.smoothing.validate();
  const auto index = index_pool(pool);
  if (index.libraries.size() < cfg.deps_per_project)
    throw Error(ErrorCode::InsufficientLibraries,
                std::to_string(index.libraries.size()) + " libraries for " +
                    std::to_string(cfg.deps_per_project) + " draws");

  std::vector<std::optional<ProjectComparison>> records(cfg.projects);
  auto run_one = [&](std::size_t i) {
    records[i] = compare_methodologies(pool, synthesize_project(pool, index, cfg, i), i, cfg);
  };

  detail::parallel_for(cfg.projects, cfg.jobs, run_one);

  std::vector<ProjectComparison> out;
  out.reserve(records.size());
  for (auto& r : records) out.push_back(std::move(*r));
  return out;
}

std::string render_simulation(const std::vector<ProjectComparison>& records,
                              const SimulationConfig& cfg, OutputFormat format) {
  const char* kColumns[] = {"project",          "root",          "time",
                            "direct_dependencies", "total_dependencies", "all_vuln",
                            "deployed_vuln",    "controlled_standard", "controlled_proposed",
                            "halted_vuln",      "via_halted_vuln"};
  auto row_values = [](const ProjectComparison& r) {
    return std::vector<std::string>{std::to_string(r.project),
                                    r.root.to_string(),
                                    r.time.to_string(),
                                    std::to_string(r.direct_dependencies),
                                    std::to_string(r.total_dependencies),
                                    std::to_string(r.all_vuln),
                                    std::to_string(r.deployed_vuln),
                                    std::to_string(r.controlled_standard),
                                    std::to_string(r.controlled_proposed),
                                    std::to_string(r.halted_vuln),
                                    std::to_string(r.via_halted_vuln)};
  };

  if (format == OutputFormat::Json) {
    json projects = json::array();
    for (const auto& r : records) {
      auto values = row_values(r);
      json obj;
      for (std::size_t c = 0; c < values.size(); ++c) {
        if (c == 1 || c == 2)
          obj[kColumns[c]] = values[c];
        else
          obj[kColumns[c]] = std::stoull(values[c]);
      }
      projects.push_back(std::move(obj));
    }
    json meta{{"seed", cfg.seed},
              {"projects", cfg.projects},
              {"deps_per_project", cfg.deps_per_project},
              {"alpha", cfg.lifecycle.smoothing.alpha},
              {"default_interval_days", cfg.lifecycle.smoothing.default_interval_days},
              {"min_releases", cfg.lifecycle.smoothing.min_releases},
              {"rng", "mt19937_64, splitmix64 per-project seeds, rejection-sampled bounds"},
              {"standard_methodology",
               "no non-deployed filter, no grouping, controlled = root or depth-1 dependency"},
              {"proposed_methodology",
               "deployed only, project grouping, controlled = own or direct after grouping"}};
    return json{{"metadata", std::move(meta)}, {"projects", std::move(projects)}}.dump(2) + '\n';
  }

  std::string out;
  const std::string sep = format == OutputFormat::Csv ? "," : "\t";
  for (std::size_t c = 0; c < std::size(kColumns); ++c) out += (c ? sep : "") + kColumns[c];
  out += '\n';
  for (const auto& r : records) {
    auto values = row_values(r);
    for (std::size_t c = 0; c < values.size(); ++c) out += (c ? sep : "") + values[c];
    out += '\n';
  }
  if (format == OutputFormat::Text && !records.empty()) {
    std::uint64_t all = 0, deployed = 0, std_ctl = 0, prop_ctl = 0, with_halted = 0;
    for (const auto& r : records) {
      all += r.all_vuln;
      deployed += r.deployed_vuln;
      std_ctl += r.controlled_standard;
      prop_ctl += r.controlled_proposed;
      with_halted += r.halted_vuln > 0;
    }
    char buf[256];
    const double n = static_cast<double>(records.size());
    std::snprintf(buf, sizeof buf,
                  "\nmean all_vuln %.2f, deployed_vuln %.2f, controlled standard %.2f, "
                  "controlled proposed %.2f; projects with a halted vulnerable dependency "
                  "%.1f%%\n",
                  all / n, deployed / n, std_ctl / n, prop_ctl / n, 100.0 * with_halted / n);
    out += buf;
  }
  return out;
}

}  // namespace depscope
