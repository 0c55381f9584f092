#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "depscope/ingest.hpp"
#include "depscope/lifecycle.hpp"
#include "depscope/model.hpp"
#include "depscope/report.hpp"

namespace depscope {

// Library instances available for sampling: one resolved tree per instance,
// plus the histories and vulnerability records used to analyse them.
struct Pool {
  std::vector<DependencyTree> trees;
  HistoryMap histories;
  std::vector<VulnerabilityRecord> kb;
};

struct SimulationConfig {
  std::uint64_t projects = 100;
  std::uint64_t deps_per_project = 12;
  std::uint64_t seed = 0;
  LifecycleOptions lifecycle;
  // Analysis date for every synthesized project; defaults to the latest
  // release date among its sampled direct dependencies.
  std::optional<Date> time;
  unsigned jobs = 1;
};

// Reserved groupId of synthesized roots.
inline constexpr const char* kSimulationGroup = "sim.depscope";

// Standard methodology: no filter, no grouping, a path is controlled when the
// vulnerable instance is the root or one of its depth-1 children.
// Proposed methodology: deployed-only, grouped, controlled = own or direct.
struct ProjectComparison {
  std::uint64_t project = 0;
  Gav root;
  Date time;
  std::uint64_t direct_dependencies = 0;
  std::uint64_t total_dependencies = 0;
  std::uint64_t all_vuln = 0;
  std::uint64_t deployed_vuln = 0;
  std::uint64_t controlled_standard = 0;
  std::uint64_t controlled_proposed = 0;
  std::uint64_t halted_vuln = 0;
  std::uint64_t via_halted_vuln = 0;

  friend bool operator==(const ProjectComparison&, const ProjectComparison&) = default;
};

// Per-iteration seed: splitmix64 of the run seed offset by the iteration.
std::uint64_t project_seed(std::uint64_t seed, std::uint64_t project);

// Uniform integer in [0, bound) from mt19937_64 output by rejection; the
// standard distributions are implementation-defined and not used.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// The indexed library catalogue of a pool: libraries in Ga order, each with
// its instances (tree indices) in Gav order.
struct PoolIndex {
  std::vector<Ga> libraries;
  std::vector<std::vector<std::size_t>> instances;
};
PoolIndex index_pool(const Pool& pool);

struct SynthesizedProject {
  DependencyTree tree;
  std::vector<Gav> sampled;  // direct dependencies in draw order
};

// Draws one project deterministically from (cfg.seed, project). Later-drawn
// nodes whose library already occurs in the tree are dropped with their
// subtrees; the sampled direct dependencies always take precedence.
SynthesizedProject synthesize_project(const Pool& pool, const PoolIndex& index,
                                      const SimulationConfig& cfg, std::uint64_t project);

ProjectComparison compare_methodologies(const Pool& pool, const SynthesizedProject& project,
                                        std::uint64_t project_number,
                                        const SimulationConfig& cfg);

std::vector<ProjectComparison> simulate(const Pool& pool, const SimulationConfig& cfg);

std::string render_simulation(const std::vector<ProjectComparison>& records,
                              const SimulationConfig& cfg, OutputFormat format);

}  // namespace depscope
