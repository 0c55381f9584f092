#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depscope/ingest.hpp"
#include "depscope/lifecycle.hpp"
#include "depscope/model.hpp"

namespace depscope {

// One row per non-root node of the unfiltered tree.
struct CensusEntry {
  explicit CensusEntry(Gav g) : gav(std::move(g)) {}

  Gav gav;
  Scope scope = Scope::Compile;
  std::size_t depth = 1;
  // Survives the non-deployed filter (no test/provided edge on its chain).
  bool deployed = true;
  bool direct = true;
  bool vulnerable = false;
  std::vector<std::string> vuln_ids;
  bool own = false;
  Responsibility ungrouped_responsibility = Responsibility::Transitive;
  Responsibility grouped_responsibility = Responsibility::Transitive;
  LibraryStatus library_status = LibraryStatus::Alive;
  InstanceStatus instance_status = InstanceStatus::UpToDate;
  bool history_known = true;
  bool via_halted = false;

  friend bool operator==(const CensusEntry&, const CensusEntry&) = default;
};

struct ScanResult {
  Gav root;
  Date analysis_time;
  bool include_non_deployed = false;
  // (instance, vuln id) pairs before and after the non-deployed filter.
  std::uint64_t all_path_count = 0;
  std::uint64_t deployed_path_count = 0;
  std::vector<VulnerablePath> paths;
  std::vector<CensusEntry> dependency_census;

  bool has_deployed_findings() const;

  friend bool operator==(const ScanResult&, const ScanResult&) = default;
};

struct ScanOptions {
  LifecycleOptions lifecycle;
  // Report paths from the unfiltered tree as well (marked deployed=false).
  bool include_non_deployed = false;
};

ScanResult census(const DependencyTree& unfiltered, std::span<const VulnerabilityRecord> kb,
                  const HistoryMap& histories, const Date& time, const ScanOptions& opts);

// Counts only; percentages are derived at render time. Index conventions:
//   deployment: 0 deployed, 1 all
//   position:   0 direct (depth 1), 1 transitive
//   vuln:       0 not vulnerable, 1 vulnerable
//   stage:      0 before grouping, 1 after grouping
//   lifecycle:  0 halted, 1 outdated, 2 up-to-date
//   lifecycle row: 0 transitive via halted, 1 all deployed
struct AggregateReport {
  using Count = std::uint64_t;
  template <std::size_t N>
  using Row = std::array<Count, N>;

  Count trees = 0;
  Count unknown_history = 0;

  // Per instance.
  std::array<std::array<Row<2>, 2>, 2> instances{};        // [deployment][position][vuln]
  std::array<std::array<Row<2>, 3>, 2> responsibility{};   // [stage][own/direct/transitive][vuln], deployed
  std::array<Row<2>, 2> halted_instances{};                // [position][vuln], deployed
  std::array<std::array<Row<3>, 2>, 2> lifecycle{};        // [row][vuln][lifecycle], deployed

  // Per (instance, vuln id) pair.
  Count paths_all = 0;
  Count paths_deployed = 0;
  std::array<Row<3>, 2> path_responsibility{};             // [stage][own/direct/transitive]
  Count paths_via_halted = 0;

  Count controlled_paths(std::size_t stage) const {
    return path_responsibility[stage][0] + path_responsibility[stage][1];
  }

  AggregateReport& operator+=(const AggregateReport& other);
  friend AggregateReport operator+(AggregateReport a, const AggregateReport& b) {
    return a += b;
  }
  friend bool operator==(const AggregateReport&, const AggregateReport&) = default;
};

AggregateReport aggregate(std::span<const ScanResult> results);

enum class OutputFormat { Text, Csv, Json };
std::optional<OutputFormat> parse_output_format(std::string_view text);

std::string render(const ScanResult& result, OutputFormat format);
std::string render(const AggregateReport& report, OutputFormat format);
// Several results in one document: concatenated sections for text, a single
// header for csv, a JSON array for json.
std::string render(std::span<const ScanResult> results, OutputFormat format);

// Parses a rendered ScanResult (object) or an array of them.
std::vector<ScanResult> parse_scan_results_json(std::string_view doc);
AggregateReport parse_aggregate_json(std::string_view doc);

}  // namespace depscope
