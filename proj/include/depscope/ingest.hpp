#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "depscope/model.hpp"

namespace depscope {

enum class TreeFormat { MvnText, BomJson };

struct TreeDocument {
  TreeFormat source_format = TreeFormat::MvnText;
  DependencyTree tree;
};

// Text dump of a resolved tree:
//
//   com.acme:m1:jar:1
//   +- com.acme:m2:jar:1:compile
//   \- com.y:y1:jar:1:compile
//      \- com.y:y2:jar:1:runtime
//
// Indentation is a sequence of 3-character units ("+- ", "\- ", "|  ",
// "   ") whose last unit is a branch marker; node depth is the unit count.
// An optional "[INFO] " prefix is stripped from each line and blank lines
// are ignored.
DependencyTree parse_tree_text(std::string_view text);
std::string render_tree_text(const DependencyTree& tree);

// BoM JSON: {"analysis_time"?: "YYYY-MM-DD", "root": NODE} with
// NODE = {"gav": "g:a:v", "scope": "...", "children": [NODE...]}.
DependencyTree parse_tree_json(std::string_view doc);
std::string render_tree_json(const DependencyTree& tree);

using HistoryMap = std::map<Ga, ReleaseHistory>;

// CSV with header `group_id,artifact_id,version,release_date`.
HistoryMap load_release_history(std::string_view doc);

// [{"id": "...", "affected": [{"group", "artifact", "versions": [...]}]}]
std::vector<VulnerabilityRecord> load_vuln_kb(std::string_view doc);

std::string read_file(const std::filesystem::path& path);
// Dispatches on extension: .json is BoM JSON, anything else is text.
TreeDocument load_tree_file(const std::filesystem::path& path);

}  // namespace depscope
