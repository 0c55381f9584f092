#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "depscope/model.hpp"

namespace depscope {

struct AnnotatedTree {
  DependencyTree tree;
  // Every key occurs in `tree`.
  std::map<Gav, std::set<std::string>> vulnerable;
};

// Drops every test/provided node together with its subtree. The root is
// always kept and sibling order is preserved.
DependencyTree filter_non_deployed(const DependencyTree& tree);

AnnotatedTree match_vulnerabilities(DependencyTree tree,
                                    std::span<const VulnerabilityRecord> kb);

// One path per (vulnerable node, vuln id), ordered by pre-order position of
// the node, then by vuln id. grouped_path is left equal to raw_path and both
// responsibilities reflect the raw path; see group_paths.
std::vector<VulnerablePath> extract_vulnerable_paths(const AnnotatedTree& at);

// Keeps, for each project met while scanning from the vulnerable end, only
// the member closest to the vulnerable instance. A candidate is dropped when
// it shares a project with any already-kept element.
std::vector<Gav> group_path(std::span<const Gav> raw_path);

Responsibility classify_responsibility(std::span<const Gav> grouped_path, const Gav& root);

// Fills grouped_path and responsibility from each raw path.
void group_paths(std::vector<VulnerablePath>& paths, const Gav& root);

}  // namespace depscope
