#include "depscope/analysis.hpp"

#include <algorithm>

namespace depscope {

namespace {

void filter_children(const DependencyNode& from, DependencyNode& to) {
  for (const auto& child : from.children) {
    if (!is_deployed(child.scope)) continue;
    to.children.push_back(DependencyNode{child.gav, child.scope, {}});
    filter_children(child, to.children.back());
  }
}

}  // namespace

DependencyTree filter_non_deployed(const DependencyTree& tree) {
  DependencyTree out{DependencyNode{tree.root.gav, tree.root.scope, {}}, tree.analysis_time};
  filter_children(tree.root, out.root);
  return out;
}

AnnotatedTree match_vulnerabilities(DependencyTree tree,
                                    std::span<const VulnerabilityRecord> kb) {
  AnnotatedTree at{std::move(tree), {}};
  if (kb.empty()) return at;
  walk(at.tree, [&](const DependencyNode& node, const auto&) {
    for (const auto& record : kb)
      if (record.affected.contains(node.gav)) at.vulnerable[node.gav].insert(record.id);
  });
  return at;
}

std::vector<VulnerablePath> extract_vulnerable_paths(const AnnotatedTree& at) {
  std::vector<VulnerablePath> paths;
  if (at.vulnerable.empty()) return paths;
  const Gav& root = at.tree.root.gav;
  walk(at.tree, [&](const DependencyNode& node, const std::vector<const DependencyNode*>& ancestors) {
    auto it = at.vulnerable.find(node.gav);
    if (it == at.vulnerable.end()) return;
    std::vector<Gav> raw{node.gav};
    for (auto a = ancestors.rbegin(); a != ancestors.rend(); ++a) raw.push_back((*a)->gav);
    auto responsibility = classify_responsibility(raw, root);
    for (const auto& id : it->second) {
      paths.push_back(VulnerablePath{raw, raw, id, responsibility, responsibility, false, true});
    }
  });
  return paths;
}

std::vector<Gav> group_path(std::span<const Gav> raw_path) {
  std::vector<Gav> kept;
  for (const auto& gav : raw_path) {
    bool absorbed = std::any_of(kept.begin(), kept.end(),
                                [&](const Gav& k) { return same_project(k, gav); });
    if (!absorbed) kept.push_back(gav);
  }
  return kept;
}

Responsibility classify_responsibility(std::span<const Gav> grouped_path, const Gav& root) {
  if (grouped_path.empty() || same_project(grouped_path.front(), root))
    return Responsibility::Own;
  if (grouped_path.size() == 2) return Responsibility::Direct;
  return Responsibility::Transitive;
}

void group_paths(std::vector<VulnerablePath>& paths, const Gav& root) {
  for (auto& path : paths) {
    path.grouped_path = group_path(path.raw_path);
    path.responsibility = classify_responsibility(path.grouped_path, root);
  }
}

}  // namespace depscope
