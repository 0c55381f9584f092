#pragma once

// Shared fixtures and the brute-force reference used by the property and
// acceptance suites. Nothing here calls into the analysis module.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "depscope/model.hpp"
#include "depscope/simulate.hpp"

namespace depscope::testing {

inline Gav gav(const std::string& text) { return parse_gav(text); }

inline DependencyNode node(const std::string& coord, std::vector<DependencyNode> children = {},
                           Scope scope = Scope::Compile) {
  return DependencyNode{parse_gav(coord), scope, std::move(children)};
}

// Root m1 with children m2, x1 (-> u1), y1 (-> y2 -> z1); projects M, X, U,
// Y, Z are the groups org.m, org.x, org.u, org.y, org.z.
inline DependencyTree layered(Scope y_scope = Scope::Compile) {
  return DependencyTree{
      node("org.m:m1:1",
           {node("org.m:m2:1"),
            node("org.x:x1:1", {node("org.u:u1:1")}),
            node("org.y:y1:1", {node("org.y:y2:1", {node("org.z:z1:1")}, y_scope)}, y_scope)}),
      std::nullopt};
}

inline std::vector<VulnerabilityRecord> layered_kb() {
  return {VulnerabilityRecord{"V1", {gav("org.x:x1:1")}},
          VulnerabilityRecord{"V2", {gav("org.z:z1:1")}}};
}

inline ReleaseHistory history(const std::string& ga_text,
                              std::vector<std::pair<std::string, Date>> releases) {
  auto colon = ga_text.find(':');
  ReleaseHistory h{Ga{ga_text.substr(0, colon), ga_text.substr(colon + 1)}, {}};
  for (auto& [v, d] : releases) h.releases.push_back(Release{v, d});
  return h;
}

// Every library of `tree` released once on `date`.
inline HistoryMap single_release_histories(const DependencyTree& tree, Date date) {
  HistoryMap out;
  walk(tree, [&](const DependencyNode& n, const auto&) {
    out.emplace(n.gav.ga(), ReleaseHistory{n.gav.ga(), {Release{n.gav.version(), date}}});
  });
  return out;
}

// ---- random flat trees ------------------------------------------------------

// Node 0 is the root; parent[i] < i. Children are ordered by index.
struct FlatTree {
  std::vector<std::size_t> parent;
  std::vector<Gav> gavs;
  std::vector<Scope> scopes;
  std::map<std::size_t, std::set<std::string>> vulns;
};

inline const std::vector<std::string>& group_pool() {
  static const std::vector<std::string> groups = {"a",   "a.b", "a.b.c", "a.c",
                                                  "ab",  "b",   "b.a",   "c"};
  return groups;
}

inline FlatTree random_flat_tree(PortableRng& rng, std::size_t max_nodes = 12) {
  FlatTree t;
  const std::size_t n = 1 + rng.below(max_nodes);
  static const Scope kScopes[] = {Scope::Compile, Scope::Compile, Scope::Compile,
                                  Scope::Runtime, Scope::Test,    Scope::Test,
                                  Scope::Provided, Scope::System, Scope::Import};
  for (std::size_t i = 0; i < n; ++i) {
    t.parent.push_back(i == 0 ? 0 : rng.below(i));
    const auto& group = group_pool()[rng.below(group_pool().size())];
    t.gavs.emplace_back(group, "n" + std::to_string(i), std::to_string(1 + rng.below(3)));
    t.scopes.push_back(i == 0 ? Scope::Compile : kScopes[rng.below(std::size(kScopes))]);
    if (rng.below(10) < 3) t.vulns[i].insert("V1");
    if (rng.below(10) < 2) t.vulns[i].insert("V2");
  }
  return t;
}

inline DependencyNode build_node(const FlatTree& t, std::size_t i) {
  DependencyNode n{t.gavs[i], t.scopes[i], {}};
  for (std::size_t c = i + 1; c < t.parent.size(); ++c)
    if (t.parent[c] == i) n.children.push_back(build_node(t, c));
  return n;
}

inline DependencyTree build_tree(const FlatTree& t) {
  return DependencyTree{build_node(t, 0), std::nullopt};
}

inline std::vector<VulnerabilityRecord> build_kb(const FlatTree& t) {
  std::map<std::string, std::set<Gav>> by_id;
  for (const auto& [i, ids] : t.vulns)
    for (const auto& id : ids) by_id[id].insert(t.gavs[i]);
  std::vector<VulnerabilityRecord> kb;
  for (auto& [id, affected] : by_id) kb.push_back(VulnerabilityRecord{id, std::move(affected)});
  return kb;
}

// ---- brute-force reference --------------------------------------------------

inline std::vector<std::string> dot_components(const std::string& group) {
  std::vector<std::string> parts{""};
  for (char c : group) {
    if (c == '.')
      parts.emplace_back();
    else
      parts.back() += c;
  }
  return parts;
}

// Same project: one group's dotted components are a prefix of the other's.
inline bool oracle_same_project(const Gav& a, const Gav& b) {
  auto pa = dot_components(a.group_id());
  auto pb = dot_components(b.group_id());
  if (pa.size() > pb.size()) std::swap(pa, pb);
  return std::equal(pa.begin(), pa.end(), pb.begin());
}

// Projects are opened by their first member met from the vulnerable end; a
// later element joins the first project whose opening member it matches.
// Each project is represented by its opening member only.
inline std::vector<Gav> oracle_group(const std::vector<Gav>& raw) {
  std::vector<std::vector<std::size_t>> projects;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    bool joined = false;
    for (auto& members : projects) {
      if (oracle_same_project(raw[members.front()], raw[i])) {
        members.push_back(i);
        joined = true;
        break;
      }
    }
    if (!joined) projects.push_back({i});
  }
  std::vector<std::size_t> keep;
  for (const auto& members : projects) keep.push_back(members.front());
  std::sort(keep.begin(), keep.end());
  std::vector<Gav> out;
  for (auto i : keep) out.push_back(raw[i]);
  return out;
}

inline Responsibility oracle_classify(const std::vector<Gav>& grouped, const Gav& root) {
  if (oracle_same_project(grouped.front(), root)) return Responsibility::Own;
  return grouped.size() == 2 ? Responsibility::Direct : Responsibility::Transitive;
}

inline std::vector<std::size_t> chain_to_root(const FlatTree& t, std::size_t i) {
  std::vector<std::size_t> chain{i};
  while (chain.back() != 0) chain.push_back(t.parent[chain.back()]);
  return chain;
}

inline bool oracle_deployed(const FlatTree& t, std::size_t i) {
  for (auto c : chain_to_root(t, i))
    if (t.scopes[c] == Scope::Test || t.scopes[c] == Scope::Provided) return false;
  return true;
}

using PathKey = std::tuple<std::string, std::vector<Gav>, std::vector<Gav>, Responsibility>;

inline std::set<PathKey> oracle_paths(const FlatTree& t, bool deployed_only = true) {
  std::set<PathKey> out;
  for (const auto& [i, ids] : t.vulns) {
    if (deployed_only && !oracle_deployed(t, i)) continue;
    std::vector<Gav> raw;
    for (auto c : chain_to_root(t, i)) raw.push_back(t.gavs[c]);
    auto grouped = oracle_group(raw);
    for (const auto& id : ids)
      out.emplace(id, raw, grouped, oracle_classify(grouped, t.gavs[0]));
  }
  return out;
}

inline std::set<PathKey> path_keys(const std::vector<VulnerablePath>& paths) {
  std::set<PathKey> out;
  for (const auto& p : paths) out.emplace(p.vuln_id, p.raw_path, p.grouped_path, p.responsibility);
  return out;
}

}  // namespace depscope::testing
