#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "depscope/date.hpp"

namespace depscope {

// A library: groupId:artifactId.
class Ga {
 public:
  Ga(std::string group_id, std::string artifact_id);

  const std::string& group_id() const noexcept { return group_id_; }
  const std::string& artifact_id() const noexcept { return artifact_id_; }
  std::string to_string() const { return group_id_ + ':' + artifact_id_; }

  friend auto operator<=>(const Ga&, const Ga&) = default;

 private:
  std::string group_id_;
  std::string artifact_id_;
};

// A library instance: groupId:artifactId:version. Fields are non-empty and
// never contain ':'; comparison is field-wise and case-sensitive.
class Gav {
 public:
  Gav(std::string group_id, std::string artifact_id, std::string version);

  const std::string& group_id() const noexcept { return group_id_; }
  const std::string& artifact_id() const noexcept { return artifact_id_; }
  const std::string& version() const noexcept { return version_; }

  Ga ga() const { return Ga{group_id_, artifact_id_}; }
  std::string to_string() const;

  friend auto operator<=>(const Gav&, const Gav&) = default;

 private:
  std::string group_id_;
  std::string artifact_id_;
  std::string version_;
};

// Accepts "g:a:v" and the tree-dump form "g:a:packaging:v:scope" (projection
// to the Gav; the scope is parsed by the caller).
Gav parse_gav(std::string_view text);
inline std::string render_gav(const Gav& gav) { return gav.to_string(); }

// Projects are approximated by groupId: two group ids belong to the same
// project when equal or when one is a dot-boundary prefix of the other
// ("org.apache.activemq" / "org.apache.activemq.tooling"). Reflexive and
// symmetric, not transitive.
bool same_project(std::string_view group_a, std::string_view group_b);
inline bool same_project(const Ga& a, const Ga& b) {
  return same_project(a.group_id(), b.group_id());
}
inline bool same_project(const Gav& a, const Gav& b) {
  return same_project(a.group_id(), b.group_id());
}

enum class Scope { Compile, Provided, Runtime, Test, System, Import, Unknown };

std::string_view to_string(Scope scope);
// Recognizes the six Maven scope names; anything else is nullopt.
std::optional<Scope> parse_scope(std::string_view text);
constexpr bool is_deployed(Scope scope) {
  return scope != Scope::Test && scope != Scope::Provided;
}

struct DependencyNode {
  Gav gav;
  Scope scope = Scope::Compile;
  std::vector<DependencyNode> children;

  friend bool operator==(const DependencyNode&, const DependencyNode&) = default;
};

struct DependencyTree {
  DependencyNode root;
  std::optional<Date> analysis_time;

  friend bool operator==(const DependencyTree&, const DependencyTree&) = default;
};

// Throws DuplicateGa when two nodes of the tree share a library.
void check_unique_libraries(const DependencyTree& tree);

// Pre-order walk. `ancestors` runs from the root down to the parent of the
// visited node (empty for the root); depth equals ancestors.size().
using NodeVisitor = std::function<void(
    const DependencyNode& node, const std::vector<const DependencyNode*>& ancestors)>;
void walk(const DependencyTree& tree, const NodeVisitor& visit);

std::size_t node_count(const DependencyTree& tree);

struct Release {
  std::string version;
  Date date;

  friend bool operator==(const Release&, const Release&) = default;
};

struct ReleaseHistory {
  Ga library;
  // Ascending by date; equal dates keep input order.
  std::vector<Release> releases;

  const Release& last() const { return releases.back(); }
  const Release* find(std::string_view version) const;
};

struct VulnerabilityRecord {
  std::string id;
  std::set<Gav> affected;
};

enum class Responsibility { Own, Direct, Transitive };
std::string_view to_string(Responsibility r);
std::optional<Responsibility> parse_responsibility(std::string_view text);

struct VulnerablePath {
  // From the vulnerable instance up to the analyzed root, both inclusive.
  std::vector<Gav> raw_path;
  std::vector<Gav> grouped_path;
  std::string vuln_id;
  Responsibility responsibility = Responsibility::Transitive;
  // Classification of the raw path, i.e. before project grouping.
  Responsibility ungrouped_responsibility = Responsibility::Transitive;
  bool via_halted = false;
  // False only for paths produced in include-non-deployed mode whose chain
  // crosses a test/provided edge.
  bool deployed = true;

  const Gav& vulnerable() const { return raw_path.front(); }

  friend bool operator==(const VulnerablePath&, const VulnerablePath&) = default;
};

enum class LibraryStatus { Halted, Alive };
enum class InstanceStatus { Outdated, UpToDate };
std::string_view to_string(LibraryStatus s);
std::string_view to_string(InstanceStatus s);
std::optional<LibraryStatus> parse_library_status(std::string_view text);
std::optional<InstanceStatus> parse_instance_status(std::string_view text);

struct LifecycleStatus {
  LibraryStatus library_status = LibraryStatus::Alive;
  InstanceStatus instance_status = InstanceStatus::UpToDate;
  Date expected_release_date;
};

}  // namespace depscope
