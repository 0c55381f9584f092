#include "depscope/model.hpp"

#include <map>

#include "depscope/error.hpp"

namespace depscope {

namespace {

bool valid_field(std::string_view s) {
  return !s.empty() && s.find(':') == std::string_view::npos;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

void walk_impl(const DependencyNode& node, std::vector<const DependencyNode*>& ancestors,
               const NodeVisitor& visit) {
  visit(node, ancestors);
  ancestors.push_back(&node);
  for (const auto& child : node.children) walk_impl(child, ancestors, visit);
  ancestors.pop_back();
}

}  // namespace

Ga::Ga(std::string group_id, std::string artifact_id)
    : group_id_(std::move(group_id)), artifact_id_(std::move(artifact_id)) {
  if (!valid_field(group_id_) || !valid_field(artifact_id_))
    throw Error(ErrorCode::MalformedCoordinate, group_id_ + ':' + artifact_id_);
}

Gav::Gav(std::string group_id, std::string artifact_id, std::string version)
    : group_id_(std::move(group_id)),
      artifact_id_(std::move(artifact_id)),
      version_(std::move(version)) {
  if (!valid_field(group_id_) || !valid_field(artifact_id_) || !valid_field(version_))
    throw Error(ErrorCode::MalformedCoordinate,
                group_id_ + ':' + artifact_id_ + ':' + version_);
}

std::string Gav::to_string() const {
  return group_id_ + ':' + artifact_id_ + ':' + version_;
}

Gav parse_gav(std::string_view text) {
  auto parts = split(text, ':');
  for (auto p : parts)
    if (p.empty()) throw Error(ErrorCode::MalformedCoordinate, std::string{text});
  if (parts.size() == 3)
    return Gav{std::string{parts[0]}, std::string{parts[1]}, std::string{parts[2]}};
  if (parts.size() == 5)
    return Gav{std::string{parts[0]}, std::string{parts[1]}, std::string{parts[3]}};
  throw Error(ErrorCode::MalformedCoordinate, std::string{text});
}

bool same_project(std::string_view a, std::string_view b) {
  if (a == b) return true;
  auto shorter = a.size() < b.size() ? a : b;
  auto longer = a.size() < b.size() ? b : a;
  return longer.size() > shorter.size() && longer.starts_with(shorter) &&
         longer[shorter.size()] == '.';
}

std::string_view to_string(Scope scope) {
  switch (scope) {
    case Scope::Compile: return "compile";
    case Scope::Provided: return "provided";
    case Scope::Runtime: return "runtime";
    case Scope::Test: return "test";
    case Scope::System: return "system";
    case Scope::Import: return "import";
    case Scope::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<Scope> parse_scope(std::string_view text) {
  static const std::map<std::string_view, Scope> kScopes = {
      {"compile", Scope::Compile}, {"provided", Scope::Provided},
      {"runtime", Scope::Runtime}, {"test", Scope::Test},
      {"system", Scope::System},   {"import", Scope::Import},
  };
  auto it = kScopes.find(text);
  if (it == kScopes.end()) return std::nullopt;
  return it->second;
}

void walk(const DependencyTree& tree, const NodeVisitor& visit) {
  std::vector<const DependencyNode*> ancestors;
  walk_impl(tree.root, ancestors, visit);
}

std::size_t node_count(const DependencyTree& tree) {
  std::size_t n = 0;
  walk(tree, [&](const DependencyNode&, const auto&) { ++n; });
  return n;
}

void check_unique_libraries(const DependencyTree& tree) {
  std::set<Ga> seen;
  walk(tree, [&](const DependencyNode& node, const auto&) {
    if (!seen.insert(node.gav.ga()).second)
      throw Error(ErrorCode::DuplicateGa, node.gav.ga().to_string());
  });
}

const Release* ReleaseHistory::find(std::string_view version) const {
  for (const auto& r : releases)
    if (r.version == version) return &r;
  return nullptr;
}

std::string_view to_string(Responsibility r) {
  switch (r) {
    case Responsibility::Own: return "own";
    case Responsibility::Direct: return "direct";
    case Responsibility::Transitive: return "transitive";
  }
  return "transitive";
}

std::optional<Responsibility> parse_responsibility(std::string_view text) {
  if (text == "own") return Responsibility::Own;
  if (text == "direct") return Responsibility::Direct;
  if (text == "transitive") return Responsibility::Transitive;
  return std::nullopt;
}

std::string_view to_string(LibraryStatus s) {
  return s == LibraryStatus::Halted ? "halted" : "alive";
}

std::string_view to_string(InstanceStatus s) {
  return s == InstanceStatus::Outdated ? "outdated" : "up_to_date";
}

std::optional<LibraryStatus> parse_library_status(std::string_view text) {
  if (text == "halted") return LibraryStatus::Halted;
  if (text == "alive") return LibraryStatus::Alive;
  return std::nullopt;
}

std::optional<InstanceStatus> parse_instance_status(std::string_view text) {
  if (text == "outdated") return InstanceStatus::Outdated;
  if (text == "up_to_date") return InstanceStatus::UpToDate;
  return std::nullopt;
}

}  // namespace depscope
