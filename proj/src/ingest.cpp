#include "depscope/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "depscope/error.hpp"

namespace depscope {

using json = nlohmann::json;

namespace {

constexpr std::string_view kInfoPrefix = "[INFO] ";
constexpr std::string_view kHistoryHeader = "group_id,artifact_id,version,release_date";

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find('\n', start);
    auto line = text.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                  : pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return lines;
}

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; });
}

std::size_t count_segments(std::string_view s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), ':')) + 1;
}

// Root lines carry "g:a:v" or "g:a:packaging:v".
Gav parse_root_coordinate(std::string_view text, std::size_t line_no) {
  try {
    if (count_segments(text) == 4) {
      auto last = text.rfind(':');
      auto packaging = text.rfind(':', last - 1);
      std::string three{text.substr(0, packaging)};
      three += text.substr(last);
      if (text.substr(packaging + 1, last - packaging - 1).empty())
        throw Error(ErrorCode::MalformedCoordinate, std::string{text});
      return parse_gav(three);
    }
    if (count_segments(text) == 3) return parse_gav(text);
  } catch (const Error&) {
  }
  throw Error(ErrorCode::MalformedTreeLine, std::string{text}, line_no);
}

DependencyNode parse_child_coordinate(std::string_view text, std::size_t line_no) {
  try {
    auto segments = count_segments(text);
    if (segments == 3) return DependencyNode{parse_gav(text), Scope::Compile, {}};
    if (segments == 5) {
      auto scope = parse_scope(text.substr(text.rfind(':') + 1));
      if (scope) return DependencyNode{parse_gav(text), *scope, {}};
    }
  } catch (const Error&) {
  }
  throw Error(ErrorCode::MalformedTreeLine, std::string{text}, line_no);
}

void write_text_node(const DependencyNode& node, std::string& prefix, bool last,
                     std::string& out) {
  out += prefix;
  out += last ? "\\- " : "+- ";
  out += node.gav.group_id() + ':' + node.gav.artifact_id() + ":jar:" +
         node.gav.version() + ':' + std::string{to_string(node.scope)} + '\n';
  prefix += last ? "   " : "|  ";
  for (std::size_t i = 0; i < node.children.size(); ++i)
    write_text_node(node.children[i], prefix, i + 1 == node.children.size(), out);
  prefix.resize(prefix.size() - 3);
}

[[noreturn]] void schema_violation(const std::string& pointer) {
  throw Error(ErrorCode::SchemaViolation, pointer.empty() ? "/" : pointer);
}

json parse_json(std::string_view doc) {
  try {
    return json::parse(doc);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation, std::string{"/ ("} + e.what() + ")");
  }
}

const json& require(const json& obj, const char* key, const std::string& pointer) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_violation(pointer + "/" + key);
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& pointer) {
  const auto& v = require(obj, key, pointer);
  if (!v.is_string()) schema_violation(pointer + "/" + key);
  return v.get<std::string>();
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& pointer) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      schema_violation(pointer + "/" + key);
  }
}

DependencyNode node_from_json(const json& j, const std::string& pointer, bool is_root) {
  if (!j.is_object()) schema_violation(pointer);
  reject_unknown_keys(j, {"gav", "scope", "children"}, pointer);
  auto gav_text = require_string(j, "gav", pointer);
  if (count_segments(gav_text) != 3) schema_violation(pointer + "/gav");
  std::optional<Gav> gav;
  try {
    gav = parse_gav(gav_text);
  } catch (const Error&) {
    schema_violation(pointer + "/gav");
  }
  auto scope = parse_scope(require_string(j, "scope", pointer));
  if (!scope || (is_root && *scope != Scope::Compile)) schema_violation(pointer + "/scope");
  const auto& children = require(j, "children", pointer);
  if (!children.is_array()) schema_violation(pointer + "/children");

  DependencyNode node{*gav, *scope, {}};
  node.children.reserve(children.size());
  for (std::size_t i = 0; i < children.size(); ++i)
    node.children.push_back(
        node_from_json(children[i], pointer + "/children/" + std::to_string(i), false));
  return node;
}

json node_to_json(const DependencyNode& node) {
  json children = json::array();
  for (const auto& child : node.children) children.push_back(node_to_json(child));
  return json{{"gav", node.gav.to_string()},
              {"scope", std::string{to_string(node.scope)}},
              {"children", std::move(children)}};
}

}  // namespace

DependencyTree parse_tree_text(std::string_view text) {
  std::optional<DependencyTree> tree;
  // Innermost open node per depth; pointers stay valid because only the
  // deepest retained node ever gains children.
  std::vector<DependencyNode*> open;

  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto line = lines[i];
    if (line.starts_with(kInfoPrefix))
      line.remove_prefix(kInfoPrefix.size());
    else if (line == "[INFO]")
      continue;
    line = trim_right(line);
    if (is_blank(line)) continue;

    if (!tree) {
      tree = DependencyTree{DependencyNode{parse_root_coordinate(line, line_no),
                                           Scope::Compile, {}},
                            std::nullopt};
      open = {&tree->root};
      continue;
    }

    std::size_t depth = 0;
    std::size_t pos = 0;
    while (true) {
      if (line.size() < pos + 3) throw Error(ErrorCode::MalformedTreeLine, std::string{line}, line_no);
      auto unit = line.substr(pos, 3);
      pos += 3;
      ++depth;
      if (unit == "+- " || unit == "\\- ") break;
      if (unit != "|  " && unit != "   ")
        throw Error(ErrorCode::MalformedTreeLine, std::string{line}, line_no);
    }
    if (depth > open.size())
      throw Error(ErrorCode::MalformedTreeLine, std::string{line}, line_no);

    auto node = parse_child_coordinate(line.substr(pos), line_no);
    open.resize(depth);
    auto& siblings = open.back()->children;
    siblings.push_back(std::move(node));
    open.push_back(&siblings.back());
  }

  if (!tree) throw Error(ErrorCode::EmptyInput, "");
  check_unique_libraries(*tree);
  return std::move(*tree);
}

std::string render_tree_text(const DependencyTree& tree) {
  std::string out = tree.root.gav.to_string() + '\n';
  std::string prefix;
  const auto& children = tree.root.children;
  for (std::size_t i = 0; i < children.size(); ++i)
    write_text_node(children[i], prefix, i + 1 == children.size(), out);
  return out;
}

DependencyTree parse_tree_json(std::string_view doc) {
  auto j = parse_json(doc);
  if (!j.is_object()) schema_violation("");
  reject_unknown_keys(j, {"analysis_time", "root"}, "");

  DependencyTree tree{node_from_json(require(j, "root", ""), "/root", true), std::nullopt};
  if (auto it = j.find("analysis_time"); it != j.end()) {
    std::optional<Date> date;
    if (it->is_string()) date = Date::parse(it->get<std::string>());
    if (!date) schema_violation("/analysis_time");
    tree.analysis_time = date;
  }
  check_unique_libraries(tree);
  return tree;
}

std::string render_tree_json(const DependencyTree& tree) {
  json j{{"root", node_to_json(tree.root)}};
  if (tree.analysis_time) j["analysis_time"] = tree.analysis_time->to_string();
  return j.dump(2) + '\n';
}

HistoryMap load_release_history(std::string_view doc) {
  if (doc.starts_with("\xEF\xBB\xBF")) doc.remove_prefix(3);
  auto lines = split_lines(doc);
  if (lines.empty() || lines[0] != kHistoryHeader)
    throw Error(ErrorCode::MalformedRow, lines.empty() ? "" : std::string{lines[0]}, 1);

  HistoryMap histories;
  std::map<Ga, std::set<std::string>> versions_seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto line = lines[i];
    if (line.empty()) continue;

    std::vector<std::string> fields;
    std::stringstream ss{std::string{line}};
    for (std::string field; std::getline(ss, field, ',');) fields.push_back(field);
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() != 4) throw Error(ErrorCode::MalformedRow, std::string{line}, line_no);

    auto date = Date::parse(fields[3]);
    if (!date || fields[2].empty() || fields[2].find(':') != std::string::npos)
      throw Error(ErrorCode::MalformedRow, std::string{line}, line_no);
    std::optional<Ga> ga;
    try {
      ga.emplace(fields[0], fields[1]);
    } catch (const Error&) {
      throw Error(ErrorCode::MalformedRow, std::string{line}, line_no);
    }

    if (!versions_seen[*ga].insert(fields[2]).second)
      throw Error(ErrorCode::DuplicateVersion, ga->to_string() + ':' + fields[2], line_no);
    auto [it, inserted] = histories.try_emplace(*ga, ReleaseHistory{*ga, {}});
    it->second.releases.push_back(Release{fields[2], *date});
  }

  for (auto& [ga, history] : histories) {
    std::stable_sort(history.releases.begin(), history.releases.end(),
                     [](const Release& a, const Release& b) { return a.date < b.date; });
  }
  return histories;
}

std::vector<VulnerabilityRecord> load_vuln_kb(std::string_view doc) {
  auto j = parse_json(doc);
  if (!j.is_array()) schema_violation("");

  std::vector<VulnerabilityRecord> records;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ptr = "/" + std::to_string(i);
    const auto& rec = j[i];
    if (!rec.is_object()) schema_violation(ptr);
    reject_unknown_keys(rec, {"id", "affected"}, ptr);
    VulnerabilityRecord record{require_string(rec, "id", ptr), {}};
    if (record.id.empty()) schema_violation(ptr + "/id");
    const auto& affected = require(rec, "affected", ptr);
    if (!affected.is_array()) schema_violation(ptr + "/affected");

    for (std::size_t k = 0; k < affected.size(); ++k) {
      const std::string aptr = ptr + "/affected/" + std::to_string(k);
      const auto& entry = affected[k];
      if (!entry.is_object()) schema_violation(aptr);
      reject_unknown_keys(entry, {"group", "artifact", "versions"}, aptr);
      auto group = require_string(entry, "group", aptr);
      auto artifact = require_string(entry, "artifact", aptr);
      const auto& versions = require(entry, "versions", aptr);
      if (!versions.is_array()) schema_violation(aptr + "/versions");
      if (versions.empty()) throw Error(ErrorCode::EmptyAffectedSet, record.id);
      for (std::size_t v = 0; v < versions.size(); ++v) {
        const std::string vptr = aptr + "/versions/" + std::to_string(v);
        if (!versions[v].is_string()) schema_violation(vptr);
        try {
          record.affected.emplace(group, artifact, versions[v].get<std::string>());
        } catch (const Error&) {
          schema_violation(vptr);
        }
      }
    }
    if (record.affected.empty()) throw Error(ErrorCode::EmptyAffectedSet, record.id);
    records.push_back(std::move(record));
  }
  return records;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TreeDocument load_tree_file(const std::filesystem::path& path) {
  auto content = read_file(path);
  if (path.extension() == ".json") return {TreeFormat::BomJson, parse_tree_json(content)};
  return {TreeFormat::MvnText, parse_tree_text(content)};
}

}  // namespace depscope
