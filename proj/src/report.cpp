#include "depscope/report.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

#include <json.hpp>

#include "depscope/analysis.hpp"
#include "depscope/error.hpp"

namespace depscope {

using json = nlohmann::json;

namespace {

constexpr std::array<const char*, 2> kDeployment = {"deployed", "all"};
constexpr std::array<const char*, 2> kPosition = {"direct", "transitive"};
constexpr std::array<const char*, 2> kVuln = {"not_vuln", "vuln"};
constexpr std::array<const char*, 2> kStage = {"ungrouped", "grouped"};
constexpr std::array<const char*, 3> kResponsibility = {"own", "direct", "transitive"};
constexpr std::array<const char*, 3> kLifecycle = {"halted", "outdated", "up_to_date"};
constexpr std::array<const char*, 2> kLifecycleRow = {"via_halted", "all"};

std::size_t index_of(Responsibility r) { return static_cast<std::size_t>(r); }

std::size_t lifecycle_class(const CensusEntry& e) {
  if (e.library_status == LibraryStatus::Halted) return 0;
  return e.instance_status == InstanceStatus::Outdated ? 1 : 2;
}

// Visits every counter with a stable dotted name; drives merge, csv and json.
template <class Report, class Fn>
void for_each_counter(Report& r, Fn&& fn) {
  fn(std::string{"trees"}, r.trees);
  fn(std::string{"unknown_history"}, r.unknown_history);
  for (std::size_t d = 0; d < 2; ++d)
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t v = 0; v < 2; ++v)
        fn(std::string{"instances."} + kDeployment[d] + '.' + kPosition[p] + '.' + kVuln[v],
           r.instances[d][p][v]);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t v = 0; v < 2; ++v)
        fn(std::string{"responsibility."} + kStage[s] + '.' + kResponsibility[k] + '.' + kVuln[v],
           r.responsibility[s][k][v]);
  for (std::size_t p = 0; p < 2; ++p)
    for (std::size_t v = 0; v < 2; ++v)
      fn(std::string{"halted_instances."} + kPosition[p] + '.' + kVuln[v],
         r.halted_instances[p][v]);
  for (std::size_t row = 0; row < 2; ++row)
    for (std::size_t v = 0; v < 2; ++v)
      for (std::size_t c = 0; c < 3; ++c)
        fn(std::string{"lifecycle."} + kLifecycleRow[row] + '.' + kVuln[v] + '.' + kLifecycle[c],
           r.lifecycle[row][v][c]);
  fn(std::string{"paths.all"}, r.paths_all);
  fn(std::string{"paths.deployed"}, r.paths_deployed);
  fn(std::string{"paths.via_halted"}, r.paths_via_halted);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t k = 0; k < 3; ++k)
      fn(std::string{"paths."} + kStage[s] + '.' + kResponsibility[k],
         r.path_responsibility[s][k]);
}

json::json_pointer to_pointer(const std::string& dotted) {
  std::string ptr = "/" + dotted;
  std::replace(ptr.begin(), ptr.end(), '.', '/');
  return json::json_pointer{ptr};
}

void add_result(AggregateReport& r, const ScanResult& result) {
  ++r.trees;
  for (const auto& e : result.dependency_census) {
    const std::size_t pos = e.direct ? 0 : 1;
    const std::size_t v = e.vulnerable ? 1 : 0;
    ++r.instances[1][pos][v];
    if (!e.history_known) ++r.unknown_history;
    if (!e.deployed) continue;
    ++r.instances[0][pos][v];
    ++r.responsibility[0][index_of(e.ungrouped_responsibility)][v];
    ++r.responsibility[1][index_of(e.grouped_responsibility)][v];
    const auto cls = lifecycle_class(e);
    ++r.lifecycle[1][v][cls];
    if (e.via_halted) ++r.lifecycle[0][v][cls];
    if (e.library_status == LibraryStatus::Halted) ++r.halted_instances[pos][v];
  }
  r.paths_all += result.all_path_count;
  r.paths_deployed += result.deployed_path_count;
  for (const auto& p : result.paths) {
    if (!p.deployed) continue;
    ++r.path_responsibility[0][index_of(p.ungrouped_responsibility)];
    ++r.path_responsibility[1][index_of(p.responsibility)];
    if (p.via_halted) ++r.paths_via_halted;
  }
}

std::uint64_t count_pairs(const AnnotatedTree& at) {
  std::uint64_t n = 0;
  for (const auto& [gav, ids] : at.vulnerable) n += ids.size();
  return n;
}

// ---- text helpers ---------------------------------------------------------

std::string percent(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return "0.0%";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%",
                100.0 * static_cast<double>(part) / static_cast<double>(whole));
  return buf;
}

using TableRow = std::vector<std::string>;

// First column left-aligned, the rest right-aligned.
std::string format_table(const std::vector<TableRow>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line = "  ";
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto pad = std::string(widths[i] - row[i].size(), ' ');
      line += i == 0 ? row[i] + pad : "  " + pad + row[i];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

std::string num(std::uint64_t n) { return std::to_string(n); }

std::string render_path_chain(const std::vector<Gav>& path) {
  std::string out;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    if (!out.empty()) out += " -> ";
    out += it->to_string();
  }
  return out;
}

std::string render_text(const AggregateReport& r) {
  std::string out;
  out += "Trees analysed: " + num(r.trees) + "\n\n";

  out += "Dependencies by deployment (per instance)\n";
  std::vector<TableRow> t1 = {{"", "Not vuln", "", "Vuln", ""},
                              {"", "Direct", "Transitive", "Direct", "Transitive"}};
  const char* labels[] = {"Deployed", "All dep."};
  for (std::size_t d = 0; d < 2; ++d)
    t1.push_back({labels[d], num(r.instances[d][0][0]), num(r.instances[d][1][0]),
                  num(r.instances[d][0][1]), num(r.instances[d][1][1])});
  out += format_table(t1);
  const auto vuln_all = r.instances[1][0][1] + r.instances[1][1][1];
  const auto vuln_dep = r.instances[0][0][1] + r.instances[0][1][1];
  out += "  Non-deployed share of vulnerable dependencies: " + percent(vuln_all - vuln_dep, vuln_all) +
         "\n\n";

  out += "Responsibility of deployed dependencies (per instance)\n";
  std::vector<TableRow> t2 = {{"", "Ungrouped", "", "Grouped", ""},
                              {"", "Not vuln", "Vuln", "Not vuln", "Vuln"}};
  const char* resp_labels[] = {"Own", "Direct", "Transitive"};
  for (std::size_t k = 0; k < 3; ++k)
    t2.push_back({resp_labels[k], num(r.responsibility[0][k][0]), num(r.responsibility[0][k][1]),
                  num(r.responsibility[1][k][0]), num(r.responsibility[1][k][1])});
  out += format_table(t2) + '\n';

  out += "Vulnerable paths (per instance and vulnerability)\n";
  out += "  All: " + num(r.paths_all) + "  Deployed: " + num(r.paths_deployed) +
         "  Via halted: " + num(r.paths_via_halted) + '\n';
  std::vector<TableRow> t3 = {{"", "Ungrouped", "Grouped"}};
  for (std::size_t k = 0; k < 3; ++k)
    t3.push_back({resp_labels[k], num(r.path_responsibility[0][k]),
                  num(r.path_responsibility[1][k])});
  t3.push_back({"Controlled", num(r.controlled_paths(0)) + " (" +
                                  percent(r.controlled_paths(0), r.paths_deployed) + ")",
                num(r.controlled_paths(1)) + " (" +
                    percent(r.controlled_paths(1), r.paths_deployed) + ")"});
  out += format_table(t3) + '\n';

  out += "Halted dependencies (deployed, per instance)\n";
  std::vector<TableRow> t4 = {{"", "Not vuln", "", "Vuln", ""},
                              {"", "Direct", "Transitive", "Direct", "Transitive"}};
  t4.push_back({"Halted", num(r.halted_instances[0][0]), num(r.halted_instances[1][0]),
                num(r.halted_instances[0][1]), num(r.halted_instances[1][1])});
  t4.push_back({"All dep.", num(r.instances[0][0][0]), num(r.instances[0][1][0]),
                num(r.instances[0][0][1]), num(r.instances[0][1][1])});
  out += format_table(t4);
  std::uint64_t halted = 0;
  for (const auto& row : r.halted_instances) halted += row[0] + row[1];
  out += "  Halted share of deployed dependencies: " + percent(halted, vuln_dep +
         r.instances[0][0][0] + r.instances[0][1][0]) + "\n\n";

  out += "Lifecycle of deployed dependencies (per instance)\n";
  std::vector<TableRow> t5 = {{"", "Not vuln", "", "", "Vuln", "", ""},
                              {"", "Halted", "Outdated", "Up-to-date", "Halted", "Outdated",
                               "Up-to-date"}};
  const char* row_labels[] = {"Transitive via halted", "All dep."};
  for (std::size_t row = 0; row < 2; ++row) {
    TableRow cells{row_labels[row]};
    for (std::size_t v = 0; v < 2; ++v)
      for (std::size_t c = 0; c < 3; ++c) cells.push_back(num(r.lifecycle[row][v][c]));
    t5.push_back(std::move(cells));
  }
  out += format_table(t5);
  out += "  Dependencies without release history: " + num(r.unknown_history) + '\n';
  return out;
}

std::string render_text(const ScanResult& s) {
  std::string out = "Root: " + s.root.to_string() + "  TIME: " + s.analysis_time.to_string() +
                    (s.include_non_deployed ? "  (including non-deployed)" : "") + '\n';
  out += "Vulnerable paths: " + num(s.deployed_path_count) + " deployed, " +
         num(s.all_path_count) + " in total\n";
  for (const auto& p : s.paths) {
    std::string flags;
    if (p.via_halted) flags += " [via halted]";
    if (!p.deployed) flags += " [non-deployed]";
    char head[64];
    std::snprintf(head, sizeof head, "%-10s", std::string{to_string(p.responsibility)}.c_str());
    out += "  " + p.vuln_id + "  " + head + " " + render_path_chain(p.grouped_path) + flags + '\n';
    if (p.grouped_path != p.raw_path)
      out += "      ungrouped: " + render_path_chain(p.raw_path) + '\n';
  }
  std::uint64_t deployed = 0, vulnerable = 0, halted = 0, outdated = 0;
  for (const auto& e : s.dependency_census) {
    deployed += e.deployed;
    vulnerable += e.vulnerable && e.deployed;
    halted += e.deployed && e.library_status == LibraryStatus::Halted;
    outdated += e.deployed && e.instance_status == InstanceStatus::Outdated;
  }
  out += "Dependencies: " + num(s.dependency_census.size()) + " total, " + num(deployed) +
         " deployed, " + num(vulnerable) + " vulnerable, " + num(halted) + " halted, " +
         num(outdated) + " outdated\n";
  return out;
}

// ---- csv ------------------------------------------------------------------

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

const char* kCensusHeader =
    "root,gav,scope,depth,deployed,direct,vulnerable,vuln_ids,own,ungrouped_responsibility,"
    "grouped_responsibility,library_status,instance_status,history_known,via_halted\n";

std::string b(bool v) { return v ? "true" : "false"; }

std::string census_rows(const ScanResult& s) {
  std::string out;
  for (const auto& e : s.dependency_census) {
    std::string ids;
    for (const auto& id : e.vuln_ids) ids += (ids.empty() ? "" : ";") + id;
    out += csv_field(s.root.to_string()) + ',' + csv_field(e.gav.to_string()) + ',' +
           std::string{to_string(e.scope)} + ',' + num(e.depth) + ',' + b(e.deployed) + ',' +
           b(e.direct) + ',' + b(e.vulnerable) + ',' + csv_field(ids) + ',' + b(e.own) + ',' +
           std::string{to_string(e.ungrouped_responsibility)} + ',' +
           std::string{to_string(e.grouped_responsibility)} + ',' +
           std::string{to_string(e.library_status)} + ',' +
           std::string{to_string(e.instance_status)} + ',' + b(e.history_known) + ',' +
           b(e.via_halted) + '\n';
  }
  return out;
}

// ---- json -----------------------------------------------------------------

json gav_list(const std::vector<Gav>& path) {
  json out = json::array();
  for (const auto& g : path) out.push_back(g.to_string());
  return out;
}

json to_json(const ScanResult& s) {
  json paths = json::array();
  for (const auto& p : s.paths) {
    paths.push_back({{"vuln_id", p.vuln_id},
                     {"raw_path", gav_list(p.raw_path)},
                     {"grouped_path", gav_list(p.grouped_path)},
                     {"responsibility", to_string(p.responsibility)},
                     {"ungrouped_responsibility", to_string(p.ungrouped_responsibility)},
                     {"via_halted", p.via_halted},
                     {"deployed", p.deployed}});
  }
  json census = json::array();
  for (const auto& e : s.dependency_census) {
    census.push_back({{"gav", e.gav.to_string()},
                      {"scope", to_string(e.scope)},
                      {"depth", e.depth},
                      {"deployed", e.deployed},
                      {"direct", e.direct},
                      {"vulnerable", e.vulnerable},
                      {"vuln_ids", e.vuln_ids},
                      {"own", e.own},
                      {"ungrouped_responsibility", to_string(e.ungrouped_responsibility)},
                      {"grouped_responsibility", to_string(e.grouped_responsibility)},
                      {"library_status", to_string(e.library_status)},
                      {"instance_status", to_string(e.instance_status)},
                      {"history_known", e.history_known},
                      {"via_halted", e.via_halted}});
  }
  return json{{"root", s.root.to_string()},
              {"analysis_time", s.analysis_time.to_string()},
              {"include_non_deployed", s.include_non_deployed},
              {"all_path_count", s.all_path_count},
              {"deployed_path_count", s.deployed_path_count},
              {"paths", std::move(paths)},
              {"census", std::move(census)}};
}

json to_json(const AggregateReport& r) {
  json j = json::object();
  for_each_counter(r, [&](const std::string& name, const std::uint64_t& value) {
    j[to_pointer(name)] = value;
  });
  return j;
}

// Typed accessors that report the JSON pointer of the offending member.
class Reader {
 public:
  Reader(const json& j, std::string pointer) : j_(j), ptr_(std::move(pointer)) {
    if (!j_.is_object()) fail("");
  }

  [[noreturn]] void fail(const std::string& key) const {
    throw Error(ErrorCode::SchemaViolation, key.empty() ? ptr_ : ptr_ + "/" + key);
  }

  const json& at(const char* key) const {
    auto it = j_.find(key);
    if (it == j_.end()) fail(key);
    return *it;
  }
  std::string str(const char* key) const {
    const auto& v = at(key);
    if (!v.is_string()) fail(key);
    return v.get<std::string>();
  }
  bool boolean(const char* key) const {
    const auto& v = at(key);
    if (!v.is_boolean()) fail(key);
    return v.get<bool>();
  }
  std::uint64_t count(const char* key) const {
    const auto& v = at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      fail(key);
    return v.get<std::uint64_t>();
  }
  Gav gav(const char* key) const { return parse_gav_value(at(key), key); }
  Gav parse_gav_value(const json& v, const std::string& key) const {
    if (!v.is_string()) fail(key);
    try {
      return parse_gav(v.get<std::string>());
    } catch (const Error&) {
      fail(key);
    }
  }
  std::vector<Gav> gav_array(const char* key) const {
    const auto& v = at(key);
    if (!v.is_array()) fail(key);
    std::vector<Gav> out;
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(parse_gav_value(v[i], std::string{key} + "/" + std::to_string(i)));
    return out;
  }
  template <class T>
  T enumeration(const char* key, std::optional<T> (*parse)(std::string_view)) const {
    auto value = parse(str(key));
    if (!value) fail(key);
    return *value;
  }

 private:
  const json& j_;
  std::string ptr_;
};

ScanResult scan_result_from_json(const json& j, const std::string& pointer) {
  Reader r{j, pointer};
  auto time = Date::parse(r.str("analysis_time"));
  if (!time) r.fail("analysis_time");
  ScanResult s{r.gav("root"), *time, r.boolean("include_non_deployed"),
               r.count("all_path_count"), r.count("deployed_path_count"), {}, {}};

  const auto& paths = r.at("paths");
  if (!paths.is_array()) r.fail("paths");
  for (std::size_t i = 0; i < paths.size(); ++i) {
    Reader p{paths[i], pointer + "/paths/" + std::to_string(i)};
    VulnerablePath path;
    path.vuln_id = p.str("vuln_id");
    path.raw_path = p.gav_array("raw_path");
    path.grouped_path = p.gav_array("grouped_path");
    if (path.raw_path.empty()) p.fail("raw_path");
    if (path.grouped_path.empty()) p.fail("grouped_path");
    path.responsibility = p.enumeration("responsibility", &parse_responsibility);
    path.ungrouped_responsibility =
        p.enumeration("ungrouped_responsibility", &parse_responsibility);
    path.via_halted = p.boolean("via_halted");
    path.deployed = p.boolean("deployed");
    s.paths.push_back(std::move(path));
  }

  const auto& census = r.at("census");
  if (!census.is_array()) r.fail("census");
  for (std::size_t i = 0; i < census.size(); ++i) {
    Reader c{census[i], pointer + "/census/" + std::to_string(i)};
    CensusEntry e{c.gav("gav")};
    e.scope = c.enumeration("scope", &parse_scope);
    e.depth = c.count("depth");
    e.deployed = c.boolean("deployed");
    e.direct = c.boolean("direct");
    e.vulnerable = c.boolean("vulnerable");
    const auto& ids = c.at("vuln_ids");
    if (!ids.is_array()) c.fail("vuln_ids");
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!ids[k].is_string()) c.fail("vuln_ids/" + std::to_string(k));
      e.vuln_ids.push_back(ids[k].get<std::string>());
    }
    e.own = c.boolean("own");
    e.ungrouped_responsibility = c.enumeration("ungrouped_responsibility", &parse_responsibility);
    e.grouped_responsibility = c.enumeration("grouped_responsibility", &parse_responsibility);
    e.library_status = c.enumeration("library_status", &parse_library_status);
    e.instance_status = c.enumeration("instance_status", &parse_instance_status);
    e.history_known = c.boolean("history_known");
    e.via_halted = c.boolean("via_halted");
    s.dependency_census.push_back(std::move(e));
  }
  return s;
}

json parse_document(std::string_view doc) {
  try {
    return json::parse(doc);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation, std::string{"/ ("} + e.what() + ")");
  }
}

}  // namespace

bool ScanResult::has_deployed_findings() const {
  return std::any_of(paths.begin(), paths.end(), [](const auto& p) { return p.deployed; });
}

ScanResult census(const DependencyTree& unfiltered, std::span<const VulnerabilityRecord> kb,
                  const HistoryMap& histories, const Date& time, const ScanOptions& opts) {
  const Gav& root = unfiltered.root.gav;
  auto filtered = filter_non_deployed(unfiltered);
  std::set<Gav> deployed_nodes;
  walk(filtered, [&](const DependencyNode& n, const auto&) { deployed_nodes.insert(n.gav); });

  auto annotated_all = match_vulnerabilities(unfiltered, kb);
  auto annotated_deployed = match_vulnerabilities(std::move(filtered), kb);
  auto via_halted = detect_via_halted(annotated_all, histories, time, opts.lifecycle);

  ScanResult result{root, time, opts.include_non_deployed, count_pairs(annotated_all),
                    count_pairs(annotated_deployed), {}, {}};
  result.paths = extract_vulnerable_paths(opts.include_non_deployed ? annotated_all
                                                                    : annotated_deployed);
  group_paths(result.paths, root);
  for (auto& p : result.paths) {
    p.via_halted = via_halted.contains(p.vulnerable());
    p.deployed = deployed_nodes.contains(p.vulnerable());
  }

  walk(unfiltered, [&](const DependencyNode& node,
                       const std::vector<const DependencyNode*>& ancestors) {
    if (ancestors.empty()) return;
    CensusEntry e{node.gav};
    e.scope = node.scope;
    e.depth = ancestors.size();
    e.deployed = deployed_nodes.contains(node.gav);
    e.direct = ancestors.size() == 1;
    if (auto it = annotated_all.vulnerable.find(node.gav); it != annotated_all.vulnerable.end()) {
      e.vulnerable = true;
      e.vuln_ids.assign(it->second.begin(), it->second.end());
    }
    e.own = same_project(node.gav, root);

    std::vector<Gav> chain{node.gav};
    for (auto a = ancestors.rbegin(); a != ancestors.rend(); ++a) chain.push_back((*a)->gav);
    e.ungrouped_responsibility = classify_responsibility(chain, root);
    e.grouped_responsibility = classify_responsibility(group_path(chain), root);

    auto h = histories.find(node.gav.ga());
    if (h == histories.end()) {
      if (!opts.lifecycle.lenient_history)
        throw Error(ErrorCode::MissingHistory, node.gav.ga().to_string());
      e.history_known = false;
    } else {
      e.library_status = library_status(h->second, time, opts.lifecycle.smoothing);
      if (h->second.find(node.gav.version())) {
        e.instance_status = instance_status(node.gav, h->second, time);
      } else if (opts.lifecycle.lenient_history) {
        e.history_known = false;
      } else {
        throw Error(ErrorCode::UnknownVersion, node.gav.to_string());
      }
    }
    e.via_halted = via_halted.contains(node.gav);
    result.dependency_census.push_back(std::move(e));
  });
  return result;
}

AggregateReport& AggregateReport::operator+=(const AggregateReport& other) {
  std::vector<Count> rhs;
  for_each_counter(other, [&](const std::string&, const Count& c) { rhs.push_back(c); });
  std::size_t i = 0;
  for_each_counter(*this, [&](const std::string&, Count& c) { c += rhs[i++]; });
  return *this;
}

AggregateReport aggregate(std::span<const ScanResult> results) {
  AggregateReport report;
  for (const auto& r : results) add_result(report, r);
  return report;
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "text") return OutputFormat::Text;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  return std::nullopt;
}

std::string render(const ScanResult& result, OutputFormat format) {
  switch (format) {
    case OutputFormat::Text: return render_text(result);
    case OutputFormat::Csv: return kCensusHeader + census_rows(result);
    case OutputFormat::Json: return to_json(result).dump(2) + '\n';
  }
  return {};
}

std::string render(std::span<const ScanResult> results, OutputFormat format) {
  std::string out;
  switch (format) {
    case OutputFormat::Text:
      for (const auto& r : results) out += render_text(r) + '\n';
      return out;
    case OutputFormat::Csv:
      out = kCensusHeader;
      for (const auto& r : results) out += census_rows(r);
      return out;
    case OutputFormat::Json: {
      json arr = json::array();
      for (const auto& r : results) arr.push_back(to_json(r));
      return arr.dump(2) + '\n';
    }
  }
  return out;
}

std::string render(const AggregateReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Text: return render_text(report);
    case OutputFormat::Csv: {
      std::string out = "metric,count\n";
      for_each_counter(report, [&](const std::string& name, const std::uint64_t& value) {
        out += name + ',' + num(value) + '\n';
      });
      return out;
    }
    case OutputFormat::Json: return to_json(report).dump(2) + '\n';
  }
  return {};
}

std::vector<ScanResult> parse_scan_results_json(std::string_view doc) {
  auto j = parse_document(doc);
  std::vector<ScanResult> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      out.push_back(scan_result_from_json(j[i], "/" + std::to_string(i)));
  } else {
    out.push_back(scan_result_from_json(j, ""));
  }
  return out;
}

AggregateReport parse_aggregate_json(std::string_view doc) {
  auto j = parse_document(doc);
  if (!j.is_object()) throw Error(ErrorCode::SchemaViolation, "/");
  AggregateReport r;
  std::size_t expected = 0;
  for_each_counter(r, [&](const std::string& name, std::uint64_t& value) {
    ++expected;
    auto ptr = to_pointer(name);
    if (!j.contains(ptr) || !j.at(ptr).is_number_unsigned())
      throw Error(ErrorCode::SchemaViolation, ptr.to_string());
    value = j.at(ptr).get<std::uint64_t>();
  });
  if (j.flatten().size() != expected) throw Error(ErrorCode::SchemaViolation, "/");
  return r;
}

}  // namespace depscope
