#include <doctest.h>

#include <json.hpp>

#include "depscope/analysis.hpp"
#include "depscope/error.hpp"
#include "depscope/report.hpp"
#include "support.hpp"

using namespace depscope;
using depscope::testing::gav;
using depscope::testing::node;

namespace {

const Date kTime{2024, 1, 1};

ScanResult layered_result(ScanOptions opts = {}) {
  auto tree = depscope::testing::layered();
  auto histories = depscope::testing::single_release_histories(tree, Date(2023, 12, 1));
  return census(tree, depscope::testing::layered_kb(), histories, kTime, opts);
}

// Random release histories covering every node of `tree`.
void add_random_histories(const DependencyTree& tree, PortableRng& rng, HistoryMap& out) {
  walk(tree, [&](const DependencyNode& n, const auto&) {
    ReleaseHistory h{n.gav.ga(), {}};
    Date d = Date(2015, 1, 1).plus_days(static_cast<std::int64_t>(rng.below(2000)));
    const auto count = 1 + rng.below(4);
    const auto mine = rng.below(count);
    for (std::size_t i = 0; i < count; ++i) {
      h.releases.push_back(Release{i == mine ? n.gav.version() : "r" + std::to_string(i), d});
      d = d.plus_days(static_cast<std::int64_t>(rng.below(400)));
    }
    out.emplace(n.gav.ga(), std::move(h));
  });
}

std::vector<ScanResult> random_corpus(std::uint64_t seed, std::size_t trees) {
  PortableRng rng{seed};
  std::vector<ScanResult> results;
  for (std::size_t i = 0; i < trees; ++i) {
    auto flat = depscope::testing::random_flat_tree(rng);
    auto tree = depscope::testing::build_tree(flat);
    HistoryMap histories;
    add_random_histories(tree, rng, histories);
    const Date time = Date(2016, 1, 1).plus_days(static_cast<std::int64_t>(rng.below(2500)));
    results.push_back(census(tree, depscope::testing::build_kb(flat), histories, time, {}));
  }
  return results;
}

}  // namespace

TEST_CASE("census: layered sample with all libraries alive") {
  auto r = layered_result();
  CHECK(r.root == gav("org.m:m1:1"));
  REQUIRE(r.paths.size() == 2);
  CHECK(r.paths[0].grouped_path == std::vector<Gav>{gav("org.x:x1:1"), gav("org.m:m1:1")});
  CHECK(r.paths[0].responsibility == Responsibility::Direct);
  CHECK(r.paths[1].grouped_path ==
        std::vector<Gav>{gav("org.z:z1:1"), gav("org.y:y2:1"), gav("org.m:m1:1")});
  CHECK(r.paths[1].responsibility == Responsibility::Transitive);
  CHECK(r.dependency_census.size() == 6);
  CHECK(std::count_if(r.dependency_census.begin(), r.dependency_census.end(),
                      [](const CensusEntry& e) { return e.vulnerable; }) == 2);
  for (const auto& e : r.dependency_census) {
    CHECK(e.library_status == LibraryStatus::Alive);
    CHECK(e.history_known);
    CHECK(e.own == (e.gav.group_id() == "org.m"));
  }
  CHECK(r.has_deployed_findings());
  CHECK(r.all_path_count == 2);
  CHECK(r.deployed_path_count == 2);
}

TEST_CASE("census: root only with empty KB") {
  DependencyTree tree{node("g:r:1"), std::nullopt};
  auto r = census(tree, {}, {}, kTime, {});
  CHECK(r.paths.empty());
  CHECK(r.dependency_census.empty());
  CHECK_FALSE(r.has_deployed_findings());
}

TEST_CASE("census: non-deployed vulnerable instance only shows with include-non-deployed") {
  auto tree = depscope::testing::layered(Scope::Test);
  auto histories = depscope::testing::single_release_histories(tree, Date(2023, 12, 1));
  std::vector<VulnerabilityRecord> kb{{"V2", {gav("org.z:z1:1")}}};

  // Brute force on the flat encoding: filter-then-match vs match-only.
  depscope::testing::FlatTree flat;
  flat.parent = {0, 0, 0, 2, 0, 4, 5};
  flat.gavs = {gav("org.m:m1:1"), gav("org.m:m2:1"), gav("org.x:x1:1"), gav("org.u:u1:1"),
               gav("org.y:y1:1"), gav("org.y:y2:1"), gav("org.z:z1:1")};
  flat.scopes = {Scope::Compile, Scope::Compile, Scope::Compile, Scope::Compile,
                 Scope::Test,    Scope::Test,    Scope::Compile};
  flat.vulns[6] = {"V2"};
  REQUIRE(depscope::testing::build_tree(flat) == tree);
  const auto expected_deployed = depscope::testing::oracle_paths(flat, true);
  const auto expected_all = depscope::testing::oracle_paths(flat, false);
  CHECK(expected_deployed.size() == 0);
  CHECK(expected_all.size() == 1);

  auto deployed = census(tree, kb, histories, kTime, {});
  CHECK(deployed.paths.size() == expected_deployed.size());
  CHECK_FALSE(deployed.has_deployed_findings());

  auto all = census(tree, kb, histories, kTime, ScanOptions{{}, true});
  CHECK(depscope::testing::path_keys(all.paths) == expected_all);
  CHECK_FALSE(all.paths[0].deployed);
  CHECK_FALSE(all.has_deployed_findings());
  CHECK(all.all_path_count == 1);
  CHECK(all.deployed_path_count == 0);
}

TEST_CASE("census: strict and lenient history handling") {
  auto tree = depscope::testing::layered();
  auto histories = depscope::testing::single_release_histories(tree, Date(2023, 12, 1));
  histories.erase(Ga{"org.u", "u1"});
  try {
    census(tree, depscope::testing::layered_kb(), histories, kTime, {});
    FAIL("expected MissingHistory");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingHistory);
    CHECK(e.subject() == "org.u:u1");
  }
  ScanOptions lenient{LifecycleOptions{{}, true}, false};
  auto r = census(tree, depscope::testing::layered_kb(), histories, kTime, lenient);
  auto agg = aggregate(std::span{&r, 1});
  CHECK(agg.unknown_history == 1);

  // A version missing from an otherwise known history.
  auto versions = depscope::testing::single_release_histories(tree, Date(2023, 12, 1));
  versions.at(Ga{"org.u", "u1"}).releases[0].version = "7";
  CHECK_THROWS_AS(census(tree, {}, versions, kTime, {}), Error);
  CHECK(aggregate(std::vector{census(tree, {}, versions, kTime, lenient)}).unknown_history == 1);
}

TEST_CASE("census: halted chain sets via_halted on the transitive dependency only") {
  DependencyTree tree{node("org.m:m1:2", {node("org.x:x1:1", {node("org.u:u1:1")})}), std::nullopt};
  HistoryMap histories;
  histories.emplace(Ga{"org.x", "x1"},
                    depscope::testing::history("org.x:x1", {{"1", Date(2010, 1, 1)}}));
  histories.emplace(Ga{"org.u", "u1"}, depscope::testing::history(
                                           "org.u:u1", {{"1", Date(2010, 1, 1)}, {"2", Date(2015, 1, 1)},
                                                       {"3", Date(2015, 5, 1)}}));
  std::vector<VulnerabilityRecord> kb{{"V-U1", {gav("org.u:u1:1")}}};
  auto r = census(tree, kb, histories, Date(2015, 6, 1), {});
  REQUIRE(r.dependency_census.size() == 2);
  CHECK_FALSE(r.dependency_census[0].via_halted);
  CHECK(r.dependency_census[0].library_status == LibraryStatus::Halted);
  CHECK(r.dependency_census[1].via_halted);
  CHECK(r.dependency_census[1].library_status == LibraryStatus::Alive);
  CHECK(r.dependency_census[1].instance_status == InstanceStatus::Outdated);
  REQUIRE(r.paths.size() == 1);
  CHECK(r.paths[0].via_halted);

  auto agg = aggregate(std::vector{r});
  CHECK(agg.lifecycle[0][1][1] == 1);  // via halted, vuln, outdated
  CHECK(agg.halted_instances[0][0] == 1);
  CHECK(agg.paths_via_halted == 1);
}

TEST_CASE("aggregate: empty, doubling, merge laws") {
  CHECK(aggregate({}) == AggregateReport{});
  auto r = layered_result();
  std::vector<ScanResult> twice{r, r};
  auto single = aggregate(std::span{&r, 1});
  CHECK(aggregate(twice) == single + single);

  auto corpus = random_corpus(5, 9);
  auto a = aggregate(std::span{corpus}.subspan(0, 3));
  auto b = aggregate(std::span{corpus}.subspan(3, 3));
  auto c = aggregate(std::span{corpus}.subspan(6, 3));
  CHECK(a + b == b + a);
  CHECK((a + b) + c == a + (b + c));
  CHECK((a + b) + c == aggregate(corpus));
}

TEST_CASE("aggregate equals a flat recount over census rows") {
  auto corpus = random_corpus(31, 10);
  auto agg = aggregate(corpus);

  auto rows = [&](auto pred) {
    std::uint64_t n = 0;
    for (const auto& r : corpus)
      for (const auto& e : r.dependency_census) n += pred(e) ? 1 : 0;
    return n;
  };
  auto paths = [&](auto pred) {
    std::uint64_t n = 0;
    for (const auto& r : corpus)
      for (const auto& p : r.paths) n += pred(p) ? 1 : 0;
    return n;
  };

  CHECK(agg.trees == 10);
  for (int v = 0; v < 2; ++v) {
    for (int direct = 0; direct < 2; ++direct) {
      const std::size_t pos = direct ? 0 : 1;
      CHECK(agg.instances[1][pos][v] ==
            rows([&](const CensusEntry& e) { return e.direct == bool(direct) && e.vulnerable == bool(v); }));
      CHECK(agg.instances[0][pos][v] == rows([&](const CensusEntry& e) {
              return e.deployed && e.direct == bool(direct) && e.vulnerable == bool(v);
            }));
      CHECK(agg.halted_instances[pos][v] == rows([&](const CensusEntry& e) {
              return e.deployed && e.direct == bool(direct) && e.vulnerable == bool(v) &&
                     e.library_status == LibraryStatus::Halted;
            }));
    }
    for (auto resp : {Responsibility::Own, Responsibility::Direct, Responsibility::Transitive}) {
      const auto k = static_cast<std::size_t>(resp);
      CHECK(agg.responsibility[1][k][v] == rows([&](const CensusEntry& e) {
              return e.deployed && e.vulnerable == bool(v) && e.grouped_responsibility == resp;
            }));
      CHECK(agg.responsibility[0][k][v] == rows([&](const CensusEntry& e) {
              return e.deployed && e.vulnerable == bool(v) && e.ungrouped_responsibility == resp;
            }));
    }
    CHECK(agg.lifecycle[1][v][0] == rows([&](const CensusEntry& e) {
            return e.deployed && e.vulnerable == bool(v) && e.library_status == LibraryStatus::Halted;
          }));
    CHECK(agg.lifecycle[0][v][1] == rows([&](const CensusEntry& e) {
            return e.deployed && e.via_halted && e.vulnerable == bool(v) &&
                   e.library_status == LibraryStatus::Alive &&
                   e.instance_status == InstanceStatus::Outdated;
          }));
  }
  for (auto resp : {Responsibility::Own, Responsibility::Direct, Responsibility::Transitive}) {
    const auto k = static_cast<std::size_t>(resp);
    CHECK(agg.path_responsibility[1][k] ==
          paths([&](const VulnerablePath& p) { return p.responsibility == resp; }));
    CHECK(agg.path_responsibility[0][k] ==
          paths([&](const VulnerablePath& p) { return p.ungrouped_responsibility == resp; }));
  }
  CHECK(agg.paths_via_halted == paths([](const VulnerablePath& p) { return p.via_halted; }));
  CHECK(agg.paths_deployed == paths([](const VulnerablePath&) { return true; }));
}

TEST_CASE("aggregate invariants on random corpora") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto agg = aggregate(random_corpus(seed, 15));
    CAPTURE(seed);
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t v = 0; v < 2; ++v) CHECK(agg.instances[0][p][v] <= agg.instances[1][p][v]);
    CHECK(agg.paths_deployed <= agg.paths_all);
    const auto& grouped = agg.path_responsibility[1];
    CHECK(grouped[0] + grouped[1] + grouped[2] == agg.paths_deployed);
    CHECK(agg.path_responsibility[1][1] >= agg.path_responsibility[0][1]);
    CHECK(agg.controlled_paths(1) >= agg.controlled_paths(0));
  }
}

TEST_CASE("render: text skeleton for an all-zero report") {
  auto text = render(AggregateReport{}, OutputFormat::Text);
  CHECK(text.find("Trees analysed: 0") != std::string::npos);
  CHECK(text.find("Deployed") != std::string::npos);
  CHECK(text.find("Transitive via halted") != std::string::npos);
  CHECK(text.find("0.0%") != std::string::npos);
}

TEST_CASE("render: layered sample result as json") {
  auto doc = nlohmann::json::parse(render(layered_result(), OutputFormat::Json));
  REQUIRE(doc["paths"].size() == 2);
  CHECK(doc["paths"][0]["responsibility"] == "direct");
  CHECK(doc["paths"][1]["responsibility"] == "transitive");
  CHECK(doc["paths"][1]["grouped_path"] ==
        nlohmann::json::array({"org.z:z1:1", "org.y:y2:1", "org.m:m1:1"}));
  CHECK(doc["census"].size() == 6);
}

TEST_CASE("render: csv has one row per census entry") {
  auto csv = render(layered_result(), OutputFormat::Csv);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  CHECK(csv.starts_with("root,gav,scope,depth,"));
  CHECK(csv.find("org.m:m1:1,org.x:x1:1,compile,1,true,true,true,V1,false,direct,direct,alive,up_to_date,true,false") !=
        std::string::npos);
  auto agg_csv = render(aggregate(std::vector{layered_result()}), OutputFormat::Csv);
  CHECK(agg_csv.find("paths.grouped.direct,1\n") != std::string::npos);
}

TEST_CASE("render is deterministic and JSON round-trips") {
  auto corpus = random_corpus(77, 6);
  corpus.push_back(layered_result(ScanOptions{{}, true}));
  for (auto format : {OutputFormat::Text, OutputFormat::Csv, OutputFormat::Json}) {
    CHECK(render(std::span<const ScanResult>{corpus}, format) ==
          render(std::span<const ScanResult>{corpus}, format));
    CHECK(render(aggregate(corpus), format) == render(aggregate(corpus), format));
  }
  for (const auto& r : corpus) {
    auto doc = render(r, OutputFormat::Json);
    auto parsed = parse_scan_results_json(doc);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0] == r);
    CHECK(render(parsed[0], OutputFormat::Json) == doc);
  }
  auto many = render(std::span<const ScanResult>{corpus}, OutputFormat::Json);
  CHECK(parse_scan_results_json(many) == corpus);

  auto agg = aggregate(corpus);
  auto agg_doc = render(agg, OutputFormat::Json);
  CHECK(parse_aggregate_json(agg_doc) == agg);
  CHECK(render(parse_aggregate_json(agg_doc), OutputFormat::Json) == agg_doc);
}

TEST_CASE("parsing rejects malformed report documents") {
  CHECK_THROWS_AS(parse_aggregate_json("{}"), Error);
  CHECK_THROWS_AS(parse_aggregate_json("[1]"), Error);
  auto doc = nlohmann::json::parse(render(layered_result(), OutputFormat::Json));
  doc["paths"][0]["responsibility"] = "someone";
  try {
    parse_scan_results_json(doc.dump());
    FAIL("expected SchemaViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaViolation);
    CHECK(e.subject() == "/paths/0/responsibility");
  }
  auto extra = nlohmann::json::parse(render(AggregateReport{}, OutputFormat::Json));
  extra["bogus"] = 1;
  CHECK_THROWS_AS(parse_aggregate_json(extra.dump()), Error);
}
