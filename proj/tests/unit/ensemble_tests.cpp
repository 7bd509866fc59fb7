#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "check.hpp"
#include "ensemble.hpp"
#include "render.hpp"

using namespace fw;
using testsupport::thrown_errc;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path(temp_path(name)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

RunConfig basic_config() {
    RunConfig cfg;
    cfg.graph.generator = "grid";
    cfg.graph.args = {2, 3};
    cfg.chain.variant = ChainVariant::ForestWalk;
    cfg.chain.k = 2;
    cfg.chain.c = 0;
    cfg.chain.seed = 11;
    return cfg;
}

} // namespace

TEST_CASE("build_graph dispatches generators") {
    CHECK(build_graph({"cycle", {5}, ""}).vertex_count() == 5);
    CHECK(build_graph({"grid", {3, 4}, ""}).edge_count() == 17);
    CHECK(build_graph({"double_cycle", {4}, ""}).has_tags());
    CHECK(build_graph({"grid_with_hole", {4, 4}, ""}).vertex_count() == 12);
    CHECK(build_graph({"path", {6}, ""}).edge_count() == 5);

    CHECK(thrown_errc([] { build_graph({"moebius", {5}, ""}); }) == Errc::invalid_argument);
    CHECK(thrown_errc([] { build_graph({"grid", {3}, ""}); }) == Errc::invalid_argument);
    CHECK(thrown_errc([] { build_graph({"", {}, ""}); }) == Errc::invalid_argument);
    CHECK(thrown_errc([] { build_graph({"cycle", {4}, "/tmp/x"}); }) == Errc::invalid_argument);

    TempFile tf("ensemble_test_graph.txt");
    write_edge_list_file(cycle(7), tf.path);
    CHECK(build_graph({"", {}, tf.path}).vertex_count() == 7);
}

TEST_CASE("config parsing") {
    const char* text = R"({
        "graph": {"generator": "double_cycle", "args": [6]},
        "chain": {"variant": "recom", "k": 3, "c": 1.5, "seed": 42, "resample_cap": 500},
        "run": {"burn_in": 10, "thin": 4, "samples": 25},
        "output": {"path": "out.jsonl", "render_dir": "imgs", "render_count": 3}
    })";
    RunConfig cfg = parse_run_config(text);
    CHECK(cfg.graph.generator == "double_cycle");
    CHECK(cfg.graph.args == std::vector<int>{6});
    CHECK(cfg.chain.variant == ChainVariant::Recom);
    CHECK(cfg.chain.k == 3);
    CHECK(cfg.chain.c == doctest::Approx(1.5));
    CHECK(cfg.chain.seed == 42);
    CHECK(cfg.chain.resample_cap == 500);
    CHECK(cfg.burn_in == 10);
    CHECK(cfg.thin == 4);
    CHECK(cfg.samples == 25);
    CHECK(cfg.output_path == "out.jsonl");
    CHECK(cfg.render_dir == "imgs");
    CHECK(cfg.render_count == 3);

    RunConfig defaults = parse_run_config(
        R"({"graph": {"generator": "cycle", "args": [4]}, "chain": {"k": 2}})");
    CHECK(defaults.chain.variant == ChainVariant::ForestWalk);
    CHECK(defaults.thin == -1);
    CHECK(defaults.samples == 1);

    auto unknown = thrown_errc([] {
        parse_run_config(R"({"graph": {"generator": "cycle", "args": [4], "reps": 2},
                             "chain": {"k": 2}})");
    });
    CHECK(unknown == Errc::invalid_argument);
    CHECK(thrown_errc([] { parse_run_config("{not json"); }) == Errc::invalid_argument);
    CHECK(thrown_errc([] {
              parse_run_config(R"({"graph": {"generator": "cycle", "args": [4]},
                                   "chain": {"k": 2, "variant": "glauber"}})");
          }) == Errc::invalid_argument);
    CHECK(thrown_errc([] {
              parse_run_config(R"({"graph": {"generator": "cycle", "args": [4]},
                                   "chain": {"k": 2}, "run": {"samples": -3}})");
          }) == Errc::invalid_argument);
}

TEST_CASE("sampling schedule") {
    RunConfig cfg = basic_config();
    cfg.burn_in = 2;
    cfg.thin = 3;
    cfg.samples = 3;
    std::vector<EnsembleRecord> records;
    sample_ensemble(cfg, [&](const EnsembleRecord& r) { records.push_back(r); });
    REQUIRE(records.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(records[i].index == i);
        CHECK(records[i].step == 2 + 3 * i);
        CHECK(records[i].sizes.size() == 2);
        CHECK(records[i].assignment.size() == 6);
    }

    // thin 0 repeats the same state
    cfg.thin = 0;
    cfg.samples = 4;
    records.clear();
    sample_ensemble(cfg, [&](const EnsembleRecord& r) { records.push_back(r); });
    REQUIRE(records.size() == 4);
    for (const auto& r : records) {
        CHECK(r.step == 2);
        CHECK(r.assignment == records[0].assignment);
    }

    // default thin is the edge count
    cfg.burn_in = 0;
    cfg.thin = -1;
    cfg.samples = 2;
    records.clear();
    sample_ensemble(cfg, [&](const EnsembleRecord& r) { records.push_back(r); });
    REQUIRE(records.size() == 2);
    CHECK(records[1].step == 7);
}

TEST_CASE("jsonl output is deterministic with fixed key order") {
    RunConfig cfg = basic_config();
    cfg.samples = 5;
    cfg.thin = 2;
    std::ostringstream a, b;
    write_ensemble_jsonl(cfg, a);
    write_ensemble_jsonl(cfg, b);
    CHECK(a.str() == b.str());
    std::istringstream lines(a.str());
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        CHECK(line.rfind("{\"index\":", 0) == 0);
        CHECK(line.find("\"step\":") < line.find("\"sizes\":"));
        CHECK(line.find("\"sizes\":") < line.find("\"assignment\":"));
        CHECK(line.find("\"assignment\":") < line.find("\"log_weight\":"));
        CHECK(line.find("\"log_weight\":") < line.find("\"balanced\":"));
        CHECK(line.find("\"phi\"") == std::string::npos);
        ++n;
    }
    CHECK(n == 5);

    // tagged graphs add the gap statistics
    RunConfig dc = basic_config();
    dc.graph.generator = "double_cycle";
    dc.graph.args = {3};
    dc.chain.k = 3;
    dc.samples = 2;
    dc.thin = 1;
    std::ostringstream c;
    write_ensemble_jsonl(dc, c);
    std::istringstream dlines(c.str());
    while (std::getline(dlines, line)) {
        CHECK(line.find("\"balanced\":") < line.find("\"phi\":"));
        CHECK(line.find("\"phi\":") < line.find("\"avg_gap\":"));
    }
}

TEST_CASE("rejection sampling keeps balanced states") {
    RunConfig cfg = basic_config();
    cfg.samples = 8;
    cfg.thin = 2;
    std::vector<EnsembleRecord> records;
    auto report = rejection_sample_balanced(cfg, [&](const EnsembleRecord& r) {
        records.push_back(r);
    });
    CHECK(report.accepted == 8);
    CHECK(report.tried >= report.accepted);
    CHECK(report.rate == doctest::Approx(double(report.accepted) / report.tried));
    CHECK(report.ci_low > 0.0);
    CHECK(report.ci_high < 1.0);
    CHECK(report.ci_low <= report.rate);
    CHECK(report.rate <= report.ci_high);
    REQUIRE(records.size() == 8);
    for (const auto& r : records) {
        CHECK(r.balanced);
        CHECK(r.sizes == std::vector<int>{3, 3});
    }

    // a tree with no balanced bisection exhausts any budget
    TempFile tf("ensemble_test_tgraph.txt");
    write_edge_list_file(Graph(6, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {4, 5}}), tf.path);
    RunConfig hopeless = basic_config();
    hopeless.graph = {"", {}, tf.path};
    hopeless.samples = 1;
    hopeless.thin = 1;
    hopeless.reject_budget = 40;
    CHECK(thrown_errc([&] {
              rejection_sample_balanced(hopeless, [](const EnsembleRecord&) {});
          }) == Errc::budget_exhausted);

    RunConfig recom = basic_config();
    recom.chain.variant = ChainVariant::Recom;
    CHECK(thrown_errc([&] {
              rejection_sample_balanced(recom, [](const EnsembleRecord&) {});
          }) == Errc::invalid_argument);
}

TEST_CASE("balance profile arithmetic") {
    EnsembleRecord a;
    a.sizes = {2, 4};
    a.balanced = false;
    EnsembleRecord b;
    b.sizes = {3, 3};
    b.balanced = true;
    EnsembleRecord c;
    c.sizes = {1, 5};
    c.balanced = false;
    auto prof = balance_profile({a, b, c});
    CHECK(prof.count == 3);
    CHECK(prof.fraction_balanced == doctest::Approx(1.0 / 3));
    REQUIRE(prof.ratios.size() == 3);
    CHECK(prof.ratios[0] == doctest::Approx(2.0));
    CHECK(prof.ratios[1] == doctest::Approx(1.0));
    CHECK(prof.ratios[2] == doctest::Approx(5.0));
    CHECK(prof.min_ratio == doctest::Approx(1.0));
    CHECK(prof.max_ratio == doctest::Approx(5.0));
    CHECK(prof.mean_ratio == doctest::Approx(8.0 / 3));
}

TEST_CASE("mixing report decays toward the reference") {
    Graph g = grid(2, 3);
    ChainParams params;
    params.variant = ChainVariant::ForestWalk;
    params.k = 2;
    params.c = 0;
    params.seed = 904;
    auto report = mixing_report(g, params, {0, 5, 60}, 40);
    REQUIRE(report.checkpoints == std::vector<int64_t>{0, 5, 60});
    REQUIRE(report.tv.size() == 3);
    CHECK_FALSE(report.has_bottleneck);
    // all trials start at the same state, so checkpoint 0 is far from mu*
    CHECK(report.tv[0] > 0.5);
    CHECK(report.tv[2] < report.tv[0]);

    std::ostringstream csv;
    write_mixing_csv(report, csv);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "steps,tv");
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty() && line[0] != '#') ++rows;
    CHECK(rows == 3);

    CHECK(thrown_errc([&] { mixing_report(g, params, {}, 4); }) == Errc::invalid_argument);
    CHECK(thrown_errc([&] { mixing_report(g, params, {0, 4}, 0); }) == Errc::invalid_argument);
    CHECK(thrown_errc([&] { mixing_report(g, params, {-1, 4}, 4); }) == Errc::invalid_argument);
}

TEST_CASE("mixing report flags the double-cycle bottleneck") {
    Graph g = double_cycle(3);
    ChainParams params;
    params.variant = ChainVariant::Recom;
    params.k = 3;
    params.c = 0;
    params.seed = 31;
    auto report = mixing_report(g, params, {0, 20}, 10);
    CHECK(report.has_bottleneck);
    CHECK(report.bottleneck > 0.0);
    CHECK(report.mixing_lower_bound == doctest::Approx(1.0 / (4 * report.bottleneck)));
    std::ostringstream csv;
    write_mixing_csv(report, csv);
    CHECK(csv.str().find("# bottleneck_ratio=") != std::string::npos);
    CHECK(csv.str().find("# mixing_lower_bound=") != std::string::npos);
}

TEST_CASE("rendering is deterministic and format-aware") {
    Graph g = grid(3, 4);
    auto p = PartitionView::from_parts(12, {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}});
    auto [fmt, bytes] = render_partition_bytes(g, p);
    CHECK(fmt == RenderFormat::Ppm);
    auto again = render_partition_bytes(g, p);
    CHECK(again.second == bytes);
    std::string head(bytes.begin(), bytes.begin() + 2);
    CHECK(head == "P6");

    Graph dc = double_cycle(4);
    auto q = PartitionView::from_parts(8, {{0, 1, 4, 5}, {2, 3, 6, 7}});
    auto [dfmt, dbytes] = render_partition_bytes(dc, q);
    CHECK(dfmt == RenderFormat::Svg);
    std::string text(dbytes.begin(), dbytes.end());
    CHECK(text.find("<svg") != std::string::npos);

    Graph bare(3, {{0, 1}, {1, 2}});
    auto r = PartitionView::from_parts(3, {{0, 1}, {2}});
    CHECK(thrown_errc([&] { render_partition_bytes(bare, r); }) == Errc::unsupported_graph);
}
