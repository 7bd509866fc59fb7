#include "ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>

#include "json.hpp"

#include "error.hpp"
#include "render.hpp"
#include "spanning.hpp"
#include "wilson.hpp"

namespace fw {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

void require_keys(const Json& obj, const char* section, std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok)
            fail(Errc::invalid_argument,
                 std::string("unknown key \"") + key + "\" in config section " + section);
    }
}

} // namespace

Graph build_graph(const GraphSpec& spec) {
    if (!spec.file.empty()) {
        if (!spec.generator.empty())
            fail(Errc::invalid_argument, "graph spec has both a generator and a file");
        return read_edge_list_file(spec.file);
    }
    const auto& a = spec.args;
    auto want = [&](size_t count) {
        if (a.size() != count)
            fail(Errc::invalid_argument, "generator " + spec.generator + " expects " +
                                             std::to_string(count) + " argument(s)");
    };
    if (spec.generator == "path") {
        want(1);
        return path(a[0]);
    }
    if (spec.generator == "cycle") {
        want(1);
        return cycle(a[0]);
    }
    if (spec.generator == "grid") {
        want(2);
        return grid(a[0], a[1]);
    }
    if (spec.generator == "double_cycle") {
        want(1);
        return double_cycle(a[0]);
    }
    if (spec.generator == "grid_with_hole") {
        want(2);
        return grid_with_hole(a[0], a[1]);
    }
    fail(Errc::invalid_argument, "unknown generator \"" + spec.generator + "\"");
}

RunConfig parse_run_config(const std::string& json_text) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        fail(Errc::invalid_argument, std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) fail(Errc::invalid_argument, "config root must be an object");
    require_keys(root, "(root)", {"graph", "chain", "run", "output"});
    RunConfig cfg;
    try {
        if (!root.contains("graph")) fail(Errc::invalid_argument, "config lacks a graph section");
        const Json& gj = root["graph"];
        require_keys(gj, "graph", {"generator", "args", "file"});
        cfg.graph.generator = gj.value("generator", "");
        cfg.graph.file = gj.value("file", "");
        if (gj.contains("args")) cfg.graph.args = gj["args"].get<std::vector<int>>();

        const Json cj = root.value("chain", Json::object());
        require_keys(cj, "chain", {"variant", "k", "c", "seed", "resample_cap", "backend"});
        std::string variant = cj.value("variant", "forest_walk");
        if (variant == "forest_walk")
            cfg.chain.variant = ChainVariant::ForestWalk;
        else if (variant == "recom")
            cfg.chain.variant = ChainVariant::Recom;
        else
            fail(Errc::invalid_argument, "chain.variant must be forest_walk or recom");
        cfg.chain.k = cj.value("k", 2);
        cfg.chain.c = cj.value("c", 0.0);
        cfg.chain.seed = cj.value("seed", uint64_t{0});
        cfg.chain.resample_cap = cj.value("resample_cap", 10000);
        std::string backend = cj.value("backend", "linkcut");
        if (backend == "linkcut")
            cfg.chain.backend = ForestBackend::LinkCut;
        else if (backend == "naive")
            cfg.chain.backend = ForestBackend::Naive;
        else
            fail(Errc::invalid_argument, "chain.backend must be linkcut or naive");

        const Json rj = root.value("run", Json::object());
        require_keys(rj, "run", {"burn_in", "thin", "samples", "reject_budget"});
        cfg.burn_in = rj.value("burn_in", int64_t{0});
        cfg.thin = rj.value("thin", int64_t{-1});
        cfg.samples = rj.value("samples", int64_t{1});
        cfg.reject_budget = rj.value("reject_budget", int64_t{-1});

        const Json oj = root.value("output", Json::object());
        require_keys(oj, "output", {"path", "render_dir", "render_count"});
        cfg.output_path = oj.value("path", "");
        cfg.render_dir = oj.value("render_dir", "");
        cfg.render_count = oj.value("render_count", 0);
    } catch (const Json::exception& e) {
        fail(Errc::invalid_argument, std::string("bad config value: ") + e.what());
    }
    if (cfg.burn_in < 0 || cfg.samples < 1 || cfg.thin < -1 || cfg.chain.k < 2 ||
        cfg.chain.c < 0.0 || cfg.chain.resample_cap < 1 || cfg.render_count < 0)
        fail(Errc::invalid_argument, "config values out of range");
    return cfg;
}

ForestState default_initial_state(const Graph& g, const ChainParams& chain) {
    Pcg32 rng(chain.seed, 1);
    if (g.vertex_count() % chain.k == 0) {
        try {
            return initial_balanced_state(g, chain.k, rng, chain.backend);
        } catch (const Error& e) {
            // the forest walk can start anywhere; only ReCom needs balance
            if (chain.variant == ChainVariant::Recom || e.code() != Errc::initialization_failure)
                throw;
        }
    } else if (chain.variant == ChainVariant::Recom) {
        fail(Errc::invalid_argument, "ReCom requires k to divide the vertex count");
    }
    std::vector<int> all(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
    std::vector<int> tree = sample_ust(g, all, rng);
    for (int drop = 0; drop < chain.k - 1; ++drop) {
        uint32_t i = rng.below(static_cast<uint32_t>(tree.size()));
        tree[i] = tree.back();
        tree.pop_back();
    }
    return ForestState::from_edges(g, tree, chain.backend);
}

namespace {

EnsembleRecord make_record(const Graph& g, const ForestState& state, int64_t index, int64_t step) {
    EnsembleRecord rec;
    rec.index = index;
    rec.step = step;
    PartitionView p = state.partition();
    rec.assignment = p.assignment();
    rec.sizes = p.sizes();
    rec.balanced = p.is_balanced();
    rec.log_weight = partition_log_weight(g, p, 0.0);
    if (g.has_tags()) {
        GapProfile prof = gap_profile(g, p);
        rec.has_gap_stats = true;
        rec.phi = prof.phi;
        rec.avg_gap = prof.gaps.empty()
                          ? 0.0
                          : static_cast<double>(prof.position_sum) /
                                static_cast<double>(prof.gaps.size());
    }
    int64_t total = 0;
    for (int s : rec.sizes) {
        if (s <= 0) fail(Errc::step_failure, "emitted record has an empty part");
        total += s;
    }
    if (total != g.vertex_count() || static_cast<int>(rec.sizes.size()) != state.component_count())
        fail(Errc::step_failure, "emitted record fails structural validation");
    return rec;
}

int64_t effective_thin(const RunConfig& cfg, const Graph& g) {
    return cfg.thin >= 0 ? cfg.thin : std::max(1, g.edge_count());
}

} // namespace

std::string ensemble_record_json(const EnsembleRecord& rec) {
    OrderedJson j;
    j["index"] = rec.index;
    j["step"] = rec.step;
    j["sizes"] = rec.sizes;
    j["assignment"] = rec.assignment;
    j["log_weight"] = rec.log_weight;
    j["balanced"] = rec.balanced;
    if (rec.has_gap_stats) {
        j["phi"] = rec.phi;
        j["avg_gap"] = rec.avg_gap;
    }
    return j.dump();
}

void sample_ensemble(const RunConfig& cfg, const RecordSink& sink) {
    Graph g = build_graph(cfg.graph);
    int64_t thin = effective_thin(cfg, g);
    ChainParams params = cfg.chain;
    ForestState state = default_initial_state(g, params);
    params.steps = cfg.burn_in + thin * (cfg.samples - 1);

    int64_t next_index = 0;
    auto emit_due = [&](int64_t moves_done, const ForestState& s) {
        while (next_index < cfg.samples && cfg.burn_in + next_index * thin == moves_done) {
            sink(make_record(g, s, next_index, moves_done));
            ++next_index;
            if (thin == 0 && moves_done != cfg.burn_in) break;
        }
    };
    emit_due(0, state);
    run_chain(params, std::move(state), [&](const ForestState& s, const StepRecord& rec) {
        emit_due(rec.step + 1, s);
    });
    if (next_index != cfg.samples)
        fail(Errc::step_failure, "ensemble run ended before emitting all samples");
}

void write_ensemble_jsonl(const RunConfig& cfg, std::ostream& out) {
    sample_ensemble(cfg, [&](const EnsembleRecord& rec) {
        out << ensemble_record_json(rec) << '\n';
    });
}

AcceptanceReport rejection_sample_balanced(const RunConfig& cfg, const RecordSink& sink) {
    Graph g = build_graph(cfg.graph);
    if (cfg.chain.variant != ChainVariant::ForestWalk)
        fail(Errc::invalid_argument, "rejection sampling runs on the forest walk");
    if (g.vertex_count() % cfg.chain.k != 0)
        fail(Errc::invalid_argument, "k must divide the vertex count for balanced sampling");
    int64_t thin = std::max<int64_t>(1, effective_thin(cfg, g));
    int64_t budget = cfg.reject_budget >= 0 ? cfg.reject_budget : 100 * cfg.samples;
    ChainParams params = cfg.chain;
    ForestState state = default_initial_state(g, params);
    Pcg32 rng(params.seed);

    for (int64_t t = 0; t < cfg.burn_in; ++t) forest_walk_step(state, params, rng);

    AcceptanceReport rep;
    int64_t moves = cfg.burn_in;
    while (rep.accepted < cfg.samples && rep.tried < budget) {
        for (int64_t t = 0; t < thin; ++t) {
            forest_walk_step(state, params, rng);
            ++moves;
        }
        ++rep.tried;
        PartitionView p = state.partition();
        if (p.is_balanced()) {
            sink(make_record(g, state, rep.accepted, moves));
            ++rep.accepted;
        }
    }
    if (rep.accepted == 0)
        fail(Errc::budget_exhausted,
             "no balanced sample in " + std::to_string(rep.tried) +
                 " tries; acceptance rate is below about " +
                 std::to_string(3.0 / static_cast<double>(std::max<int64_t>(rep.tried, 1))));
    rep.rate = static_cast<double>(rep.accepted) / static_cast<double>(rep.tried);
    // Wilson 95% interval
    double n = static_cast<double>(rep.tried);
    double p = rep.rate;
    double z = 1.959963984540054;
    double denom = 1.0 + z * z / n;
    double centre = (p + z * z / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
    rep.ci_low = std::max(0.0, centre - half);
    rep.ci_high = std::min(1.0, centre + half);
    return rep;
}

BalanceProfile balance_profile(const std::vector<EnsembleRecord>& records) {
    if (records.empty()) fail(Errc::invalid_argument, "no records to profile");
    BalanceProfile prof;
    prof.count = static_cast<int64_t>(records.size());
    prof.min_ratio = 1e300;
    int64_t balanced = 0;
    double sum = 0;
    for (const auto& rec : records) {
        auto [mn, mx] = std::minmax_element(rec.sizes.begin(), rec.sizes.end());
        double ratio = static_cast<double>(*mx) / static_cast<double>(*mn);
        prof.ratios.push_back(ratio);
        sum += ratio;
        prof.min_ratio = std::min(prof.min_ratio, ratio);
        prof.max_ratio = std::max(prof.max_ratio, ratio);
        if (rec.balanced) ++balanced;
    }
    prof.mean_ratio = sum / static_cast<double>(prof.count);
    prof.fraction_balanced =
        static_cast<double>(balanced) / static_cast<double>(prof.count);
    return prof;
}

MixingReport mixing_report(const Graph& g, const ChainParams& base,
                           const std::vector<int64_t>& checkpoints, int trials,
                           const std::optional<ForestState>& initial, bool override_guard) {
    if (checkpoints.empty()) fail(Errc::invalid_argument, "empty checkpoint grid");
    if (trials < 1) fail(Errc::invalid_argument, "trials must be positive");
    std::vector<int64_t> grid = checkpoints;
    std::sort(grid.begin(), grid.end());
    if (grid.front() < 0) fail(Errc::invalid_argument, "negative checkpoint");

    ExactDistribution ref;
    if (base.variant == ChainVariant::Recom) {
        ExactDistribution full = exact_distribution(g, base.k, 0.0, override_guard);
        ref.k = full.k;
        ref.c = 0.0;
        ref.exact = true;
        for (size_t i = 0; i < full.support.size(); ++i) {
            if (!full.support[i].is_balanced()) continue;
            ref.support.push_back(full.support[i]);
            ref.weights.push_back(full.weights[i]);
            ref.z += full.weights[i];
        }
        if (ref.support.empty())
            fail(Errc::invalid_argument, "no balanced connected partition exists");
        long double zl = ref.z.convert_to<long double>();
        for (const auto& w : ref.weights)
            ref.probs.push_back(static_cast<double>(w.convert_to<long double>() / zl));
    } else {
        ref = exact_distribution(g, base.k, base.c, override_guard);
    }

    std::vector<Histogram> hist(grid.size());
    for (int t = 0; t < trials; ++t) {
        ChainParams params = base;
        params.seed = base.seed + 1000003ULL * static_cast<uint64_t>(t);
        params.steps = grid.back();
        ForestState state = initial ? *initial : default_initial_state(g, params);
        size_t next = 0;
        while (next < grid.size() && grid[next] == 0) {
            ++hist[next][state.partition()];
            ++next;
        }
        if (grid.back() > 0) {
            run_chain(params, std::move(state), [&](const ForestState& s, const StepRecord& rec) {
                while (next < grid.size() && grid[next] == rec.step + 1) {
                    ++hist[next][s.partition()];
                    ++next;
                }
            });
        }
    }

    MixingReport report;
    report.checkpoints = grid;
    for (size_t i = 0; i < grid.size(); ++i) report.tv.push_back(tv_distance(ref, hist[i]));
    int len = g.vertex_count() / 2;
    if (g.has_tags() && base.variant == ChainVariant::Recom && base.k == 3 && len % 3 == 0) {
        BigRational r = bottleneck_ratio(g, override_guard);
        report.has_bottleneck = true;
        report.bottleneck = static_cast<double>(boost::multiprecision::numerator(r).convert_to<long double>() /
                                                boost::multiprecision::denominator(r).convert_to<long double>());
        if (report.bottleneck > 0) report.mixing_lower_bound = 1.0 / (4.0 * report.bottleneck);
    }
    return report;
}

void write_mixing_csv(const MixingReport& report, std::ostream& out) {
    out << "steps,tv\n";
    for (size_t i = 0; i < report.checkpoints.size(); ++i)
        out << report.checkpoints[i] << ',' << report.tv[i] << '\n';
    if (report.has_bottleneck) {
        out << "# bottleneck_ratio=" << report.bottleneck << '\n';
        out << "# mixing_lower_bound=" << report.mixing_lower_bound << '\n';
    }
}

} // namespace fw
