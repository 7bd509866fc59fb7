#include "forestwalk.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "chains.hpp"
#include "ensemble.hpp"
#include "error.hpp"
#include "forest.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "render.hpp"
#include "rng.hpp"
#include "spanning.hpp"

struct fw_graph {
    std::shared_ptr<const fw::Graph> g;
};

struct fw_forest {
    std::shared_ptr<const fw::Graph> g;
    fw::ForestState state;
};

struct fw_chain {
    std::shared_ptr<const fw::Graph> g;
    fw::ChainParams params;
    fw::ForestState state;
    fw::Pcg32 rng;
    int64_t steps_done = 0;
};

struct fw_dist {
    fw::ExactDistribution d;
};

namespace {

thread_local std::string t_last_error;

int map_errc(fw::Errc code) {
    using fw::Errc;
    switch (code) {
        case Errc::invalid_argument: return FW_ERR_INVALID_ARGUMENT;
        case Errc::invalid_forest: return FW_ERR_INVALID_FOREST;
        case Errc::cycle_edge: return FW_ERR_CYCLE_EDGE;
        case Errc::edge_not_present: return FW_ERR_EDGE_NOT_PRESENT;
        case Errc::not_connected: return FW_ERR_NOT_CONNECTED;
        case Errc::no_spanning_tree: return FW_ERR_NO_SPANNING_TREE;
        case Errc::initialization_failure: return FW_ERR_INITIALIZATION_FAILURE;
        case Errc::step_failure: return FW_ERR_STEP_FAILURE;
        case Errc::size_guard: return FW_ERR_SIZE_GUARD;
        case Errc::unsupported_graph: return FW_ERR_UNSUPPORTED_GRAPH;
        case Errc::numerical_failure: return FW_ERR_NUMERICAL_FAILURE;
        case Errc::budget_exhausted: return FW_ERR_BUDGET_EXHAUSTED;
        case Errc::io_failure: return FW_ERR_IO_FAILURE;
    }
    return FW_ERR_UNKNOWN;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return FW_OK;
    } catch (const fw::Error& e) {
        t_last_error = e.what();
        return map_errc(e.code());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return FW_ERR_UNKNOWN;
    } catch (...) {
        t_last_error = "unknown error";
        return FW_ERR_UNKNOWN;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) fw::fail(fw::Errc::io_failure, "out of memory");
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool ok, const char* what) {
    if (!ok) fw::fail(fw::Errc::invalid_argument, what);
}

fw::ChainVariant parse_variant(const char* variant) {
    require(variant != nullptr, "null variant");
    std::string v = variant;
    if (v == "recom") return fw::ChainVariant::Recom;
    if (v == "forest_walk") return fw::ChainVariant::ForestWalk;
    fw::fail(fw::Errc::invalid_argument, "variant must be recom or forest_walk");
}

// Runs fn(out) with out bound to the file at path, or to stdout when
// path is null, empty, or "-".
template <typename Fn>
void with_output(const char* path, Fn&& fn) {
    if (!path || !*path || std::strcmp(path, "-") == 0) {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fw::fail(fw::Errc::io_failure, std::string("cannot open ") + path);
    fn(out);
    out.flush();
    if (!out) fw::fail(fw::Errc::io_failure, std::string("write failed for ") + path);
}

fw::ChainParams make_params(const char* variant, int k, double c, uint64_t seed,
                            int resample_cap) {
    fw::ChainParams params;
    params.variant = parse_variant(variant);
    params.k = k;
    params.c = c;
    params.seed = seed;
    if (resample_cap > 0) params.resample_cap = resample_cap;
    return params;
}

fw_chain* new_chain(const fw_graph* g, fw::ChainParams params, fw::ForestState state) {
    params.steps = 0;
    state = fw::run_chain(params, std::move(state));  // validates
    return new fw_chain{g->g, params, std::move(state), fw::Pcg32(params.seed), 0};
}

} // namespace

extern "C" {

const char* fw_version(void) { return "0.1.0"; }

const char* fw_last_error(void) { return t_last_error.c_str(); }

void fw_string_free(char* s) { std::free(s); }

/* ---- Graphs --------------------------------------------------------- */

int fw_graph_generate(const char* name, const int* args, int nargs, fw_graph** out) {
    return guarded([&] {
        require(name && out, "null argument");
        require(nargs >= 0 && (nargs == 0 || args), "bad args array");
        fw::GraphSpec spec;
        spec.generator = name;
        spec.args.assign(args, args + nargs);
        *out = new fw_graph{std::make_shared<fw::Graph>(fw::build_graph(spec))};
    });
}

int fw_graph_read_file(const char* path, fw_graph** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new fw_graph{std::make_shared<fw::Graph>(fw::read_edge_list_file(path))};
    });
}

int fw_graph_from_text(const char* edge_list, fw_graph** out) {
    return guarded([&] {
        require(edge_list && out, "null argument");
        std::istringstream in{std::string(edge_list)};
        *out = new fw_graph{std::make_shared<fw::Graph>(fw::read_edge_list(in))};
    });
}

int fw_graph_to_text(const fw_graph* g, char** out_text) {
    return guarded([&] {
        require(g && out_text, "null argument");
        std::ostringstream out;
        fw::write_edge_list(*g->g, out);
        *out_text = dup_string(out.str());
    });
}

int fw_graph_write_file(const fw_graph* g, const char* path) {
    return guarded([&] {
        require(g && path, "null argument");
        fw::write_edge_list_file(*g->g, path);
    });
}

int fw_graph_vertex_count(const fw_graph* g) { return g ? g->g->vertex_count() : -1; }

int fw_graph_edge_count(const fw_graph* g) { return g ? g->g->edge_count() : -1; }

int fw_graph_edge(const fw_graph* g, int e, int* u, int* v) {
    return guarded([&] {
        require(g && u && v, "null argument");
        require(e >= 0 && e < g->g->edge_count(), "edge id out of range");
        auto [a, b] = g->g->edge(e);
        *u = a;
        *v = b;
    });
}

void fw_graph_free(fw_graph* g) { delete g; }

int fw_count_spanning_trees(const fw_graph* g, char** out_decimal) {
    return guarded([&] {
        require(g && out_decimal, "null argument");
        *out_decimal = dup_string(fw::count_spanning_trees(*g->g).str());
    });
}

int fw_log_count_spanning_trees(const fw_graph* g, double* out_log) {
    return guarded([&] {
        require(g && out_log, "null argument");
        *out_log = fw::log_count_spanning_trees(*g->g);
    });
}

/* ---- Forests --------------------------------------------------------- */

int fw_forest_create(const fw_graph* g, fw_forest** out) {
    return guarded([&] {
        require(g && out, "null argument");
        *out = new fw_forest{g->g, fw::ForestState(*g->g)};
    });
}

int fw_forest_from_edges(const fw_graph* g, const int* edges, int nedges, fw_forest** out) {
    return guarded([&] {
        require(g && out, "null argument");
        require(nedges >= 0 && (nedges == 0 || edges), "bad edge array");
        std::vector<int> e(edges, edges + nedges);
        *out = new fw_forest{g->g, fw::ForestState::from_edges(*g->g, e)};
    });
}

int fw_forest_link(fw_forest* f, int edge) {
    return guarded([&] {
        require(f, "null forest");
        f->state.link(edge);
    });
}

int fw_forest_cut(fw_forest* f, int edge) {
    return guarded([&] {
        require(f, "null forest");
        f->state.cut(edge);
    });
}

int fw_forest_connected(fw_forest* f, int u, int v, int* out_connected) {
    return guarded([&] {
        require(f && out_connected, "null argument");
        *out_connected = f->state.connected(u, v) ? 1 : 0;
    });
}

int fw_forest_component_count(const fw_forest* f) {
    return f ? f->state.component_count() : -1;
}

int fw_forest_component_size(fw_forest* f, int v, int* out_size) {
    return guarded([&] {
        require(f && out_size, "null argument");
        *out_size = f->state.component_size_of(v);
    });
}

int fw_forest_assignment(const fw_forest* f, int* out_assignment) {
    return guarded([&] {
        require(f && out_assignment, "null argument");
        std::vector<int> a = f->state.component_assignment();
        std::copy(a.begin(), a.end(), out_assignment);
    });
}

int fw_forest_edges(const fw_forest* f, int* out_edges, int cap, int* out_count) {
    return guarded([&] {
        require(f && out_count, "null argument");
        std::vector<int> e = f->state.sorted_forest_edges();
        *out_count = static_cast<int>(e.size());
        if (!out_edges) return;
        require(cap >= static_cast<int>(e.size()), "edge buffer too small");
        std::copy(e.begin(), e.end(), out_edges);
    });
}

void fw_forest_free(fw_forest* f) { delete f; }

/* ---- Chains ----------------------------------------------------------- */

int fw_chain_create(const fw_graph* g, const char* variant, int k, double c,
                    uint64_t seed, int resample_cap, fw_chain** out) {
    return guarded([&] {
        require(g && out, "null argument");
        fw::ChainParams params = make_params(variant, k, c, seed, resample_cap);
        *out = new_chain(g, params, fw::default_initial_state(*g->g, params));
    });
}

int fw_chain_create_from_edges(const fw_graph* g, const char* variant, int k, double c,
                               uint64_t seed, int resample_cap,
                               const int* edges, int nedges, fw_chain** out) {
    return guarded([&] {
        require(g && out, "null argument");
        require(nedges >= 0 && (nedges == 0 || edges), "bad edge array");
        fw::ChainParams params = make_params(variant, k, c, seed, resample_cap);
        std::vector<int> e(edges, edges + nedges);
        *out = new_chain(g, params, fw::ForestState::from_edges(*g->g, e, params.backend));
    });
}

int fw_chain_step(fw_chain* ch) { return fw_chain_run(ch, 1); }

int fw_chain_run(fw_chain* ch, int64_t steps) {
    return guarded([&] {
        require(ch, "null chain");
        require(steps >= 0, "negative step count");
        for (int64_t t = 0; t < steps; ++t) {
            if (ch->params.variant == fw::ChainVariant::Recom)
                fw::recom_step(ch->state, ch->params, ch->rng);
            else
                fw::forest_walk_step(ch->state, ch->params, ch->rng);
            ++ch->steps_done;
        }
    });
}

int64_t fw_chain_steps_done(const fw_chain* ch) { return ch ? ch->steps_done : -1; }

int fw_chain_assignment(const fw_chain* ch, int* out_assignment) {
    return guarded([&] {
        require(ch && out_assignment, "null argument");
        std::vector<int> a = ch->state.component_assignment();
        std::copy(a.begin(), a.end(), out_assignment);
    });
}

int fw_chain_component_count(const fw_chain* ch) {
    return ch ? ch->state.component_count() : -1;
}

void fw_chain_free(fw_chain* ch) { delete ch; }

/* ---- Exact distributions --------------------------------------------- */

int fw_exact_distribution(const fw_graph* g, int k, double c, int override_guard,
                          fw_dist** out) {
    return guarded([&] {
        require(g && out, "null argument");
        *out = new fw_dist{fw::exact_distribution(*g->g, k, c, override_guard != 0)};
    });
}

int fw_dist_size(const fw_dist* d) {
    return d ? static_cast<int>(d->d.support.size()) : -1;
}

int fw_dist_row(const fw_dist* d, int i, char** out_partition, char** out_weight,
                double* out_prob) {
    return guarded([&] {
        require(d, "null distribution");
        require(i >= 0 && i < static_cast<int>(d->d.support.size()), "row out of range");
        if (out_partition) *out_partition = dup_string(d->d.support[i].to_string());
        if (out_weight)
            *out_weight = dup_string(d->d.exact ? d->d.weights[i].str() : std::string("-"));
        if (out_prob) *out_prob = d->d.probs[i];
    });
}

int fw_dist_table(const fw_dist* d, char** out_text) {
    return guarded([&] {
        require(d && out_text, "null argument");
        std::ostringstream out;
        fw::write_distribution_table(d->d, out);
        *out_text = dup_string(out.str());
    });
}

void fw_dist_free(fw_dist* d) { delete d; }

int fw_fraction_balanced(const fw_graph* g, int k, int override_guard, char** out_ratio) {
    return guarded([&] {
        require(g && out_ratio, "null argument");
        fw::BigRational r = fw::fraction_balanced(*g->g, k, override_guard != 0);
        *out_ratio = dup_string(boost::multiprecision::numerator(r).str() + "/" +
                                boost::multiprecision::denominator(r).str());
    });
}

/* ---- Config-driven runs ----------------------------------------------- */

int fw_config_validate(const char* config_json) {
    return guarded([&] {
        require(config_json, "null config");
        fw::RunConfig cfg = fw::parse_run_config(config_json);
        fw::build_graph(cfg.graph);
    });
}

int fw_sample_jsonl(const char* config_json, const char* out_path) {
    return guarded([&] {
        require(config_json, "null config");
        fw::RunConfig cfg = fw::parse_run_config(config_json);
        with_output(out_path, [&](std::ostream& out) { fw::write_ensemble_jsonl(cfg, out); });
    });
}

int fw_reject_jsonl(const char* config_json, const char* out_path,
                    int64_t* out_tried, int64_t* out_accepted,
                    double* out_rate, double* out_ci_low, double* out_ci_high) {
    return guarded([&] {
        require(config_json, "null config");
        fw::RunConfig cfg = fw::parse_run_config(config_json);
        fw::AcceptanceReport rep;
        with_output(out_path, [&](std::ostream& out) {
            rep = fw::rejection_sample_balanced(cfg, [&](const fw::EnsembleRecord& rec) {
                out << fw::ensemble_record_json(rec) << '\n';
            });
        });
        if (out_tried) *out_tried = rep.tried;
        if (out_accepted) *out_accepted = rep.accepted;
        if (out_rate) *out_rate = rep.rate;
        if (out_ci_low) *out_ci_low = rep.ci_low;
        if (out_ci_high) *out_ci_high = rep.ci_high;
    });
}

int fw_mix_report_csv(const char* config_json, const int64_t* checkpoints,
                      int ncheckpoints, int trials, int override_guard,
                      const char* out_path) {
    return guarded([&] {
        require(config_json, "null config");
        require(ncheckpoints > 0 && checkpoints, "need at least one checkpoint");
        fw::RunConfig cfg = fw::parse_run_config(config_json);
        fw::Graph g = fw::build_graph(cfg.graph);
        std::vector<int64_t> grid(checkpoints, checkpoints + ncheckpoints);
        fw::MixingReport report =
            fw::mixing_report(g, cfg.chain, grid, trials, {}, override_guard != 0);
        with_output(out_path, [&](std::ostream& out) { fw::write_mixing_csv(report, out); });
    });
}

int fw_render_samples(const char* config_json) {
    return guarded([&] {
        require(config_json, "null config");
        fw::RunConfig cfg = fw::parse_run_config(config_json);
        if (cfg.render_dir.empty())
            fw::fail(fw::Errc::invalid_argument, "config sets no output.render_dir");
        fw::Graph g = fw::build_graph(cfg.graph);
        std::error_code ec;
        std::filesystem::create_directories(cfg.render_dir, ec);
        if (ec)
            fw::fail(fw::Errc::io_failure, "cannot create " + cfg.render_dir);
        int64_t limit = cfg.render_count > 0 ? cfg.render_count : cfg.samples;
        fw::sample_ensemble(cfg, [&](const fw::EnsembleRecord& rec) {
            if (rec.index >= limit) return;
            fw::PartitionView p =
                fw::PartitionView::from_assignment(rec.assignment);
            auto [format, bytes] = fw::render_partition_bytes(g, p);
            char name[32];
            std::snprintf(name, sizeof(name), "sample_%04lld.%s",
                          static_cast<long long>(rec.index),
                          format == fw::RenderFormat::Ppm ? "ppm" : "svg");
            std::filesystem::path path = std::filesystem::path(cfg.render_dir) / name;
            std::ofstream out(path, std::ios::binary);
            if (!out) fw::fail(fw::Errc::io_failure, "cannot open " + path.string());
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            if (!out) fw::fail(fw::Errc::io_failure, "write failed for " + path.string());
        });
    });
}

int fw_render_partition(const fw_graph* g, const int* assignment, const char* path) {
    return guarded([&] {
        require(g && assignment && path, "null argument");
        std::vector<int> a(assignment, assignment + g->g->vertex_count());
        fw::PartitionView p = fw::PartitionView::from_assignment(a);
        fw::render_partition(*g->g, p, path);
    });
}

} // extern "C"
