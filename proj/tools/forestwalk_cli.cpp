// Command line front end. Talks to the library exclusively through the
// C API in forestwalk.h; config munging uses the vendored JSON parser.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "forestwalk.h"

namespace {

using Json = nlohmann::json;

// 0 success, 2 invalid config or arguments, 3 chain or runtime failure,
// 4 size guard.
int exit_code_for(int status) {
    switch (status) {
        case FW_OK:
            return 0;
        case FW_ERR_INVALID_ARGUMENT:
        case FW_ERR_UNSUPPORTED_GRAPH:
        case FW_ERR_IO_FAILURE:
            return 2;
        case FW_ERR_SIZE_GUARD:
            return 4;
        default:
            return 3;
    }
}

int report(int status) {
    if (status != FW_OK) std::cerr << "error: " << fw_last_error() << "\n";
    return exit_code_for(status);
}

struct GraphArgs {
    std::string generator;
    std::vector<int> args;
    std::string file;
};

void add_graph_flags(CLI::App* cmd, GraphArgs& ga) {
    cmd->add_option("-g,--generator", ga.generator,
                    "path|cycle|grid|double_cycle|grid_with_hole");
    cmd->add_option("-a,--args", ga.args, "generator arguments")->delimiter(',');
    cmd->add_option("-f,--file", ga.file, "edge list file instead of a generator");
}

int build_graph(const GraphArgs& ga, fw_graph** out) {
    if (!ga.file.empty()) {
        if (!ga.generator.empty()) {
            std::cerr << "error: give either --generator or --file, not both\n";
            return FW_ERR_INVALID_ARGUMENT;
        }
        return fw_graph_read_file(ga.file.c_str(), out);
    }
    if (ga.generator.empty()) {
        std::cerr << "error: a graph is required (--generator or --file)\n";
        return FW_ERR_INVALID_ARGUMENT;
    }
    return fw_graph_generate(ga.generator.c_str(), ga.args.data(),
                             static_cast<int>(ga.args.size()), out);
}

struct ConfigArgs {
    std::string path;
    std::optional<uint64_t> seed;
    std::optional<int64_t> samples;
    std::optional<int64_t> burn_in;
    std::optional<int64_t> thin;
    std::optional<int64_t> budget;
    std::optional<std::string> out;
    std::optional<std::string> render_dir;
    std::optional<int> render_count;
    GraphArgs graph;
    std::optional<std::string> variant;
    std::optional<int> k;
    std::optional<double> c;
};

void add_config_flags(CLI::App* cmd, ConfigArgs& ca, bool with_run = true) {
    cmd->add_option("--config", ca.path, "JSON run config")->check(CLI::ExistingFile);
    add_graph_flags(cmd, ca.graph);
    cmd->add_option("--variant", ca.variant, "recom|forest_walk");
    cmd->add_option("-k", ca.k, "number of parts");
    cmd->add_option("-c", ca.c, "component size exponent");
    cmd->add_option("--seed", ca.seed, "chain seed");
    if (with_run) {
        cmd->add_option("--samples", ca.samples, "samples to emit");
        cmd->add_option("--burn-in", ca.burn_in, "moves before the first sample");
        cmd->add_option("--thin", ca.thin, "moves between samples (default: edge count)");
        cmd->add_option("-o,--out", ca.out, "output path ('-' for stdout)");
    }
}

// Loads the config file (or starts from an empty object) and applies
// flag overrides, returning the merged JSON text.
std::string merge_config(const ConfigArgs& ca) {
    Json root = Json::object();
    if (!ca.path.empty()) {
        std::ifstream in(ca.path);
        if (!in) throw std::runtime_error("cannot read config " + ca.path);
        std::ostringstream buf;
        buf << in.rdbuf();
        root = Json::parse(buf.str());
    }
    if (!ca.graph.generator.empty()) {
        root["graph"]["generator"] = ca.graph.generator;
        root["graph"]["args"] = ca.graph.args;
        root["graph"].erase("file");
    }
    if (!ca.graph.file.empty()) {
        root["graph"] = Json::object();
        root["graph"]["file"] = ca.graph.file;
    }
    if (ca.variant) root["chain"]["variant"] = *ca.variant;
    if (ca.k) root["chain"]["k"] = *ca.k;
    if (ca.c) root["chain"]["c"] = *ca.c;
    if (ca.seed) root["chain"]["seed"] = *ca.seed;
    if (ca.samples) root["run"]["samples"] = *ca.samples;
    if (ca.burn_in) root["run"]["burn_in"] = *ca.burn_in;
    if (ca.thin) root["run"]["thin"] = *ca.thin;
    if (ca.budget) root["run"]["reject_budget"] = *ca.budget;
    if (ca.out) root["output"]["path"] = *ca.out;
    if (ca.render_dir) root["output"]["render_dir"] = *ca.render_dir;
    if (ca.render_count) root["output"]["render_count"] = *ca.render_count;
    return root.dump();
}

std::string output_path(const ConfigArgs& ca, const std::string& merged) {
    if (ca.out) return *ca.out;
    Json root = Json::parse(merged);
    if (root.contains("output") && root["output"].contains("path"))
        return root["output"]["path"].get<std::string>();
    return "-";
}

std::vector<int64_t> parse_checkpoints(const std::string& csv) {
    std::vector<int64_t> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoll(tok));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"forestwalk: merge-split and forest-walk partition sampling"};
    app.require_subcommand(1);
    app.set_version_flag("--version", fw_version());

    // gen
    GraphArgs gen_graph;
    std::string gen_out = "-";
    CLI::App* gen = app.add_subcommand("gen", "generate a graph and print its edge list");
    add_graph_flags(gen, gen_graph);
    gen->add_option("-o,--out", gen_out, "output path ('-' for stdout)");

    // count
    GraphArgs count_graph;
    bool count_log = false;
    CLI::App* count = app.add_subcommand("count", "count spanning trees");
    add_graph_flags(count, count_graph);
    count->add_flag("--log", count_log, "print the natural log instead");

    // exact
    GraphArgs exact_graph;
    int exact_k = 2;
    double exact_c = 0.0;
    bool exact_guard = false;
    std::string exact_out = "-";
    CLI::App* exact = app.add_subcommand(
        "exact", "exact distribution over connected k-partitions");
    add_graph_flags(exact, exact_graph);
    exact->add_option("-k", exact_k, "number of parts");
    exact->add_option("-c", exact_c, "component size exponent");
    exact->add_flag("--override-guard", exact_guard, "allow more than 20 vertices");
    exact->add_option("-o,--out", exact_out, "output path ('-' for stdout)");

    // sample
    ConfigArgs sample_args;
    CLI::App* sample = app.add_subcommand("sample", "run a chain and emit JSONL samples");
    add_config_flags(sample, sample_args);

    // reject
    ConfigArgs reject_args;
    CLI::App* reject = app.add_subcommand(
        "reject", "rejection-sample balanced partitions via the forest walk");
    add_config_flags(reject, reject_args);
    reject->add_option("--budget", reject_args.budget, "maximum tries");

    // mix-report
    ConfigArgs mix_args;
    std::string mix_checkpoints = "0,10,30,100,300,1000";
    int mix_trials = 20;
    bool mix_guard = false;
    CLI::App* mix = app.add_subcommand("mix-report", "TV-vs-exact mixing table (CSV)");
    add_config_flags(mix, mix_args);
    mix->add_option("--checkpoints", mix_checkpoints, "comma separated step counts");
    mix->add_option("--trials", mix_trials, "independent chains to pool");
    mix->add_flag("--override-guard", mix_guard, "allow more than 20 vertices");

    // render
    ConfigArgs render_args;
    CLI::App* render = app.add_subcommand("render", "render sampled partitions to images");
    add_config_flags(render, render_args);
    render->add_option("--render-dir", render_args.render_dir, "image output directory");
    render->add_option("--render-count", render_args.render_count, "images to write");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            fw_graph* g = nullptr;
            int rc = build_graph(gen_graph, &g);
            if (rc != FW_OK) return report(rc);
            if (gen_out == "-" || gen_out.empty()) {
                char* text = nullptr;
                rc = fw_graph_to_text(g, &text);
                if (rc == FW_OK) std::cout << text;
                fw_string_free(text);
            } else {
                rc = fw_graph_write_file(g, gen_out.c_str());
            }
            fw_graph_free(g);
            return report(rc);
        }

        if (count->parsed()) {
            fw_graph* g = nullptr;
            int rc = build_graph(count_graph, &g);
            if (rc != FW_OK) return report(rc);
            if (count_log) {
                double v = 0;
                rc = fw_log_count_spanning_trees(g, &v);
                if (rc == FW_OK) std::printf("%.17g\n", v);
            } else {
                char* s = nullptr;
                rc = fw_count_spanning_trees(g, &s);
                if (rc == FW_OK) std::cout << s << "\n";
                fw_string_free(s);
            }
            fw_graph_free(g);
            return report(rc);
        }

        if (exact->parsed()) {
            fw_graph* g = nullptr;
            int rc = build_graph(exact_graph, &g);
            if (rc != FW_OK) return report(rc);
            fw_dist* d = nullptr;
            rc = fw_exact_distribution(g, exact_k, exact_c, exact_guard ? 1 : 0, &d);
            if (rc == FW_OK) {
                char* table = nullptr;
                rc = fw_dist_table(d, &table);
                if (rc == FW_OK) {
                    if (exact_out == "-" || exact_out.empty()) {
                        std::cout << table;
                    } else {
                        std::ofstream out(exact_out, std::ios::binary);
                        if (out)
                            out << table;
                        else
                            rc = FW_ERR_IO_FAILURE;
                        if (rc == FW_ERR_IO_FAILURE)
                            std::cerr << "error: cannot open " << exact_out << "\n";
                    }
                }
                fw_string_free(table);
            }
            fw_dist_free(d);
            fw_graph_free(g);
            return rc == FW_ERR_IO_FAILURE ? 2 : report(rc);
        }

        if (sample->parsed()) {
            std::string cfg = merge_config(sample_args);
            std::string out = output_path(sample_args, cfg);
            return report(fw_sample_jsonl(cfg.c_str(), out.c_str()));
        }

        if (reject->parsed()) {
            std::string cfg = merge_config(reject_args);
            std::string out = output_path(reject_args, cfg);
            int64_t tried = 0, accepted = 0;
            double rate = 0, lo = 0, hi = 0;
            int rc = fw_reject_jsonl(cfg.c_str(), out.c_str(), &tried, &accepted, &rate,
                                     &lo, &hi);
            if (rc == FW_OK)
                std::fprintf(stderr,
                             "accepted %lld of %lld (rate %.6g, 95%% CI [%.6g, %.6g])\n",
                             static_cast<long long>(accepted),
                             static_cast<long long>(tried), rate, lo, hi);
            return report(rc);
        }

        if (mix->parsed()) {
            std::string cfg = merge_config(mix_args);
            std::string out = output_path(mix_args, cfg);
            std::vector<int64_t> cps = parse_checkpoints(mix_checkpoints);
            return report(fw_mix_report_csv(cfg.c_str(), cps.data(),
                                            static_cast<int>(cps.size()), mix_trials,
                                            mix_guard ? 1 : 0, out.c_str()));
        }

        if (render->parsed()) {
            std::string cfg = merge_config(render_args);
            return report(fw_render_samples(cfg.c_str()));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
