#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chains.hpp"
#include "graph.hpp"
#include "oracle.hpp"

namespace fw {

struct GraphSpec {
    std::string generator;  // path|cycle|grid|double_cycle|grid_with_hole
    std::vector<int> args;
    std::string file;  // edge-list path; used when generator is empty
};

Graph build_graph(const GraphSpec& spec);

struct RunConfig {
    GraphSpec graph;
    ChainParams chain;
    int64_t burn_in = 0;
    int64_t thin = -1;  // steps between samples; -1 picks the edge count
    int64_t samples = 1;
    int64_t reject_budget = -1;  // tries for rejection sampling; -1 picks 100x samples
    std::string output_path;     // "-" or empty for stdout
    std::string render_dir;
    int render_count = 0;
};

// Parses the documented JSON config (sections "graph", "chain", "run",
// "output"). Unknown keys are rejected.
RunConfig parse_run_config(const std::string& json_text);

// Balanced start (seeded off chain.seed, separate stream) when k divides
// n; otherwise, or when no balanced state turns up and the variant
// tolerates it, a uniform spanning tree with k-1 random edges removed.
ForestState default_initial_state(const Graph& g, const ChainParams& chain);

struct EnsembleRecord {
    int64_t index = 0;
    int64_t step = 0;
    std::vector<int> assignment;
    std::vector<int> sizes;  // canonical part order
    double log_weight = 0;   // partition log weight at c = 0
    bool has_gap_stats = false;
    int phi = 0;
    double avg_gap = 0;
    bool balanced = false;
};

// One line of JSON with fixed key order.
std::string ensemble_record_json(const EnsembleRecord& rec);

using RecordSink = std::function<void(const EnsembleRecord&)>;

// Runs the configured chain and emits `samples` records, record i taken
// after burn_in + i*thin moves. Deterministic per config.
void sample_ensemble(const RunConfig& cfg, const RecordSink& sink);
void write_ensemble_jsonl(const RunConfig& cfg, std::ostream& out);

struct AcceptanceReport {
    int64_t tried = 0;
    int64_t accepted = 0;
    double rate = 0;
    double ci_low = 0;  // 95% Wilson interval on the acceptance rate
    double ci_high = 0;
};

// Draws thinned samples and keeps the balanced ones until `samples`
// acceptances or the try budget runs out; zero acceptances raise
// budget-exhausted with the observed upper bound in the message.
AcceptanceReport rejection_sample_balanced(const RunConfig& cfg, const RecordSink& sink);

struct BalanceProfile {
    int64_t count = 0;
    double fraction_balanced = 0;
    std::vector<double> ratios;  // per record max/min part size
    double mean_ratio = 0;
    double min_ratio = 0;
    double max_ratio = 0;
};

BalanceProfile balance_profile(const std::vector<EnsembleRecord>& records);

struct MixingReport {
    std::vector<int64_t> checkpoints;
    std::vector<double> tv;  // empirical TV to the reference at each checkpoint
    bool has_bottleneck = false;
    double bottleneck = 0;           // mu(C)/mu(A_0) when the graph supports it
    double mixing_lower_bound = 0;   // 1/(4*bottleneck) diagnostic
};

// Pools `trials` independent chains and reports the TV decay against
// the exact reference: mu^c for the forest walk, mu* conditioned on
// balanced for ReCom. The initial state defaults to a fresh balanced
// one per trial; pass `initial` to pin it (shared by all trials).
MixingReport mixing_report(const Graph& g, const ChainParams& base,
                           const std::vector<int64_t>& checkpoints, int trials,
                           const std::optional<ForestState>& initial = {},
                           bool override_guard = false);

void write_mixing_csv(const MixingReport& report, std::ostream& out);

} // namespace fw
