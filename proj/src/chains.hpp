#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "forest.hpp"
#include "graph.hpp"
#include "partition.hpp"
#include "rng.hpp"

namespace fw {

enum class ChainVariant { Recom, ForestWalk };

struct ChainParams {
    int k = 2;
    double c = 0.0;  // bias exponent, forest walk only
    ChainVariant variant = ChainVariant::ForestWalk;
    uint64_t seed = 0;
    int64_t steps = 0;
    int resample_cap = 10000;
    ForestBackend backend = ForestBackend::LinkCut;
};

// One recorded move, replayable against the pre-move state.
struct StepRecord {
    int64_t step = -1;
    ChainVariant variant = ChainVariant::ForestWalk;

    // forest walk fields
    int up_edge = -1;
    int down_edge = -1;
    bool joins_components = false;  // added edge bridged two components
    bool lazy = false;              // down_edge == up_edge, state unchanged

    // ReCom fields
    int boundary_edge = -1;
    int removed_edge = -1;
    int resample_count = 0;
    // When resample_count > 0, the fresh spanning tree of the merged
    // region that replaced its forest edges (host edge indices).
    std::vector<int> resampled_tree;

    std::vector<int> post_sizes;  // component sizes after the move, ascending
};

// Recursive tree bisection: repeatedly draw a spanning tree of the
// region and look for an edge realizing the target split; retries are
// bounded, exhaustion raises initialization-failure.
ForestState initial_balanced_state(const Graph& g, int k, Pcg32& rng,
                                   ForestBackend backend = ForestBackend::LinkCut);

// Deterministic forest (breadth-first tree per part); parts must induce
// connected subgraphs.
ForestState forest_from_partition(const Graph& g, const PartitionView& p,
                                  ForestBackend backend = ForestBackend::LinkCut);

StepRecord recom_step(ForestState& s, const ChainParams& params, Pcg32& rng);
StepRecord forest_walk_step(ForestState& s, const ChainParams& params, Pcg32& rng);

// Replays a recorded move; s must be in the pre-move configuration.
void apply_record(ForestState& s, const StepRecord& rec);

using ChainObserver = std::function<void(const ForestState&, const StepRecord&)>;

// Runs params.steps moves of the configured variant, invoking the
// observer after every move. Deterministic given (params.seed, initial).
ForestState run_chain(const ChainParams& params, ForestState initial,
                      const ChainObserver& observer = nullptr);

} // namespace fw
