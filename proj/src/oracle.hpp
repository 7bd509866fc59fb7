#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <map>
#include <vector>

#include "graph.hpp"
#include "partition.hpp"
#include "spanning.hpp"

namespace fw {

using BigRational = boost::multiprecision::cpp_rational;

BigInt binomial(int n, int k);

// All partitions of V into k nonempty connected parts, canonical and
// sorted. Refuses more than 20 vertices unless overridden; 64 is a hard
// limit (bitmask enumeration).
std::vector<PartitionView> enumerate_connected_partitions(const Graph& g, int k,
                                                          bool override_guard = false);

// Finite distribution over connected k-partitions with weight
// prod_i T(P_i) |P_i|^c. Weights and z are exact for integer c;
// probabilities are always populated.
struct ExactDistribution {
    int k = 0;
    double c = 0.0;
    bool exact = false;
    std::vector<PartitionView> support;  // sorted
    std::vector<BigInt> weights;         // empty unless exact
    BigInt z = 0;
    std::vector<double> probs;

    int index_of(const PartitionView& p) const;
};

ExactDistribution exact_distribution(const Graph& g, int k, double c,
                                     bool override_guard = false);

// Z_balanced / Z under the c=0 weights, exact.
BigRational fraction_balanced(const Graph& g, int k, bool override_guard = false);

using Histogram = std::map<PartitionView, int64_t>;

double tv_distance(const ExactDistribution& p, const ExactDistribution& q);
double tv_distance(const ExactDistribution& p, const Histogram& counts);
// Exact variant; both distributions must carry exact weights.
BigRational tv_distance_exact(const ExactDistribution& p, const ExactDistribution& q);

// Text table, one sorted row per partition: partition string, exact
// weight ("-" when not exact), decimal probability.
void write_distribution_table(const ExactDistribution& dist, std::ostream& out);

// ---- Double-cycle bottleneck statistics --------------------------------

struct GapProfile {
    struct Gap {
        EdgeClass side;  // LeftCycle or RightCycle
        int position;
        int edge;
    };
    std::vector<Gap> gaps;
    int phi = 0;                    // rung edges internal to parts
    int64_t position_sum = 0;       // raw sum of gap labels
    BigRational avg_gap_position;   // position_sum / |gaps|
    bool touches_zero = false;      // some gap sits at label 0
};

GapProfile gap_profile(const Graph& g, const PartitionView& p);

// True when some part contains no rung edge (membership in the
// low-conductance separator set).
bool has_rungless_part(const Graph& g, const PartitionView& p);

// The ladder 3-partition of a double cycle of length 3n whose parts are
// blocks of n consecutive columns starting at column j.
PartitionView ladder_partition(const Graph& g, int j);

// mu(C)/mu(A_0) under c=0 weights on the balanced states (the merge-
// split state space), where C = balanced 3-partitions with a rungless
// part; exact.
BigRational bottleneck_ratio(const Graph& g, bool override_guard = false);

// ---- ReCom reachability ------------------------------------------------

// States are the balanced connected k-partitions; a directed edge P->P'
// (P != P') exists when one merge-split move can produce P': two parts
// of P are adjacent and P' replaces them by an equal-size connected
// re-split, all else unchanged. Self loops are omitted.
struct ReachabilityGraph {
    std::vector<PartitionView> states;  // sorted
    std::vector<std::vector<int>> out;
};

ReachabilityGraph recom_reachability_graph(const Graph& g, int k,
                                           bool override_guard = false);
bool strongly_connected(const ReachabilityGraph& rg);

} // namespace fw
