#include "doctest.h"

#include <set>
#include <sstream>

#include "check.hpp"
#include "oracle.hpp"
#include "oracles.hpp"

using namespace fw;
using testsupport::thrown_errc;

TEST_CASE("binomial coefficients") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(12, 6) == 924);
    CHECK(binomial(4, 7) == 0);
    CHECK(binomial(7, 0) == 1);
}

TEST_CASE("connected partition enumeration matches brute force") {
    struct Instance {
        Graph g;
        int k;
    };
    std::vector<Instance> instances;
    instances.push_back({cycle(5), 2});
    instances.push_back({cycle(5), 3});
    instances.push_back({grid(2, 3), 2});
    instances.push_back({grid(2, 3), 3});
    instances.push_back({grid(3, 3), 3});
    instances.push_back({double_cycle(3), 2});
    instances.push_back({path(6), 4});
    for (const auto& inst : instances) {
        auto fast = enumerate_connected_partitions(inst.g, inst.k);
        auto slow = testsupport::brute_connected_partitions(inst.g, inst.k);
        REQUIRE(fast.size() == slow.size());
        for (size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);
        CHECK(std::is_sorted(fast.begin(), fast.end()));
    }
}

TEST_CASE("enumeration size guards") {
    CHECK(thrown_errc([] { enumerate_connected_partitions(grid(5, 5), 2); }) ==
          Errc::size_guard);
    CHECK(thrown_errc([] { enumerate_connected_partitions(grid(5, 13), 2, true); }) ==
          Errc::invalid_argument);
    // override admits the 21-vertex path
    auto parts = enumerate_connected_partitions(path(21), 3, true);
    CHECK(parts.size() == binomial(20, 2).convert_to<size_t>());
}

TEST_CASE("exact distribution weighs partitions by tree counts") {
    Graph g = grid(2, 3);
    auto dist = exact_distribution(g, 2, 0.0);
    REQUIRE(dist.exact);
    REQUIRE(dist.support.size() == 15);

    // per-partition weight equals the number of forests inducing it
    auto forests = testsupport::enumerate_forests(g, 2);
    std::map<PartitionView, int64_t> induced;
    for (const auto& f : forests) ++induced[testsupport::forest_partition(g, f)];
    BigInt z = 0;
    for (size_t i = 0; i < dist.support.size(); ++i) {
        CHECK(dist.weights[i] == induced.at(dist.support[i]));
        z += dist.weights[i];
        CHECK(dist.index_of(dist.support[i]) == static_cast<int>(i));
    }
    CHECK(dist.z == z);
    CHECK(dist.z == BigInt(forests.size()));
    double psum = 0;
    for (double p : dist.probs) psum += p;
    CHECK(psum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tilted weights carry the size factor") {
    Graph g = cycle(5);
    for (int c : {1, 2}) {
        auto dist = exact_distribution(g, 2, c);
        REQUIRE(dist.exact);
        auto flat = exact_distribution(g, 2, 0.0);
        REQUIRE(dist.support.size() == flat.support.size());
        BigInt zc = 0;
        for (size_t i = 0; i < dist.support.size(); ++i) {
            BigInt tilt = 1;
            for (int s : dist.support[i].sizes())
                for (int rep = 0; rep < c; ++rep) tilt *= s;
            CHECK(dist.weights[i] == flat.weights[i] * tilt);
            zc += dist.weights[i];
        }
        CHECK(dist.z == zc);
    }
    // chi-level cross-check: z equals the chi^c mass over all forests
    Graph h = grid(2, 3);
    auto tilted = exact_distribution(h, 2, 2.0);
    BigInt chi_total = 0;
    for (const auto& f : testsupport::enumerate_forests(h, 2))
        chi_total += testsupport::chi_weight(h.vertex_count(), h, f, 2);
    CHECK(tilted.z == chi_total);
}

TEST_CASE("non-integer c yields probabilities without exact weights") {
    auto dist = exact_distribution(cycle(4), 2, 0.5);
    CHECK_FALSE(dist.exact);
    CHECK(dist.weights.empty());
    double psum = 0;
    for (double p : dist.probs) psum += p;
    CHECK(psum == doctest::Approx(1.0));
}

TEST_CASE("fraction balanced on small cycles") {
    CHECK(fraction_balanced(cycle(4), 2) == BigRational(1, 3));
    CHECK(fraction_balanced(cycle(6), 2) == BigRational(1, 5));
    CHECK(fraction_balanced(cycle(6), 3) == BigRational(2, 20));
}

TEST_CASE("tv distances") {
    auto p = exact_distribution(grid(2, 3), 2, 0.0);
    auto q = exact_distribution(grid(2, 3), 2, 2.0);
    CHECK(tv_distance(p, p) == doctest::Approx(0.0));
    double d = tv_distance(p, q);
    CHECK(d > 0.0);
    CHECK(d < 1.0);
    BigRational exact = tv_distance_exact(p, q);
    CHECK(static_cast<double>(exact.convert_to<long double>()) == doctest::Approx(d));

    Histogram counts;
    counts[p.support[0]] = 3;
    counts[p.support[1]] = 1;
    double dh = tv_distance(p, counts);
    CHECK(dh > 0.0);
    CHECK(dh <= 1.0);
    // histogram exactly matching the distribution gives tv near 0
    Histogram perfect;
    for (size_t i = 0; i < p.support.size(); ++i)
        perfect[p.support[i]] = static_cast<int64_t>(p.weights[i].convert_to<long long>());
    CHECK(tv_distance(p, perfect) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("distribution table is sorted and parseable") {
    auto dist = exact_distribution(cycle(4), 2, 0.0);
    std::ostringstream out;
    write_distribution_table(dist, out);
    std::istringstream in(out.str());
    std::string line;
    int rows = 0;
    double psum = 0;
    while (std::getline(in, line)) {
        auto tab1 = line.find('\t');
        auto tab2 = line.find('\t', tab1 + 1);
        REQUIRE(tab1 != std::string::npos);
        REQUIRE(tab2 != std::string::npos);
        // rows come out in support order
        REQUIRE(rows < static_cast<int>(dist.support.size()));
        CHECK(line.substr(0, tab1) == dist.support[rows].to_string());
        CHECK(line.substr(tab1 + 1, tab2 - tab1 - 1) == "1");
        psum += std::stod(line.substr(tab2 + 1));
        ++rows;
    }
    CHECK(rows == 6);
    CHECK(psum == doctest::Approx(1.0));
}

TEST_CASE("gap profile reads the double-cycle tags") {
    Graph g = double_cycle(3);
    // columns {0,1} vs {2}: parts {0,1,3,4}, {2,5}
    auto p = PartitionView::from_parts(6, {{0, 1, 3, 4}, {2, 5}});
    auto prof = gap_profile(g, p);
    CHECK(prof.gaps.size() == 4);
    CHECK(prof.phi == 3);
    // cuts lie between columns 1|2 and 2|0: labels 2 and 0 on each cycle
    CHECK(prof.position_sum == 4);
    CHECK(prof.avg_gap_position == BigRational(1));
    CHECK(prof.touches_zero);
    CHECK_FALSE(has_rungless_part(g, p));

    auto q = PartitionView::from_parts(6, {{0, 1, 2}, {3, 4, 5}});
    CHECK(has_rungless_part(g, q));
    auto qprof = gap_profile(g, q);
    CHECK(qprof.phi == 0);
    CHECK(qprof.gaps.empty());

    CHECK(thrown_errc([&] { gap_profile(grid(2, 3), p); }) == Errc::unsupported_graph);
}

TEST_CASE("ladder partitions and the bottleneck ratio") {
    Graph g = double_cycle(6);
    auto a0 = ladder_partition(g, 0);
    CHECK(a0.part_count() == 3);
    CHECK(a0.is_balanced());
    CHECK_FALSE(has_rungless_part(g, a0));
    auto a1 = ladder_partition(g, 1);
    CHECK(a1 != a0);
    CHECK(thrown_errc([&] { ladder_partition(double_cycle(4), 0); }) ==
          Errc::invalid_argument);

    // independent recomputation from the exact distribution
    auto dist = exact_distribution(g, 3, 0.0);
    REQUIRE(dist.exact);
    BigInt c_mass = 0;
    for (size_t i = 0; i < dist.support.size(); ++i) {
        if (!dist.support[i].is_balanced()) continue;
        bool rungless = false;
        for (const auto& part : dist.support[i].parts()) {
            bool has_rung = false;
            for (size_t a = 0; a < part.size() && !has_rung; ++a)
                for (size_t b = a + 1; b < part.size() && !has_rung; ++b) {
                    int e = g.edge_between(part[a], part[b]);
                    if (e >= 0 && g.tag(e).cls == EdgeClass::Rung) has_rung = true;
                }
            if (!has_rung) rungless = true;
        }
        if (rungless) c_mass += dist.weights[i];
    }
    BigInt a0_mass = dist.weights[static_cast<size_t>(dist.index_of(a0))];
    CHECK(bottleneck_ratio(g) == BigRational(c_mass, a0_mass));
    CHECK(bottleneck_ratio(g) == BigRational(3, 4));
}

TEST_CASE("reachability graphs") {
    auto frozen = recom_reachability_graph(cycle(6), 3);
    CHECK(frozen.states.size() == 2);
    for (const auto& out : frozen.out) CHECK(out.empty());
    CHECK_FALSE(strongly_connected(frozen));

    auto dc = recom_reachability_graph(double_cycle(3), 3);
    CHECK(dc.states.size() > 1);
    CHECK(strongly_connected(dc));
    // edges must link states differing in exactly two parts
    for (size_t i = 0; i < dc.states.size(); ++i)
        for (int j : dc.out[i]) {
            CHECK(j != static_cast<int>(i));
            const auto& a = dc.states[i].parts();
            const auto& b = dc.states[j].parts();
            std::set<std::vector<int>> sa(a.begin(), a.end());
            std::set<std::vector<int>> sb(b.begin(), b.end());
            std::vector<std::vector<int>> only_a;
            for (const auto& part : sa)
                if (!sb.count(part)) only_a.push_back(part);
            CHECK(only_a.size() == 2);
        }

    auto ladder = recom_reachability_graph(grid(2, 4), 2);
    CHECK(ladder.states.size() > 1);
    CHECK(strongly_connected(ladder));
}
