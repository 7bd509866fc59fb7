#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <unordered_map>

#include "error.hpp"

namespace fw {

namespace {

constexpr int kSizeGuard = 20;

void check_guard(const Graph& g, bool override_guard) {
    if (g.vertex_count() > 64)
        fail(Errc::invalid_argument, "enumeration supports at most 64 vertices");
    if (!override_guard && g.vertex_count() > kSizeGuard)
        fail(Errc::size_guard, "enumeration refused beyond " + std::to_string(kSizeGuard) +
                                   " vertices; pass the override flag to proceed");
}

struct MaskGraph {
    int n;
    std::vector<uint64_t> nbr;  // neighbor mask per vertex
    uint64_t all;

    explicit MaskGraph(const Graph& g) : n(g.vertex_count()), nbr(g.vertex_count(), 0) {
        for (const auto& e : g.edges()) {
            nbr[e.u] |= uint64_t(1) << e.v;
            nbr[e.v] |= uint64_t(1) << e.u;
        }
        all = n == 64 ? ~uint64_t(0) : (uint64_t(1) << n) - 1;
    }

    int components(uint64_t set) const {
        int comps = 0;
        while (set) {
            ++comps;
            uint64_t comp = set & -set;
            for (;;) {
                uint64_t grow = 0;
                uint64_t scan = comp;
                while (scan) {
                    int v = std::countr_zero(scan);
                    scan &= scan - 1;
                    grow |= nbr[v] & set;
                }
                grow &= ~comp;
                if (!grow) break;
                comp |= grow;
            }
            set &= ~comp;
        }
        return comps;
    }

    bool connected(uint64_t set) const { return set == 0 || components(set) == 1; }
};

std::vector<int> mask_to_vertices(uint64_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

// Recursive generation of connected k-partitions as vectors of masks.
// Each new part is seeded at the lowest unassigned vertex, so parts come
// out ordered by minimum vertex and every set partition appears once.
struct PartitionEnumerator {
    const MaskGraph& mg;
    int k;
    std::vector<uint64_t> parts;
    std::vector<std::vector<uint64_t>>& out;

    void emit() { out.push_back(parts); }

    // Enumerates connected supersets of cur inside remaining, each one
    // exactly once. cand is the admissible frontier; banned carries the
    // vertices already exhausted by earlier sibling branches and must be
    // respected all the way down, or subsets get produced twice.
    void grow(uint64_t cur, uint64_t cand, uint64_t banned, uint64_t remaining, int parts_left,
              int max_size) {
        finish_part(cur, remaining, parts_left);
        if (std::popcount(cur) == max_size) return;
        while (cand) {
            uint64_t vbit = cand & -cand;
            cand &= cand - 1;
            int v = std::countr_zero(vbit);
            uint64_t next_cand = (cand | (mg.nbr[v] & remaining)) & ~(cur | vbit) & ~banned;
            grow(cur | vbit, next_cand, banned, remaining, parts_left, max_size);
            banned |= vbit;
        }
    }

    void finish_part(uint64_t part, uint64_t remaining, int parts_left) {
        uint64_t rest = remaining & ~part;
        if (parts_left == 1) {
            if (rest == 0) {
                parts.push_back(part);
                emit();
                parts.pop_back();
            }
            return;
        }
        if (rest == 0) return;
        if (mg.components(rest) > parts_left - 1) return;
        parts.push_back(part);
        next_part(rest, parts_left - 1);
        parts.pop_back();
    }

    void next_part(uint64_t remaining, int parts_left) {
        if (parts_left == 1) {
            if (mg.connected(remaining)) {
                parts.push_back(remaining);
                emit();
                parts.pop_back();
            }
            return;
        }
        uint64_t seed = remaining & -remaining;
        int max_size = std::popcount(remaining) - (parts_left - 1);
        grow(seed, mg.nbr[std::countr_zero(seed)] & remaining & ~seed, 0, remaining, parts_left,
             max_size);
    }
};

std::vector<std::vector<uint64_t>> enumerate_mask_partitions(const Graph& g, int k) {
    MaskGraph mg(g);
    std::vector<std::vector<uint64_t>> out;
    PartitionEnumerator en{mg, k, {}, out};
    en.next_part(mg.all, k);
    return out;
}

BigInt int_pow(int base, int exp) {
    BigInt r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

std::vector<PartitionView> enumerate_connected_partitions(const Graph& g, int k,
                                                          bool override_guard) {
    if (k < 1 || k > g.vertex_count()) fail(Errc::invalid_argument, "infeasible part count");
    check_guard(g, override_guard);
    auto raw = enumerate_mask_partitions(g, k);
    std::vector<PartitionView> out;
    out.reserve(raw.size());
    for (const auto& masks : raw) {
        std::vector<std::vector<int>> parts;
        parts.reserve(masks.size());
        for (uint64_t m : masks) parts.push_back(mask_to_vertices(m));
        out.push_back(PartitionView::from_parts(g.vertex_count(), std::move(parts)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

int ExactDistribution::index_of(const PartitionView& p) const {
    auto it = std::lower_bound(support.begin(), support.end(), p);
    if (it == support.end() || !(*it == p)) return -1;
    return static_cast<int>(it - support.begin());
}

ExactDistribution exact_distribution(const Graph& g, int k, double c, bool override_guard) {
    if (c < 0.0) fail(Errc::invalid_argument, "bias exponent must be nonnegative");
    ExactDistribution dist;
    dist.k = k;
    dist.c = c;
    dist.support = enumerate_connected_partitions(g, k, override_guard);
    if (dist.support.empty())
        fail(Errc::invalid_argument, "graph has no connected partition into k parts");
    bool integral = c == std::floor(c) && c <= 64.0;
    dist.exact = integral;

    std::unordered_map<uint64_t, BigInt> tree_memo;
    auto part_trees = [&](const std::vector<int>& part) -> const BigInt& {
        uint64_t mask = 0;
        for (int v : part) mask |= uint64_t(1) << v;
        auto it = tree_memo.find(mask);
        if (it == tree_memo.end())
            it = tree_memo.emplace(mask, count_spanning_trees_in(g, part)).first;
        return it->second;
    };

    if (integral) {
        int ci = static_cast<int>(c);
        dist.weights.reserve(dist.support.size());
        for (const auto& p : dist.support) {
            BigInt w = 1;
            for (const auto& part : p.parts()) {
                w *= part_trees(part);
                if (ci > 0) w *= int_pow(static_cast<int>(part.size()), ci);
            }
            dist.weights.push_back(w);
            dist.z += w;
        }
        long double zl = dist.z.convert_to<long double>();
        dist.probs.reserve(dist.weights.size());
        for (const auto& w : dist.weights)
            dist.probs.push_back(static_cast<double>(w.convert_to<long double>() / zl));
    } else {
        std::vector<long double> w(dist.support.size());
        long double z = 0.0L;
        for (size_t i = 0; i < dist.support.size(); ++i) {
            long double wi = 1.0L;
            for (const auto& part : dist.support[i].parts()) {
                wi *= part_trees(part).convert_to<long double>();
                wi *= powl(static_cast<long double>(part.size()), static_cast<long double>(c));
            }
            w[i] = wi;
            z += wi;
        }
        dist.probs.reserve(w.size());
        for (long double wi : w) dist.probs.push_back(static_cast<double>(wi / z));
    }
    return dist;
}

BigRational fraction_balanced(const Graph& g, int k, bool override_guard) {
    if (k < 1 || g.vertex_count() % k != 0)
        fail(Errc::invalid_argument, "k must divide the vertex count");
    auto dist = exact_distribution(g, k, 0.0, override_guard);
    BigInt balanced = 0;
    for (size_t i = 0; i < dist.support.size(); ++i)
        if (dist.support[i].is_balanced()) balanced += dist.weights[i];
    return BigRational(balanced, dist.z);
}

namespace {

template <typename ProbA, typename ProbB>
double tv_over_union(const std::vector<PartitionView>& sa, ProbA pa,
                     const std::vector<PartitionView>& sb, ProbB pb) {
    double total = 0.0;
    size_t i = 0, j = 0;
    while (i < sa.size() || j < sb.size()) {
        if (j == sb.size() || (i < sa.size() && sa[i] < sb[j])) {
            total += std::abs(pa(i));
            ++i;
        } else if (i == sa.size() || sb[j] < sa[i]) {
            total += std::abs(pb(j));
            ++j;
        } else {
            total += std::abs(pa(i) - pb(j));
            ++i;
            ++j;
        }
    }
    return total / 2.0;
}

} // namespace

double tv_distance(const ExactDistribution& p, const ExactDistribution& q) {
    return tv_over_union(
        p.support, [&](size_t i) { return p.probs[i]; }, q.support,
        [&](size_t j) { return q.probs[j]; });
}

double tv_distance(const ExactDistribution& p, const Histogram& counts) {
    int64_t n = 0;
    for (const auto& [_, c] : counts) {
        if (c < 0) fail(Errc::invalid_argument, "negative count");
        n += c;
    }
    if (n == 0) fail(Errc::invalid_argument, "empty histogram");
    std::vector<PartitionView> hs;
    std::vector<double> hp;
    hs.reserve(counts.size());
    for (const auto& [part, c] : counts) {
        hs.push_back(part);
        hp.push_back(static_cast<double>(c) / static_cast<double>(n));
    }
    return tv_over_union(
        p.support, [&](size_t i) { return p.probs[i]; }, hs, [&](size_t j) { return hp[j]; });
}

BigRational tv_distance_exact(const ExactDistribution& p, const ExactDistribution& q) {
    if (!p.exact || !q.exact)
        fail(Errc::invalid_argument, "exact TV needs exact weights on both sides");
    BigRational total = 0;
    size_t i = 0, j = 0;
    auto abs_r = [](BigRational r) { return r < 0 ? -r : r; };
    while (i < p.support.size() || j < q.support.size()) {
        if (j == q.support.size() ||
            (i < p.support.size() && p.support[i] < q.support[j])) {
            total += BigRational(p.weights[i], p.z);
            ++i;
        } else if (i == p.support.size() || q.support[j] < p.support[i]) {
            total += BigRational(q.weights[j], q.z);
            ++j;
        } else {
            total += abs_r(BigRational(p.weights[i], p.z) - BigRational(q.weights[j], q.z));
            ++i;
            ++j;
        }
    }
    return total / 2;
}

void write_distribution_table(const ExactDistribution& dist, std::ostream& out) {
    char buf[32];
    for (size_t i = 0; i < dist.support.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", dist.probs[i]);
        out << dist.support[i].to_string() << '\t';
        if (dist.exact)
            out << dist.weights[i];
        else
            out << '-';
        out << '\t' << buf << '\n';
    }
}

GapProfile gap_profile(const Graph& g, const PartitionView& p) {
    if (!g.has_tags()) fail(Errc::unsupported_graph, "graph has no edge tags");
    if (p.vertex_count() != g.vertex_count())
        fail(Errc::invalid_argument, "partition does not match graph");
    auto comp = p.assignment();
    GapProfile prof;
    for (int e = 0; e < g.edge_count(); ++e) {
        const EdgeTag& t = g.tag(e);
        auto [u, v] = g.edge(e);
        bool cut = comp[u] != comp[v];
        if (t.cls == EdgeClass::Rung) {
            if (!cut) ++prof.phi;
        } else if (t.cls == EdgeClass::LeftCycle || t.cls == EdgeClass::RightCycle) {
            if (cut) {
                prof.gaps.push_back({t.cls, t.position, e});
                prof.position_sum += t.position;
                if (t.position == 0) prof.touches_zero = true;
            }
        }
    }
    if (!prof.gaps.empty())
        prof.avg_gap_position = BigRational(prof.position_sum, static_cast<int64_t>(prof.gaps.size()));
    return prof;
}

bool has_rungless_part(const Graph& g, const PartitionView& p) {
    if (!g.has_tags()) fail(Errc::unsupported_graph, "graph has no edge tags");
    auto comp = p.assignment();
    std::vector<char> has_rung(p.part_count(), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (g.tag(e).cls != EdgeClass::Rung) continue;
        auto [u, v] = g.edge(e);
        if (comp[u] == comp[v]) has_rung[comp[u]] = 1;
    }
    for (char h : has_rung)
        if (!h) return true;
    return false;
}

PartitionView ladder_partition(const Graph& g, int j) {
    if (!g.has_tags()) fail(Errc::unsupported_graph, "graph has no edge tags");
    int len = g.vertex_count() / 2;
    if (g.vertex_count() != 2 * len || len % 3 != 0)
        fail(Errc::invalid_argument, "ladder partition needs a double cycle of length 3n");
    int n = len / 3;
    std::vector<std::vector<int>> parts(3);
    for (int b = 0; b < 3; ++b) {
        for (int i = 0; i < n; ++i) {
            int col = (j + b * n + i) % len;
            parts[b].push_back(col);        // left vertex
            parts[b].push_back(len + col);  // right vertex
        }
    }
    return PartitionView::from_parts(g.vertex_count(), std::move(parts));
}

BigRational bottleneck_ratio(const Graph& g, bool override_guard) {
    if (!g.has_tags()) fail(Errc::unsupported_graph, "graph has no edge tags");
    auto dist = exact_distribution(g, 3, 0.0, override_guard);
    PartitionView a0 = ladder_partition(g, 0);
    int ia = dist.index_of(a0);
    if (ia < 0) fail(Errc::invalid_argument, "ladder partition missing from support");
    BigInt c_weight = 0;
    for (size_t i = 0; i < dist.support.size(); ++i)
        if (dist.support[i].is_balanced() && has_rungless_part(g, dist.support[i]))
            c_weight += dist.weights[i];
    return BigRational(c_weight, dist.weights[ia]);
}

ReachabilityGraph recom_reachability_graph(const Graph& g, int k, bool override_guard) {
    if (k < 2) fail(Errc::invalid_argument, "k must be at least 2");
    if (g.vertex_count() % k != 0) fail(Errc::invalid_argument, "k must divide the vertex count");
    ReachabilityGraph rg;
    for (auto& p : enumerate_connected_partitions(g, k, override_guard))
        if (p.is_balanced()) rg.states.push_back(std::move(p));
    rg.out.resize(rg.states.size());

    MaskGraph mg(g);
    auto part_mask = [](const std::vector<int>& part) {
        uint64_t m = 0;
        for (int v : part) m |= uint64_t(1) << v;
        return m;
    };

    std::map<PartitionView, int> index;
    for (size_t i = 0; i < rg.states.size(); ++i)
        index.emplace(rg.states[i], static_cast<int>(i));

    int half_parts = g.vertex_count() / k;  // size of each part
    for (size_t si = 0; si < rg.states.size(); ++si) {
        const PartitionView& p = rg.states[si];
        auto comp = p.assignment();
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                bool adjacent = false;
                for (const auto& e : g.edges()) {
                    int a = comp[e.u], b = comp[e.v];
                    if ((a == i && b == j) || (a == j && b == i)) {
                        adjacent = true;
                        break;
                    }
                }
                if (!adjacent) continue;
                uint64_t merged = part_mask(p.part(i)) | part_mask(p.part(j));
                // enumerate equal connected re-splits of the merged region
                uint64_t low = merged & -merged;
                std::vector<int> verts = mask_to_vertices(merged & ~low);
                int need = half_parts - 1;  // low vertex is fixed into side A
                int mv = static_cast<int>(verts.size());
                // lexicographic combinations of `need` out of mv
                std::vector<int> idx(need);
                for (int t = 0; t < need; ++t) idx[t] = t;
                for (;;) {
                    uint64_t side = low;
                    for (int t = 0; t < need; ++t) side |= uint64_t(1) << verts[idx[t]];
                    uint64_t other = merged & ~side;
                    if (mg.connected(side) && mg.connected(other)) {
                        std::vector<std::vector<int>> parts;
                        for (int r = 0; r < k; ++r)
                            if (r != i && r != j) parts.push_back(p.part(r));
                        parts.push_back(mask_to_vertices(side));
                        parts.push_back(mask_to_vertices(other));
                        PartitionView q =
                            PartitionView::from_parts(g.vertex_count(), std::move(parts));
                        if (!(q == p)) {
                            auto it = index.find(q);
                            if (it != index.end()) rg.out[si].push_back(it->second);
                        }
                    }
                    // next combination
                    int t = need - 1;
                    while (t >= 0 && idx[t] == mv - need + t) --t;
                    if (t < 0) break;
                    ++idx[t];
                    for (int s = t + 1; s < need; ++s) idx[s] = idx[s - 1] + 1;
                }
            }
        }
        auto& lst = rg.out[si];
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    }
    return rg;
}

bool strongly_connected(const ReachabilityGraph& rg) {
    int n = static_cast<int>(rg.states.size());
    if (n == 0) return true;
    std::vector<std::vector<int>> rev(n);
    for (int i = 0; i < n; ++i)
        for (int j : rg.out[i]) rev[j].push_back(i);
    auto reach_all = [n](const std::vector<std::vector<int>>& adj) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int found = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    ++found;
                    stack.push_back(w);
                }
            }
        }
        return found == n;
    };
    return reach_all(rg.out) && reach_all(rev);
}

} // namespace fw
