#include "partition.hpp"

#include <algorithm>

#include "error.hpp"

namespace fw {

PartitionView PartitionView::from_parts(int n, std::vector<std::vector<int>> parts) {
    std::vector<char> seen(n, 0);
    int covered = 0;
    for (auto& part : parts) {
        if (part.empty()) fail(Errc::invalid_argument, "empty part");
        std::sort(part.begin(), part.end());
        for (int v : part) {
            if (v < 0 || v >= n) fail(Errc::invalid_argument, "part vertex out of range");
            if (seen[v]) fail(Errc::invalid_argument, "parts overlap");
            seen[v] = 1;
            ++covered;
        }
    }
    if (covered != n) fail(Errc::invalid_argument, "parts do not cover all vertices");
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    PartitionView p;
    p.n_ = n;
    p.parts_ = std::move(parts);
    return p;
}

PartitionView PartitionView::from_assignment(const std::vector<int>& comp_of) {
    int n = static_cast<int>(comp_of.size());
    int max_id = -1;
    for (int c : comp_of) {
        if (c < 0) fail(Errc::invalid_argument, "negative component id");
        max_id = std::max(max_id, c);
    }
    std::vector<std::vector<int>> parts(max_id + 1);
    for (int v = 0; v < n; ++v) parts[comp_of[v]].push_back(v);
    std::erase_if(parts, [](const auto& p) { return p.empty(); });
    return from_parts(n, std::move(parts));
}

std::vector<int> PartitionView::assignment() const {
    std::vector<int> comp(n_, -1);
    for (int i = 0; i < part_count(); ++i)
        for (int v : parts_[i]) comp[v] = i;
    return comp;
}

std::vector<int> PartitionView::sizes() const {
    std::vector<int> s;
    s.reserve(parts_.size());
    for (const auto& p : parts_) s.push_back(static_cast<int>(p.size()));
    return s;
}

bool PartitionView::is_balanced() const {
    if (parts_.empty()) return true;
    size_t first = parts_.front().size();
    for (const auto& p : parts_)
        if (p.size() != first) return false;
    return true;
}

std::string PartitionView::to_string() const {
    std::string out;
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += '|';
        for (size_t j = 0; j < parts_[i].size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(parts_[i][j]);
        }
    }
    return out;
}

uint64_t PartitionView::hash() const {
    uint64_t h = 1469598103934665603ULL;
    for (int c : assignment()) {
        h ^= static_cast<uint64_t>(c) + 0x9e3779b97f4a7c15ULL;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace fw
