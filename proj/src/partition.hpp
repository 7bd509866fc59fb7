#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fw {

// Canonical unordered vertex partition: parts ordered by their minimum
// vertex, vertices ascending within each part. Two partitions are equal
// iff they are the same set partition.
class PartitionView {
public:
    PartitionView() = default;
    // From explicit parts (canonicalizes; validates disjoint cover of 0..n-1).
    static PartitionView from_parts(int n, std::vector<std::vector<int>> parts);
    // From a per-vertex component id vector (ids need not be canonical).
    static PartitionView from_assignment(const std::vector<int>& comp_of);

    int vertex_count() const { return n_; }
    int part_count() const { return static_cast<int>(parts_.size()); }
    const std::vector<std::vector<int>>& parts() const { return parts_; }
    const std::vector<int>& part(int i) const { return parts_[i]; }

    // Per-vertex canonical part index.
    std::vector<int> assignment() const;
    std::vector<int> sizes() const;
    bool is_balanced() const;

    std::string to_string() const;  // "0 1|2 3|4 5"

    bool operator==(const PartitionView&) const = default;
    bool operator<(const PartitionView& other) const { return parts_ < other.parts_; }

    uint64_t hash() const;

private:
    int n_ = 0;
    std::vector<std::vector<int>> parts_;
};

struct PartitionHash {
    size_t operator()(const PartitionView& p) const { return static_cast<size_t>(p.hash()); }
};

} // namespace fw
