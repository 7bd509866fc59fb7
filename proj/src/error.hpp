#pragma once

#include <stdexcept>
#include <string>

namespace fw {

enum class Errc {
    invalid_argument,      // bad sizes, empty subsets, k not dividing n, ...
    invalid_forest,        // edge set with a cycle handed to from_edges
    cycle_edge,            // link() inside one component
    edge_not_present,      // cut() of a non-forest edge
    not_connected,         // tree_path across components
    no_spanning_tree,      // UST of a disconnected region
    initialization_failure,// balanced-start retry budget exhausted
    step_failure,          // ReCom resample cap exceeded
    size_guard,            // enumeration refused without override
    unsupported_graph,     // missing edge tags / coords
    numerical_failure,     // log-det factorization broke down
    budget_exhausted,      // rejection sampler found no balanced sample
    io_failure,            // file read/write problems
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace fw
