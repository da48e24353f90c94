#pragma once

#include <stdexcept>
#include <string>

namespace kskm {

// A pair (i,j) is both transitively must-linked and cannot-linked: no
// feasible clustering exists for any k.
struct ContradictoryConstraints : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No feasible k-coloring could be produced.
struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyCluster : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A set of swaps handed to apply_swaps was not independent.
struct ConflictingSelection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Classic COP-K-Means found a super-node with no feasible cluster.
struct AssignmentDeadlock : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(const std::string& msg, int line_no)
        : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

}  // namespace kskm
