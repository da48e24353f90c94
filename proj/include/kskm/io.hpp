#pragma once

#include <string>
#include <vector>

#include "kskm/constraints.hpp"
#include "kskm/matrix.hpp"

namespace kskm {

struct Dataset {
    Matrix points;
    std::vector<int> labels;  // empty when absent
    std::string name;

    bool has_labels() const { return !labels.empty(); }
};

// CSV loader: comma-separated numeric features, optional header line,
// optional final label column (label tokens are mapped to dense integer ids
// by first occurrence). Throws ParseError with the offending line number.
Dataset load_dataset(const std::string& path, bool has_header = false,
                     bool label_column = false);

// Constraint file: one `ML i j` or `CL i j` per line, `#` comments ignored.
ConstraintSet load_constraints(const std::string& path);
void save_constraints(const std::string& path, const ConstraintSet& constraints);

// Assignment file: line i holds the cluster id of data point i.
void save_assignment(const std::string& path, const std::vector<int>& labels);
std::vector<int> load_assignment(const std::string& path);

}  // namespace kskm
