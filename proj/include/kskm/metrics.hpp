#pragma once

#include <vector>

namespace kskm {

// Chance-corrected partition agreement in [-1, 1]; 1 for identical
// partitions up to relabeling. Throws on length mismatch.
double adjusted_rand_index(const std::vector<int>& pred, const std::vector<int>& truth);

}  // namespace kskm
