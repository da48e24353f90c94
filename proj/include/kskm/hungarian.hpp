#pragma once

#include <vector>

#include "kskm/matrix.hpp"

namespace kskm {

// Minimum-cost perfect matching on a square cost matrix (O(n^3) potentials
// method). Returns the column matched to each row.
std::vector<int> hungarian(const Matrix& cost);

}  // namespace kskm
