#include "kskm/metrics.hpp"

#include <map>
#include <stdexcept>

namespace kskm {
namespace {

double choose2(double m) { return m * (m - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.size() != truth.size())
        throw std::invalid_argument("label vectors differ in length");
    size_t n = pred.size();
    if (n == 0) return 1.0;

    std::map<std::pair<int, int>, double> contingency;
    std::map<int, double> row_sum, col_sum;
    for (size_t i = 0; i < n; ++i) {
        contingency[{pred[i], truth[i]}] += 1.0;
        row_sum[pred[i]] += 1.0;
        col_sum[truth[i]] += 1.0;
    }

    double sum_cells = 0.0;
    for (const auto& [cell, count] : contingency) sum_cells += choose2(count);
    double sum_rows = 0.0;
    for (const auto& [label, count] : row_sum) sum_rows += choose2(count);
    double sum_cols = 0.0;
    for (const auto& [label, count] : col_sum) sum_cols += choose2(count);

    double total = choose2(static_cast<double>(n));
    double expected = sum_rows * sum_cols / total;
    double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) return 1.0;  // both partitions trivial
    return (sum_cells - expected) / (max_index - expected);
}

}  // namespace kskm
