#include "kskm/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace kskm {
namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    return cells;
}

double parse_double(const std::string& cell, int line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw ParseError("non-numeric cell '" + cell + "'", line_no);
    return value;
}

std::string basename_no_ext(const std::string& path) {
    size_t slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    size_t dot = name.find_last_of('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

}  // namespace

Dataset load_dataset(const std::string& path, bool has_header, bool label_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);

    Dataset ds;
    ds.name = basename_no_ext(path);
    std::map<std::string, int> label_ids;
    std::vector<double> values;
    int cols = -1;
    int line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (has_header && line_no == 1) continue;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split_csv(line);
        int features = static_cast<int>(cells.size()) - (label_column ? 1 : 0);
        if (features < 1) throw ParseError("too few columns", line_no);
        if (cols < 0) cols = features;
        if (features != cols) throw ParseError("ragged row", line_no);
        for (int c = 0; c < cols; ++c) values.push_back(parse_double(cells[c], line_no));
        if (label_column) {
            const std::string& tok = cells.back();
            auto it = label_ids.try_emplace(tok, static_cast<int>(label_ids.size())).first;
            ds.labels.push_back(it->second);
        }
    }
    if (cols < 0) throw std::runtime_error("empty dataset: " + path);

    ds.points.rows = static_cast<int>(values.size()) / cols;
    ds.points.cols = cols;
    ds.points.data = std::move(values);
    return ds;
}

ConstraintSet load_constraints(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open constraint file: " + path);

    ConstraintSet cs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::stringstream ss(t);
        std::string kind;
        int i = -1, j = -1;
        ss >> kind >> i >> j;
        if (ss.fail() || (kind != "ML" && kind != "CL"))
            throw ParseError("expected 'ML i j' or 'CL i j'", line_no);
        (kind == "ML" ? cs.ml : cs.cl).emplace_back(i, j);
    }
    cs.normalize();
    return cs;
}

void save_constraints(const std::string& path, const ConstraintSet& constraints) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write constraint file: " + path);
    for (auto [i, j] : constraints.ml) out << "ML " << i << " " << j << "\n";
    for (auto [i, j] : constraints.cl) out << "CL " << i << " " << j << "\n";
}

void save_assignment(const std::string& path, const std::vector<int>& labels) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write assignment file: " + path);
    for (int c : labels) out << c << "\n";
}

std::vector<int> load_assignment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open assignment file: " + path);
    std::vector<int> labels;
    int c;
    while (in >> c) labels.push_back(c);
    return labels;
}

}  // namespace kskm
