#include "kskm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "kskm/metrics.hpp"

namespace kskm {
namespace {

// Unordered pair codes in row-major order over i < j.
std::pair<int, int> decode_pair(uint64_t code, int n) {
    // Binary search the row whose cumulative pair count exceeds code.
    uint64_t lo = 0, hi = static_cast<uint64_t>(n) - 1;
    auto row_start = [&](uint64_t i) {
        return i * static_cast<uint64_t>(n) - i * (i + 1) / 2;
    };
    while (lo < hi) {
        uint64_t mid = (lo + hi + 1) / 2;
        if (row_start(mid) <= code)
            lo = mid;
        else
            hi = mid - 1;
    }
    uint64_t i = lo;
    uint64_t j = i + 1 + (code - row_start(i));
    return {static_cast<int>(i), static_cast<int>(j)};
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

ConstraintSet generate_constraints(const std::vector<int>& labels, double level, Rng rng) {
    int n = static_cast<int>(labels.size());
    uint64_t total = static_cast<uint64_t>(n) * (n - 1) / 2;
    uint64_t count = static_cast<uint64_t>(level * static_cast<double>(total));
    count = std::min(count, total);

    // Floyd's sampling: uniform subset of size count without replacement.
    std::set<uint64_t> codes;
    for (uint64_t t = total - count; t < total; ++t) {
        uint64_t r = rng.uniform_int(t + 1);
        codes.insert(codes.count(r) ? t : r);
    }

    ConstraintSet cs;
    for (uint64_t code : codes) {
        auto [i, j] = decode_pair(code, n);
        (labels[i] == labels[j] ? cs.ml : cs.cl).emplace_back(i, j);
    }
    cs.normalize();
    return cs;
}

SolveMode parse_mode(const std::string& name) {
    if (name == "kskm") return SolveMode::kskm;
    if (name == "kskm_e") return SolveMode::kskm_e;
    if (name == "copkm") return SolveMode::copkm;
    if (name == "dsaturkm") return SolveMode::dsaturkm;
    throw std::invalid_argument("unknown mode: " + name);
}

std::string mode_name(SolveMode mode) {
    switch (mode) {
        case SolveMode::kskm: return "kskm";
        case SolveMode::kskm_e: return "kskm_e";
        case SolveMode::copkm: return "copkm";
        case SolveMode::dsaturkm: return "dsaturkm";
    }
    return "?";
}

ExperimentSpec parse_experiment_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open experiment spec: " + path);

    ExperimentSpec spec;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::stringstream ss(line);
        std::string key;
        if (!(ss >> key) || key[0] == '#') continue;
        auto malformed = [&]() {
            return ParseError("malformed value for '" + key + "'", line_no);
        };
        if (key == "dataset") {
            DatasetSpec d;
            std::string flag;
            if (!(ss >> d.name >> d.path >> d.k))
                throw ParseError("dataset needs: name path k", line_no);
            while (ss >> flag) {
                if (flag == "header")
                    d.has_header = true;
                else
                    throw ParseError("unknown dataset flag '" + flag + "'", line_no);
            }
            spec.datasets.push_back(std::move(d));
        } else if (key == "level") {
            double v;
            if (!(ss >> v)) throw malformed();
            spec.levels.push_back(v);
        } else if (key == "mode") {
            std::string m;
            if (!(ss >> m)) throw malformed();
            spec.modes.push_back(parse_mode(m));
        } else if (key == "runs") {
            if (!(ss >> spec.runs)) throw malformed();
        } else if (key == "seed_base") {
            if (!(ss >> spec.seed_base)) throw malformed();
        } else if (key == "time_limit") {
            if (!(ss >> spec.time_limit_seconds)) throw malformed();
        } else if (key == "explorations") {
            if (!(ss >> spec.explorations)) throw malformed();
        } else if (key == "max_mutations") {
            if (!(ss >> spec.max_mutations)) throw malformed();
        } else if (key == "baseline") {
            std::string m;
            if (!(ss >> m)) throw malformed();
            spec.baseline = parse_mode(m);
        } else if (key == "output_dir") {
            if (!(ss >> spec.output_dir)) throw malformed();
        } else {
            throw ParseError("unknown spec key '" + key + "'", line_no);
        }
    }
    if (spec.datasets.empty()) throw std::runtime_error("spec lists no datasets");
    if (spec.levels.empty()) spec.levels.push_back(0.1);
    if (spec.modes.empty()) spec.modes.push_back(SolveMode::kskm);
    return spec;
}

std::vector<CellAggregate> aggregate_rows(const std::vector<RunRow>& rows) {
    std::vector<CellAggregate> out;
    auto find_cell = [&](const RunRow& r) -> CellAggregate& {
        for (auto& c : out)
            if (c.dataset == r.dataset && c.level == r.level && c.mode == r.mode) return c;
        CellAggregate c;
        c.dataset = r.dataset;
        c.level = r.level;
        c.mode = r.mode;
        out.push_back(c);
        return out.back();
    };
    for (const RunRow& r : rows) {
        CellAggregate& c = find_cell(r);
        ++c.runs;
        c.mean_seconds += r.seconds;
        if (r.success) {
            if (c.successes == 0) {
                c.min_inertia = r.inertia;
                c.max_ari = r.ari;
            } else {
                c.min_inertia = std::min(c.min_inertia, r.inertia);
                c.max_ari = std::max(c.max_ari, r.ari);
            }
            ++c.successes;
            c.mean_inertia += r.inertia;
        }
    }
    for (auto& c : out) {
        if (c.successes > 0) c.mean_inertia /= c.successes;
        if (c.runs > 0) c.mean_seconds /= c.runs;
        c.success_rate = c.runs > 0 ? static_cast<double>(c.successes) / c.runs : 0.0;
    }
    return out;
}

RunReport run_experiment(const ExperimentSpec& spec) {
    RunReport report;
    for (const DatasetSpec& dspec : spec.datasets) {
        Dataset ds = load_dataset(dspec.path, dspec.has_header, /*label_column=*/true);
        for (double level : spec.levels) {
            // Constraints are fixed per (dataset, level); runs vary the init.
            Rng cg(spec.seed_base ^ fnv1a(dspec.name) ^
                   static_cast<uint64_t>(level * 1e9));
            ConstraintSet cs = generate_constraints(ds.labels, level, cg);
            Problem problem = make_problem(ds.points, cs);
            for (SolveMode mode : spec.modes) {
                for (int r = 0; r < spec.runs; ++r) {
                    SolverConfig config;
                    config.k = dspec.k;
                    config.mode = mode;
                    config.seed = spec.seed_base + static_cast<uint64_t>(r);
                    config.explorations = spec.explorations;
                    config.max_mutations = spec.max_mutations;
                    config.time_limit_seconds = spec.time_limit_seconds;

                    RunRow row;
                    row.dataset = dspec.name;
                    row.level = level;
                    row.mode = mode;
                    row.seed = config.seed;
                    auto t0 = std::chrono::steady_clock::now();
                    try {
                        Solution s = solve(problem, config);
                        row.success = s.feasible;
                        row.inertia = s.inertia;
                        row.ari = adjusted_rand_index(
                            expand_labels(problem.graph, s.assignment), ds.labels);
                        row.seconds = s.wall_time_seconds;
                    } catch (const std::exception& e) {
                        row.success = false;
                        row.error = e.what();
                        row.seconds = std::chrono::duration<double>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count();
                    }
                    report.rows.push_back(std::move(row));
                }
            }
        }
    }
    report.aggregates = aggregate_rows(report.rows);
    return report;
}

void write_runs_csv(const std::string& path, const std::vector<RunRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "dataset,level,mode,seed,success,inertia,ari,seconds,error\n";
    out << std::setprecision(17);
    for (const RunRow& r : rows) {
        out << r.dataset << ',' << r.level << ',' << mode_name(r.mode) << ',' << r.seed
            << ',' << (r.success ? 1 : 0) << ',';
        if (r.success)
            out << r.inertia << ',' << r.ari;
        else
            out << ',';
        out << ',' << r.seconds << ',' << r.error << "\n";
    }
}

void write_aggregates_csv(const std::string& path,
                          const std::vector<CellAggregate>& aggregates) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "dataset,level,mode,runs,successes,success_rate,mean_inertia,min_inertia,"
           "max_ari,mean_seconds\n";
    out << std::setprecision(17);
    for (const CellAggregate& c : aggregates) {
        out << c.dataset << ',' << c.level << ',' << mode_name(c.mode) << ',' << c.runs
            << ',' << c.successes << ',' << c.success_rate << ',';
        if (c.successes > 0)
            out << c.mean_inertia << ',' << c.min_inertia << ',' << c.max_ari;
        else
            out << ",,";
        out << ',' << c.mean_seconds << "\n";
    }
}

std::string summary_table(const RunReport& report, SolveMode baseline) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    out << std::left << std::setw(16) << "dataset" << std::setw(8) << "level"
        << std::setw(10) << "mode" << std::setw(14) << "inertia/base" << std::setw(12)
        << "time/base" << std::setw(10) << "success" << "\n";
    for (const CellAggregate& c : report.aggregates) {
        const CellAggregate* base = nullptr;
        for (const CellAggregate& b : report.aggregates)
            if (b.dataset == c.dataset && b.level == c.level && b.mode == baseline)
                base = &b;
        out << std::left << std::setw(16) << c.dataset << std::setw(8) << c.level
            << std::setw(10) << mode_name(c.mode);
        if (base && base->successes > 0 && c.successes > 0 && base->mean_inertia != 0.0)
            out << std::setw(14) << c.mean_inertia / base->mean_inertia;
        else
            out << std::setw(14) << "-";
        if (base && base->mean_seconds > 0.0)
            out << std::setw(12) << c.mean_seconds / base->mean_seconds;
        else
            out << std::setw(12) << "-";
        out << std::setw(10) << c.success_rate << "\n";
    }
    return out.str();
}

}  // namespace kskm
