#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kskm/constraints.hpp"
#include "kskm/io.hpp"
#include "kskm/rng.hpp"
#include "kskm/solver.hpp"

namespace kskm {

// Wagstaff-style constraint generation: floor(level * n(n-1)/2) distinct
// unordered pairs drawn uniformly without replacement; equal labels give ML,
// unequal give CL.
ConstraintSet generate_constraints(const std::vector<int>& labels, double level, Rng rng);

SolveMode parse_mode(const std::string& name);
std::string mode_name(SolveMode mode);

struct DatasetSpec {
    std::string name;
    std::string path;
    int k = 2;
    bool has_header = false;
};

// Plain key-value experiment description; see README for the schema.
struct ExperimentSpec {
    std::vector<DatasetSpec> datasets;
    std::vector<double> levels;
    std::vector<SolveMode> modes;
    int runs = 10;
    uint64_t seed_base = 0;
    double time_limit_seconds = 3600.0;
    int explorations = 20;
    int max_mutations = 200;
    SolveMode baseline = SolveMode::kskm;
    std::string output_dir = ".";
};

ExperimentSpec parse_experiment_spec(const std::string& path);

struct RunRow {
    std::string dataset;
    double level = 0.0;
    SolveMode mode = SolveMode::kskm;
    uint64_t seed = 0;
    bool success = false;
    double inertia = 0.0;
    double ari = 0.0;
    double seconds = 0.0;
    std::string error;
};

struct CellAggregate {
    std::string dataset;
    double level = 0.0;
    SolveMode mode = SolveMode::kskm;
    int runs = 0;
    int successes = 0;
    double mean_inertia = 0.0;  // over successful runs
    double min_inertia = 0.0;
    double max_ari = 0.0;
    double mean_seconds = 0.0;
    double success_rate = 0.0;
};

struct RunReport {
    std::vector<RunRow> rows;
    std::vector<CellAggregate> aggregates;
};

std::vector<CellAggregate> aggregate_rows(const std::vector<RunRow>& rows);

RunReport run_experiment(const ExperimentSpec& spec);

void write_runs_csv(const std::string& path, const std::vector<RunRow>& rows);
void write_aggregates_csv(const std::string& path,
                          const std::vector<CellAggregate>& aggregates);

// Human-readable table of mean inertia and runtime normalized against the
// baseline mode.
std::string summary_table(const RunReport& report, SolveMode baseline);

}  // namespace kskm
