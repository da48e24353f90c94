#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "kskm/bench.hpp"
#include "kskm/io.hpp"
#include "kskm/metrics.hpp"
#include "kskm/solver.hpp"

namespace {

int cmd_solve(const std::string& data_path, const std::string& constraints_path,
              kskm::SolverConfig config, bool has_header, bool label_column,
              const std::string& out_assignment) {
    kskm::Dataset ds = kskm::load_dataset(data_path, has_header, label_column);
    kskm::ConstraintSet cs;
    if (!constraints_path.empty()) cs = kskm::load_constraints(constraints_path);
    kskm::Problem problem = kskm::make_problem(ds.points, cs);

    kskm::Solution s = kskm::solve(problem, config);
    std::vector<int> labels = kskm::expand_labels(problem.graph, s.assignment);

    std::cout << "inertia " << std::setprecision(17) << s.inertia << "\n"
              << "feasible " << (s.feasible ? 1 : 0) << "\n"
              << "iterations " << s.iterations << "\n"
              << "mutations " << s.mutations << "\n"
              << "seconds " << s.wall_time_seconds << "\n";
    if (ds.has_labels())
        std::cout << "ari " << kskm::adjusted_rand_index(labels, ds.labels) << "\n";
    if (!out_assignment.empty()) kskm::save_assignment(out_assignment, labels);
    return s.feasible ? 0 : 1;
}

int cmd_verify(const std::string& data_path, const std::string& constraints_path,
               const std::string& assignment_path, bool has_header, bool label_column) {
    kskm::Dataset ds = kskm::load_dataset(data_path, has_header, label_column);
    kskm::ConstraintSet cs;
    if (!constraints_path.empty()) cs = kskm::load_constraints(constraints_path);
    std::vector<int> labels = kskm::load_assignment(assignment_path);
    if (static_cast<int>(labels.size()) != ds.points.rows)
        throw std::runtime_error("assignment length does not match dataset size");

    // ML feasibility over raw pairs; CL via the super-node graph.
    for (auto [i, j] : cs.ml)
        if (labels[i] != labels[j]) {
            std::cout << "feasible 0\nviolated ML " << i << " " << j << "\n";
            return 1;
        }
    for (auto [i, j] : cs.cl)
        if (labels[i] == labels[j]) {
            std::cout << "feasible 0\nviolated CL " << i << " " << j << "\n";
            return 1;
        }

    int k = *std::max_element(labels.begin(), labels.end()) + 1;
    kskm::Matrix mu(k, ds.points.cols);
    std::vector<int> count(k, 0);
    for (int i = 0; i < ds.points.rows; ++i) {
        ++count[labels[i]];
        for (int d = 0; d < ds.points.cols; ++d) mu.at(labels[i], d) += ds.points.at(i, d);
    }
    for (int c = 0; c < k; ++c)
        for (int d = 0; d < ds.points.cols; ++d)
            if (count[c] > 0) mu.at(c, d) /= count[c];
    double total = 0.0;
    for (int i = 0; i < ds.points.rows; ++i)
        total += kskm::squared_distance(ds.points.row(i), mu.row(labels[i]), ds.points.cols);

    std::cout << "feasible 1\ninertia " << std::setprecision(17) << total << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kempe Swap K-Means constrained clustering"};
    app.require_subcommand(1);

    std::string data_path, constraints_path, out_path, mode = "kskm", spec_path;
    std::string assignment_path;
    bool has_header = false, label_column = false;
    double level = 0.1;
    kskm::SolverConfig config;

    auto add_data_flags = [&](CLI::App* cmd) {
        cmd->add_option("--data", data_path, "CSV dataset")->required();
        cmd->add_flag("--header", has_header, "first CSV line is a header");
        cmd->add_flag("--labels", label_column, "last CSV column holds labels");
    };

    CLI::App* solve = app.add_subcommand("solve", "cluster one dataset");
    add_data_flags(solve);
    solve->add_option("--constraints", constraints_path, "ML/CL constraint file");
    solve->add_option("-k,--clusters", config.k, "number of clusters")->required();
    solve->add_option("--mode", mode, "kskm|kskm_e|copkm|dsaturkm");
    solve->add_option("--seed", config.seed, "RNG seed");
    solve->add_option("-L,--explorations", config.explorations, "exploration count");
    solve->add_option("--alpha", config.shift_alpha, "shift step size");
    solve->add_option("--time-limit", config.time_limit_seconds, "seconds per run");
    solve->add_option("--max-mutations", config.max_mutations, "mutation cap");
    solve->add_option("--out-assignment", out_path, "write per-point cluster ids");

    CLI::App* gen = app.add_subcommand("gen-constraints", "sample ML/CL pairs from labels");
    add_data_flags(gen);
    gen->add_option("--level", level, "fraction of the n(n-1)/2 pairs")->required();
    uint64_t gen_seed = 0;
    gen->add_option("--seed", gen_seed, "RNG seed");
    std::string gen_out;
    gen->add_option("--out", gen_out, "constraint file to write")->required();

    CLI::App* bench = app.add_subcommand("bench", "run an experiment spec");
    bench->add_option("--spec", spec_path, "experiment spec file")->required();

    CLI::App* verify = app.add_subcommand("verify", "check an assignment file");
    add_data_flags(verify);
    verify->add_option("--constraints", constraints_path, "ML/CL constraint file");
    verify->add_option("--assignment", assignment_path, "assignment file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            config.mode = kskm::parse_mode(mode);
            return cmd_solve(data_path, constraints_path, config, has_header,
                             label_column, out_path);
        }
        if (gen->parsed()) {
            kskm::Dataset ds = kskm::load_dataset(data_path, has_header, true);
            kskm::ConstraintSet cs =
                kskm::generate_constraints(ds.labels, level, kskm::Rng(gen_seed));
            kskm::save_constraints(gen_out, cs);
            std::cout << "ml " << cs.ml.size() << "\ncl " << cs.cl.size() << "\n";
            return 0;
        }
        if (bench->parsed()) {
            kskm::ExperimentSpec spec = kskm::parse_experiment_spec(spec_path);
            kskm::RunReport report = kskm::run_experiment(spec);
            std::filesystem::create_directories(spec.output_dir);
            kskm::write_runs_csv(spec.output_dir + "/runs.csv", report.rows);
            kskm::write_aggregates_csv(spec.output_dir + "/aggregates.csv",
                                       report.aggregates);
            std::cout << kskm::summary_table(report, spec.baseline);
            return 0;
        }
        if (verify->parsed())
            return cmd_verify(data_path, constraints_path, assignment_path, has_header,
                              label_column);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
