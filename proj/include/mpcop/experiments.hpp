#ifndef MPCOP_EXPERIMENTS_HPP
#define MPCOP_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mpcop {

// Settings for the reproduction runs.  The defaults match the reported
// experiments: interval-mass stability over 50 initial points and three
// truncation lengths; the invariance cross-table over 7 fixed initial
// points at n = 3e6; and the estimator replication study over
// s in {0.10, 0.15, ..., 0.95} with 100 paths of length 200.
struct ExperimentConfig {
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = ".";
    int threads = 0;  // 0 = hardware concurrency

    // interval-mass stability (table51)
    double s = 0.5;
    std::vector<std::int64_t> n_grid{300000, 1000000, 3000000};
    int initial_points = 50;

    // invariance cross-table (table52)
    std::int64_t invariance_n = 3000000;

    // estimator replications (table61)
    std::vector<double> s_grid;  // empty = 0.10 .. 0.95 step 0.05
    int replications = 100;
    int path_length = 200;

    // figure data
    std::int64_t figure_n = 1000000;
    std::size_t figure_m = 10000;
    int figure_grid = 50;
    int figure_samples = 500;
};

struct ExperimentResult {
    int failures = 0;  // replications that errored (partial results flagged)
    std::vector<std::string> notes;
    bool ok() const { return failures == 0; }
};

std::vector<double> default_s_grid();

// The seven canonical initial points (pi, pi/(sqrt2+1), pi*sqrt2, pi+sqrt2,
// sqrt7, pi+sqrt7, sqrt11+sqrt7), all reduced mod 1.
std::vector<double> canonical_initial_points();

// Writes table51.csv (set,n,min,max,range,mean) and table51_raw.csv.
ExperimentResult run_table51(const ExperimentConfig& cfg);

// Writes table52.csv (set,i,j,diff) and table52_raw.csv with the underlying
// masses; diff = |mu_n(A; x_i) - mu_n(T^-1 A; x_j)|.
ExperimentResult run_table52(const ExperimentConfig& cfg);

// Writes table61.csv (s,method,mean,min,max,range,sd,mse,failures),
// table61_raw.csv with one row per replication, and failures.csv when any
// replication errored.
ExperimentResult run_table61(const ExperimentConfig& cfg);

// Writes copula grid files (u,v,c) and sample scatters (u,v) for the figure
// configurations: grids and samples for s in {0.1, 0.4}, h in {1, 2}, plus
// high-lag samples at s = 0.2, h in {4, 5, 7}.
ExperimentResult emit_figure_data(const ExperimentConfig& cfg);

// %.17g rendering used by every CSV writer (round-trips doubles exactly).
std::string fmt17(double x);

}  // namespace mpcop

#endif  // MPCOP_EXPERIMENTS_HPP
