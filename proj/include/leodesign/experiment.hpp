#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "leodesign/config.hpp"
#include "leodesign/cost.hpp"
#include "leodesign/coverage.hpp"
#include "leodesign/fitness.hpp"
#include "leodesign/link.hpp"
#include "leodesign/optim.hpp"

namespace leodesign {

/// Everything one pass through the models produces for a single design.
struct DesignReport {
    DesignVector design;          // as evaluated (integer genes rounded)
    WalkerConfig walker;
    FootprintGeometry footprint;
    CoverageReport coverage;
    CapacityResult capacity;      // E[C_k] uses the minimum visible count
    CostBreakdown cost;
    EvaluationRecord record;
    double eta_threshold = 0.0;
    double capacity_threshold = 0.0;
};

/// geo -> coverage -> link -> cost -> constraint check. Throws ParameterError
/// for a design outside the configured box and InfeasibleError when the
/// coverage angle cannot be met at the design altitude.
DesignReport evaluate_design(const ExperimentConfig& config, const DesignVector& design);

/// Full-precision JSON rendering of a report.
std::string report_to_json(const DesignReport& report);

/// Evaluator for the optimizers. Geometric infeasibility becomes a record with
/// zero coverage instead of an exception, so a search never aborts.
Evaluator make_evaluator(const ExperimentConfig& config);

struct RunArtifact {
    std::filesystem::path directory;
    OptimizationResult result;
    double wall_seconds = 0.0;
};

/// Runs one optimizer with config.optimizer.seed and writes config.json,
/// trace.csv and result.json under `out`. Throws IoError with the path when
/// the directory cannot be created or written.
RunArtifact run_experiment(const ExperimentConfig& config, AlgorithmKind kind,
                           const std::filesystem::path& out);

std::string trace_to_csv(const std::vector<TraceRow>& trace);

struct KindSummary {
    AlgorithmKind kind = AlgorithmKind::Improved;
    int runs = 0;
    int feasible_runs = 0;
    double mean_final_cost = 0.0;
    double stddev_final_cost = 0.0; // sample standard deviation, 0 for one run
    int wins = 0;                   // seeds where this kind beat the first kind
    int losses = 0;
    std::vector<double> final_costs;   // per seed, in seed order
    std::vector<double> mean_best;     // per iteration, over seeds
    std::vector<double> mean_incumbent; // per iteration, over seeds holding one; NaN if none
    std::vector<int> incumbent_seeds;   // per iteration
};

struct Comparison {
    std::vector<std::uint64_t> seeds;
    std::vector<KindSummary> kinds;
};

/// Runs every (kind, seed) pair on one shared evaluator. The final cost of a
/// run is the objective of its reported design (incumbent, else least
/// violating). Wins and losses are paired per seed against kinds[0], which
/// therefore scores 0/0. When `out` is non-empty, writes comparison.csv and
/// curves.csv there.
Comparison compare_trials(const ExperimentConfig& config, const std::vector<AlgorithmKind>& kinds,
                          const std::vector<std::uint64_t>& seeds,
                          const std::filesystem::path& out = {});

std::string comparison_to_csv(const Comparison& comparison);
std::string curves_to_csv(const Comparison& comparison);

/// Decimal text that round-trips the double exactly.
std::string format_double(double value);

} // namespace leodesign
