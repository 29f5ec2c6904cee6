#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leodesign/design.hpp"
#include "leodesign/fitness.hpp"

namespace leodesign {

/// Maps a design to its evaluation. Must be safe to call concurrently when
/// OptimizerConfig::threads > 1.
using Evaluator = std::function<EvaluationRecord(const DesignVector&)>;

enum class AlgorithmKind { Improved, ClassicalGa, Pso, Sca, Gwo, Tabu };

std::string to_string(AlgorithmKind kind);
/// Accepts "improved", "classical-ga", "pso", "sca", "gwo", "tabu".
AlgorithmKind parse_algorithm(std::string_view name);
std::vector<AlgorithmKind> all_algorithms();

struct OptimizerConfig {
    int population = 30;             // N_totp
    int iterations = 50;             // N_it
    double mutation_threshold = 0.3; // ς
    double alpha1 = 2.0;
    double alpha2 = 1.0;
    double sigma_fraction = 0.1;     // σ_i = fraction·(u_i − l_i)
    int parent_pool = 0;             // N1; 0 means N_totp
    double rho1 = 1000.0;
    double rho2 = 1000.0;
    std::uint64_t seed = 1;
    int threads = 1;

    // baseline parameters
    double pso_inertia = 0.729;
    double pso_cognitive = 1.49445;
    double pso_social = 1.49445;
    double pso_velocity_fraction = 0.2;
    double sca_a = 2.0;
    double gwo_a = 2.0;
    int tabu_tenure = 10;
    double tabu_step_fraction = 0.05;

    /// Throws ParameterError on N_totp < 2, N_it < 1, ς outside [0,1],
    /// α1 < α2 (negative penalty exponent) or negative penalties / scales.
    void validate() const;
    int parents() const { return parent_pool > 0 ? parent_pool : population; }
    /// Evaluator calls every algorithm spends: N_totp·(2·N_it + 1).
    long long evaluation_budget() const;

    bool operator==(const OptimizerConfig&) const = default;
};

struct TraceRow {
    int iteration = 0;
    double best_cost = 0.0;      // f1 of the best-ranked member of the current population
    std::optional<double> incumbent_cost;
    int feasible_count = 0;      // feasible members of the current population
    double eta_min_best = 0.0;
    int nvis_min_best = 0;
    long long evaluations = 0;   // cumulative evaluator calls
};

struct OptimizationResult {
    AlgorithmKind kind = AlgorithmKind::Improved;
    std::uint64_t seed = 0;
    bool feasible = false;       // an incumbent exists
    EvaluationRecord best;       // incumbent, or least-violating design if none
    std::vector<TraceRow> trace;
    long long evaluations = 0;
};

/// Best feasible design seen so far, kept outside any population. Also tracks
/// the least-violating design as a fallback.
class IncumbentArchive {
public:
    void offer(const EvaluationRecord& r);
    bool has_incumbent() const { return incumbent_.has_value(); }
    const std::optional<EvaluationRecord>& incumbent() const { return incumbent_; }
    std::optional<double> incumbent_cost() const;
    /// Incumbent if present, otherwise the least-violating design.
    const EvaluationRecord& best() const;

private:
    std::optional<EvaluationRecord> incumbent_;
    std::optional<EvaluationRecord> least_violating_;
};

/// Deterministic stream for (seed, iteration, index, purpose).
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t iteration, std::uint64_t index,
                           std::uint64_t purpose);

std::vector<DesignVector> initialize_population(const DesignBounds& bounds, int size,
                                                std::mt19937_64& rng);

/// Children are convex combinations of both parents and the best individual
/// with weights r_ij / Σ_j r_ij, r_ij ~ U(0, 1).
std::pair<DesignVector, DesignVector> best_guided_crossover(const DesignVector& p1,
                                                            const DesignVector& p2,
                                                            const DesignVector& best,
                                                            std::mt19937_64& rng);

enum class MutationBranch { Gaussian, ShrinkingStep };

struct MutationResult {
    DesignVector design;
    MutationBranch branch = MutationBranch::Gaussian;
};

/// Gaussian perturbation when θ_mut <= (1/(n_it+1) + 1)·ς, otherwise a
/// per-gene step ±(r3/n_it)·(u_i − l_i). The result is clamped to the box.
MutationResult dual_mode_mutation(const DesignVector& x, int iteration, const DesignBounds& bounds,
                                  double threshold, std::span<const double> sigma,
                                  std::mt19937_64& rng);

/// Indices of the `count` highest-fitness pool members, best first. Ties go
/// to lower f1, then lower total violation, then lower index. Throws
/// ParameterError when the pool is smaller than `count`.
std::vector<std::size_t> elite_selection(std::span<const EvaluationRecord> pool,
                                         std::span<const double> fitness, std::size_t count);

/// Evaluates a batch, optionally across threads. Results are index-aligned
/// with the inputs regardless of thread count.
std::vector<EvaluationRecord> evaluate_batch(const Evaluator& evaluator,
                                             std::span<const DesignVector> designs, int threads);

OptimizationResult run_improved_ga(const Evaluator& evaluator, const DesignBounds& bounds,
                                   const OptimizerConfig& config);

/// Baselines score designs by the classical fixed penalty and spend the same
/// evaluator budget as the improved GA.
OptimizationResult run_baseline(AlgorithmKind kind, const Evaluator& evaluator,
                                const DesignBounds& bounds, const OptimizerConfig& config);

/// Dispatches to run_improved_ga or run_baseline.
OptimizationResult run_optimizer(AlgorithmKind kind, const Evaluator& evaluator,
                                 const DesignBounds& bounds, const OptimizerConfig& config);

} // namespace leodesign
