#include "leodesign/optim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "leodesign/constants.hpp"
#include "optim_internal.hpp"

namespace leodesign {

std::string to_string(AlgorithmKind kind) {
    switch (kind) {
    case AlgorithmKind::Improved: return "improved";
    case AlgorithmKind::ClassicalGa: return "classical-ga";
    case AlgorithmKind::Pso: return "pso";
    case AlgorithmKind::Sca: return "sca";
    case AlgorithmKind::Gwo: return "gwo";
    case AlgorithmKind::Tabu: return "tabu";
    }
    return "unknown";
}

AlgorithmKind parse_algorithm(std::string_view name) {
    for (auto kind : all_algorithms())
        if (to_string(kind) == name) return kind;
    throw ParameterError("unknown algorithm '" + std::string(name) +
                         "' (expected improved, classical-ga, pso, sca, gwo or tabu)");
}

std::vector<AlgorithmKind> all_algorithms() {
    return {AlgorithmKind::Improved, AlgorithmKind::ClassicalGa, AlgorithmKind::Pso,
            AlgorithmKind::Sca,      AlgorithmKind::Gwo,         AlgorithmKind::Tabu};
}

void OptimizerConfig::validate() const {
    if (population < 2) throw ParameterError("optimizer: population must be >= 2");
    if (iterations < 1) throw ParameterError("optimizer: iterations must be >= 1");
    if (mutation_threshold < 0.0 || mutation_threshold > 1.0)
        throw ParameterError("optimizer: mutation threshold must lie in [0, 1]");
    if (alpha2 < 0.0 || alpha1 < alpha2)
        throw ParameterError("optimizer: require alpha1 >= alpha2 >= 0");
    if (!(sigma_fraction > 0.0)) throw ParameterError("optimizer: sigma fraction must be positive");
    if (parent_pool < 0) throw ParameterError("optimizer: parent pool must be >= 0");
    if (rho1 < 0.0 || rho2 < 0.0) throw ParameterError("optimizer: penalty factors must be >= 0");
    if (threads < 1) throw ParameterError("optimizer: threads must be >= 1");
    if (tabu_tenure < 0) throw ParameterError("optimizer: tabu tenure must be >= 0");
    if (!(tabu_step_fraction > 0.0) || !(pso_velocity_fraction > 0.0))
        throw ParameterError("optimizer: step fractions must be positive");
}

long long OptimizerConfig::evaluation_budget() const {
    return static_cast<long long>(population) * (2LL * iterations + 1);
}

void IncumbentArchive::offer(const EvaluationRecord& r) {
    if (r.feasible && (!incumbent_ || r.objective < incumbent_->objective)) incumbent_ = r;
    if (!least_violating_) {
        least_violating_ = r;
        return;
    }
    const double v = r.total_violation(), best_v = least_violating_->total_violation();
    if (v < best_v || (v == best_v && r.objective < least_violating_->objective))
        least_violating_ = r;
}

std::optional<double> IncumbentArchive::incumbent_cost() const {
    if (!incumbent_) return std::nullopt;
    return incumbent_->objective;
}

const EvaluationRecord& IncumbentArchive::best() const {
    if (incumbent_) return *incumbent_;
    if (!least_violating_) throw ParameterError("archive: no design has been offered");
    return *least_violating_;
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t iteration, std::uint64_t index,
                           std::uint64_t purpose) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(iteration), hi(iteration),
                      lo(index), hi(index), lo(purpose), hi(purpose)};
    return std::mt19937_64(seq);
}

std::vector<DesignVector> initialize_population(const DesignBounds& bounds, int size,
                                                std::mt19937_64& rng) {
    bounds.validate();
    if (size < 0) throw ParameterError("initialize_population: negative size");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<DesignVector> pop(static_cast<std::size_t>(size));
    for (auto& x : pop)
        for (std::size_t i = 0; i < DesignVector::kGenes; ++i)
            x[i] = bounds.lower[i] + unit(rng) * bounds.width(i);
    // l + U·(u − l) can overshoot u by an ulp
    for (auto& x : pop) x = bounds.clamp(x);
    return pop;
}

std::pair<DesignVector, DesignVector> best_guided_crossover(const DesignVector& p1,
                                                            const DesignVector& p2,
                                                            const DesignVector& best,
                                                            std::mt19937_64& rng) {
    // open interval so the weight sum never vanishes
    std::uniform_real_distribution<double> unit(std::nextafter(0.0, 1.0), 1.0);
    auto child = [&] {
        const double r1 = unit(rng), r2 = unit(rng), r3 = unit(rng);
        const double sum = r1 + r2 + r3;
        DesignVector c;
        for (std::size_t i = 0; i < DesignVector::kGenes; ++i) {
            const double v = (r1 / sum) * p1[i] + (r2 / sum) * p2[i] + (r3 / sum) * best[i];
            const auto [lo, hi] = std::minmax({p1[i], p2[i], best[i]});
            c[i] = std::clamp(v, lo, hi);
        }
        return c;
    };
    DesignVector c1 = child();
    DesignVector c2 = child();
    return {c1, c2};
}

MutationResult dual_mode_mutation(const DesignVector& x, int iteration, const DesignBounds& bounds,
                                  double threshold, std::span<const double> sigma,
                                  std::mt19937_64& rng) {
    if (iteration < 1) throw ParameterError("mutation: iteration must be >= 1");
    if (sigma.size() != DesignVector::kGenes) throw ParameterError("mutation: sigma size mismatch");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    MutationResult out;
    out.design = x;
    const double theta = unit(rng);
    if (theta <= (1.0 / (iteration + 1.0) + 1.0) * threshold) {
        out.branch = MutationBranch::Gaussian;
        for (std::size_t i = 0; i < DesignVector::kGenes; ++i) {
            std::normal_distribution<double> step(0.0, sigma[i]);
            out.design[i] += step(rng);
        }
    } else {
        out.branch = MutationBranch::ShrinkingStep;
        for (std::size_t i = 0; i < DesignVector::kGenes; ++i) {
            const double r3 = unit(rng), r4 = unit(rng);
            const double step = r3 / iteration * bounds.width(i);
            out.design[i] += r4 < 0.5 ? step : -step;
        }
    }
    out.design = bounds.clamp(out.design);
    return out;
}

std::vector<std::size_t> elite_selection(std::span<const EvaluationRecord> pool,
                                         std::span<const double> fitness, std::size_t count) {
    if (pool.size() != fitness.size())
        throw ParameterError("elite selection: fitness/pool size mismatch");
    if (pool.size() < count)
        throw ParameterError("elite selection: pool of " + std::to_string(pool.size()) +
                             " is smaller than the requested " + std::to_string(count));
    std::vector<std::size_t> idx(pool.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (fitness[a] != fitness[b]) return fitness[a] > fitness[b];
        if (pool[a].objective != pool[b].objective) return pool[a].objective < pool[b].objective;
        return pool[a].total_violation() < pool[b].total_violation();
    });
    idx.resize(count);
    return idx;
}

std::vector<EvaluationRecord> evaluate_batch(const Evaluator& evaluator,
                                             std::span<const DesignVector> designs, int threads) {
    std::vector<EvaluationRecord> out(designs.size());
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || designs.size() < 2) {
        for (std::size_t i = 0; i < designs.size(); ++i) out[i] = evaluator(designs[i]);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < designs.size(); i += workers)
                        out[i] = evaluator(designs[i]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

namespace detail {

std::vector<double> mutation_sigmas(const DesignBounds& bounds, const OptimizerConfig& config) {
    std::vector<double> sigma(DesignVector::kGenes);
    for (std::size_t i = 0; i < sigma.size(); ++i)
        // a collapsed gene still needs a positive scale for normal_distribution
        sigma[i] = std::max(config.sigma_fraction * bounds.width(i), 1e-300);
    return sigma;
}

TraceRow make_row(int iteration, const EvaluationRecord& best_ranked,
                  std::span<const EvaluationRecord> population, const IncumbentArchive& archive,
                  long long evaluations) {
    TraceRow row;
    row.iteration = iteration;
    row.best_cost = best_ranked.objective;
    row.incumbent_cost = archive.incumbent_cost();
    row.feasible_count = static_cast<int>(
        std::count_if(population.begin(), population.end(), [](const auto& r) { return r.feasible; }));
    row.eta_min_best = best_ranked.eta_min;
    row.nvis_min_best = best_ranked.min_visible;
    row.evaluations = evaluations;
    return row;
}

void offer_all(IncumbentArchive& archive, std::span<const EvaluationRecord> records) {
    for (const auto& r : records) archive.offer(r);
}

} // namespace detail

namespace {

std::vector<double> adaptive_fitness_of(std::span<const EvaluationRecord> pool, int iteration,
                                        const OptimizerConfig& config) {
    const PopulationStats stats = compute_stats(pool, iteration);
    std::vector<double> fit(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
        fit[i] = adaptive_fitness(satisfaction_scores(pool[i], stats), stats, config.alpha1,
                                  config.alpha2);
    return fit;
}

std::vector<std::size_t> roulette_wheel(std::span<const double> fitness, int count,
                                        std::mt19937_64& rng) {
    std::vector<double> cumulative(fitness.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        acc += fitness[i] + 1e-12;
        cumulative[i] = acc;
    }
    std::uniform_real_distribution<double> unit(0.0, acc);
    std::vector<std::size_t> picks(static_cast<std::size_t>(count));
    for (auto& p : picks) {
        const double r = unit(rng);
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        p = std::min(static_cast<std::size_t>(it - cumulative.begin()), fitness.size() - 1);
    }
    return picks;
}

} // namespace

OptimizationResult run_improved_ga(const Evaluator& evaluator, const DesignBounds& bounds,
                                   const OptimizerConfig& config) {
    config.validate();
    bounds.validate();
    using namespace detail;
    const auto n_pop = static_cast<std::size_t>(config.population);
    const auto sigma = mutation_sigmas(bounds, config);

    OptimizationResult result;
    result.kind = AlgorithmKind::Improved;
    result.seed = config.seed;
    IncumbentArchive archive;

    auto init_rng = stream_rng(config.seed, 0, 0, kStreamInit);
    const auto initial = initialize_population(bounds, config.population, init_rng);
    std::vector<EvaluationRecord> population = evaluate_batch(evaluator, initial, config.threads);
    long long calls = static_cast<long long>(initial.size());
    offer_all(archive, population);

    for (int it = 1; it <= config.iterations; ++it) {
        const auto fit = adaptive_fitness_of(population, it, config);
        const DesignVector best = population[elite_selection(population, fit, 1).front()].design;

        auto select_rng = stream_rng(config.seed, it, 0, kStreamSelect);
        const auto parents = roulette_wheel(fit, config.parents(), select_rng);

        std::vector<DesignVector> children;
        children.reserve(n_pop + 1);
        for (std::uint64_t pair = 0; children.size() < n_pop; ++pair) {
            auto rng = stream_rng(config.seed, it, pair, kStreamCrossover);
            std::uniform_int_distribution<std::size_t> pick(0, parents.size() - 1);
            const auto& a = population[parents[pick(rng)]].design;
            const auto& b = population[parents[pick(rng)]].design;
            auto [c1, c2] = best_guided_crossover(a, b, best, rng);
            children.push_back(bounds.clamp(c1));
            if (children.size() < n_pop) children.push_back(bounds.clamp(c2));
        }

        std::vector<DesignVector> mutants(n_pop);
        for (std::size_t i = 0; i < n_pop; ++i) {
            auto rng = stream_rng(config.seed, it, i, kStreamMutation);
            mutants[i] = dual_mode_mutation(children[i], it, bounds, config.mutation_threshold,
                                            sigma, rng)
                             .design;
        }

        const auto child_records = evaluate_batch(evaluator, children, config.threads);
        const auto mutant_records = evaluate_batch(evaluator, mutants, config.threads);
        calls += static_cast<long long>(children.size() + mutants.size());
        offer_all(archive, child_records);
        offer_all(archive, mutant_records);

        std::vector<EvaluationRecord> pool;
        pool.reserve(3 * n_pop);
        pool.insert(pool.end(), population.begin(), population.end());
        pool.insert(pool.end(), child_records.begin(), child_records.end());
        pool.insert(pool.end(), mutant_records.begin(), mutant_records.end());
        const auto pool_fit = adaptive_fitness_of(pool, it, config);
        const auto keep = elite_selection(pool, pool_fit, n_pop);

        std::vector<EvaluationRecord> next;
        next.reserve(n_pop);
        for (auto k : keep) next.push_back(pool[k]);
        population = std::move(next);

        result.trace.push_back(make_row(it, population.front(), population, archive, calls));
    }

    result.feasible = archive.has_incumbent();
    result.best = archive.best();
    result.evaluations = calls;
    return result;
}

OptimizationResult run_optimizer(AlgorithmKind kind, const Evaluator& evaluator,
                                 const DesignBounds& bounds, const OptimizerConfig& config) {
    if (kind == AlgorithmKind::Improved) return run_improved_ga(evaluator, bounds, config);
    return run_baseline(kind, evaluator, bounds, config);
}

} // namespace leodesign
