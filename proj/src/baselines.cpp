// Reference metaheuristics scored with the classical fixed penalty
// F = f1 + ρ1·p1 + ρ2·p2 (lower is better). Every algorithm evaluates an
// initial population of N_totp and then 2·N_totp designs per trace row, so
// all of them spend exactly OptimizerConfig::evaluation_budget() calls.

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <tuple>

#include "leodesign/constants.hpp"
#include "leodesign/optim.hpp"
#include "optim_internal.hpp"

namespace leodesign {

namespace {

using detail::kStreamCrossover;
using detail::kStreamInit;
using detail::kStreamMutation;
using detail::kStreamNeighbour;
using detail::kStreamSelect;
using detail::kStreamSwarm;

class PenaltyRun {
public:
    PenaltyRun(AlgorithmKind kind, const Evaluator& evaluator, const DesignBounds& bounds,
               const OptimizerConfig& config)
        : evaluator_(evaluator), bounds_(bounds), config_(config) {
        result_.kind = kind;
        result_.seed = config.seed;
    }

    double score(const EvaluationRecord& r) const {
        return classical_penalty(r, config_.rho1, config_.rho2);
    }

    std::vector<EvaluationRecord> evaluate(std::span<const DesignVector> designs) {
        auto recs = evaluate_batch(evaluator_, designs, config_.threads);
        calls_ += static_cast<long long>(recs.size());
        detail::offer_all(archive_, recs);
        return recs;
    }

    std::vector<EvaluationRecord> initial() {
        auto rng = stream_rng(config_.seed, 0, 0, kStreamInit);
        return evaluate(initialize_population(bounds_, config_.population, rng));
    }

    /// Index of the lowest score, first wins on ties.
    std::size_t argbest(std::span<const EvaluationRecord> recs) const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < recs.size(); ++i)
            if (score(recs[i]) < score(recs[best])) best = i;
        return best;
    }

    std::vector<std::size_t> ranked(std::span<const EvaluationRecord> recs) const {
        std::vector<std::size_t> idx(recs.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return score(recs[a]) < score(recs[b]); });
        return idx;
    }

    void record_row(int iteration, const EvaluationRecord& best_ranked,
                    std::span<const EvaluationRecord> population) {
        result_.trace.push_back(detail::make_row(iteration, best_ranked, population, archive_, calls_));
    }

    OptimizationResult finish() {
        result_.feasible = archive_.has_incumbent();
        result_.best = archive_.best();
        result_.evaluations = calls_;
        return std::move(result_);
    }

    const DesignBounds& bounds() const { return bounds_; }
    const OptimizerConfig& config() const { return config_; }
    std::size_t size() const { return static_cast<std::size_t>(config_.population); }
    /// Update steps of N_totp evaluations each (two per trace row).
    int total_steps() const { return 2 * config_.iterations; }

private:
    const Evaluator& evaluator_;
    const DesignBounds& bounds_;
    const OptimizerConfig& config_;
    IncumbentArchive archive_;
    OptimizationResult result_;
    long long calls_ = 0;
};

std::vector<DesignVector> designs_of(std::span<const EvaluationRecord> recs) {
    std::vector<DesignVector> out;
    out.reserve(recs.size());
    for (const auto& r : recs) out.push_back(r.design);
    return out;
}

// Arithmetic crossover with binary tournament selection and fixed-rate
// Gaussian mutation; replacement keeps the best N_totp of parents, children
// and mutants, mirroring the improved GA apart from fitness and operators.
OptimizationResult classical_ga(PenaltyRun run) {
    const auto& cfg = run.config();
    const auto& bounds = run.bounds();
    const std::size_t n = run.size();
    const auto sigma = detail::mutation_sigmas(bounds, cfg);
    auto population = run.initial();

    for (int it = 1; it <= cfg.iterations; ++it) {
        auto select_rng = stream_rng(cfg.seed, it, 0, kStreamSelect);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::vector<std::size_t> parents(n + n % 2);
        for (auto& p : parents) {
            const std::size_t a = pick(select_rng), b = pick(select_rng);
            p = run.score(population[b]) < run.score(population[a]) ? b : a;
        }

        std::vector<DesignVector> children;
        children.reserve(n + 1);
        for (std::size_t k = 0; children.size() < n; ++k) {
            auto rng = stream_rng(cfg.seed, it, k, kStreamCrossover);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const double w = unit(rng);
            const auto& a = population[parents[2 * k]].design;
            const auto& b = population[parents[2 * k + 1]].design;
            DesignVector c1, c2;
            for (std::size_t g = 0; g < DesignVector::kGenes; ++g) {
                c1[g] = w * a[g] + (1.0 - w) * b[g];
                c2[g] = (1.0 - w) * a[g] + w * b[g];
            }
            children.push_back(bounds.clamp(c1));
            if (children.size() < n) children.push_back(bounds.clamp(c2));
        }

        std::vector<DesignVector> mutants(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto rng = stream_rng(cfg.seed, it, i, kStreamMutation);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            DesignVector m = children[i];
            bool touched = false;
            for (std::size_t g = 0; g < DesignVector::kGenes; ++g) {
                if (unit(rng) < cfg.mutation_threshold) {
                    m[g] += std::normal_distribution<double>(0.0, sigma[g])(rng);
                    touched = true;
                }
            }
            if (!touched) {
                const auto g = std::uniform_int_distribution<std::size_t>(0, DesignVector::kGenes - 1)(rng);
                m[g] += std::normal_distribution<double>(0.0, sigma[g])(rng);
            }
            mutants[i] = bounds.clamp(m);
        }

        const auto child_recs = run.evaluate(children);
        const auto mutant_recs = run.evaluate(mutants);
        std::vector<EvaluationRecord> pool = population;
        pool.insert(pool.end(), child_recs.begin(), child_recs.end());
        pool.insert(pool.end(), mutant_recs.begin(), mutant_recs.end());
        const auto order = run.ranked(pool);
        std::vector<EvaluationRecord> next;
        next.reserve(n);
        for (std::size_t k = 0; k < n; ++k) next.push_back(pool[order[k]]);
        population = std::move(next);
        run.record_row(it, population.front(), population);
    }
    return run.finish();
}

// Global-best PSO with constant inertia weight.
OptimizationResult pso(PenaltyRun run) {
    const auto& cfg = run.config();
    const auto& bounds = run.bounds();
    const std::size_t n = run.size();
    auto current = run.initial();
    auto positions = designs_of(current);
    std::vector<DesignVector> velocity(n);
    auto personal = current;
    EvaluationRecord global = current[run.argbest(current)];

    std::array<double, DesignVector::kGenes> vmax{};
    for (std::size_t g = 0; g < vmax.size(); ++g) vmax[g] = cfg.pso_velocity_fraction * bounds.width(g);

    for (int step = 0; step < run.total_steps(); ++step) {
        for (std::size_t i = 0; i < n; ++i) {
            auto rng = stream_rng(cfg.seed, static_cast<std::uint64_t>(step) + 1, i, kStreamSwarm);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (std::size_t g = 0; g < DesignVector::kGenes; ++g) {
                const double r1 = unit(rng), r2 = unit(rng);
                double v = cfg.pso_inertia * velocity[i][g] +
                           cfg.pso_cognitive * r1 * (personal[i].design[g] - positions[i][g]) +
                           cfg.pso_social * r2 * (global.design[g] - positions[i][g]);
                v = std::clamp(v, -vmax[g], vmax[g]);
                double x = positions[i][g] + v;
                if (x < bounds.lower[g] || x > bounds.upper[g]) {
                    x = std::clamp(x, bounds.lower[g], bounds.upper[g]);
                    v = 0.0;
                }
                positions[i][g] = x;
                velocity[i][g] = v;
            }
        }
        current = run.evaluate(positions);
        for (std::size_t i = 0; i < n; ++i) {
            if (run.score(current[i]) < run.score(personal[i])) personal[i] = current[i];
            if (run.score(current[i]) < run.score(global)) global = current[i];
        }
        if (step % 2 == 1) run.record_row(step / 2 + 1, global, current);
    }
    return run.finish();
}

// Sine cosine algorithm; r1 decays linearly from a to 0.
OptimizationResult sca(PenaltyRun run) {
    const auto& cfg = run.config();
    const auto& bounds = run.bounds();
    const std::size_t n = run.size();
    auto current = run.initial();
    auto positions = designs_of(current);
    EvaluationRecord destination = current[run.argbest(current)];
    const int total = run.total_steps();

    for (int step = 0; step < total; ++step) {
        const double r1 = cfg.sca_a - step * cfg.sca_a / total;
        for (std::size_t i = 0; i < n; ++i) {
            auto rng = stream_rng(cfg.seed, static_cast<std::uint64_t>(step) + 1, i, kStreamSwarm);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (std::size_t g = 0; g < DesignVector::kGenes; ++g) {
                const double r2 = kTwoPi * unit(rng);
                const double r3 = 2.0 * unit(rng);
                const double r4 = unit(rng);
                const double dist = std::abs(r3 * destination.design[g] - positions[i][g]);
                positions[i][g] += r1 * (r4 < 0.5 ? std::sin(r2) : std::cos(r2)) * dist;
            }
            positions[i] = bounds.clamp(positions[i]);
        }
        current = run.evaluate(positions);
        const auto& cand = current[run.argbest(current)];
        if (run.score(cand) < run.score(destination)) destination = cand;
        if (step % 2 == 1) run.record_row(step / 2 + 1, destination, current);
    }
    return run.finish();
}

// Grey wolf optimizer; a decays linearly from a0 to 0, leaders are the three
// best designs seen so far.
OptimizationResult gwo(PenaltyRun run) {
    const auto& cfg = run.config();
    const auto& bounds = run.bounds();
    const std::size_t n = run.size();
    auto current = run.initial();
    auto positions = designs_of(current);

    auto pick_leaders = [&](std::vector<EvaluationRecord> candidates) {
        const auto order = run.ranked(candidates);
        std::vector<EvaluationRecord> leaders;
        for (std::size_t k = 0; k < 3; ++k) leaders.push_back(candidates[order[std::min(k, order.size() - 1)]]);
        return leaders;
    };
    auto leaders = pick_leaders(current);
    const int total = run.total_steps();

    for (int step = 0; step < total; ++step) {
        const double a = cfg.gwo_a * (1.0 - static_cast<double>(step) / total);
        for (std::size_t i = 0; i < n; ++i) {
            auto rng = stream_rng(cfg.seed, static_cast<std::uint64_t>(step) + 1, i, kStreamSwarm);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (std::size_t g = 0; g < DesignVector::kGenes; ++g) {
                double sum = 0.0;
                for (const auto& leader : leaders) {
                    const double big_a = 2.0 * a * unit(rng) - a;
                    const double big_c = 2.0 * unit(rng);
                    const double d = std::abs(big_c * leader.design[g] - positions[i][g]);
                    sum += leader.design[g] - big_a * d;
                }
                positions[i][g] = sum / 3.0;
            }
            positions[i] = bounds.clamp(positions[i]);
        }
        current = run.evaluate(positions);
        std::vector<EvaluationRecord> candidates = leaders;
        candidates.insert(candidates.end(), current.begin(), current.end());
        leaders = pick_leaders(std::move(candidates));
        if (step % 2 == 1) run.record_row(step / 2 + 1, leaders.front(), current);
    }
    return run.finish();
}

// Tabu search on the rounded lattice: one gene moves per neighbour (±1 for
// plane / satellite counts, ±step·width for altitude and inclination).
OptimizationResult tabu(PenaltyRun run) {
    const auto& cfg = run.config();
    const auto& bounds = run.bounds();
    const std::size_t n = run.size();
    const auto initial = run.initial();
    EvaluationRecord current = initial[run.argbest(initial)];
    EvaluationRecord best = current;

    using Key = std::tuple<long, int, int, long>;
    auto key_of = [&](const DesignVector& x) {
        auto cell = [&](std::size_t g) {
            const double step = cfg.tabu_step_fraction * bounds.width(g);
            return step > 0.0 ? std::lround((x[g] - bounds.lower[g]) / step) : 0L;
        };
        return Key{cell(DesignVector::kAltitude), x.planes(), x.sats_per_plane(),
                   cell(DesignVector::kInclination)};
    };
    std::deque<Key> tabu_list{key_of(current.design)};

    for (int step = 0; step < run.total_steps(); ++step) {
        std::vector<DesignVector> neighbours(n);
        for (std::size_t k = 0; k < n; ++k) {
            auto rng = stream_rng(cfg.seed, static_cast<std::uint64_t>(step) + 1, k, kStreamNeighbour);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const auto g = std::uniform_int_distribution<std::size_t>(0, DesignVector::kGenes - 1)(rng);
            const double sign = unit(rng) < 0.5 ? 1.0 : -1.0;
            DesignVector x = current.design.rounded();
            const bool integer_gene = g == DesignVector::kPlanes || g == DesignVector::kSatsPerPlane;
            const double delta = integer_gene ? 1.0
                                              : cfg.tabu_step_fraction * bounds.width(g) *
                                                    (0.5 + unit(rng));
            x[g] += sign * delta;
            if (x[g] < bounds.lower[g] || x[g] > bounds.upper[g]) x[g] -= 2.0 * sign * delta;
            neighbours[k] = bounds.clamp(x);
        }
        const auto recs = run.evaluate(neighbours);

        std::size_t chosen = recs.size();
        for (const auto i : run.ranked(recs)) {
            const bool is_tabu =
                std::find(tabu_list.begin(), tabu_list.end(), key_of(recs[i].design)) != tabu_list.end();
            if (!is_tabu || run.score(recs[i]) < run.score(best)) {
                chosen = i;
                break;
            }
        }
        if (chosen == recs.size()) chosen = run.argbest(recs);
        current = recs[chosen];
        tabu_list.push_back(key_of(current.design));
        while (tabu_list.size() > static_cast<std::size_t>(cfg.tabu_tenure)) tabu_list.pop_front();
        if (run.score(current) < run.score(best)) best = current;
        if (step % 2 == 1) run.record_row(step / 2 + 1, best, recs);
    }
    return run.finish();
}

} // namespace

OptimizationResult run_baseline(AlgorithmKind kind, const Evaluator& evaluator,
                                const DesignBounds& bounds, const OptimizerConfig& config) {
    config.validate();
    bounds.validate();
    PenaltyRun run(kind, evaluator, bounds, config);
    switch (kind) {
    case AlgorithmKind::ClassicalGa: return classical_ga(std::move(run));
    case AlgorithmKind::Pso: return pso(std::move(run));
    case AlgorithmKind::Sca: return sca(std::move(run));
    case AlgorithmKind::Gwo: return gwo(std::move(run));
    case AlgorithmKind::Tabu: return tabu(std::move(run));
    case AlgorithmKind::Improved: break;
    }
    throw ParameterError("run_baseline: '" + to_string(kind) + "' is not a baseline algorithm");
}

} // namespace leodesign
