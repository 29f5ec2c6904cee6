#include "leodesign/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "leodesign/constants.hpp"

namespace leodesign {

ConstraintViolations constraint_violations(double eta_min, double eta_threshold, int min_visible,
                                           double required_count) {
    return {std::max(eta_threshold - eta_min, 0.0),
            std::max(required_count - static_cast<double>(min_visible), 0.0)};
}

void apply_constraints(EvaluationRecord& record, double eta_threshold) {
    const auto v = constraint_violations(record.eta_min, eta_threshold, record.min_visible,
                                         record.required_count);
    record.coverage_violation = v.coverage;
    record.capacity_violation = v.capacity;
    record.feasible = v.coverage == 0.0 && v.capacity == 0.0;
}

PopulationStats compute_stats(std::span<const EvaluationRecord> pool, int iteration) {
    if (pool.empty()) throw ParameterError("population stats: empty pool");
    if (iteration < 1) throw ParameterError("population stats: iteration must be >= 1");
    PopulationStats s;
    s.objective_min = std::numeric_limits<double>::infinity();
    s.objective_max = -std::numeric_limits<double>::infinity();
    for (const auto& r : pool) {
        s.objective_min = std::min(s.objective_min, r.objective);
        s.objective_max = std::max(s.objective_max, r.objective);
        s.coverage_violation_max = std::max(s.coverage_violation_max, r.coverage_violation);
        s.capacity_violation_max = std::max(s.capacity_violation_max, r.capacity_violation);
        if (!r.feasible) ++s.infeasible_count;
    }
    s.population_size = static_cast<int>(pool.size());
    s.iteration = iteration;
    return s;
}

Satisfaction satisfaction_scores(const EvaluationRecord& record, const PopulationStats& stats) {
    auto constraint = [](double p, double p_max) {
        return p_max > 0.0 ? std::clamp((p_max - p) / p_max, 0.0, 1.0) : 1.0;
    };
    Satisfaction s;
    const double span = stats.objective_max - stats.objective_min;
    s.objective = span > 0.0 ? std::clamp((stats.objective_max - record.objective) / span, 0.0, 1.0)
                             : 1.0;
    s.coverage = constraint(record.coverage_violation, stats.coverage_violation_max);
    s.capacity = constraint(record.capacity_violation, stats.capacity_violation_max);
    return s;
}

double adaptive_exponent(const PopulationStats& stats, double alpha1, double alpha2) {
    return static_cast<double>(stats.infeasible_count) / stats.population_size *
           (alpha1 - alpha2 / stats.iteration);
}

double adaptive_fitness(const Satisfaction& s, const PopulationStats& stats, double alpha1,
                        double alpha2) {
    const double e = adaptive_exponent(stats, alpha1, alpha2);
    return s.objective * std::pow(s.coverage * s.capacity, e);
}

double classical_penalty(double objective, double coverage_violation, double capacity_violation,
                         double rho1, double rho2) {
    return objective + rho1 * coverage_violation + rho2 * capacity_violation;
}

} // namespace leodesign
