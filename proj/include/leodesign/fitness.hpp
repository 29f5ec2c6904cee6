#pragma once

#include <span>

#include "leodesign/design.hpp"

namespace leodesign {

/// Outcome of evaluating one design against the cost objective and the two
/// QoS constraints (coverage ratio, serving-satellite count).
struct EvaluationRecord {
    DesignVector design;
    double objective = 0.0;          // f1, constellation cost
    double coverage_violation = 0.0; // p1
    double capacity_violation = 0.0; // p2
    double eta_min = 0.0;
    int min_visible = 0;
    double required_count = 0.0;     // N̄_th
    bool feasible = false;

    double total_violation() const { return coverage_violation + capacity_violation; }
};

struct PopulationStats {
    double objective_min = 0.0;
    double objective_max = 0.0;
    double coverage_violation_max = 0.0;
    double capacity_violation_max = 0.0;
    int infeasible_count = 0; // m_fe
    int population_size = 0;  // N_totp
    int iteration = 1;        // n_it
};

struct ConstraintViolations {
    double coverage = 0.0; // p1
    double capacity = 0.0; // p2
};

/// p1 = max(η_th − η_min, 0), p2 = max(N̄_th − N̄_min, 0). Both are zero
/// exactly when the corresponding constraint holds.
ConstraintViolations constraint_violations(double eta_min, double eta_threshold, int min_visible,
                                           double required_count);

/// Fills the violation fields and the feasibility flag from QoS measurements.
void apply_constraints(EvaluationRecord& record, double eta_threshold);

/// Two-phase contract: statistics come from the whole pool before any
/// per-record fitness is computed. Throws ParameterError on an empty pool or
/// iteration < 1.
PopulationStats compute_stats(std::span<const EvaluationRecord> pool, int iteration);

struct Satisfaction {
    double objective = 1.0; // f_s1
    double coverage = 1.0;  // p_s1
    double capacity = 1.0;  // p_s2
};

/// Normalised scores in [0, 1]. A flat objective range maps to 1, and a
/// constraint nobody in the pool violates maps to 1.
Satisfaction satisfaction_scores(const EvaluationRecord& record, const PopulationStats& stats);

/// (m_fe / N_totp)·(α1 − α2 / n_it).
double adaptive_exponent(const PopulationStats& stats, double alpha1, double alpha2);

/// F_s = f_s1·(p_s1·p_s2)^e, higher is better.
double adaptive_fitness(const Satisfaction& s, const PopulationStats& stats, double alpha1,
                        double alpha2);

/// F = f1 + ρ1·p1 + ρ2·p2, lower is better.
double classical_penalty(double objective, double coverage_violation, double capacity_violation,
                         double rho1, double rho2);

inline double classical_penalty(const EvaluationRecord& r, double rho1, double rho2) {
    return classical_penalty(r.objective, r.coverage_violation, r.capacity_violation, rho1, rho2);
}

} // namespace leodesign
