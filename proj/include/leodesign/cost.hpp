#pragma once

namespace leodesign {

/// Parametric space-segment cost. Coefficients are per kg and expressed in an
/// opaque cost unit; altitude enters the launch term in km.
struct CostModel {
    double sat_mass_kg = 227.0;
    double insurance_ratio = 0.2;
    double manufacture_coeff = 0.00185;
    double launch_coeff = 0.000166;

    bool operator==(const CostModel&) const = default;
};

struct CostBreakdown {
    double manufacture = 0.0;        // per satellite
    double launch = 0.0;             // per satellite
    double insurance = 0.0;          // per satellite
    double per_satellite_total = 0.0;
    double constellation_total = 0.0;
    double insurance_ratio = 0.0;    // β_ins used
};

/// manufacture = k_m·W, launch = k_l·W·(h_km/1.609)^0.43,
/// insurance = β·(manufacture + launch), total = N·P·(sum of the three).
/// Throws ParameterError for non-positive N, P, h, W or negative β.
CostBreakdown space_segment_cost(int sats_per_plane, int planes, double altitude_km,
                                 const CostModel& model = {});

} // namespace leodesign
