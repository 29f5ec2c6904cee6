#include "leodesign/cost.hpp"

#include <cmath>

#include "leodesign/constants.hpp"

namespace leodesign {

CostBreakdown space_segment_cost(int sats_per_plane, int planes, double altitude_km,
                                 const CostModel& model) {
    if (sats_per_plane < 1 || planes < 1)
        throw ParameterError("cost: N and P must be positive");
    if (!(altitude_km > 0.0)) throw ParameterError("cost: altitude must be positive");
    if (!(model.sat_mass_kg > 0.0)) throw ParameterError("cost: satellite mass must be positive");
    if (model.insurance_ratio < 0.0) throw ParameterError("cost: insurance ratio must be >= 0");
    if (!(model.manufacture_coeff > 0.0) || !(model.launch_coeff > 0.0))
        throw ParameterError("cost: coefficients must be positive");

    CostBreakdown c;
    c.insurance_ratio = model.insurance_ratio;
    c.manufacture = model.manufacture_coeff * model.sat_mass_kg;
    c.launch = model.launch_coeff * model.sat_mass_kg * std::pow(altitude_km / 1.609, 0.43);
    c.insurance = model.insurance_ratio * (c.manufacture + c.launch);
    c.per_satellite_total = c.manufacture + c.launch + c.insurance;
    c.constellation_total = static_cast<double>(sats_per_plane) * planes * c.per_satellite_total;
    return c;
}

} // namespace leodesign
