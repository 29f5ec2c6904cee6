#include "leodesign/geo.hpp"

#include <cmath>
#include <string>

namespace leodesign {

double wrap_two_pi(double angle) {
    double wrapped = std::fmod(angle, kTwoPi);
    if (wrapped < 0.0) wrapped += kTwoPi;
    // fmod of a tiny negative number can round up to exactly 2π
    if (wrapped >= kTwoPi) wrapped = 0.0;
    return wrapped;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::unit() const {
    const double n = norm();
    return {x / n, y / n, z / n};
}

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Vec3 GeodeticPoint::unit_vector() const {
    const double c = std::cos(lat);
    return {c * std::cos(lon), c * std::sin(lon), std::sin(lat)};
}

double mean_motion(double semi_major_axis) {
    return std::sqrt(kEarthMu / (semi_major_axis * semi_major_axis * semi_major_axis));
}

double orbital_period(double semi_major_axis) { return kTwoPi / mean_motion(semi_major_axis); }

double walker_phase_offset(const WalkerConfig& config) {
    return kTwoPi * config.phase_factor /
           (static_cast<double>(config.sats_per_plane) * config.planes);
}

ConstellationGeometry walker_delta_elements(const WalkerConfig& config) {
    if (config.sats_per_plane < 1 || config.planes < 1)
        throw ParameterError("walker: N and P must be >= 1 (got N=" +
                             std::to_string(config.sats_per_plane) +
                             ", P=" + std::to_string(config.planes) + ")");
    if (config.phase_factor < 0 || config.phase_factor > config.planes - 1)
        throw ParameterError("walker: phase factor F=" + std::to_string(config.phase_factor) +
                             " outside [0, P-1] for P=" + std::to_string(config.planes));
    if (!(config.altitude > 0.0))
        throw ParameterError("walker: altitude must be positive");

    const double a = kEarthRadius + config.altitude;
    const double raan_step = kTwoPi / config.planes;
    const double slot_step = kTwoPi / config.sats_per_plane;
    const double delta_u = walker_phase_offset(config);
    const double inclination = wrap_two_pi(config.inclination);

    ConstellationGeometry out;
    out.reserve(static_cast<std::size_t>(config.planes) * config.sats_per_plane);
    for (int p = 0; p < config.planes; ++p) {
        for (int n = 0; n < config.sats_per_plane; ++n) {
            OrbitalElements e;
            e.semi_major_axis = a;
            e.inclination = inclination;
            e.raan = wrap_two_pi(p * raan_step);
            e.true_anomaly_epoch = wrap_two_pi(n * slot_step + p * delta_u);
            out.push_back(e);
        }
    }
    return out;
}

EciPosition propagate_eci(const OrbitalElements& elements, double t) {
    const double a = elements.semi_major_axis;
    const double u = elements.arg_perigee + elements.true_anomaly_epoch + mean_motion(a) * t;
    const double cu = std::cos(u), su = std::sin(u);
    const double co = std::cos(elements.raan), so = std::sin(elements.raan);
    const double ci = std::cos(elements.inclination), si = std::sin(elements.inclination);
    return {{a * (cu * co - su * so * ci), a * (cu * so + su * co * ci), a * (su * si)}, t};
}

EcefPosition eci_to_ecef(const EciPosition& pos) {
    const double theta = kEarthRotationRate * pos.t;
    const double c = std::cos(theta), s = std::sin(theta);
    return {{c * pos.r.x + s * pos.r.y, -s * pos.r.x + c * pos.r.y, pos.r.z}, pos.t};
}

GeodeticPoint subsatellite_point(const EcefPosition& pos) {
    const double r = pos.r.norm();
    return {std::asin(pos.r.z / r), std::atan2(pos.r.y, pos.r.x)};
}

} // namespace leodesign
