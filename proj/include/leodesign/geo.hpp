#pragma once

#include <cstddef>
#include <vector>

#include "leodesign/constants.hpp"

namespace leodesign {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    Vec3 unit() const;
};

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);

/// Classical elements of a circular orbit. Eccentricity and argument of
/// perigee are kept for completeness but are always zero; the along-track
/// phase lives in true_anomaly_epoch.
struct OrbitalElements {
    double semi_major_axis = 0.0;    // [m]
    double eccentricity = 0.0;
    double inclination = 0.0;        // [rad]
    double raan = 0.0;               // [rad]
    double arg_perigee = 0.0;        // [rad]
    double true_anomaly_epoch = 0.0; // [rad]
};

struct WalkerConfig {
    int sats_per_plane = 1; // N
    int planes = 1;         // P
    int phase_factor = 0;   // F
    double altitude = 0.0;  // [m]
    double inclination = 0.0; // [rad]
};

struct EciPosition {
    Vec3 r;       // [m]
    double t = 0; // epoch offset [s]
};

struct EcefPosition {
    Vec3 r;       // [m]
    double t = 0; // epoch offset [s]
};

/// Latitude/longitude on the spherical Earth, radians.
struct GeodeticPoint {
    double lat = 0.0;
    double lon = 0.0;

    Vec3 unit_vector() const;
};

using ConstellationGeometry = std::vector<OrbitalElements>;

double mean_motion(double semi_major_axis);
double orbital_period(double semi_major_axis);

/// Inter-plane phase offset Δu = 2π·F/(N·P) in radians.
double walker_phase_offset(const WalkerConfig& config);

/// Expands a Walker-Delta [N, P, F] description into N·P element sets.
/// Plane p has RAAN p·2π/P, satellite n in plane p starts at argument of
/// latitude n·2π/N + p·Δu.
///
/// Throws ParameterError if N < 1, P < 1, F outside [0, P-1], or the
/// altitude is not positive.
ConstellationGeometry walker_delta_elements(const WalkerConfig& config);

/// Two-body circular propagation; argument of latitude advances at the
/// Keplerian mean motion.
EciPosition propagate_eci(const OrbitalElements& elements, double t);

/// Rotation about z by the Earth rotation angle ω_e·t (zero Greenwich angle
/// at epoch).
EcefPosition eci_to_ecef(const EciPosition& pos);

GeodeticPoint subsatellite_point(const EcefPosition& pos);

} // namespace leodesign
