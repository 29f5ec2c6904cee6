#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace leodesign {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kEarthRadius = 6378140.0;         // [m]
inline constexpr double kEarthMu = 3.986004418e14;        // [m^3/s^2]
inline constexpr double kEarthRotationRate = 7.2921159e-5; // [rad/s]
inline constexpr double kSpeedOfLight = 299792458.0;      // [m/s]

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Wraps an angle into [0, 2π).
double wrap_two_pi(double angle);

double db_to_linear(double db);
double dbm_to_watt(double dbm);

/// Invalid configuration or argument outside a documented domain.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested quantity does not exist for these inputs (e.g. a coverage
/// angle wider than the Earth disc, or zero spectral efficiency).
class InfeasibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace leodesign
