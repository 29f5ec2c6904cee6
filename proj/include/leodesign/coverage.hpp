#pragma once

#include <vector>

#include "leodesign/geo.hpp"

namespace leodesign {

/// Single-satellite footprint for a given altitude and minimum elevation.
struct FootprintGeometry {
    double angular_radius = 0.0; // φ_max [rad], Earth-central angle to the rim
    double coverage_angle = 0.0; // β [rad], full nadir cone angle
    double min_elevation = 0.0;  // θ_min [rad]
    double area = 0.0;           // S_sat [m^2]
};

/// φ_max = acos(R/(R+h)·cos θ) − θ, β = 2·asin(R/(R+h)·cos θ),
/// S = 2πR²(1 − cos φ_max).
FootprintGeometry footprint_geometry(double altitude, double min_elevation);

/// Minimum elevation that yields coverage angle β at altitude h. Throws
/// InfeasibleError when β exceeds the Earth disc seen from h.
double theta_from_beta(double coverage_angle, double altitude);

/// Elevation above the local horizon for which the footprint rim sits at
/// central angle φ; inverse of the φ_max relation.
double elevation_for_central_angle(double central_angle, double altitude);

/// Earth-central angle between two directions, accurate near 0 and π.
double central_angle(const Vec3& a, const Vec3& b);

/// Elevation of a satellite seen from a ground point on the sphere.
double elevation_angle(const GeodeticPoint& ground, const EcefPosition& sat);

/// True iff the subsatellite point of `sat` lies within φ_max of the grid
/// point (rim counts as covered).
bool covered_indicator(const EcefPosition& sat, const GeodeticPoint& ground, double angular_radius);

/// Latitude band sampled at cell centres of a uniform lat/lon lattice.
struct GridSpec {
    double lat_min_deg = -60.0;
    double lat_max_deg = 60.0;
    double step_deg = 10.0;

    std::vector<GeodeticPoint> points() const;
};

struct Timeline {
    double start = 0.0;       // epoch offset [s]
    double duration = 86340.0; // [s]
    double step = 60.0;       // [s]

    /// Slot instants start + k·step for k = 0..floor(duration/step).
    std::vector<double> slots() const;
};

struct CoverageReport {
    std::vector<double> eta_per_slot;
    double eta_min = 0.0;
    double eta_max = 0.0;
    double mean_eta = 0.0;
    int min_visible_count = 0; // over every slot and grid point
};

/// Per-slot fraction of grid points seen by at least one satellite, using a
/// common footprint for every satellite. The visible-count minimum in the
/// report uses the same footprint.
CoverageReport coverage_ratio_timeline(const ConstellationGeometry& constellation,
                                       const GridSpec& grid, const Timeline& timeline,
                                       const FootprintGeometry& footprint);

/// Minimum, over slots and grid points, of the number of satellites above
/// min_elevation. Each satellite's footprint is derived from its own altitude.
int min_visible_satellites(const ConstellationGeometry& constellation, const GridSpec& grid,
                           const Timeline& timeline, double min_elevation);

} // namespace leodesign
