#include "leodesign/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace leodesign {

FootprintGeometry footprint_geometry(double altitude, double min_elevation) {
    if (!(altitude > 0.0)) throw ParameterError("footprint: altitude must be positive");
    if (min_elevation < 0.0 || min_elevation > kPi / 2)
        throw ParameterError("footprint: minimum elevation must lie in [0, 90] deg");

    const double ratio = kEarthRadius / (kEarthRadius + altitude) * std::cos(min_elevation);
    FootprintGeometry fp;
    fp.min_elevation = min_elevation;
    // acos(ratio) - θ is exactly zero at θ = 90° only up to rounding
    fp.angular_radius = std::max(0.0, std::acos(ratio) - min_elevation);
    fp.coverage_angle = 2.0 * std::asin(ratio);
    fp.area = 2.0 * kPi * kEarthRadius * kEarthRadius * (1.0 - std::cos(fp.angular_radius));
    return fp;
}

double theta_from_beta(double coverage_angle, double altitude) {
    if (!(altitude > 0.0)) throw ParameterError("theta_from_beta: altitude must be positive");
    if (coverage_angle < 0.0) throw ParameterError("theta_from_beta: negative coverage angle");
    const double arg = std::sin(coverage_angle / 2.0) * (kEarthRadius + altitude) / kEarthRadius;
    if (arg > 1.0)
        throw InfeasibleError("coverage angle " + std::to_string(rad2deg(coverage_angle)) +
                              " deg exceeds the geometric maximum " +
                              std::to_string(rad2deg(2.0 * std::asin(kEarthRadius /
                                                                     (kEarthRadius + altitude)))) +
                              " deg at altitude " + std::to_string(altitude / 1e3) + " km");
    return std::acos(arg);
}

double elevation_for_central_angle(double central_angle, double altitude) {
    const double ratio = kEarthRadius / (kEarthRadius + altitude);
    return std::atan2(std::cos(central_angle) - ratio, std::sin(central_angle));
}

double central_angle(const Vec3& a, const Vec3& b) {
    return std::atan2(cross(a, b).norm(), dot(a, b));
}

double elevation_angle(const GeodeticPoint& ground, const EcefPosition& sat) {
    const Vec3 up = ground.unit_vector();
    const Vec3 los{sat.r.x - kEarthRadius * up.x, sat.r.y - kEarthRadius * up.y,
                   sat.r.z - kEarthRadius * up.z};
    return std::asin(std::clamp(dot(los, up) / los.norm(), -1.0, 1.0));
}

bool covered_indicator(const EcefPosition& sat, const GeodeticPoint& ground, double angular_radius) {
    return central_angle(sat.r, ground.unit_vector()) <= angular_radius;
}

std::vector<GeodeticPoint> GridSpec::points() const {
    if (!(step_deg > 0.0)) throw ParameterError("grid: step must be positive");
    if (!(lat_max_deg > lat_min_deg) || lat_min_deg < -90.0 || lat_max_deg > 90.0)
        throw ParameterError("grid: latitude band must satisfy -90 <= min < max <= 90");
    const double span = lat_max_deg - lat_min_deg;
    const int n_lat = std::max(1, static_cast<int>(std::floor(span / step_deg + 1e-9)));
    const int n_lon = std::max(1, static_cast<int>(std::lround(360.0 / step_deg)));
    const double lat_step = std::min(step_deg, span);
    const double lon_step = 360.0 / n_lon;

    std::vector<GeodeticPoint> pts;
    pts.reserve(static_cast<std::size_t>(n_lat) * n_lon);
    for (int i = 0; i < n_lat; ++i) {
        const double lat = lat_min_deg + (i + 0.5) * lat_step;
        for (int j = 0; j < n_lon; ++j)
            pts.push_back({deg2rad(lat), deg2rad(-180.0 + (j + 0.5) * lon_step)});
    }
    return pts;
}

std::vector<double> Timeline::slots() const {
    if (!(step > 0.0)) throw ParameterError("timeline: step must be positive");
    if (duration < step) throw ParameterError("timeline: duration must be >= step");
    const auto count = static_cast<std::size_t>(std::floor(duration / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = start + static_cast<double>(k) * step;
    return out;
}

namespace {

// Per-slot count of satellites whose footprint contains each grid point.
// cos_radius[s] is cos φ_max of satellite s; containment is tested as
// û_sat · û_grid >= cos φ_max.
CoverageReport sweep(const ConstellationGeometry& constellation, const GridSpec& grid,
                     const Timeline& timeline, const std::vector<double>& cos_radius) {
    const auto pts = grid.points();
    const auto slots = timeline.slots();
    std::vector<Vec3> grid_units(pts.size());
    std::transform(pts.begin(), pts.end(), grid_units.begin(),
                   [](const GeodeticPoint& g) { return g.unit_vector(); });

    CoverageReport report;
    report.eta_per_slot.resize(slots.size());
    int min_count = std::numeric_limits<int>::max();
    std::vector<Vec3> sat_units(constellation.size());

    for (std::size_t k = 0; k < slots.size(); ++k) {
        for (std::size_t s = 0; s < constellation.size(); ++s)
            sat_units[s] = eci_to_ecef(propagate_eci(constellation[s], slots[k])).r.unit();
        std::size_t covered = 0;
        for (const Vec3& g : grid_units) {
            int count = 0;
            for (std::size_t s = 0; s < sat_units.size(); ++s)
                if (dot(sat_units[s], g) >= cos_radius[s]) ++count;
            if (count > 0) ++covered;
            min_count = std::min(min_count, count);
        }
        report.eta_per_slot[k] = static_cast<double>(covered) / static_cast<double>(pts.size());
    }

    const auto [lo, hi] = std::minmax_element(report.eta_per_slot.begin(), report.eta_per_slot.end());
    report.eta_min = *lo;
    report.eta_max = *hi;
    report.mean_eta = std::accumulate(report.eta_per_slot.begin(), report.eta_per_slot.end(), 0.0) /
                      static_cast<double>(report.eta_per_slot.size());
    // the mean can drift below the min by one ulp when all slots are equal
    report.mean_eta = std::clamp(report.mean_eta, report.eta_min, report.eta_max);
    report.min_visible_count = min_count;
    return report;
}

} // namespace

CoverageReport coverage_ratio_timeline(const ConstellationGeometry& constellation,
                                       const GridSpec& grid, const Timeline& timeline,
                                       const FootprintGeometry& footprint) {
    const std::vector<double> cos_radius(constellation.size(), std::cos(footprint.angular_radius));
    return sweep(constellation, grid, timeline, cos_radius);
}

int min_visible_satellites(const ConstellationGeometry& constellation, const GridSpec& grid,
                           const Timeline& timeline, double min_elevation) {
    std::vector<double> cos_radius(constellation.size());
    for (std::size_t s = 0; s < constellation.size(); ++s) {
        const double h = constellation[s].semi_major_axis - kEarthRadius;
        cos_radius[s] = std::cos(footprint_geometry(h, min_elevation).angular_radius);
    }
    return sweep(constellation, grid, timeline, cos_radius).min_visible_count;
}

} // namespace leodesign
