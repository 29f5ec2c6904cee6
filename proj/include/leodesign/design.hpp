#pragma once

#include <array>
#include <cstddef>

namespace leodesign {

/// Real-coded chromosome [h, P, N, i]. Altitude in metres, inclination in
/// radians; plane and per-plane counts stay real-valued in the chromosome and
/// are rounded to the nearest integer when a design is evaluated.
struct DesignVector {
    static constexpr std::size_t kGenes = 4;
    static constexpr std::size_t kAltitude = 0;
    static constexpr std::size_t kPlanes = 1;
    static constexpr std::size_t kSatsPerPlane = 2;
    static constexpr std::size_t kInclination = 3;

    std::array<double, kGenes> genes{};

    static DesignVector make(double altitude, double planes, double sats_per_plane,
                             double inclination) {
        return DesignVector{{altitude, planes, sats_per_plane, inclination}};
    }

    double altitude() const { return genes[kAltitude]; }
    double inclination() const { return genes[kInclination]; }
    int planes() const;
    int sats_per_plane() const;

    /// Copy with the integer genes snapped to the nearest integer.
    DesignVector rounded() const;

    double& operator[](std::size_t i) { return genes[i]; }
    double operator[](std::size_t i) const { return genes[i]; }

    bool operator==(const DesignVector&) const = default;
};

/// Search box l <= x <= u.
struct DesignBounds {
    DesignVector lower;
    DesignVector upper;

    /// Throws ParameterError when some l_i > u_i or a bound is not finite.
    void validate() const;
    bool contains(const DesignVector& x) const;
    DesignVector clamp(DesignVector x) const;
    double width(std::size_t gene) const { return upper[gene] - lower[gene]; }
};

} // namespace leodesign
