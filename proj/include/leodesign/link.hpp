#pragma once

#include <complex>
#include <random>
#include <vector>

#include "leodesign/constants.hpp"

namespace leodesign {

/// RF and traffic parameters of the uplink, all linear SI. Conversion from
/// dB / per-km² values happens at the configuration boundary.
struct LinkEnvironment {
    double carrier_frequency = 5e9;  // f_c [Hz]
    double bandwidth = 250e6;        // B_w [Hz]
    double sat_gain = 1.0;           // G_sat, linear
    double dev_gain = 1.0;           // G_dev, linear
    double rain_attenuation = 1.0;   // multiplicative power loss in (0, 1]
    double rician_factor = 10.0;     // λ_mk, linear
    int antennas = 16;               // M_a
    int sequence_length = 100;       // L
    double activity = 0.005;         // ε
    double device_density = 8e-11;   // λ [devices/m^2]
    double tx_power = 1.0;           // ξ [W]
    double noise_power = 1e-14;      // σ_0² [W]
    double altitude = 600e3;         // h [m]
    double min_elevation = 0.17;     // θ_min [rad]
    double array_diameter = 1.0;     // d_s of the circular array [m]

    /// Throws ParameterError on any non-positive quantity or an
    /// activity / attenuation outside (0, 1].
    void validate() const;
};

/// Device-to-satellite distance at elevation θ on the spherical Earth.
double slant_range(double elevation, double altitude);

/// (c / 4π f_c)²·G_sat·G_dev·r_0 so that g² = coefficient / d².
double path_gain_coefficient(const LinkEnvironment& env);

/// Uniform-circular-array response; every entry has modulus 1/sqrt(M_a).
std::vector<std::complex<double>> array_response(int antennas, double phase_scale, double azimuth);

struct ChannelGeometry {
    double off_axis = 0.0; // ϑ [rad] from boresight
    double azimuth = 0.0;  // ϱ [rad]
    double distance = 0.0; // d [m]
};

struct ChannelSample {
    std::vector<std::complex<double>> h; // g·h̃
    double gain = 0.0;                   // g (amplitude)

    double norm_sq() const;
};

/// One Rician draw g·(sqrt(K/(K+1))·sqrt(M_a)·a + sqrt(1/(K+1))·w) with
/// w ~ CN(0, I).
ChannelSample sample_channel(const LinkEnvironment& env, const ChannelGeometry& geometry,
                             std::mt19937_64& rng);

/// Mean aggregate interference at a satellite from active devices spread as a
/// Poisson process over the whole visible cap:
/// ξ·ε·L·M_a·λ·coef·(πR_e/(R_e+h))·ln(2R_e/h + 1).
double mean_interference(const LinkEnvironment& env);

/// Average of log2(1 + Ψ/u) over u ∈ [h², d_m²].
double spectral_efficiency_closed_form(double psi, double altitude, double max_distance);

struct SpectralEfficiency {
    double mean_interference = 0.0; // E[I] [W]
    double psi = 0.0;               // Ψ [m^2]
    double xi = 0.0;                // Ξ [bit/s/Hz]
    double max_distance = 0.0;      // d_m [m]
};

/// Ψ from the mean interference plus noise, then Ξ with d_m taken at θ_min.
/// Throws InfeasibleError when d_m <= h (θ_min = 90°).
SpectralEfficiency mean_spectral_efficiency(const LinkEnvironment& env);

/// N̄_th = C_th / (B_w·Ξ). Throws InfeasibleError if B_w·Ξ is not positive.
double required_satellite_count(double capacity_threshold, double bandwidth, double xi);

inline double mean_capacity(double serving_count, double mean_rate) {
    return serving_count * mean_rate;
}

struct CapacityResult {
    double mean_interference = 0.0; // [W]
    double psi = 0.0;               // [m^2]
    double xi = 0.0;                // [bit/s/Hz]
    double max_distance = 0.0;      // [m]
    double mean_rate = 0.0;         // E[R] [bit/s]
    double mean_capacity = 0.0;     // E[C_k] [bit/s] for the supplied N̄
    double required_count = 0.0;    // N̄_th
};

CapacityResult evaluate_capacity(const LinkEnvironment& env, double serving_count,
                                 double capacity_threshold);

} // namespace leodesign
