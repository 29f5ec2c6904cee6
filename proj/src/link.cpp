#include "leodesign/link.hpp"

#include <array>
#include <cmath>
#include <string>

namespace leodesign {

void LinkEnvironment::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ParameterError(std::string("link: ") + name + " must be positive and finite");
    };
    positive(carrier_frequency, "carrier_frequency");
    positive(bandwidth, "bandwidth");
    positive(sat_gain, "sat_gain");
    positive(dev_gain, "dev_gain");
    positive(rain_attenuation, "rain_attenuation");
    positive(rician_factor, "rician_factor");
    positive(activity, "activity");
    positive(device_density, "device_density");
    positive(tx_power, "tx_power");
    positive(noise_power, "noise_power");
    positive(altitude, "altitude");
    positive(array_diameter, "array_diameter");
    if (antennas < 1) throw ParameterError("link: antennas must be >= 1");
    if (sequence_length < 1) throw ParameterError("link: sequence_length must be >= 1");
    if (activity > 1.0) throw ParameterError("link: activity must lie in (0, 1]");
    if (rain_attenuation > 1.0) throw ParameterError("link: rain_attenuation must lie in (0, 1]");
    if (min_elevation < 0.0 || min_elevation > kPi / 2)
        throw ParameterError("link: min_elevation must lie in [0, 90] deg");
}

double slant_range(double elevation, double altitude) {
    const double rs = kEarthRadius * std::sin(elevation);
    return -rs + std::sqrt(rs * rs + altitude * altitude + 2.0 * altitude * kEarthRadius);
}

double path_gain_coefficient(const LinkEnvironment& env) {
    const double fspl = kSpeedOfLight / (4.0 * kPi * env.carrier_frequency);
    return fspl * fspl * env.sat_gain * env.dev_gain * env.rain_attenuation;
}

std::vector<std::complex<double>> array_response(int antennas, double phase_scale, double azimuth) {
    std::vector<std::complex<double>> a(static_cast<std::size_t>(antennas));
    const double amp = 1.0 / std::sqrt(static_cast<double>(antennas));
    for (int j = 0; j < antennas; ++j) {
        const double eta = kTwoPi * j / antennas;
        a[static_cast<std::size_t>(j)] = std::polar(amp, phase_scale * std::cos(azimuth - eta));
    }
    return a;
}

double ChannelSample::norm_sq() const {
    double s = 0.0;
    for (const auto& v : h) s += std::norm(v);
    return s;
}

ChannelSample sample_channel(const LinkEnvironment& env, const ChannelGeometry& geometry,
                             std::mt19937_64& rng) {
    const double phase_scale = kPi * env.array_diameter * env.carrier_frequency / kSpeedOfLight *
                               std::sin(geometry.off_axis);
    const auto a = array_response(env.antennas, phase_scale, geometry.azimuth);
    const double k = env.rician_factor;
    const double los_w = std::sqrt(k / (k + 1.0)) * std::sqrt(static_cast<double>(env.antennas));
    const double nlos_w = std::sqrt(1.0 / (k + 1.0));

    ChannelSample out;
    out.gain = std::sqrt(path_gain_coefficient(env)) / geometry.distance;
    out.h.resize(a.size());
    std::normal_distribution<double> component(0.0, std::sqrt(0.5));
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double re = component(rng);
        const double im = component(rng);
        out.h[j] = out.gain * (los_w * a[j] + nlos_w * std::complex<double>(re, im));
    }
    return out;
}

double mean_interference(const LinkEnvironment& env) {
    if (!(env.altitude > 0.0)) throw ParameterError("mean_interference: altitude must be positive");
    const double h = env.altitude;
    const double cap_integral =
        kPi * kEarthRadius / (kEarthRadius + h) * std::log1p(2.0 * kEarthRadius / h);
    return env.tx_power * env.activity * env.sequence_length * env.antennas *
           env.device_density * path_gain_coefficient(env) * cap_integral;
}

double spectral_efficiency_closed_form(double psi, double altitude, double max_distance) {
    const double lo = altitude * altitude;
    const double hi = max_distance * max_distance;
    const double width = hi - lo;
    if (!(width > 0.0))
        throw InfeasibleError("spectral efficiency: max distance must exceed the altitude");
    if (psi == 0.0) return 0.0;

    double integral = 0.0;
    if (width < 1e-6 * lo) {
        // antiderivative differences cancel here; 3-point Gauss-Legendre is exact to O(width^6)
        static constexpr std::array<double, 3> nodes{-0.7745966692414834, 0.0, 0.7745966692414834};
        static constexpr std::array<double, 3> weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
        const double mid = 0.5 * (lo + hi);
        for (std::size_t i = 0; i < nodes.size(); ++i)
            integral += weights[i] * std::log1p(psi / (mid + 0.5 * width * nodes[i]));
        integral *= 0.5 * width;
    } else {
        // [u·ln(1+Ψ/u) + Ψ·ln(u+Ψ)] evaluated between h² and d_m²
        integral = hi * std::log1p(psi / hi) - lo * std::log1p(psi / lo) +
                   psi * std::log1p(width / (lo + psi));
    }
    return integral / (width * std::numbers::ln2);
}

SpectralEfficiency mean_spectral_efficiency(const LinkEnvironment& env) {
    env.validate();
    SpectralEfficiency out;
    out.max_distance = slant_range(env.min_elevation, env.altitude);
    if (!(out.max_distance > env.altitude))
        throw InfeasibleError("spectral efficiency: degenerate geometry, d_m <= h at theta_min = " +
                              std::to_string(rad2deg(env.min_elevation)) + " deg");
    out.mean_interference = mean_interference(env);
    out.psi = env.tx_power * env.sequence_length * env.antennas * path_gain_coefficient(env) /
              (out.mean_interference + env.noise_power);
    out.xi = spectral_efficiency_closed_form(out.psi, env.altitude, out.max_distance);
    return out;
}

double required_satellite_count(double capacity_threshold, double bandwidth, double xi) {
    const double per_sat = bandwidth * xi;
    if (!(per_sat > 0.0))
        throw InfeasibleError("required satellite count: B_w * Xi must be positive");
    return capacity_threshold / per_sat;
}

CapacityResult evaluate_capacity(const LinkEnvironment& env, double serving_count,
                                 double capacity_threshold) {
    const SpectralEfficiency se = mean_spectral_efficiency(env);
    CapacityResult out;
    out.mean_interference = se.mean_interference;
    out.psi = se.psi;
    out.xi = se.xi;
    out.max_distance = se.max_distance;
    out.mean_rate = env.bandwidth * se.xi;
    out.mean_capacity = mean_capacity(serving_count, out.mean_rate);
    out.required_count = required_satellite_count(capacity_threshold, env.bandwidth, se.xi);
    return out;
}

} // namespace leodesign
