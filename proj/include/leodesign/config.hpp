#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "leodesign/cost.hpp"
#include "leodesign/coverage.hpp"
#include "leodesign/design.hpp"
#include "leodesign/link.hpp"
#include "leodesign/optim.hpp"

namespace leodesign {

enum class Profile { Paper, Desk };

std::string to_string(Profile profile);
Profile parse_profile(std::string_view name);

/// Every tunable of an experiment. Values are kept in the units a person
/// would write in a config file (km, degrees, dB); the accessors below
/// convert to the SI/linear types the library works in.
struct ExperimentConfig {
    std::string profile = "paper";

    // constellation
    int phase_factor = 1;
    double coverage_angle_deg = 45.0;

    // coverage grid and timeline
    double lat_min_deg = -60.0;
    double lat_max_deg = 60.0;
    double grid_step_deg = 10.0;
    double start_epoch_s = 0.0;
    double duration_s = 86340.0;
    double time_step_s = 60.0;

    // link
    double carrier_frequency_hz = 5e9;
    double bandwidth_hz = 250e6;
    double sat_gain_dbi = 17.0;
    double dev_gain_dbi = 3.0;
    double rain_fading_db = -2.6;
    double rician_factor_db = 10.0;
    int antennas = 16;
    int sequence_length = 100;
    double activity = 0.005;
    double device_density_per_km2 = 8e-5;
    double tx_power_dbw = 3.0;
    double noise_dbm = -106.0;
    double array_diameter_m = 1.0;

    // QoS
    double eta_threshold = 0.9;
    double capacity_threshold_bps = 80e6;

    CostModel cost;

    // search box
    double h_min_km = 500.0;
    double h_max_km = 1800.0;
    double p_min = 4.0;
    double p_max = 20.0;
    double n_min = 4.0;
    double n_max = 20.0;
    double i_min_deg = 20.0;
    double i_max_deg = 60.0;

    OptimizerConfig optimizer;
    std::vector<std::uint64_t> seeds{1};

    static ExperimentConfig defaults(Profile profile);

    GridSpec grid() const;
    Timeline timeline() const;
    DesignBounds bounds() const;
    /// Linear/SI link parameters at a given altitude and minimum elevation.
    LinkEnvironment link_environment(double altitude_m, double min_elevation_rad) const;

    /// Throws ParameterError on any out-of-domain value.
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Flat JSON object with dotted keys (e.g. "link.carrier_frequency_hz").
std::string serialize_config(const ExperimentConfig& config);

/// Starts from the defaults of the "profile" key (or `fallback` if absent) and
/// applies every key present. Unknown keys and type mismatches raise
/// ParameterError.
ExperimentConfig parse_config(std::string_view text, Profile fallback = Profile::Paper);

ExperimentConfig load_config(const std::filesystem::path& path, Profile fallback = Profile::Paper);
void save_config(const ExperimentConfig& config, const std::filesystem::path& path);

/// Every recognised key, in serialization order.
std::vector<std::string> config_keys();

} // namespace leodesign
