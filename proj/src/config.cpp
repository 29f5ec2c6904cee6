#include "leodesign/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace leodesign {

using nlohmann::json;

std::string to_string(Profile profile) { return profile == Profile::Desk ? "desk" : "paper"; }

Profile parse_profile(std::string_view name) {
    if (name == "paper") return Profile::Paper;
    if (name == "desk") return Profile::Desk;
    throw ParameterError("unknown profile '" + std::string(name) + "' (expected paper or desk)");
}

ExperimentConfig ExperimentConfig::defaults(Profile profile) {
    ExperimentConfig c;
    if (profile == Profile::Desk) {
        c.profile = "desk";
        c.grid_step_deg = 30.0;
        c.time_step_s = 600.0;
        c.seeds.clear();
        for (std::uint64_t s = 1; s <= 20; ++s) c.seeds.push_back(s);
    } else {
        c.profile = "paper";
        c.seeds.clear();
        for (std::uint64_t s = 1; s <= 200; ++s) c.seeds.push_back(s);
    }
    return c;
}

GridSpec ExperimentConfig::grid() const { return {lat_min_deg, lat_max_deg, grid_step_deg}; }

Timeline ExperimentConfig::timeline() const { return {start_epoch_s, duration_s, time_step_s}; }

DesignBounds ExperimentConfig::bounds() const {
    return {DesignVector::make(h_min_km * 1e3, p_min, n_min, deg2rad(i_min_deg)),
            DesignVector::make(h_max_km * 1e3, p_max, n_max, deg2rad(i_max_deg))};
}

LinkEnvironment ExperimentConfig::link_environment(double altitude_m, double min_elevation_rad) const {
    LinkEnvironment env;
    env.carrier_frequency = carrier_frequency_hz;
    env.bandwidth = bandwidth_hz;
    env.sat_gain = db_to_linear(sat_gain_dbi);
    env.dev_gain = db_to_linear(dev_gain_dbi);
    // rain fading is a power loss whatever sign the dB value carries
    env.rain_attenuation = db_to_linear(-std::abs(rain_fading_db));
    env.rician_factor = db_to_linear(rician_factor_db);
    env.antennas = antennas;
    env.sequence_length = sequence_length;
    env.activity = activity;
    env.device_density = device_density_per_km2 * 1e-6;
    env.tx_power = db_to_linear(tx_power_dbw);
    env.noise_power = dbm_to_watt(noise_dbm);
    env.altitude = altitude_m;
    env.min_elevation = min_elevation_rad;
    env.array_diameter = array_diameter_m;
    return env;
}

void ExperimentConfig::validate() const {
    parse_profile(profile);
    if (phase_factor < 0) throw ParameterError("config: walker.phase_factor must be >= 0");
    if (!(coverage_angle_deg > 0.0) || coverage_angle_deg >= 180.0)
        throw ParameterError("config: walker.coverage_angle_deg must lie in (0, 180)");
    grid().points();
    timeline().slots();
    bounds().validate();
    if (!(h_min_km > 0.0)) throw ParameterError("config: bounds.h_min_km must be positive");
    if (p_min < 1.0 || n_min < 1.0) throw ParameterError("config: plane/satellite bounds must be >= 1");
    if (phase_factor > static_cast<int>(std::lround(p_min)) - 1)
        throw ParameterError("config: walker.phase_factor must be <= P_min - 1");
    if (eta_threshold < 0.0 || eta_threshold > 1.0)
        throw ParameterError("config: qos.eta_threshold must lie in [0, 1]");
    if (!(capacity_threshold_bps > 0.0)) throw ParameterError("config: qos.capacity_threshold_bps must be positive");
    link_environment(h_min_km * 1e3, 0.0).validate();
    if (cost.insurance_ratio < 0.0 || !(cost.sat_mass_kg > 0.0) || !(cost.manufacture_coeff > 0.0) ||
        !(cost.launch_coeff > 0.0))
        throw ParameterError("config: cost parameters must be positive (insurance ratio >= 0)");
    optimizer.validate();
    if (seeds.empty()) throw ParameterError("config: run.seeds must not be empty");
}

namespace {

struct Field {
    std::string key;
    std::function<json(const ExperimentConfig&)> get;
    std::function<void(ExperimentConfig&, const json&)> set;
};

template <typename T>
T as(const json& v, const std::string& key) {
    try {
        if constexpr (std::is_floating_point_v<T>) {
            if (!v.is_number()) throw ParameterError("");
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) throw ParameterError("");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) throw ParameterError("");
        }
        return v.get<T>();
    } catch (const std::exception&) {
        throw ParameterError("config: key '" + key + "' has the wrong type (got " + v.dump() + ")");
    }
}

template <typename T>
Field field(std::string key, std::function<T&(ExperimentConfig&)> ref) {
    return {key,
            [ref](const ExperimentConfig& c) { return json(ref(const_cast<ExperimentConfig&>(c))); },
            [ref, key](ExperimentConfig& c, const json& v) { ref(c) = as<T>(v, key); }};
}

#define LEOD_FIELD(T, key, member) \
    field<T>(key, [](ExperimentConfig& c) -> T& { return c.member; })

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f{
            LEOD_FIELD(std::string, "run.profile", profile),
            LEOD_FIELD(int, "walker.phase_factor", phase_factor),
            LEOD_FIELD(double, "walker.coverage_angle_deg", coverage_angle_deg),
            LEOD_FIELD(double, "coverage.lat_min_deg", lat_min_deg),
            LEOD_FIELD(double, "coverage.lat_max_deg", lat_max_deg),
            LEOD_FIELD(double, "coverage.grid_step_deg", grid_step_deg),
            LEOD_FIELD(double, "coverage.start_epoch_s", start_epoch_s),
            LEOD_FIELD(double, "coverage.duration_s", duration_s),
            LEOD_FIELD(double, "coverage.time_step_s", time_step_s),
            LEOD_FIELD(double, "link.carrier_frequency_hz", carrier_frequency_hz),
            LEOD_FIELD(double, "link.bandwidth_hz", bandwidth_hz),
            LEOD_FIELD(double, "link.sat_gain_dbi", sat_gain_dbi),
            LEOD_FIELD(double, "link.dev_gain_dbi", dev_gain_dbi),
            LEOD_FIELD(double, "link.rain_fading_db", rain_fading_db),
            LEOD_FIELD(double, "link.rician_factor_db", rician_factor_db),
            LEOD_FIELD(int, "link.antennas", antennas),
            LEOD_FIELD(int, "link.sequence_length", sequence_length),
            LEOD_FIELD(double, "link.activity", activity),
            LEOD_FIELD(double, "link.device_density_per_km2", device_density_per_km2),
            LEOD_FIELD(double, "link.tx_power_dbw", tx_power_dbw),
            LEOD_FIELD(double, "link.noise_dbm", noise_dbm),
            LEOD_FIELD(double, "link.array_diameter_m", array_diameter_m),
            LEOD_FIELD(double, "qos.eta_threshold", eta_threshold),
            LEOD_FIELD(double, "qos.capacity_threshold_bps", capacity_threshold_bps),
            LEOD_FIELD(double, "cost.sat_mass_kg", cost.sat_mass_kg),
            LEOD_FIELD(double, "cost.insurance_ratio", cost.insurance_ratio),
            LEOD_FIELD(double, "cost.manufacture_coeff", cost.manufacture_coeff),
            LEOD_FIELD(double, "cost.launch_coeff", cost.launch_coeff),
            LEOD_FIELD(double, "bounds.h_min_km", h_min_km),
            LEOD_FIELD(double, "bounds.h_max_km", h_max_km),
            LEOD_FIELD(double, "bounds.p_min", p_min),
            LEOD_FIELD(double, "bounds.p_max", p_max),
            LEOD_FIELD(double, "bounds.n_min", n_min),
            LEOD_FIELD(double, "bounds.n_max", n_max),
            LEOD_FIELD(double, "bounds.i_min_deg", i_min_deg),
            LEOD_FIELD(double, "bounds.i_max_deg", i_max_deg),
            LEOD_FIELD(int, "optim.population", optimizer.population),
            LEOD_FIELD(int, "optim.iterations", optimizer.iterations),
            LEOD_FIELD(double, "optim.mutation_threshold", optimizer.mutation_threshold),
            LEOD_FIELD(double, "optim.alpha1", optimizer.alpha1),
            LEOD_FIELD(double, "optim.alpha2", optimizer.alpha2),
            LEOD_FIELD(double, "optim.sigma_fraction", optimizer.sigma_fraction),
            LEOD_FIELD(int, "optim.parent_pool", optimizer.parent_pool),
            LEOD_FIELD(double, "optim.rho1", optimizer.rho1),
            LEOD_FIELD(double, "optim.rho2", optimizer.rho2),
            LEOD_FIELD(std::uint64_t, "optim.seed", optimizer.seed),
            LEOD_FIELD(int, "optim.threads", optimizer.threads),
            LEOD_FIELD(double, "optim.pso_inertia", optimizer.pso_inertia),
            LEOD_FIELD(double, "optim.pso_cognitive", optimizer.pso_cognitive),
            LEOD_FIELD(double, "optim.pso_social", optimizer.pso_social),
            LEOD_FIELD(double, "optim.pso_velocity_fraction", optimizer.pso_velocity_fraction),
            LEOD_FIELD(double, "optim.sca_a", optimizer.sca_a),
            LEOD_FIELD(double, "optim.gwo_a", optimizer.gwo_a),
            LEOD_FIELD(int, "optim.tabu_tenure", optimizer.tabu_tenure),
            LEOD_FIELD(double, "optim.tabu_step_fraction", optimizer.tabu_step_fraction),
        };
        f.push_back({"run.seeds", [](const ExperimentConfig& c) { return json(c.seeds); },
                     [](ExperimentConfig& c, const json& v) {
                         if (!v.is_array()) throw ParameterError("config: key 'run.seeds' must be an array");
                         std::vector<std::uint64_t> seeds;
                         for (const auto& s : v) seeds.push_back(as<std::uint64_t>(s, "run.seeds"));
                         c.seeds = std::move(seeds);
                     }});
        return f;
    }();
    return table;
}

#undef LEOD_FIELD

} // namespace

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& f : fields()) keys.push_back(f.key);
    return keys;
}

std::string serialize_config(const ExperimentConfig& config) {
    json j = json::object();
    for (const auto& f : fields()) j[f.key] = f.get(config);
    return j.dump(2);
}

ExperimentConfig parse_config(std::string_view text, Profile fallback) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParameterError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParameterError("config: top level must be an object");

    Profile base = fallback;
    if (auto it = j.find("run.profile"); it != j.end()) base = parse_profile(as<std::string>(*it, "run.profile"));
    ExperimentConfig c = ExperimentConfig::defaults(base);

    for (const auto& [key, value] : j.items()) {
        const auto& table = fields();
        auto f = std::find_if(table.begin(), table.end(), [&](const Field& fd) { return fd.key == key; });
        if (f == table.end()) throw ParameterError("config: unknown key '" + key + "'");
        f->set(c, value);
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, Profile fallback) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), fallback);
}

void save_config(const ExperimentConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config file " + path.string());
    out << serialize_config(config) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace leodesign
