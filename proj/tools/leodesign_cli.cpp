#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "leodesign/experiment.hpp"
#include "leodesign/geo.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace leodesign;

namespace {

// Exit codes; scripts depend on these values.
enum Exit : int { kOk = 0, kUnexpected = 1, kParameter = 2, kIo = 3, kInfeasible = 4 };

struct Common {
    std::string config_path;
    std::string profile;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> algorithms;
    std::string out;
};

struct DesignArgs {
    double altitude_km = 1589.0;
    double planes = 6;
    double sats_per_plane = 8;
    double inclination_deg = 41.0;

    DesignVector vector() const {
        return DesignVector::make(altitude_km * 1e3, planes, sats_per_plane, deg2rad(inclination_deg));
    }
};

ordered_json num(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

void add_common(CLI::App* sub, Common& c, bool multi_seed, bool multi_algorithm) {
    sub->add_option("--config", c.config_path, "flat JSON config with dotted keys");
    sub->add_option("--profile", c.profile, "parameter profile")
        ->check(CLI::IsMember({"paper", "desk"}));
    if (multi_seed)
        sub->add_option("--seed", c.seeds, "seed (repeatable; default: config run.seeds)");
    else
        sub->add_option("--seed", c.seeds, "optimizer seed")->expected(1);
    if (multi_algorithm)
        sub->add_option("--algorithm", c.algorithms,
                        "improved, classical-ga, pso, sca, gwo or tabu (repeatable)");
    else
        sub->add_option("--algorithm", c.algorithms, "improved, classical-ga, pso, sca, gwo or tabu")
            ->expected(1);
    sub->add_option("--out", c.out, "output directory");
}

void add_design(CLI::App* sub, DesignArgs& d) {
    sub->add_option("--altitude-km", d.altitude_km, "orbit altitude h [km]")->capture_default_str();
    sub->add_option("--planes", d.planes, "orbital planes P")->capture_default_str();
    sub->add_option("--sats-per-plane", d.sats_per_plane, "satellites per plane N")->capture_default_str();
    sub->add_option("--inclination-deg", d.inclination_deg, "inclination [deg]")->capture_default_str();
}

ExperimentConfig resolve_config(const Common& c) {
    const Profile fallback = c.profile.empty() ? Profile::Paper : parse_profile(c.profile);
    ExperimentConfig cfg = ExperimentConfig::defaults(fallback);
    if (!c.config_path.empty() && c.profile.empty()) {
        cfg = load_config(c.config_path, fallback);
    } else if (!c.config_path.empty()) {
        // keys in the file win; --profile supplies everything else
        std::ifstream f(c.config_path);
        if (!f) throw IoError("cannot open " + c.config_path);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            throw ParameterError(c.config_path + ": " + e.what());
        }
        if (!j.is_object()) throw ParameterError(c.config_path + ": expected a JSON object");
        j["run.profile"] = c.profile;
        cfg = parse_config(j.dump(), fallback);
    }
    if (!c.seeds.empty()) {
        cfg.seeds = c.seeds;
        cfg.optimizer.seed = c.seeds.front();
    }
    cfg.validate();
    return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw IoError("write failed for " + path.string());
}

int cmd_evaluate(const Common& c, const DesignArgs& d) {
    const auto cfg = resolve_config(c);
    const auto text = report_to_json(evaluate_design(cfg, d.vector()));
    std::cout << text << '\n';
    if (!c.out.empty()) write_text(fs::path(c.out) / "report.json", text + "\n");
    return kOk;
}

int cmd_optimize(const Common& c) {
    const auto cfg = resolve_config(c);
    const auto kind = parse_algorithm(c.algorithms.empty() ? "improved" : c.algorithms.front());
    const fs::path out = c.out.empty()
        ? fs::path("runs") / (to_string(kind) + "-seed" + std::to_string(cfg.optimizer.seed))
        : fs::path(c.out);
    const auto art = run_experiment(cfg, kind, out);
    const auto& best = art.result.best;

    ordered_json j;
    j["algorithm"] = to_string(kind);
    j["seed"] = cfg.optimizer.seed;
    j["feasible"] = art.result.feasible;
    j["cost"] = num(best.objective);
    j["altitude_km"] = num(best.design.altitude() / 1e3);
    j["planes"] = best.design.planes();
    j["sats_per_plane"] = best.design.sats_per_plane();
    j["inclination_deg"] = num(rad2deg(best.design.inclination()));
    j["eta_min"] = num(best.eta_min);
    j["min_visible"] = best.min_visible;
    j["required_count"] = num(best.required_count);
    j["evaluations"] = art.result.evaluations;
    j["wall_seconds"] = num(art.wall_seconds);
    j["directory"] = art.directory.string();
    std::cout << j.dump(2) << '\n';
    return kOk;
}

int cmd_compare(const Common& c) {
    const auto cfg = resolve_config(c);
    std::vector<AlgorithmKind> kinds;
    if (c.algorithms.empty())
        kinds = {AlgorithmKind::Improved, AlgorithmKind::ClassicalGa};
    else
        for (const auto& a : c.algorithms) kinds.push_back(parse_algorithm(a));
    const fs::path out = c.out.empty() ? fs::path("runs") / "compare" : fs::path(c.out);
    const auto cmp = compare_trials(cfg, kinds, cfg.seeds, out);
    std::cout << comparison_to_csv(cmp);
    return kOk;
}

int cmd_coverage(const Common& c, const DesignArgs& d, std::optional<double> elevation_deg) {
    const auto cfg = resolve_config(c);
    const auto x = d.vector().rounded();
    if (!cfg.bounds().contains(x)) throw ParameterError("design lies outside the configured bounds");
    const WalkerConfig w{x.sats_per_plane(), x.planes(), cfg.phase_factor, x.altitude(), x.inclination()};
    const double theta = elevation_deg ? deg2rad(*elevation_deg)
                                       : theta_from_beta(deg2rad(cfg.coverage_angle_deg), x.altitude());
    const auto fp = footprint_geometry(x.altitude(), theta);
    const auto tl = cfg.timeline();
    const auto rep = coverage_ratio_timeline(walker_delta_elements(w), cfg.grid(), tl, fp);

    std::string csv = "slot,time_s,eta\n";
    const auto slots = tl.slots();
    for (std::size_t k = 0; k < slots.size(); ++k)
        csv += std::to_string(k) + "," + format_double(slots[k]) + "," +
               format_double(rep.eta_per_slot[k]) + "\n";

    ordered_json j;
    j["min_elevation_deg"] = num(rad2deg(theta));
    j["angular_radius_deg"] = num(rad2deg(fp.angular_radius));
    j["footprint_area_km2"] = num(fp.area / 1e6);
    j["coverage_angle_deg"] = num(rad2deg(fp.coverage_angle));
    j["slots"] = slots.size();
    j["eta_min"] = num(rep.eta_min);
    j["eta_max"] = num(rep.eta_max);
    j["mean_eta"] = num(rep.mean_eta);
    j["min_visible"] = rep.min_visible_count;
    std::cout << j.dump(2) << '\n';
    if (!c.out.empty()) {
        write_text(fs::path(c.out) / "coverage.csv", csv);
        write_text(fs::path(c.out) / "coverage.json", j.dump(2) + "\n");
    }
    return kOk;
}

int cmd_linkbudget(const Common& c, double altitude_km, std::optional<double> elevation_deg,
                   double serving) {
    const auto cfg = resolve_config(c);
    const double h = altitude_km * 1e3;
    const double theta = elevation_deg ? deg2rad(*elevation_deg)
                                       : theta_from_beta(deg2rad(cfg.coverage_angle_deg), h);
    const auto env = cfg.link_environment(h, theta);
    env.validate();
    const auto cap = evaluate_capacity(env, serving, cfg.capacity_threshold_bps);

    ordered_json j;
    j["altitude_km"] = num(altitude_km);
    j["min_elevation_deg"] = num(rad2deg(theta));
    j["slant_range_m"] = num(cap.max_distance);
    j["path_gain_coefficient"] = num(path_gain_coefficient(env));
    j["mean_interference_w"] = num(cap.mean_interference);
    j["noise_w"] = num(env.noise_power);
    j["psi_m2"] = num(cap.psi);
    j["xi_bps_per_hz"] = num(cap.xi);
    j["mean_rate_bps"] = num(cap.mean_rate);
    j["serving_count"] = num(serving);
    j["mean_capacity_bps"] = num(cap.mean_capacity);
    j["capacity_threshold_bps"] = num(cfg.capacity_threshold_bps);
    j["required_count"] = num(cap.required_count);
    std::cout << j.dump(2) << '\n';
    if (!c.out.empty()) write_text(fs::path(c.out) / "linkbudget.json", j.dump(2) + "\n");
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LEO IoT constellation design: evaluation, optimization and baselines"};
    app.require_subcommand(1);

    Common common;
    DesignArgs design;
    std::optional<double> elevation_deg;
    double link_altitude_km = 1589.0;
    double serving = 1.0;

    auto* eval = app.add_subcommand("evaluate", "full report for one design");
    add_common(eval, common, false, false);
    add_design(eval, design);

    auto* opt = app.add_subcommand("optimize", "one optimizer run written to --out");
    add_common(opt, common, false, false);

    auto* cmp = app.add_subcommand("compare", "every (algorithm, seed) pair on one evaluator");
    add_common(cmp, common, true, true);

    auto* cov = app.add_subcommand("coverage", "coverage ratio per slot for one design");
    add_common(cov, common, false, false);
    add_design(cov, design);
    cov->add_option("--elevation-deg", elevation_deg, "minimum elevation; default from the coverage angle");

    auto* link = app.add_subcommand("linkbudget", "closed-form link quantities at one altitude");
    add_common(link, common, false, false);
    link->add_option("--altitude-km", link_altitude_km, "orbit altitude h [km]")->capture_default_str();
    link->add_option("--elevation-deg", elevation_deg, "minimum elevation; default from the coverage angle");
    link->add_option("--serving", serving, "visible satellites used for E[C]")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kParameter;
    }

    try {
        if (*eval) return cmd_evaluate(common, design);
        if (*opt) return cmd_optimize(common);
        if (*cmp) return cmd_compare(common);
        if (*cov) return cmd_coverage(common, design, elevation_deg);
        if (*link) return cmd_linkbudget(common, link_altitude_km, elevation_deg, serving);
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return kParameter;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kIo;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUnexpected;
    }
    return kUnexpected;
}
