#include "leodesign/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "leodesign/geo.hpp"

namespace leodesign {

using nlohmann::ordered_json;

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

DesignReport evaluate_design(const ExperimentConfig& config, const DesignVector& design) {
    const DesignBounds box = config.bounds();
    if (!box.contains(design))
        throw ParameterError("design lies outside the configured bounds");

    DesignReport rep;
    rep.design = design.rounded();
    rep.eta_threshold = config.eta_threshold;
    rep.capacity_threshold = config.capacity_threshold_bps;

    rep.walker.sats_per_plane = rep.design.sats_per_plane();
    rep.walker.planes = rep.design.planes();
    rep.walker.phase_factor = config.phase_factor;
    rep.walker.altitude = rep.design.altitude();
    rep.walker.inclination = rep.design.inclination();
    const auto constellation = walker_delta_elements(rep.walker);

    const double theta = theta_from_beta(deg2rad(config.coverage_angle_deg), rep.walker.altitude);
    rep.footprint = footprint_geometry(rep.walker.altitude, theta);
    rep.coverage = coverage_ratio_timeline(constellation, config.grid(), config.timeline(), rep.footprint);

    rep.capacity = evaluate_capacity(config.link_environment(rep.walker.altitude, theta),
                                     rep.coverage.min_visible_count, config.capacity_threshold_bps);
    rep.cost = space_segment_cost(rep.walker.sats_per_plane, rep.walker.planes,
                                  rep.walker.altitude / 1e3, config.cost);

    rep.record.design = rep.design;
    rep.record.objective = rep.cost.constellation_total;
    rep.record.eta_min = rep.coverage.eta_min;
    rep.record.min_visible = rep.coverage.min_visible_count;
    rep.record.required_count = rep.capacity.required_count;
    apply_constraints(rep.record, config.eta_threshold);
    return rep;
}

namespace {

ordered_json num(double v) {
    // non-finite values have no JSON number form
    if (!std::isfinite(v)) return format_double(v);
    return v;
}

ordered_json design_json(const DesignVector& d) {
    return {{"altitude_km", num(d.altitude() / 1e3)},
            {"planes", d.planes()},
            {"sats_per_plane", d.sats_per_plane()},
            {"inclination_deg", num(rad2deg(d.inclination()))}};
}

ordered_json record_json(const EvaluationRecord& r) {
    return {{"design", design_json(r.design)},
            {"cost", num(r.objective)},
            {"eta_min", num(r.eta_min)},
            {"min_visible", r.min_visible},
            {"required_count", num(r.required_count)},
            {"coverage_violation", num(r.coverage_violation)},
            {"capacity_violation", num(r.capacity_violation)},
            {"feasible", r.feasible}};
}

ordered_json report_json(const DesignReport& rep) {
    ordered_json slots = ordered_json::array();
    for (double e : rep.coverage.eta_per_slot) slots.push_back(num(e));
    return {
        {"design", design_json(rep.design)},
        {"walker", {{"N", rep.walker.sats_per_plane}, {"P", rep.walker.planes}, {"F", rep.walker.phase_factor}}},
        {"footprint",
         {{"angular_radius_deg", num(rad2deg(rep.footprint.angular_radius))},
          {"coverage_angle_deg", num(rad2deg(rep.footprint.coverage_angle))},
          {"min_elevation_deg", num(rad2deg(rep.footprint.min_elevation))},
          {"area_m2", num(rep.footprint.area)}}},
        {"coverage",
         {{"eta_min", num(rep.coverage.eta_min)},
          {"eta_max", num(rep.coverage.eta_max)},
          {"mean_eta", num(rep.coverage.mean_eta)},
          {"min_visible", rep.coverage.min_visible_count},
          {"eta_per_slot", slots}}},
        {"link",
         {{"mean_interference_w", num(rep.capacity.mean_interference)},
          {"psi_m2", num(rep.capacity.psi)},
          {"xi_bps_per_hz", num(rep.capacity.xi)},
          {"max_distance_m", num(rep.capacity.max_distance)},
          {"mean_rate_bps", num(rep.capacity.mean_rate)},
          {"mean_capacity_bps", num(rep.capacity.mean_capacity)},
          {"required_count", num(rep.capacity.required_count)}}},
        {"cost",
         {{"manufacture", num(rep.cost.manufacture)},
          {"launch", num(rep.cost.launch)},
          {"insurance", num(rep.cost.insurance)},
          {"per_satellite_total", num(rep.cost.per_satellite_total)},
          {"constellation_total", num(rep.cost.constellation_total)},
          {"insurance_ratio", num(rep.cost.insurance_ratio)}}},
        {"qos",
         {{"eta_threshold", num(rep.eta_threshold)},
          {"capacity_threshold_bps", num(rep.capacity_threshold)},
          {"coverage_met", rep.record.coverage_violation == 0.0},
          {"capacity_met", rep.record.capacity_violation == 0.0},
          {"coverage_shortfall", num(rep.record.coverage_violation)},
          {"capacity_shortfall", num(rep.record.capacity_violation)}}},
        {"feasible", rep.record.feasible},
    };
}

// nlohmann prints doubles with max_digits10, which already round-trips.
std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

} // namespace

std::string report_to_json(const DesignReport& report) { return dump(report_json(report)); }

Evaluator make_evaluator(const ExperimentConfig& config) {
    return [config](const DesignVector& x) {
        try {
            return evaluate_design(config, x).record;
        } catch (const InfeasibleError&) {
            EvaluationRecord r;
            r.design = x.rounded();
            r.objective = space_segment_cost(r.design.sats_per_plane(), r.design.planes(),
                                             r.design.altitude() / 1e3, config.cost)
                              .constellation_total;
            r.eta_min = 0.0;
            r.min_visible = 0;
            // no serving satellite can meet the capacity target
            r.required_count = r.design.planes() * r.design.sats_per_plane() + 1.0;
            apply_constraints(r, config.eta_threshold);
            return r;
        }
    };
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
    std::ostringstream os;
    os << "iteration,best_cost,incumbent_cost,feasible_count,eta_min_best,nvis_min_best,evaluations\n";
    for (const auto& row : trace) {
        os << row.iteration << ',' << format_double(row.best_cost) << ','
           << (row.incumbent_cost ? format_double(*row.incumbent_cost) : std::string()) << ','
           << row.feasible_count << ',' << format_double(row.eta_min_best) << ',' << row.nvis_min_best
           << ',' << row.evaluations << '\n';
    }
    return os.str();
}

RunArtifact run_experiment(const ExperimentConfig& config, AlgorithmKind kind,
                           const std::filesystem::path& out) {
    config.validate();
    ensure_directory(out);
    save_config(config, out / "config.json");

    const auto t0 = std::chrono::steady_clock::now();
    RunArtifact art;
    art.directory = out;
    art.result = run_optimizer(kind, make_evaluator(config), config.bounds(), config.optimizer);
    art.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_file(out / "trace.csv", trace_to_csv(art.result.trace));

    ordered_json result = {
        {"algorithm", to_string(kind)},
        {"seed", art.result.seed},
        {"feasible", art.result.feasible},
        {"evaluations", art.result.evaluations},
        {"best", record_json(art.result.best)},
    };
    // the full report re-evaluates the reported design under the same config
    try {
        result["report"] = report_json(evaluate_design(config, art.result.best.design));
    } catch (const InfeasibleError& e) {
        result["report"] = {{"error", e.what()}};
    }
    result["timings"] = {{"wall_seconds", art.wall_seconds}};
    write_file(out / "result.json", dump(result));
    return art;
}

Comparison compare_trials(const ExperimentConfig& config, const std::vector<AlgorithmKind>& kinds,
                          const std::vector<std::uint64_t>& seeds, const std::filesystem::path& out) {
    if (kinds.empty()) throw ParameterError("compare: at least one algorithm is required");
    if (seeds.empty()) throw ParameterError("compare: at least one seed is required");
    config.validate();
    if (!out.empty()) ensure_directory(out);

    const Evaluator evaluator = make_evaluator(config);
    const DesignBounds bounds = config.bounds();
    const auto iterations = static_cast<std::size_t>(config.optimizer.iterations);

    Comparison cmp;
    cmp.seeds = seeds;
    for (auto kind : kinds) {
        KindSummary s;
        s.kind = kind;
        s.mean_best.assign(iterations, 0.0);
        s.mean_incumbent.assign(iterations, 0.0);
        s.incumbent_seeds.assign(iterations, 0);
        for (auto seed : seeds) {
            OptimizerConfig oc = config.optimizer;
            oc.seed = seed;
            const auto res = run_optimizer(kind, evaluator, bounds, oc);
            ++s.runs;
            if (res.feasible) ++s.feasible_runs;
            s.final_costs.push_back(res.best.objective);
            for (std::size_t k = 0; k < iterations && k < res.trace.size(); ++k) {
                s.mean_best[k] += res.trace[k].best_cost;
                if (res.trace[k].incumbent_cost) {
                    s.mean_incumbent[k] += *res.trace[k].incumbent_cost;
                    ++s.incumbent_seeds[k];
                }
            }
        }
        for (std::size_t k = 0; k < iterations; ++k) {
            s.mean_best[k] /= s.runs;
            s.mean_incumbent[k] = s.incumbent_seeds[k] > 0
                                      ? s.mean_incumbent[k] / s.incumbent_seeds[k]
                                      : std::numeric_limits<double>::quiet_NaN();
        }
        const double n = static_cast<double>(s.runs);
        s.mean_final_cost = std::accumulate(s.final_costs.begin(), s.final_costs.end(), 0.0) / n;
        if (s.runs > 1) {
            double ss = 0.0;
            for (double c : s.final_costs) ss += (c - s.mean_final_cost) * (c - s.mean_final_cost);
            s.stddev_final_cost = std::sqrt(ss / (n - 1.0));
        }
        cmp.kinds.push_back(std::move(s));
    }

    const auto& ref = cmp.kinds.front().final_costs;
    for (auto& s : cmp.kinds) {
        for (std::size_t i = 0; i < ref.size(); ++i) {
            if (s.final_costs[i] < ref[i]) ++s.wins;
            if (s.final_costs[i] > ref[i]) ++s.losses;
        }
    }

    if (!out.empty()) {
        write_file(out / "comparison.csv", comparison_to_csv(cmp));
        write_file(out / "curves.csv", curves_to_csv(cmp));
    }
    return cmp;
}

std::string comparison_to_csv(const Comparison& cmp) {
    std::ostringstream os;
    os << "algorithm,runs,feasible_runs,mean_final_cost,stddev_final_cost,wins_vs_first,losses_vs_first\n";
    for (const auto& s : cmp.kinds) {
        os << to_string(s.kind) << ',' << s.runs << ',' << s.feasible_runs << ','
           << format_double(s.mean_final_cost) << ',' << format_double(s.stddev_final_cost) << ','
           << s.wins << ',' << s.losses << '\n';
    }
    return os.str();
}

std::string curves_to_csv(const Comparison& cmp) {
    std::ostringstream os;
    os << "algorithm,iteration,mean_best_cost,mean_incumbent_cost,incumbent_seeds\n";
    for (const auto& s : cmp.kinds) {
        for (std::size_t k = 0; k < s.mean_best.size(); ++k) {
            os << to_string(s.kind) << ',' << k + 1 << ',' << format_double(s.mean_best[k]) << ','
               << (s.incumbent_seeds[k] > 0 ? format_double(s.mean_incumbent[k]) : std::string()) << ','
               << s.incumbent_seeds[k] << '\n';
        }
    }
    return os.str();
}

} // namespace leodesign
