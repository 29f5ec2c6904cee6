#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "leodesign/experiment.hpp"
#include "leodesign/geo.hpp"

namespace py = pybind11;
using namespace leodesign;

namespace {

// Configs cross the boundary as flat JSON text; the Python layer owns dicts.
ExperimentConfig config_from(const std::string& text, const std::string& profile) {
    return parse_config(text, parse_profile(profile));
}

DesignVector design_from(double altitude_km, double planes, double sats_per_plane,
                         double inclination_deg) {
    return DesignVector::make(altitude_km * 1e3, planes, sats_per_plane, deg2rad(inclination_deg));
}

py::dict record_dict(const EvaluationRecord& r) {
    py::dict d;
    d["altitude_km"] = r.design.altitude() / 1e3;
    d["planes"] = r.design.planes();
    d["sats_per_plane"] = r.design.sats_per_plane();
    d["inclination_deg"] = rad2deg(r.design.inclination());
    d["cost"] = r.objective;
    d["coverage_violation"] = r.coverage_violation;
    d["capacity_violation"] = r.capacity_violation;
    d["eta_min"] = r.eta_min;
    d["min_visible"] = r.min_visible;
    d["required_count"] = r.required_count;
    d["feasible"] = r.feasible;
    return d;
}

py::dict result_dict(const OptimizationResult& res) {
    py::dict d;
    d["algorithm"] = to_string(res.kind);
    d["seed"] = res.seed;
    d["feasible"] = res.feasible;
    d["evaluations"] = res.evaluations;
    d["best"] = record_dict(res.best);
    py::list trace;
    for (const auto& row : res.trace) {
        py::dict t;
        t["iteration"] = row.iteration;
        t["best_cost"] = row.best_cost;
        t["incumbent_cost"] = row.incumbent_cost ? py::cast(*row.incumbent_cost) : py::none();
        t["feasible_count"] = row.feasible_count;
        t["eta_min_best"] = row.eta_min_best;
        t["nvis_min_best"] = row.nvis_min_best;
        t["evaluations"] = row.evaluations;
        trace.append(t);
    }
    d["trace"] = trace;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "LEO IoT constellation design core";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def("default_config", [](const std::string& profile) {
        return serialize_config(ExperimentConfig::defaults(parse_profile(profile)));
    }, py::arg("profile") = "paper");

    m.def("normalize_config", [](const std::string& text, const std::string& profile) {
        return serialize_config(config_from(text, profile));
    }, py::arg("config_json"), py::arg("profile") = "paper",
       "Parse, fill defaults, validate and re-serialize a flat JSON config.");

    m.def("algorithms", [] {
        std::vector<std::string> names;
        for (auto k : all_algorithms()) names.push_back(to_string(k));
        return names;
    });

    m.def("evaluate_design",
          [](double altitude_km, double planes, double sats_per_plane, double inclination_deg,
             const std::string& config_json, const std::string& profile) {
              const auto cfg = config_from(config_json, profile);
              const auto x = design_from(altitude_km, planes, sats_per_plane, inclination_deg);
              py::gil_scoped_release unlock;
              return report_to_json(evaluate_design(cfg, x));
          },
          py::arg("altitude_km"), py::arg("planes"), py::arg("sats_per_plane"),
          py::arg("inclination_deg"), py::arg("config_json") = "{}", py::arg("profile") = "paper",
          "Full report for one design as JSON text.");

    m.def("walker_phase_offset_deg", [](int sats_per_plane, int planes, int phase_factor) {
        return rad2deg(walker_phase_offset({sats_per_plane, planes, phase_factor, 1.0, 0.0}));
    });

    m.def("walker_elements",
          [](int sats_per_plane, int planes, int phase_factor, double altitude_km, double inclination_deg) {
              const auto els = walker_delta_elements(
                  {sats_per_plane, planes, phase_factor, altitude_km * 1e3, deg2rad(inclination_deg)});
              py::list out;
              for (const auto& e : els) {
                  py::dict d;
                  d["semi_major_axis_m"] = e.semi_major_axis;
                  d["inclination_deg"] = rad2deg(e.inclination);
                  d["raan_deg"] = rad2deg(e.raan);
                  d["arg_latitude_deg"] = rad2deg(wrap_two_pi(e.arg_perigee + e.true_anomaly_epoch));
                  out.append(d);
              }
              return out;
          },
          py::arg("sats_per_plane"), py::arg("planes"), py::arg("phase_factor"),
          py::arg("altitude_km"), py::arg("inclination_deg"));

    m.def("footprint", [](double altitude_km, double min_elevation_deg) {
        const auto fp = footprint_geometry(altitude_km * 1e3, deg2rad(min_elevation_deg));
        py::dict d;
        d["angular_radius_deg"] = rad2deg(fp.angular_radius);
        d["area_km2"] = fp.area / 1e6;
        d["coverage_angle_deg"] = rad2deg(fp.coverage_angle);
        return d;
    }, py::arg("altitude_km"), py::arg("min_elevation_deg"));

    m.def("min_elevation_for_coverage_angle", [](double coverage_angle_deg, double altitude_km) {
        return rad2deg(theta_from_beta(deg2rad(coverage_angle_deg), altitude_km * 1e3));
    }, py::arg("coverage_angle_deg"), py::arg("altitude_km"));

    m.def("coverage",
          [](double altitude_km, double planes, double sats_per_plane, double inclination_deg,
             double min_elevation_deg, const std::string& config_json, const std::string& profile) {
              const auto cfg = config_from(config_json, profile);
              const auto x = design_from(altitude_km, planes, sats_per_plane, inclination_deg).rounded();
              const WalkerConfig w{x.sats_per_plane(), x.planes(), cfg.phase_factor, x.altitude(),
                                   x.inclination()};
              CoverageReport rep;
              {
                  py::gil_scoped_release unlock;
                  rep = coverage_ratio_timeline(walker_delta_elements(w), cfg.grid(), cfg.timeline(),
                                                footprint_geometry(x.altitude(), deg2rad(min_elevation_deg)));
              }
              py::dict d;
              d["eta_per_slot"] = rep.eta_per_slot;
              d["eta_min"] = rep.eta_min;
              d["eta_max"] = rep.eta_max;
              d["mean_eta"] = rep.mean_eta;
              d["min_visible"] = rep.min_visible_count;
              return d;
          },
          py::arg("altitude_km"), py::arg("planes"), py::arg("sats_per_plane"),
          py::arg("inclination_deg"), py::arg("min_elevation_deg"), py::arg("config_json") = "{}",
          py::arg("profile") = "paper");

    m.def("link_budget",
          [](double altitude_km, double min_elevation_deg, double serving_count,
             const std::string& config_json, const std::string& profile) {
              const auto cfg = config_from(config_json, profile);
              const auto env = cfg.link_environment(altitude_km * 1e3, deg2rad(min_elevation_deg));
              const auto cap = evaluate_capacity(env, serving_count, cfg.capacity_threshold_bps);
              py::dict d;
              d["slant_range_m"] = cap.max_distance;
              d["path_gain_coefficient"] = path_gain_coefficient(env);
              d["mean_interference_w"] = cap.mean_interference;
              d["psi_m2"] = cap.psi;
              d["xi_bps_per_hz"] = cap.xi;
              d["mean_rate_bps"] = cap.mean_rate;
              d["mean_capacity_bps"] = cap.mean_capacity;
              d["required_count"] = cap.required_count;
              return d;
          },
          py::arg("altitude_km"), py::arg("min_elevation_deg"), py::arg("serving_count") = 1.0,
          py::arg("config_json") = "{}", py::arg("profile") = "paper");

    m.def("spectral_efficiency", [](double psi, double altitude_km, double max_distance_m) {
        return spectral_efficiency_closed_form(psi, altitude_km * 1e3, max_distance_m);
    }, py::arg("psi"), py::arg("altitude_km"), py::arg("max_distance_m"));

    m.def("cost",
          [](int sats_per_plane, int planes, double altitude_km, double sat_mass_kg, double insurance_ratio) {
              CostModel model;
              model.sat_mass_kg = sat_mass_kg;
              model.insurance_ratio = insurance_ratio;
              const auto c = space_segment_cost(sats_per_plane, planes, altitude_km, model);
              py::dict d;
              d["manufacture"] = c.manufacture;
              d["launch"] = c.launch;
              d["insurance"] = c.insurance;
              d["per_satellite_total"] = c.per_satellite_total;
              d["constellation_total"] = c.constellation_total;
              return d;
          },
          py::arg("sats_per_plane"), py::arg("planes"), py::arg("altitude_km"),
          py::arg("sat_mass_kg") = 227.0, py::arg("insurance_ratio") = 0.2);

    m.def("optimize",
          [](const std::string& algorithm, std::uint64_t seed, const std::string& config_json,
             const std::string& profile) {
              auto cfg = config_from(config_json, profile);
              cfg.optimizer.seed = seed;
              const auto kind = parse_algorithm(algorithm);
              OptimizationResult res;
              {
                  py::gil_scoped_release unlock;
                  res = run_optimizer(kind, make_evaluator(cfg), cfg.bounds(), cfg.optimizer);
              }
              return result_dict(res);
          },
          py::arg("algorithm") = "improved", py::arg("seed") = 1, py::arg("config_json") = "{}",
          py::arg("profile") = "paper");

    m.def("run_experiment",
          [](const std::string& algorithm, const std::string& out, const std::string& config_json,
             const std::string& profile) {
              const auto cfg = config_from(config_json, profile);
              const auto kind = parse_algorithm(algorithm);
              py::gil_scoped_release unlock;
              return run_experiment(cfg, kind, out).directory.string();
          },
          py::arg("algorithm"), py::arg("out"), py::arg("config_json") = "{}",
          py::arg("profile") = "paper", "Writes config.json, trace.csv and result.json under out.");

    m.def("compare",
          [](const std::vector<std::string>& algorithms, const std::vector<std::uint64_t>& seeds,
             const std::string& out, const std::string& config_json, const std::string& profile) {
              const auto cfg = config_from(config_json, profile);
              std::vector<AlgorithmKind> kinds;
              for (const auto& a : algorithms) kinds.push_back(parse_algorithm(a));
              Comparison cmp;
              {
                  py::gil_scoped_release unlock;
                  cmp = compare_trials(cfg, kinds, seeds.empty() ? cfg.seeds : seeds, out);
              }
              py::list rows;
              for (const auto& k : cmp.kinds) {
                  py::dict d;
                  d["algorithm"] = to_string(k.kind);
                  d["runs"] = k.runs;
                  d["feasible_runs"] = k.feasible_runs;
                  d["mean_final_cost"] = k.mean_final_cost;
                  d["stddev_final_cost"] = k.stddev_final_cost;
                  d["wins"] = k.wins;
                  d["losses"] = k.losses;
                  d["final_costs"] = k.final_costs;
                  d["mean_best"] = k.mean_best;
                  rows.append(d);
              }
              return rows;
          },
          py::arg("algorithms"), py::arg("seeds") = std::vector<std::uint64_t>{},
          py::arg("out") = "", py::arg("config_json") = "{}", py::arg("profile") = "paper");
}
