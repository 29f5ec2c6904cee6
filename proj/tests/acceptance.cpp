// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed here.
// Usage: leodesign_acceptance [--out DIR] [--only N]... [--expect-fail N]...
// An expected failure still prints FAIL; only unexpected failures set the exit code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "leodesign/experiment.hpp"
#include "oracles.hpp"

using namespace leodesign;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit_s; // 0 means no limit
    std::function<Outcome()> run;
};

std::string fmt(double v) { return format_double(v); }

fs::path g_out = "acceptance_artifacts";

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream out(p);
    out << s;
}

// Closed-form interference vs a Poisson-field simulation, 200 realizations of
// 10^4 expected active devices each, at three altitudes.
Outcome interference_vs_simulation() {
    const auto cfg = ExperimentConfig::defaults(Profile::Paper);
    Outcome o{true, ""};
    std::uint64_t seed = 101;
    for (double h_km : {500.0, 1000.0, 1800.0}) {
        const auto env = cfg.link_environment(h_km * 1e3, deg2rad(10.0));
        const double closed = mean_interference(env);
        const auto mc = oracle::hppp_interference(env, 200, 1e4, seed++);
        const double rel = std::abs(mc.mean - closed) / closed;
        o.pass = o.pass && rel <= 0.03;
        o.detail += "h=" + fmt(h_km) + "km rel=" + fmt(rel) + " ";
    }
    return o;
}

Outcome spectral_efficiency_vs_quadrature() {
    Outcome o{true, ""};
    double worst = 0.0;
    const auto cfg = ExperimentConfig::defaults(Profile::Paper);
    for (int i = 0; i < 5; ++i) {
        const double psi = std::pow(10.0, 4.0 + 2.5 * i); // 1e4 .. 1e14
        for (int j = 0; j < 5; ++j) {
            const double h = (500.0 + 325.0 * j) * 1e3;
            const double theta = theta_from_beta(deg2rad(cfg.coverage_angle_deg), h);
            const double dm = slant_range(theta, h);
            const double closed = spectral_efficiency_closed_form(psi, h, dm);
            const double quad = oracle::spectral_efficiency_quadrature(psi, h, dm);
            worst = std::max(worst, std::abs(closed - quad) / quad);
        }
    }
    o.pass = worst <= 1e-9;
    o.detail = "max_rel=" + fmt(worst) + " over 25 (psi, h) pairs";
    return o;
}

Outcome coverage_vs_brute_force() {
    Outcome o{true, ""};
    const double inc = deg2rad(50.0);
    const GridSpec grid{-60, 60, 30};
    // the timeline needs duration >= step, so it yields slots t and t+1; only
    // the first is compared
    const double t = 1234.0;
    int nontrivial = 0;
    for (double h_km : {800.0, 1589.0}) {
        for (double theta_deg : {10.0, 61.44369208027692}) {
            const double h = h_km * 1e3;
            const auto fp = footprint_geometry(h, deg2rad(theta_deg));
            const auto cons = walker_delta_elements({2, 2, 1, h, inc});
            const auto rep = coverage_ratio_timeline(cons, grid, Timeline{t, 1.0, 1.0}, fp);
            const auto brute = oracle::brute_force_coverage(2, 2, 1, h, inc, -60, 60, 30, {t},
                                                            fp.angular_radius);
            const bool equal = rep.eta_per_slot.front() == brute.eta.front();
            o.pass = o.pass && equal;
            if (rep.eta_per_slot.front() > 0.0) ++nontrivial;
            o.detail += "eta=" + fmt(rep.eta_per_slot.front()) + (equal ? " ok " : " MISMATCH ");
        }
    }
    // at least one case must cover some grid points for the check to mean anything
    o.pass = o.pass && nontrivial > 0;
    return o;
}

Outcome cost_regression() {
    // hand check: 0.00185·227 = 0.41995; (1589/1.609)^0.43 = 19.3936...;
    // 0.000166·227·19.3936 = 0.730799; 0.2·1.150749 = 0.230150;
    // per satellite 1.380899, times 48 = 66.28316
    const auto orc = oracle::cost_breakdown(227.0, 1589.0, 0.2, 48);
    const auto c = space_segment_cost(8, 6, 1589.0, CostModel{});
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    const double worst = std::max({rel(c.manufacture, orc.manufacture), rel(c.launch, orc.launch),
                                   rel(c.insurance, orc.insurance),
                                   rel(c.per_satellite_total, orc.per_satellite),
                                   rel(c.constellation_total, orc.total)});
    const bool matches_hand = std::abs(orc.per_satellite - 1.381) < 5e-4 && std::abs(orc.total - 66.3) < 0.05;
    return {worst <= 1e-9 && matches_hand,
            "per_sat=" + fmt(c.per_satellite_total) + " total=" + fmt(c.constellation_total) +
                " max_rel=" + fmt(worst)};
}

Outcome optimizer_on_surrogate() {
    const oracle::Surrogate s;
    const auto opt = oracle::surrogate_grid_optimum(s, 500, 1800, 1.0, 20, 60, 1.0, 4, 20);
    const auto cfg = ExperimentConfig::defaults(Profile::Paper);
    const Evaluator eval = [&s](const DesignVector& x) { return s.evaluate(x); };
    int within = 0, monotone = 0;
    const int seeds = 20;
    for (int seed = 1; seed <= seeds; ++seed) {
        auto oc = cfg.optimizer;
        oc.seed = static_cast<std::uint64_t>(seed);
        const auto res = run_improved_ga(eval, cfg.bounds(), oc);
        if (res.feasible && std::abs(res.best.objective - opt.cost) <= 0.05 * opt.cost) ++within;
        bool mono = true;
        std::optional<double> prev;
        for (const auto& row : res.trace) {
            if (prev && (!row.incumbent_cost || *row.incumbent_cost > *prev)) mono = false;
            if (row.incumbent_cost) prev = row.incumbent_cost;
        }
        if (mono) ++monotone;
    }
    return {within >= 18 && monotone == seeds,
            "grid_opt=" + fmt(opt.cost) + " [P=" + std::to_string(opt.planes) + " N=" +
                std::to_string(opt.sats_per_plane) + " h=" + fmt(opt.h_km) + "km] within5%=" +
                std::to_string(within) + "/20 monotone=" + std::to_string(monotone) + "/20"};
}

Comparison g_desk_comparison;
bool g_have_comparison = false;

Outcome desk_comparison() {
    const auto cfg = ExperimentConfig::defaults(Profile::Desk);
    fs::create_directories(g_out / "desk_comparison");
    save_config(cfg, g_out / "desk_comparison" / "config.json");
    g_desk_comparison = compare_trials(cfg, {AlgorithmKind::Improved, AlgorithmKind::ClassicalGa},
                                       cfg.seeds, g_out / "desk_comparison");
    g_have_comparison = true;
    const auto& imp = g_desk_comparison.kinds[0];
    const auto& cga = g_desk_comparison.kinds[1];
    const double final_value = imp.mean_best.back();
    const std::size_t probe = std::min<std::size_t>(14, imp.mean_best.size() - 1);
    const double at15 = imp.mean_best[probe];
    const bool cost_ok = imp.mean_final_cost <= cga.mean_final_cost;
    const bool conv_ok = std::abs(at15 - final_value) <= 0.05 * std::abs(final_value);
    return {cost_ok && conv_ok,
            "improved_mean=" + fmt(imp.mean_final_cost) + " classical_mean=" + fmt(cga.mean_final_cost) +
                " curve@15=" + fmt(at15) + " curve@end=" + fmt(final_value) +
                " feasible_runs=" + std::to_string(imp.feasible_runs) + "/" +
                std::to_string(cga.feasible_runs)};
}

Outcome feasibility_is_honest() {
    int checked = 0, bad = 0, reported = 0;
    auto check = [&](const OptimizationResult& r, const Evaluator& eval, double eta_th) {
        ++reported;
        if (!r.feasible) return;
        ++checked;
        const auto again = eval(r.best.design);
        if (!(again.eta_min >= eta_th && again.min_visible >= again.required_count)) ++bad;
    };

    // analytic surrogate, where feasible designs exist, for every algorithm
    const oracle::Surrogate s;
    const Evaluator sur = [&s](const DesignVector& x) { return s.evaluate(x); };
    const auto paper = ExperimentConfig::defaults(Profile::Paper);
    for (auto kind : all_algorithms())
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            auto oc = paper.optimizer;
            oc.seed = seed;
            check(run_optimizer(kind, sur, paper.bounds(), oc), sur, s.eta_threshold);
        }

    // the real desk evaluator, every algorithm
    const auto desk = ExperimentConfig::defaults(Profile::Desk);
    const auto eval = make_evaluator(desk);
    int desk_feasible = 0;
    for (auto kind : all_algorithms())
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            auto oc = desk.optimizer;
            oc.seed = seed;
            const auto r = run_optimizer(kind, eval, desk.bounds(), oc);
            if (r.feasible) ++desk_feasible;
            check(r, eval, desk.eta_threshold);
        }
    return {bad == 0 && checked > 0,
            "runs=" + std::to_string(reported) + " feasible_rechecked=" + std::to_string(checked) +
                " violations=" + std::to_string(bad) + " desk_feasible_runs=" +
                std::to_string(desk_feasible)};
}

Outcome paper_design_benchmark() {
    const auto cfg = ExperimentConfig::defaults(Profile::Paper);
    const auto design = DesignVector::make(1589e3, 6, 8, deg2rad(41.0));
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = evaluate_design(cfg, design);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    nlohmann::ordered_json art = nlohmann::ordered_json::parse(report_to_json(rep));
    const double expected = cfg.eta_threshold;
    art["calibration"] = {
        {"expected_eta_min", expected},
        {"observed_eta_min", rep.coverage.eta_min},
        {"eta_shortfall", std::max(0.0, expected - rep.coverage.eta_min)},
        {"meets_expectation", rep.coverage.eta_min >= expected},
        {"note", "expected value is the configured coverage threshold eta_th; "
                 "this evaluator uses spherical two-body geometry with the coverage-angle footprint"},
        {"evaluation_seconds", secs}};
    const auto path = g_out / "paper_design_report.json";
    write_text(path, art.dump(2) + "\n");
    const bool emitted = fs::exists(path) && fs::file_size(path) > 0;
    return {emitted && std::isfinite(rep.coverage.eta_min),
            "eta_min=" + fmt(rep.coverage.eta_min) + " (expected >= " + fmt(expected) +
                ", shortfall " + fmt(std::max(0.0, expected - rep.coverage.eta_min)) +
                ") min_visible=" + std::to_string(rep.coverage.min_visible_count) +
                " cost=" + fmt(rep.cost.constellation_total) + " report=" + path.string()};
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> only, expected;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--out" && i + 1 < argc) g_out = argv[++i];
        else if (a == "--only" && i + 1 < argc) only.insert(std::stoi(argv[++i]));
        else if (a == "--expect-fail" && i + 1 < argc) expected.insert(std::stoi(argv[++i]));
        else {
            std::fprintf(stderr, "usage: %s [--out DIR] [--only N]... [--expect-fail N]...\n", argv[0]);
            return 2;
        }
    }
    fs::create_directories(g_out);

    const std::vector<Criterion> criteria{
        {1, "interference closed form vs Poisson-field simulation (3%)", 120.0, interference_vs_simulation},
        {2, "spectral efficiency closed form vs adaptive quadrature (1e-9)", 1.0, spectral_efficiency_vs_quadrature},
        {3, "coverage ratio vs haversine brute force (exact)", 1.0, coverage_vs_brute_force},
        {4, "cost breakdown regression (1e-9)", 0.0, cost_regression},
        {5, "improved GA on analytic surrogate (5% on >=18/20 seeds, monotone incumbent)", 60.0, optimizer_on_surrogate},
        {6, "desk comparison improved vs classical GA (mean cost, convergence by iteration 15)", 1800.0, desk_comparison},
        {7, "reported-feasible designs re-evaluate feasible", 0.0, feasibility_is_honest},
        {8, "48-satellite design evaluation under the paper profile", 0.0, paper_design_benchmark},
    };

    int failed = 0, unexpected = 0;
    std::string known;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.time_limit_s <= 0.0 || secs < c.time_limit_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failed;
        if (!pass && !expected.count(c.id)) ++unexpected;
        if (!pass && expected.count(c.id)) known += (known.empty() ? "" : ",") + std::to_string(c.id);
        std::printf("[%s] criterion %d: %s | %s | %.3fs%s%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs, in_time ? "" : " (over time limit)",
                    expected.count(c.id) ? (pass ? " (listed as expected failure)" : " (expected failure)") : "");
        std::fflush(stdout);
    }
    std::printf("%d criteria failed", failed);
    if (!known.empty()) std::printf(" (expected: %s)", known.c_str());
    std::printf("\n");
    return unexpected == 0 ? 0 : 1;
}
