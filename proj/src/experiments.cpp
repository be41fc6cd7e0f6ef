#include "viadel/experiments.hpp"

#include "viadel/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

namespace viadel {

namespace {

// The reference starting point shared by the named scenarios.
constexpr double kScenarioS0 = 0.45;
constexpr double kScenarioI0 = 0.001;

}  // namespace

void ExperimentConfig::validate() const {
    params.validate();
    if (resolution < 8) throw std::invalid_argument("resolution must be at least 8");
    if (h_list.empty()) throw std::invalid_argument("h list must not be empty");
    for (std::size_t k = 0; k < h_list.size(); ++k) {
        if (!(h_list[k] > 0.0))
            throw std::invalid_argument("h list entries must be positive");
        if (k > 0 && !(h_list[k] < h_list[k - 1]))
            throw std::invalid_argument("h list must be decreasing");
    }
    if (!(band > 0.0 && band < 1.0))
        throw std::invalid_argument("band must lie in (0,1)");
    if (scenario != "phi0" && scenario != "phi1" && scenario != "phi2" &&
        scenario != "file")
        throw std::invalid_argument("scenario must be phi0, phi1, phi2 or file");
    if (scenario == "file" && ic_file.empty())
        throw std::invalid_argument("scenario 'file' needs --ic-file");
}

StepConfig ExperimentConfig::step_config() const {
    StepConfig cfg;
    cfg.dt = dt;
    cfg.t_max = t_max;
    return cfg.normalized(params);
}

InitialCondition scenario_initial_condition(const ExperimentConfig& cfg) {
    if (cfg.scenario == "phi0") return ConstantHistory{{kScenarioS0, kScenarioI0}};
    if (cfg.scenario == "phi1") return RecoveryHistory{kScenarioS0, kScenarioI0};
    if (cfg.scenario == "phi2") return SurgeHistory{kScenarioS0, kScenarioI0};
    return load_initial_condition(cfg.ic_file, cfg.params);
}

namespace {

/// The effort is "non-monotone early" when, within the first three delays,
/// it rises, gives back a visible part of that rise, and rises again.
bool effort_dips_early(const std::vector<double>& u, double dt, const Params& p) {
    const double window = 3.0 * p.delay;
    const double tol = 1e-3 * (p.beta - p.beta_star);
    int phase = 0;  // 0: waiting for rise, 1: waiting for fall, 2: waiting for rise
    double mark = 0.0;
    for (std::size_t k = 0; k < u.size() && static_cast<double>(k) * dt <= window; ++k) {
        const double v = u[k];
        switch (phase) {
            case 0:
                if (v > tol) {
                    phase = 1;
                    mark = v;
                }
                break;
            case 1:
                mark = std::max(mark, v);
                if (v < mark - tol) {
                    phase = 2;
                    mark = v;
                }
                break;
            case 2:
                mark = std::min(mark, v);
                if (v > mark + tol) return true;
                break;
        }
    }
    return false;
}

nlohmann::ordered_json params_json(const Params& p) {
    nlohmann::ordered_json j;
    j["gamma"] = p.gamma;
    j["beta"] = p.beta;
    j["beta_star"] = p.beta_star;
    j["i_max"] = p.i_max;
    j["delay"] = p.delay;
    if (p.lipschitz) j["lipschitz"] = *p.lipschitz;
    return j;
}

}  // namespace

ScenarioOutput run_scenario(const ExperimentConfig& cfg) {
    cfg.validate();
    const StepConfig step = cfg.step_config();
    const PolicyConfig policy = make_policy(cfg.variant, cfg.params, cfg.band);
    const InitialCondition ic = scenario_initial_condition(cfg);
    const CostSpec cost;

    ScenarioOutput out{run_greedy(ic, policy, cfg.params, step, cost),
                       AsymptoticsReport{}, false, "", ""};
    out.asym = asymptotics(out.result, cfg.params);
    out.u_nonmonotone_initial = effort_dips_early(out.result.u, step.dt, cfg.params);

    const std::string base = cfg.scenario == "file"
                                 ? std::filesystem::path(cfg.ic_file).stem().string()
                                 : cfg.scenario;
    std::filesystem::create_directories(cfg.out);
    const auto csv = std::filesystem::path(cfg.out) / (base + ".csv");
    const auto json = std::filesystem::path(cfg.out) / (base + ".json");
    write_trajectory_csv(csv, out.result, cost);

    nlohmann::ordered_json j;
    j["scenario"] = base;
    j["J"] = out.result.J;
    j["t_lock"] = out.result.t_lock;
    j["t_end"] = out.result.t_end;
    j["s_inf"] = out.result.s_inf;
    j["max_i"] = out.result.max_infected;
    j["constraint_ok"] = out.result.constraint_ok;
    j["reached_herd"] = out.result.reached_herd;
    j["zero_infected"] = out.result.zero_infected;
    j["clamp_events"] = out.result.clamp_events;
    j["u_nonmonotone_initial"] = out.u_nonmonotone_initial;
    j["asymptotics"] = {{"s_inf_below_herd", out.asym.below_herd},
                        {"residual_rel", out.asym.residual_rel},
                        {"residual_checked", out.asym.residual_checked}};
    j["params"] = params_json(cfg.params);
    j["dt"] = step.dt;
    j["band"] = cfg.band;
    std::ofstream(json) << j.dump(2) << '\n';

    out.csv_path = csv.string();
    out.json_path = json.string();
    return out;
}

CostSurface cost_surface(const ExperimentConfig& cfg) {
    cfg.validate();
    const StepConfig step = cfg.step_config();
    const PolicyConfig policy = make_policy(cfg.variant, cfg.params, cfg.band);
    const auto n = static_cast<std::size_t>(cfg.resolution);

    CostSurface surf;
    surf.s_grid.resize(n);
    surf.i_grid.resize(n);
    const double s_hi = policy.region.viable_curve.s_hat();
    for (std::size_t k = 0; k < n; ++k) {
        const double w = static_cast<double>(k) / static_cast<double>(n - 1);
        surf.s_grid[k] = w * s_hi;
        surf.i_grid[k] = w * cfg.params.i_max;
    }
    surf.J.assign(n * n, std::numeric_limits<double>::quiet_NaN());
    std::vector<char> failed(n * n, 0);

    parallel_for(n * n, resolve_workers(cfg.workers), [&](std::size_t idx) {
        const State x{surf.s_grid[idx / n], surf.i_grid[idx % n]};
        if (!region_contains(policy.region, RegionSet::Viable, x)) return;
        try {
            surf.J[idx] =
                run_greedy(ConstantHistory{x}, policy, cfg.params, step).J;
        } catch (const std::exception&) {
            failed[idx] = 1;
        }
    });
    for (const char f : failed) surf.failures += f;
    return surf;
}

void write_surface_csv(const std::filesystem::path& path, const CostSurface& surface) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path.string());
    out << "s,i,J\n";
    for (std::size_t si = 0; si < surface.s_grid.size(); ++si) {
        for (std::size_t ii = 0; ii < surface.i_grid.size(); ++ii) {
            const double j = surface.at(si, ii);
            out << format_float(surface.s_grid[si]) << ','
                << format_float(surface.i_grid[ii]) << ',';
            if (std::isfinite(j)) out << format_float(j);
            out << '\n';
        }
    }
}

double region_area(const FrontierCurve& curve, const Params& p) {
    // Rectangle cap up to s_lo, clipped by s + i <= 1.
    const double a = curve.s_lo();
    const double cap = p.i_max;
    const double s_full = std::clamp(1.0 - cap, 0.0, a);
    const double s_top = std::min(a, 1.0);
    double area = s_full * cap;
    area += 0.5 * ((1.0 - s_full) * (1.0 - s_full) - (1.0 - s_top) * (1.0 - s_top));

    // Hypograph of the frontier, same clipping.
    const int n = 4096;
    const double lo = curve.s_lo(), hi = curve.s_hat();
    double prev = std::min(curve.eval(lo), std::max(0.0, 1.0 - lo));
    for (int k = 1; k <= n; ++k) {
        const double s = lo + (hi - lo) * k / n;
        const double v = std::min(curve.eval(s), std::max(0.0, 1.0 - s));
        area += 0.5 * (hi - lo) / n * (prev + v);
        prev = v;
    }
    return area;
}

SweepTable h_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const Params& p = cfg.params;
    const double lip =
        cfg.sweep_lipschitz > 0.0 ? cfg.sweep_lipschitz : p.min_lipschitz();

    const FrontierCurve df_beta{DelayFreeCurve(p.beta, p)};
    const FrontierCurve df_star{DelayFreeCurve(p.beta_star, p)};

    SweepTable table;
    table.area_A0 = region_area(df_beta, p);
    table.area_B0 = region_area(df_star, p);
    table.rows.resize(cfg.h_list.size());

    parallel_for(cfg.h_list.size(), resolve_workers(cfg.workers), [&](std::size_t k) {
        SweepRow row;
        row.h = cfg.h_list[k];
        try {
            const FrontierCurve gb{build_truncated_curve(p.beta, lip, row.h, p)};
            const FrontierCurve gs{build_truncated_curve(p.beta_star, lip, row.h, p)};
            row.sup_dist_beta = curve_sup_distance(gb, df_beta);
            row.sup_dist_beta_star = curve_sup_distance(gs, df_star);
            row.area_A = region_area(gb, p);
            row.area_B = region_area(gs, p);
        } catch (const std::exception&) {
            // A failed curve build voids this row only.
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.sup_dist_beta = row.sup_dist_beta_star = nan;
            row.area_A = row.area_B = nan;
        }
        table.rows[k] = row;
    });
    return table;
}

void write_sweep_csv(const std::filesystem::path& path, const SweepTable& table) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path.string());
    out << "h,sup_dist_beta,sup_dist_beta_star,area_A,area_B\n";
    for (const SweepRow& r : table.rows) {
        out << format_float(r.h) << ',' << format_float(r.sup_dist_beta) << ','
            << format_float(r.sup_dist_beta_star) << ',' << format_float(r.area_A)
            << ',' << format_float(r.area_B) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Command line

namespace {

int run_curves_cmd(const ExperimentConfig& cfg, const std::string& level,
                   const std::string& family, int samples) {
    const Params& p = cfg.params;
    if (level != "beta" && level != "beta-star")
        throw std::invalid_argument("level must be beta or beta-star");
    if (samples < 2) throw std::invalid_argument("need at least two samples");
    const double b_level = level == "beta" ? p.beta : p.beta_star;

    FrontierCurve curve;
    double t_cross = std::numeric_limits<double>::quiet_NaN();
    if (family == "closed") {
        ClosedFormCurve c(b_level, p);
        t_cross = c.t_cross();
        curve = FrontierCurve(c);
    } else if (family == "delay-free") {
        curve = FrontierCurve(DelayFreeCurve(b_level, p));
    } else if (family == "truncated") {
        const double lip =
            cfg.sweep_lipschitz > 0.0
                ? cfg.sweep_lipschitz
                : p.lipschitz.value_or(p.min_lipschitz());
        TabulatedCurve c = build_truncated_curve(b_level, lip, p.delay, p);
        t_cross = c.t_cross();
        curve = FrontierCurve(c);
    } else {
        throw std::invalid_argument("family must be closed, delay-free or truncated");
    }

    std::filesystem::create_directories(cfg.out);
    const std::string base = "curve_" + level + "_" + family;
    const auto csv_path = std::filesystem::path(cfg.out) / (base + ".csv");
    std::ofstream csv(csv_path);
    if (!csv) throw std::invalid_argument("cannot open " + csv_path.string());
    csv << "s,i\n";
    for (int k = 0; k < samples; ++k) {
        const double s =
            curve.s_lo() + (curve.s_hat() - curve.s_lo()) * k / (samples - 1);
        csv << format_float(s) << ',' << format_float(curve.eval(s)) << '\n';
    }

    nlohmann::ordered_json j;
    j["level"] = level;
    j["family"] = family;
    j["b_level"] = b_level;
    j["s_lo"] = curve.s_lo();
    j["s_hat"] = curve.s_hat();
    if (std::isfinite(t_cross)) j["t_cross"] = t_cross;
    j["params"] = params_json(p);
    const auto json_path = std::filesystem::path(cfg.out) / (base + ".json");
    std::ofstream(json_path) << j.dump(2) << '\n';
    std::cout << "wrote " << csv_path.string() << " and " << json_path.string() << '\n';
    return 0;
}

const char* class_name(BoundaryClass cls) {
    switch (cls) {
        case BoundaryClass::Interior: return "interior";
        case BoundaryClass::OnS1: return "s1";
        case BoundaryClass::OnS2: return "s2";
        default: return "outside";
    }
}

int run_region_cmd(const ExperimentConfig& cfg, bool have_point, double qs, double qi) {
    const RegionSpec cont = make_region(PastVariant::Continuous, cfg.params);
    const RegionSpec free0 = make_region(PastVariant::DelayFree, cfg.params);

    auto answer = [&](double s, double i) {
        const State x{s, i};
        nlohmann::ordered_json j;
        j["s"] = s;
        j["i"] = i;
        j["in_A"] = region_contains(cont, RegionSet::Invariant, x);
        j["in_B"] = region_contains(cont, RegionSet::Viable, x);
        j["in_A0"] = region_contains(free0, RegionSet::Invariant, x);
        j["in_B0"] = region_contains(free0, RegionSet::Viable, x);
        j["class"] = class_name(classify_boundary(cont, x, cfg.band));
        std::cout << j.dump() << '\n';
    };

    if (have_point) {
        answer(qs, qi);
        return 0;
    }
    double s = 0, i = 0;
    while (std::cin >> s >> i) answer(s, i);
    return 0;
}

int run_selftest_cmd(const ExperimentConfig& cfg, int trials) {
    const Params& p = cfg.params;
    const RegionSpec region = make_region(PastVariant::Continuous, p);
    const StepConfig step = cfg.step_config();
    bool ok = true;

    const ClosedFormCurve gb(p.beta, p);
    const bool anchors = std::abs(gb.raw(gb.s_lo()) - p.i_max) <= 1e-12 &&
                         std::abs(gb.raw(gb.s_hat())) <= 1e-8;
    ok &= anchors;
    std::cout << (anchors ? "PASS" : "FAIL")
              << " frontier anchors: Gamma(gamma/beta) = i_max, Gamma(s_hat) = 0\n";

    const InvarianceReport inv =
        invariance_probe(region, trials, cfg.seed, p, step, cfg.workers);
    const bool inv_ok = inv.max_violation <= 1e-6;
    ok &= inv_ok;
    std::cout << (inv_ok ? "PASS" : "FAIL") << " invariance probe: max violation "
              << format_float(inv.max_violation) << " over " << inv.trials
              << " trials\n";

    StepConfig probe_cfg = step;
    probe_cfg.t_max = 200.0;
    const auto hit = maximality_probe(region, 0.02 * p.i_max, p, probe_cfg);
    const auto none = maximality_probe(region, 0.0, p, probe_cfg);
    const bool max_ok = hit.has_value() && !none.has_value();
    ok &= max_ok;
    std::cout << (max_ok ? "PASS" : "FAIL") << " maximality probe: offset escape "
              << (hit ? "at t = " + format_float(*hit) : std::string("missing"))
              << ", boundary " << (none ? "escaped" : "held") << '\n';

    return ok ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Delayed SIR epidemic under an ICU cap: viability frontiers, greedy "
                 "feedback control, and the companion experiments"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path;
    double lipschitz = -1.0;
    std::string variant = "continuous";
    std::string level = "beta";
    std::string family = "closed";
    int curve_samples = 4096;
    int trials = 200;
    double query_s = -1.0, query_i = -1.0;

    app.add_option("--config", config_path, "JSON configuration file; flags override");
    auto* o_gamma = app.add_option("--gamma", cfg.params.gamma, "recovery rate");
    auto* o_beta = app.add_option("--beta", cfg.params.beta, "natural transmission rate");
    auto* o_bstar =
        app.add_option("--beta-star", cfg.params.beta_star, "minimal transmission rate");
    auto* o_imax = app.add_option("--i-max", cfg.params.i_max, "ICU capacity fraction");
    auto* o_delay = app.add_option("--delay", cfg.params.delay, "latency in days");
    auto* o_lip = app.add_option("--lipschitz", lipschitz, "past speed bound");
    auto* o_dt = app.add_option("--dt", cfg.dt, "step size in days (default delay/600)");
    auto* o_band = app.add_option("--band", cfg.band, "boundary activation band");
    auto* o_tmax = app.add_option("--t-max", cfg.t_max, "horizon in days");
    auto* o_scenario =
        app.add_option("--scenario", cfg.scenario, "phi0 | phi1 | phi2 | file");
    auto* o_icfile = app.add_option("--ic-file", cfg.ic_file, "initial condition JSON");
    auto* o_out = app.add_option("--out", cfg.out, "output directory");
    auto* o_res = app.add_option("--resolution", cfg.resolution, "surface grid size");
    auto* o_hlist = app.add_option("--h-list", cfg.h_list, "delays for the sweep");
    auto* o_workers = app.add_option("--workers", cfg.workers, "parallel workers");
    auto* o_seed = app.add_option("--seed", cfg.seed, "probe seed");
    auto* o_variant =
        app.add_option("--variant", variant, "policy past class: continuous | lipschitz");

    auto* simulate = app.add_subcommand("simulate", "run one greedy closed-loop scenario");
    auto* curves = app.add_subcommand("curves", "dump a frontier curve as CSV");
    curves->add_option("--level", level, "beta | beta-star");
    curves->add_option("--family", family, "closed | delay-free | truncated");
    curves->add_option("--samples", curve_samples, "CSV sample count");
    auto* region = app.add_subcommand("region", "membership query for plane points");
    region->add_option("--s", query_s, "susceptible fraction");
    region->add_option("--i", query_i, "infected fraction");
    auto* surface = app.add_subcommand("cost-surface", "greedy cost over the viable set");
    auto* sweep = app.add_subcommand("h-sweep", "frontier convergence in the delay");
    auto* selftest = app.add_subcommand("selftest", "invariance and maximality probes");
    selftest->add_option("--trials", trials, "invariance probe trials");
    for (auto* sub : {simulate, curves, region, surface, sweep, selftest})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot open " + config_path);
            nlohmann::json doc;
            in >> doc;
            ExperimentConfig file_cfg;
            if (doc.contains("params")) {
                const auto& pj = doc["params"];
                if (pj.contains("gamma")) file_cfg.params.gamma = pj["gamma"];
                if (pj.contains("beta")) file_cfg.params.beta = pj["beta"];
                if (pj.contains("beta_star")) file_cfg.params.beta_star = pj["beta_star"];
                if (pj.contains("i_max")) file_cfg.params.i_max = pj["i_max"];
                if (pj.contains("delay")) file_cfg.params.delay = pj["delay"];
                if (pj.contains("lipschitz"))
                    file_cfg.params.lipschitz = pj["lipschitz"].get<double>();
            }
            if (doc.contains("scenario")) file_cfg.scenario = doc["scenario"];
            if (doc.contains("ic_file")) file_cfg.ic_file = doc["ic_file"];
            if (doc.contains("variant") && doc["variant"] == "lipschitz")
                file_cfg.variant = PolicyVariant::LipschitzPast;
            if (doc.contains("band")) file_cfg.band = doc["band"];
            if (doc.contains("dt")) file_cfg.dt = doc["dt"];
            if (doc.contains("t_max")) file_cfg.t_max = doc["t_max"];
            if (doc.contains("out")) file_cfg.out = doc["out"];
            if (doc.contains("resolution")) file_cfg.resolution = doc["resolution"];
            if (doc.contains("h_list"))
                file_cfg.h_list = doc["h_list"].get<std::vector<double>>();
            if (doc.contains("sweep_lipschitz"))
                file_cfg.sweep_lipschitz = doc["sweep_lipschitz"];
            if (doc.contains("workers")) file_cfg.workers = doc["workers"];
            if (doc.contains("seed")) file_cfg.seed = doc["seed"].get<std::uint64_t>();

            // Flags that were given explicitly win over the file.
            if (!o_gamma->count()) cfg.params.gamma = file_cfg.params.gamma;
            if (!o_beta->count()) cfg.params.beta = file_cfg.params.beta;
            if (!o_bstar->count()) cfg.params.beta_star = file_cfg.params.beta_star;
            if (!o_imax->count()) cfg.params.i_max = file_cfg.params.i_max;
            if (!o_delay->count()) cfg.params.delay = file_cfg.params.delay;
            if (!o_lip->count()) cfg.params.lipschitz = file_cfg.params.lipschitz;
            if (!o_scenario->count()) cfg.scenario = file_cfg.scenario;
            if (!o_icfile->count()) cfg.ic_file = file_cfg.ic_file;
            if (!o_variant->count()) cfg.variant = file_cfg.variant;
            if (!o_band->count()) cfg.band = file_cfg.band;
            if (!o_dt->count()) cfg.dt = file_cfg.dt;
            if (!o_tmax->count()) cfg.t_max = file_cfg.t_max;
            if (!o_out->count()) cfg.out = file_cfg.out;
            if (!o_res->count()) cfg.resolution = file_cfg.resolution;
            if (!o_hlist->count()) cfg.h_list = file_cfg.h_list;
            if (!o_workers->count()) cfg.workers = file_cfg.workers;
            if (!o_seed->count()) cfg.seed = file_cfg.seed;
            cfg.sweep_lipschitz = file_cfg.sweep_lipschitz;
        }
        if (o_lip->count()) cfg.params.lipschitz = lipschitz;
        if (o_variant->count() || variant == "lipschitz") {
            if (variant == "continuous")
                cfg.variant = PolicyVariant::ContinuousPast;
            else if (variant == "lipschitz")
                cfg.variant = PolicyVariant::LipschitzPast;
            else
                throw std::invalid_argument("variant must be continuous or lipschitz");
        }
        cfg.params.validate();

        if (simulate->parsed()) {
            const ScenarioOutput out = run_scenario(cfg);
            std::cout << "J = " << format_float(out.result.J)
                      << "  t_lock = " << format_float(out.result.t_lock)
                      << "  max_i = " << format_float(out.result.max_infected)
                      << "  constraint_ok = " << (out.result.constraint_ok ? "yes" : "no")
                      << '\n'
                      << "wrote " << out.csv_path << " and " << out.json_path << '\n';
            return 0;
        }
        if (curves->parsed()) return run_curves_cmd(cfg, level, family, curve_samples);
        if (region->parsed()) {
            const bool have_s = region->count("--s") > 0;
            const bool have_i = region->count("--i") > 0;
            if (have_s != have_i)
                throw std::invalid_argument("region needs both --s and --i, or neither");
            return run_region_cmd(cfg, have_s && have_i, query_s, query_i);
        }
        if (surface->parsed()) {
            cfg.validate();
            const CostSurface surf = cost_surface(cfg);
            std::filesystem::create_directories(cfg.out);
            const auto path = std::filesystem::path(cfg.out) / "cost_surface.csv";
            write_surface_csv(path, surf);
            std::cout << "wrote " << path.string() << " (" << surf.s_grid.size() << 'x'
                      << surf.i_grid.size() << " cells, " << surf.failures
                      << " failures)\n";
            return 0;
        }
        if (sweep->parsed()) {
            cfg.validate();
            const SweepTable table = h_sweep(cfg);
            std::filesystem::create_directories(cfg.out);
            const auto path = std::filesystem::path(cfg.out) / "h_sweep.csv";
            write_sweep_csv(path, table);
            std::cout << "wrote " << path.string() << '\n';
            for (const SweepRow& r : table.rows)
                std::cout << "h = " << r.h << "  sup_beta = " << r.sup_dist_beta
                          << "  sup_beta_star = " << r.sup_dist_beta_star
                          << "  area_A = " << r.area_A << "  area_B = " << r.area_B
                          << '\n';
            return 0;
        }
        if (selftest->parsed()) return run_selftest_cmd(cfg, trials);
        return 1;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace viadel
