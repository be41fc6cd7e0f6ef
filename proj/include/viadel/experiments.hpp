#pragma once

#include "viadel/io.hpp"

#include <cstdint>

namespace viadel {

struct ExperimentConfig {
    Params params;
    std::string scenario = "phi0";  // phi0 | phi1 | phi2 | file
    std::string ic_file;
    PolicyVariant variant = PolicyVariant::ContinuousPast;
    double band = 1e-3;
    double dt = 0.0;  // <= 0 selects delay/600
    double t_max = 1000.0;
    std::string out = ".";           // output directory
    int resolution = 128;            // cost-surface grid per axis
    std::vector<double> h_list = {6.0, 3.0, 1.0, 0.3, 0.1, 0.01};
    double sweep_lipschitz = 0.0;    // <= 0 selects the model minimum
    int workers = 0;                 // <= 0 selects env/hardware
    std::uint64_t seed = 1;

    void validate() const;
    StepConfig step_config() const;
};

struct ScenarioOutput {
    ClosedLoopResult result;
    AsymptoticsReport asym;
    bool u_nonmonotone_initial = false;  // effort dips and recovers early on
    std::string csv_path;
    std::string json_path;
};

/// Builds the named initial condition, runs the greedy loop, writes the
/// trajectory CSV and a JSON summary.
ScenarioOutput run_scenario(const ExperimentConfig& cfg);

/// Builds the initial condition for a scenario name without running it.
InitialCondition scenario_initial_condition(const ExperimentConfig& cfg);

struct CostSurface {
    std::vector<double> s_grid;
    std::vector<double> i_grid;
    std::vector<double> J;  // s-major; NaN outside the viable set
    int failures = 0;

    double at(std::size_t s_idx, std::size_t i_idx) const {
        return J[s_idx * i_grid.size() + i_idx];
    }
};

/// Greedy cost for constant initial conditions over a grid spanning the
/// viable set; cells run in parallel and reduce by cell index, so the
/// output is identical for any worker count.
CostSurface cost_surface(const ExperimentConfig& cfg);

void write_surface_csv(const std::filesystem::path& path, const CostSurface& surface);

struct SweepRow {
    double h = 0.0;
    double sup_dist_beta = 0.0;       // truncated vs delay-free, level beta
    double sup_dist_beta_star = 0.0;  // same at level beta_star
    double area_A = 0.0;
    double area_B = 0.0;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    double area_A0 = 0.0;  // delay-free reference areas
    double area_B0 = 0.0;
};

/// Builds the truncated frontiers for every delay in cfg.h_list at the
/// sweep Lipschitz bound and reports sup distances to the delay-free
/// frontiers plus region areas.
SweepTable h_sweep(const ExperimentConfig& cfg);

void write_sweep_csv(const std::filesystem::path& path, const SweepTable& table);

/// Area of the region bounded by the rectangle cap and the frontier curve,
/// clipped to the physical triangle.
double region_area(const FrontierCurve& curve, const Params& p);

/// Command line entry point; returns 0 on success, 1 on validation errors,
/// 2 on solver errors.
int cli_main(int argc, const char* const* argv);

}  // namespace viadel
