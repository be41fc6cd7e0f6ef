#pragma once

#include "viadel/control.hpp"

#include <filesystem>
#include <string>

namespace viadel {

/// 17-significant-digit decimal formatting, losslessly round-trippable.
std::string format_float(double v);

/// Trajectory CSV with columns t,s,i,b,u,J_cum at every grid node.
void write_trajectory_csv(const std::filesystem::path& path,
                          const ClosedLoopResult& result, const CostSpec& cost);

/// Reads an initial condition from a JSON document; see the README schema.
InitialCondition load_initial_condition(const std::filesystem::path& path,
                                        const Params& p);

}  // namespace viadel
