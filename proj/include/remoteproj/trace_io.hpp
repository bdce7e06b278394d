#pragma once

#include <filesystem>
#include <string>

#include "remoteproj/engine.hpp"

namespace remoteproj {

/// One row per step, columns
///   n,alpha,dist_chosen,dist_max,t_required,t_effective,step_norm,x_norm,sin_eps
/// with numbers rendered at 17 significant digits so the doubles survive
/// a round trip.
void write_trace_csv(const std::filesystem::path& path, const Trace& trace);

std::string format_double(double v);

}  // namespace remoteproj
