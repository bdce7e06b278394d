#include "remoteproj/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace remoteproj {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "n,alpha,dist_chosen,dist_max,t_required,t_effective,step_norm,x_norm,sin_eps\n";
  for (const StepRecord& s : trace.steps) {
    out << s.n << ',' << s.alpha << ',' << format_double(s.dist_chosen) << ','
        << format_double(s.dist_max) << ',' << format_double(s.t_required) << ','
        << format_double(s.t_effective) << ',' << format_double(s.step_norm) << ','
        << format_double(s.x_norm) << ',' << format_double(s.sin_eps) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace remoteproj
