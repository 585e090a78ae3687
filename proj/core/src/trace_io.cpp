#include <probo/trace_io.hpp>

#include <probo/format.hpp>

namespace probo {

std::string trace_csv_header(std::size_t dimension) {
  std::string header = "iter";
  for (std::size_t d = 1; d <= dimension; ++d) header += ",x_" + std::to_string(d);
  header += ",psi,incumbent,acq_value,igp_case,clamped";
  return header;
}

void write_trace_csv(const OptimizationTrace& trace, std::ostream& out) {
  out << trace_csv_header(trace.dimension) << '\n';
  for (const TraceRecord& r : trace.records) {
    out << r.iteration;
    for (Eigen::Index d = 0; d < r.x.size(); ++d) out << ',' << format_number(r.x(d));
    out << ',' << format_number(r.psi) << ',' << format_number(r.incumbent) << ','
        << format_number(r.acquisition_value) << ',' << (r.igp_case ? static_cast<int>(*r.igp_case) : 0) << ','
        << r.clamped << '\n';
  }
}

}  // namespace probo
