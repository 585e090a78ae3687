#pragma once

#include <probo/engine.hpp>

#include <ostream>
#include <string>

namespace probo {

// One row per evaluation:
//   iter,x_1,...,x_p,psi,incumbent,acq_value,igp_case,clamped
// igp_case is 0 when no imprecise GP was used, otherwise 1 (near-ignorance)
// or 2 (extreme). Numbers use the shortest round-trip representation, so the
// file is a deterministic function of the trace.
void write_trace_csv(const OptimizationTrace& trace, std::ostream& out);
std::string trace_csv_header(std::size_t dimension);

}  // namespace probo
