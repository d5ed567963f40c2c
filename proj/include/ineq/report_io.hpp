#pragma once

#include <iosfwd>
#include <string>

#include "ineq/indices.hpp"
#include "ineq/wasserstein.hpp"

namespace ineq {

// "%.17g" for JSON, "%.12g" for TSV; non-finite values become null / "nan".
std::string format_json_number(double x);
std::string format_tsv_number(double x);

void write_json(std::ostream& out, const IndexReport& report);
void write_json(std::ostream& out, const ConvergenceReport& report);
// One row per step, header included.
void write_tsv(std::ostream& out, const ConvergenceReport& report);

}  // namespace ineq
