#pragma once

#include <iosfwd>
#include <string>

#include "pcity/model.hpp"
#include "pcity/solver.hpp"

namespace pcity {

/// CPLEX LP text. Ranged rows are split into `<name>_lo` / `<name>_hi`; the
/// objective offset is written as a comment (`\ offset <value>`) because not
/// every reader accepts objective constants.
void write_lp(const MilpModel& model, std::ostream& out);
std::string to_lp_string(const MilpModel& model);

/// Reads the subset of LP format produced by write_lp (Minimize, Subject To,
/// Bounds, General/Generals, End). Throws ValidationError on malformed input.
MilpModel read_lp(std::istream& in);
MilpModel read_lp_string(const std::string& text);

/// Solution files: one `name value` pair per line. `@status <SolveStatus>`
/// and `@objective <value>` are reserved; `#` starts a comment. Variables
/// missing from the file take their lower bound if fixed, otherwise 0.
Solution read_solution(std::istream& in, const MilpModel& model);
void write_solution(const Solution& solution, const MilpModel& model, std::ostream& out);

}  // namespace pcity
