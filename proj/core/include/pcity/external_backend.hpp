#pragma once

#include <optional>
#include <string>

#include "pcity/model.hpp"
#include "pcity/solver.hpp"

namespace pcity {

/// Environment variable holding the external solver command.
inline constexpr const char* kExternalSolverEnv = "PCITY_EXTERNAL_SOLVER";

/// Command template from the environment, if set and non-empty.
std::optional<std::string> external_solver_command();

/// Runs an external solver on the model. `command` may contain `{model}` and
/// `{solution}`; they are replaced by temporary file paths (LP format in,
/// solution format out, see lp_format.hpp). `{relax}` becomes "--relax" when
/// integrality is to be ignored, otherwise it is removed.
///
///   PCITY_EXTERNAL_SOLVER="python3 tools/highs_backend.py {model} {solution} {relax}"
///
/// Returns status Error (with the message) if the command fails or writes no
/// solution. Returned values are checked against the model within 1e-6.
Solution solve_external(const MilpModel& model, const std::string& command, bool relax = false);

}  // namespace pcity
