#include "pcity/external_backend.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include "pcity/lp_format.hpp"

namespace pcity {

namespace fs = std::filesystem;

std::optional<std::string> external_solver_command() {
  const char* env = std::getenv(kExternalSolverEnv);
  if (env == nullptr || *env == '\0') return std::nullopt;
  return std::string(env);
}

namespace {

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) {
    s.replace(p, from.size(), to);
  }
}

// Removes the scratch directory on every exit path.
struct ScratchDir {
  fs::path path;
  ScratchDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("pcity-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

Solution solve_external(const MilpModel& model, const std::string& command, bool relax) {
  const auto start = std::chrono::steady_clock::now();
  ScratchDir dir;
  const fs::path lp_path = dir.path / "model.lp";
  const fs::path sol_path = dir.path / "solution.txt";

  MilpModel written = model;
  if (relax) {
    for (auto& v : written.variables) v.integer = false;
  }
  {
    std::ofstream out(lp_path);
    if (!out) throw std::runtime_error("cannot write " + lp_path.string());
    write_lp(written, out);
  }

  std::string cmd = command;
  replace_all(cmd, "{model}", lp_path.string());
  replace_all(cmd, "{solution}", sol_path.string());
  replace_all(cmd, "{relax}", relax ? "--relax" : "");

  Solution sol;
  const int rc = std::system(cmd.c_str());
  std::ifstream in(sol_path);
  if (rc != 0 || !in) {
    sol.status = SolveStatus::Error;
    sol.message = "external solver failed (exit " + std::to_string(rc) + "): " + cmd;
    return sol;
  }
  sol = read_solution(in, written);
  if (sol.has_values()) {
    std::string where;
    const double viol = max_violation(written, sol.values, !relax, &where);
    if (viol > 1e-6) {
      sol.status = SolveStatus::Error;
      sol.message = "external solution violates " + where;
    }
  }
  sol.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

}  // namespace pcity
