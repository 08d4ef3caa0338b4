#include "pcity/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "pcity/bounds.hpp"

namespace pcity {

namespace {

double snap(double v) { return std::round(v * 1e12) / 1e12; }

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_ms(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

bool is_fine_grid(const SweepSpec& s) {
  return std::abs(s.step - 0.025) < 1e-12 && std::abs(s.lo - 0.025) < 1e-12 && std::abs(s.hi - 0.95) < 1e-12 &&
         s.min_beta <= 0.0;
}

}  // namespace

std::vector<GridPoint> sweep_grid(const SweepSpec& spec) {
  if (!(spec.step > 0) || !std::isfinite(spec.step)) throw ValidationError("step > 0 violated");
  if (!(spec.lo > 0 && spec.lo <= spec.hi && spec.hi < 1)) throw ValidationError("0 < lo <= hi < 1 violated");
  const double beta_floor = std::max(spec.min_beta, 1e-9);
  const int count = static_cast<int>(std::floor((spec.hi - spec.lo) / spec.step + 1e-9)) + 1;
  std::vector<GridPoint> out;
  for (int i = 0; i < count; ++i) {
    const double alpha = snap(spec.lo + i * spec.step);
    for (int j = 0; j < count; ++j) {
      const double gamma = snap(spec.lo + j * spec.step);
      const double beta = snap(1.0 - alpha - gamma);
      if (beta <= beta_floor) continue;
      out.push_back({alpha, beta, gamma});
    }
  }
  return out;
}

SweepRow sweep_row(const CityParams& params, const MilpOptions& options, bool keep_solution) {
  SweepRow row;
  row.alpha = params.alpha;
  row.beta = params.beta;
  row.gamma = params.gamma;
  row.opt_alpp = row.opt_alpps = row.gamma_abs = row.gamma_rel = std::nan("");
  try {
    row.bound_cn_ag = gap_bounds(params).C_n_ag;
    const CityInstance city = build_city(params);
    InstanceResult r = analyze_instance(city, options);
    row.ms_alpp = r.alpp.stats.wall_ms;
    row.ms_alpps = r.alpps.stats.wall_ms;
    row.classification = to_string(r.gap.classification);
    if (r.gap.classification != GapClass::Infeasible) {
      row.opt_alpp = r.gap.opt_alpp;
      row.opt_alpps = r.gap.opt_alpps;
      row.gamma_abs = r.gap.gamma_abs;
      row.gamma_rel = r.gap.gamma_rel;
    }
    if (keep_solution) row.result = std::move(r);
  } catch (const std::exception& e) {
    row.classification = "error";
    row.error = e.what();
  }
  return row;
}

SweepSummary summarize(const std::vector<SweepRow>& rows) {
  SweepSummary s;
  s.rows = static_cast<int>(rows.size());
  int feasible = 0;
  for (const auto& r : rows) {
    s.total_ms += r.ms_alpp + r.ms_alpps;
    if (r.classification == "error") {
      ++s.errors;
    } else if (r.classification == "infeasible") {
      ++s.infeasible;
    } else {
      ++feasible;
      if (r.classification == "asymmetric") ++s.asymmetric;
      s.max_gamma_rel = std::max(s.max_gamma_rel, 100.0 * r.gamma_rel);
    }
  }
  s.asymmetric_share = feasible > 0 ? 100.0 * s.asymmetric / feasible : 0.0;
  return s;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepProgress& progress) {
  const auto grid = sweep_grid(spec);
  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex mu;

  auto worker = [&] {
    for (std::size_t k = next++; k < grid.size(); k = next++) {
      const auto& pt = grid[k];
      CityParams p = spec.base;
      p.alpha = pt.alpha;
      p.beta = pt.beta;
      p.gamma = pt.gamma;
      rows[k] = sweep_row(p, spec.options, spec.keep_solutions);
      std::lock_guard<std::mutex> lock(mu);
      ++done;
      if (progress) progress(done, grid.size(), rows[k]);
    }
  };

  const int jobs = std::clamp(spec.jobs, 1, std::max(1, static_cast<int>(grid.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const SweepSpec& spec, std::ostream& out) {
  out << kSweepCsvHeader << "\n";
  for (const auto& r : rows) {
    out << fmt(r.alpha) << ',' << fmt(r.beta) << ',' << fmt(r.gamma) << ',' << fmt(r.opt_alpp) << ','
        << fmt(r.opt_alpps) << ',' << fmt(r.gamma_abs) << ',' << fmt(r.gamma_rel) << ',' << r.classification << ','
        << fmt(r.bound_cn_ag) << ',' << fmt_ms(r.ms_alpp) << ',' << fmt_ms(r.ms_alpps) << "\n";
  }
  const SweepSummary s = summarize(rows);
  out << "# rows " << s.rows << "\n";
  out << "# asymmetric " << s.asymmetric << " (" << fmt(s.asymmetric_share) << "% of feasible rows)\n";
  out << "# infeasible " << s.infeasible << "\n";
  out << "# errors " << s.errors << "\n";
  out << "# max_gamma_rel " << fmt(s.max_gamma_rel) << "%\n";
  out << "# total_ms " << fmt_ms(s.total_ms) << "\n";
  if (is_fine_grid(spec) && s.rows != kFineGridRows) {
    out << "# grid mismatch: " << s.rows << " rows, expected " << kFineGridRows << "\n";
  }
  for (const auto& r : rows) {
    if (!r.error.empty()) out << "# error alpha=" << fmt(r.alpha) << " gamma=" << fmt(r.gamma) << ": " << r.error << "\n";
  }
}

void write_sweep_json(const std::vector<SweepRow>& rows, const SweepSpec& spec, std::ostream& out) {
  using nlohmann::ordered_json;
  auto num = [](double v) -> ordered_json { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); };
  ordered_json j;
  j["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json o;
    o["alpha"] = r.alpha;
    o["beta"] = r.beta;
    o["gamma"] = r.gamma;
    o["opt_alpp"] = num(r.opt_alpp);
    o["opt_alpps"] = num(r.opt_alpps);
    o["gamma_abs"] = num(r.gamma_abs);
    o["gamma_rel"] = num(r.gamma_rel);
    o["classification"] = r.classification;
    o["bound_cn_ag"] = r.bound_cn_ag;
    o["ms_alpp"] = r.ms_alpp;
    o["ms_alpps"] = r.ms_alpps;
    if (!r.error.empty()) o["error"] = r.error;
    j["rows"].push_back(std::move(o));
  }
  const SweepSummary s = summarize(rows);
  ordered_json sj;
  sj["rows"] = s.rows;
  sj["asymmetric"] = s.asymmetric;
  sj["asymmetric_share_pct"] = s.asymmetric_share;
  sj["infeasible"] = s.infeasible;
  sj["errors"] = s.errors;
  sj["max_gamma_rel_pct"] = s.max_gamma_rel;
  sj["total_ms"] = s.total_ms;
  if (is_fine_grid(spec)) sj["expected_rows"] = kFineGridRows;
  j["summary"] = std::move(sj);
  out << j.dump(2) << "\n";
}

double fielbaum_mu(double c0, double pv) {
  if (!(std::isfinite(c0) && c0 > 0)) throw ValidationError("c0 > 0 violated");
  if (!(std::isfinite(pv) && pv > 0)) throw ValidationError("pv > 0 violated");
  return c0 / (c0 + pv);
}

}  // namespace pcity
