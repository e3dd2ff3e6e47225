#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pges {

struct FitResult {
  double exponent = 0.0;
  double residual = 0.0;  // RMS of log-space errors
};

struct ScalePoint {
  double n = 0.0;
  double tally = 0.0;
};

// Least-squares slope of log(tally) against log(n). Needs >= 3 points with
// positive tallies (throws std::invalid_argument otherwise).
FitResult fit_exponent(const std::vector<ScalePoint>& points);

// S = t_sequential / t_parallel, C = p * t_parallel.
struct SpeedupEntry {
  int p = 1;
  double n = 0.0;
  double speedup = 0.0;
  double cost = 0.0;
  bool superlinear = false;
};

SpeedupEntry compute_speedup(double t_sequential, double t_parallel, int p);

// One measured run of one phase.
struct ReportRow {
  std::string phase;
  int n = 0;
  int p = 1;
  int repetition = 0;
  double tally = 0.0;
  double wall_seconds = 0.0;
};

struct BoundVerdict {
  std::string phase;
  bool pass = true;
  double calibration_c = 0.0;  // tally(n_min) / bound(n_min)
  std::vector<std::string> notes;
};

// Per-phase pessimistic bound shapes, n-and-p parameterized.
double phase_bound(const std::string& phase, double n, double p, int k_max);

// Empirical complexity report: raw (phase, n, p, rep, tally, wall) rows,
// plus fitted exponents and bound verdicts computed on demand.
class ScalingReport {
 public:
  explicit ScalingReport(int k_max = 3) : k_max_(k_max) {}

  void add_row(ReportRow row) { rows_.push_back(std::move(row)); }
  void add_speedup(SpeedupEntry entry) { speedups_.push_back(entry); }
  const std::vector<ReportRow>& rows() const { return rows_; }

  // Mean tally per n for one phase (aggregating repetitions), at fixed p.
  std::vector<ScalePoint> mean_points(const std::string& phase) const;

  // Exponent fit for a phase; nullopt when fewer than 3 sizes measured.
  std::optional<FitResult> fitted_exponent(const std::string& phase) const;

  // Verifies mean_tally(n) <= c * bound(n) for every measured n, with c
  // calibrated at the smallest n. Requires >= 2 sizes.
  BoundVerdict check_bound(const std::string& phase) const;
  std::vector<BoundVerdict> check_pessimistic_bounds() const;

  // CSV: header "phase,n,p,repetition,tally,wall_seconds", one row per
  // measurement, then a "# summary" block with fits, verdicts and
  // speedups.
  void write_csv(std::ostream& out) const;

 private:
  int k_max_;
  std::vector<ReportRow> rows_;
  std::vector<SpeedupEntry> speedups_;
};

}  // namespace pges
