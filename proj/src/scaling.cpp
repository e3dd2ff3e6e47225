#include "pges/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace pges {

FitResult fit_exponent(const std::vector<ScalePoint>& points) {
  if (points.size() < 3) {
    throw std::invalid_argument("exponent fit needs at least 3 points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const ScalePoint& pt : points) {
    if (pt.tally <= 0.0 || pt.n <= 0.0) {
      throw std::invalid_argument("exponent fit needs positive tallies");
    }
    const double x = std::log(pt.n);
    const double y = std::log(pt.tally);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(points.size());
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) {
    throw std::invalid_argument("exponent fit needs distinct sizes");
  }
  FitResult fit;
  fit.exponent = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.exponent * sx) / m;

  double sq = 0;
  for (const ScalePoint& pt : points) {
    const double err =
        std::log(pt.tally) - (intercept + fit.exponent * std::log(pt.n));
    sq += err * err;
  }
  fit.residual = std::sqrt(sq / m);
  return fit;
}

SpeedupEntry compute_speedup(double t_sequential, double t_parallel, int p) {
  if (t_sequential <= 0.0 || t_parallel <= 0.0) {
    throw std::invalid_argument("speedup needs positive times");
  }
  SpeedupEntry entry;
  entry.p = p;
  entry.speedup = t_sequential / t_parallel;
  entry.cost = static_cast<double>(p) * t_parallel;
  entry.superlinear = entry.speedup > static_cast<double>(p);
  return entry;
}

double phase_bound(const std::string& phase, double n, double p, int k_max) {
  if (phase == "insertion") return n * n;
  if (phase == "squeeze" || phase == "perturb") return n * n * n * n;
  if (phase == "cooperation") return p * n;
  if (phase.rfind("ejection_k", 0) == 0) {
    const int k = std::stoi(phase.substr(10));
    return std::pow(n, static_cast<double>(k) + 2.0);
  }
  if (phase == "ejection") {
    return std::pow(n, static_cast<double>(k_max) + 2.0);
  }
  throw std::invalid_argument("unknown phase: " + phase);
}

std::vector<ScalePoint> ScalingReport::mean_points(
    const std::string& phase) const {
  std::map<int, std::pair<double, int>> by_n;  // n -> (sum, count)
  for (const ReportRow& row : rows_) {
    if (row.phase != phase) continue;
    auto& acc = by_n[row.n];
    acc.first += row.tally;
    acc.second += 1;
  }
  std::vector<ScalePoint> out;
  out.reserve(by_n.size());
  for (const auto& [n, acc] : by_n) {
    out.push_back({static_cast<double>(n), acc.first / acc.second});
  }
  return out;
}

std::optional<FitResult> ScalingReport::fitted_exponent(
    const std::string& phase) const {
  const auto points = mean_points(phase);
  if (points.size() < 3) return std::nullopt;
  for (const ScalePoint& pt : points) {
    if (pt.tally <= 0.0) return std::nullopt;
  }
  return fit_exponent(points);
}

BoundVerdict ScalingReport::check_bound(const std::string& phase) const {
  BoundVerdict verdict;
  verdict.phase = phase;

  // Mean tallies keyed by (n, p); the bound is evaluated at each point.
  std::map<std::pair<int, int>, std::pair<double, int>> by_np;
  for (const ReportRow& row : rows_) {
    if (row.phase != phase) continue;
    auto& acc = by_np[{row.n, row.p}];
    acc.first += row.tally;
    acc.second += 1;
  }
  if (by_np.size() < 2) {
    verdict.pass = false;
    verdict.notes.push_back("needs measurements at >= 2 sizes");
    return verdict;
  }

  bool first = true;
  for (const auto& [np, acc] : by_np) {
    const double n = static_cast<double>(np.first);
    const double p = static_cast<double>(np.second);
    const double mean = acc.first / acc.second;
    const double bound = phase_bound(phase, n, p, k_max_);
    if (first) {
      verdict.calibration_c = mean / bound;
      first = false;
      continue;
    }
    const double allowed = verdict.calibration_c * bound;
    if (mean > allowed) {
      verdict.pass = false;
      verdict.notes.push_back(
          "n=" + std::to_string(np.first) + " p=" + std::to_string(np.second) +
          ": tally " + std::to_string(mean) + " exceeds c*bound " +
          std::to_string(allowed));
    }
  }
  return verdict;
}

std::vector<BoundVerdict> ScalingReport::check_pessimistic_bounds() const {
  std::vector<std::string> phases;
  for (const ReportRow& row : rows_) {
    if (std::find(phases.begin(), phases.end(), row.phase) == phases.end()) {
      phases.push_back(row.phase);
    }
  }
  std::vector<BoundVerdict> verdicts;
  verdicts.reserve(phases.size());
  for (const std::string& phase : phases) {
    verdicts.push_back(check_bound(phase));
  }
  return verdicts;
}

void ScalingReport::write_csv(std::ostream& out) const {
  out << "phase,n,p,repetition,tally,wall_seconds\n";
  for (const ReportRow& row : rows_) {
    out << row.phase << ',' << row.n << ',' << row.p << ',' << row.repetition
        << ',' << row.tally << ',' << row.wall_seconds << "\n";
  }
  out << "# summary\n";
  std::vector<std::string> phases;
  for (const ReportRow& row : rows_) {
    if (std::find(phases.begin(), phases.end(), row.phase) == phases.end()) {
      phases.push_back(row.phase);
    }
  }
  for (const std::string& phase : phases) {
    if (auto fit = fitted_exponent(phase)) {
      out << "# exponent " << phase << ' ' << fit->exponent << " residual "
          << fit->residual << "\n";
    } else {
      out << "# exponent " << phase << " n/a (needs >= 3 sizes)\n";
    }
  }
  for (const BoundVerdict& verdict : check_pessimistic_bounds()) {
    out << "# bound " << verdict.phase << ' '
        << (verdict.pass ? "pass" : "FAIL") << " c=" << verdict.calibration_c;
    for (const std::string& note : verdict.notes) out << " ; " << note;
    out << "\n";
  }
  for (const SpeedupEntry& entry : speedups_) {
    out << "# speedup p=" << entry.p << " n=" << entry.n << " S="
        << entry.speedup << " C=" << entry.cost
        << (entry.superlinear ? " superlinear" : "") << "\n";
  }
}

}  // namespace pges
