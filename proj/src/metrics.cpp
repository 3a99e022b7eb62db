#include "gpd/metrics.hpp"

#include <algorithm>

#include "gpd/errors.hpp"

namespace gpd {

namespace {

// Interval the support cell lands on after erosion, or nullopt if it vanishes.
std::optional<Interval> shrink(const Interval& cell, const Rational& eps) {
  Interval out{cell.lo + eps, cell.hi};
  if (out.hi) {
    *out.hi -= eps;
    if (!(out.lo < *out.hi)) return std::nullopt;
  }
  return out;
}

// ∇^eps(from) -> to
bool eroded_leq(const DiagramGrid& from, const DiagramGrid& to, const Rational& eps) {
  for (const auto& [cell, value] : from.entries()) {
    const Interval original = from.interval(cell.first, cell.second);
    const std::optional<Interval> moved = shrink(original, eps);
    if (!moved) continue;
    if (!leq(cumulative_at(from, original), cumulative_at(to, *moved))) return false;
  }
  return true;
}

}  // namespace

DiagramGrid erode(const DiagramGrid& y, const Rational& eps) {
  if (eps < 0) throw ValidationError("erode: eps must be nonnegative");
  std::vector<std::pair<Interval, GroupElement>> moved;
  std::vector<Rational> grid;
  for (const auto& [cell, value] : y.entries()) {
    std::optional<Interval> m = shrink(y.interval(cell.first, cell.second), eps);
    if (!m) continue;
    grid.push_back(m->lo);
    if (m->hi) grid.push_back(*m->hi);
    moved.emplace_back(*m, value);
  }
  grid = sorted_unique(std::move(grid));
  DiagramGrid out(grid, y.tag(), DiagramGrid::Role::Diagram);
  auto index = [&](const Rational& v) { return static_cast<std::size_t>(std::lower_bound(grid.begin(), grid.end(), v) - grid.begin()); };
  for (const auto& [interval, value] : moved) {
    const std::size_t i = index(interval.lo);
    const std::size_t j = interval.hi ? index(*interval.hi) : grid.size();
    out.set(i, j, out.at(i, j) + value);
  }
  return out;
}

bool erosion_exists(const DiagramGrid& y1, const DiagramGrid& y2, const Rational& eps) {
  if (!(y1.tag() == y2.tag()))
    throw ValidationError("erosion: tag mismatch " + y1.tag().to_string() + " vs " + y2.tag().to_string());
  if (eps < 0) throw ValidationError("erosion: eps must be nonnegative");
  return eroded_leq(y2, y1, eps) && eroded_leq(y1, y2, eps);
}

std::string ErosionReport::distance_string() const { return distance ? to_string(*distance) : "inf"; }

std::vector<ErosionCandidate> erosion_candidates(const DiagramGrid& y1, const DiagramGrid& y2) {
  std::vector<Rational> values = y1.grid();
  values.insert(values.end(), y2.grid().begin(), y2.grid().end());
  values = sorted_unique(std::move(values));
  std::vector<Rational> breakpoints{Rational(0)};
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      const Rational d = values[b] - values[a];
      breakpoints.push_back(d);
      breakpoints.push_back(d / 2);
    }
  }
  breakpoints = sorted_unique(std::move(breakpoints));
  std::vector<ErosionCandidate> out;
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    out.push_back({breakpoints[k], false, false});
    const Rational next = k + 1 < breakpoints.size() ? Rational((breakpoints[k] + breakpoints[k + 1]) / 2) : Rational(breakpoints[k] + 1);
    out.push_back({next, false, true});
  }
  return out;
}

ErosionReport erosion_distance(const DiagramGrid& y1, const DiagramGrid& y2) {
  if (!(y1.tag() == y2.tag()))
    throw ValidationError("erosion: tag mismatch " + y1.tag().to_string() + " vs " + y2.tag().to_string());
  ErosionReport report;
  report.candidates = erosion_candidates(y1, y2);
  for (std::size_t k = 0; k < report.candidates.size(); ++k) {
    ErosionCandidate& c = report.candidates[k];
    c.holds = erosion_exists(y1, y2, c.eps);
    if (c.midpoint && c.holds && !report.candidates[k - 1].holds) report.open_interval_flags.push_back(c.eps);
    if (c.holds && !report.distance) report.distance = c.eps;
  }
  return report;
}

}  // namespace gpd
