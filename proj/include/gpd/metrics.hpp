#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpd/diagram.hpp"

namespace gpd {

/// ∇^eps Y: each support cell [a, b) moves to [a+eps, b-eps) and vanishes
/// when that is empty; [a, inf) moves to [a+eps, inf).
DiagramGrid erode(const DiagramGrid& y, const Rational& eps);

/// Both ∇^eps(Y2) -> Y1 and ∇^eps(Y1) -> Y2. Cumulative values of the eroded
/// diagrams are read off as cumulative(Y)(Grow^eps I).
bool erosion_exists(const DiagramGrid& y1, const DiagramGrid& y2, const Rational& eps);

struct ErosionCandidate {
  Rational eps;
  bool holds = false;
  bool midpoint = false;
};

struct ErosionReport {
  std::optional<Rational> distance;  // nullopt = infinite
  std::vector<ErosionCandidate> candidates;
  /// Midpoints that succeed while the breakpoint to their left fails.
  std::vector<Rational> open_interval_flags;

  std::string distance_string() const;
};

/// The candidate values: 0, |t_a - t_b|, |t_a - t_b| / 2 over the union of
/// both grids, plus midpoints between consecutive candidates and one point
/// past the largest.
std::vector<ErosionCandidate> erosion_candidates(const DiagramGrid& y1, const DiagramGrid& y2);

ErosionReport erosion_distance(const DiagramGrid& y1, const DiagramGrid& y2);

}  // namespace gpd
