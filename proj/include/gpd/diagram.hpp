#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpd/grothendieck.hpp"
#include "gpd/module.hpp"

namespace gpd {

/// A half-open interval [lo, hi), hi absent for [lo, inf).
struct Interval {
  Rational lo;
  std::optional<Rational> hi;

  bool is_empty() const { return hi && !(lo < *hi); }
  /// this ⊇ other
  bool contains(const Interval& other) const;
  /// [lo - eps, hi + eps)
  Interval grow(const Rational& eps) const;
  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Group-valued function on the grid cells [t_i, t_j) (i < j < n) and
/// [t_i, inf) (j == n) of grid values t_0 < ... < t_{n-1}. Zero entries are
/// not stored. The role tells whether the values are cumulative (X) or a
/// diagram (Y).
class DiagramGrid {
 public:
  enum class Role { Cumulative, Diagram };
  using Cell = std::pair<std::size_t, std::size_t>;

  DiagramGrid() = default;
  DiagramGrid(std::vector<Rational> grid, GroupTag tag, Role role);

  const std::vector<Rational>& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }
  const GroupTag& tag() const noexcept { return tag_; }
  Role role() const noexcept { return role_; }
  /// Nonzero entries, ordered by cell.
  const std::map<Cell, GroupElement>& entries() const noexcept { return entries_; }

  bool is_cell(std::size_t i, std::size_t j) const noexcept { return i < j && j <= grid_.size(); }
  /// Zero element when the cell is empty. Throws on a malformed cell.
  GroupElement at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const GroupElement& value);
  Interval interval(std::size_t i, std::size_t j) const;
  GroupElement zero() const { return GroupElement(tag_); }

  friend bool operator==(const DiagramGrid&, const DiagramGrid&) = default;

 private:
  void check_cell(std::size_t i, std::size_t j) const;

  std::vector<Rational> grid_;
  GroupTag tag_;
  Role role_ = Role::Diagram;
  std::map<Cell, GroupElement> entries_;
};

/// Finite-difference inversion: Y(i,j) = X(i,j) - X(i,j+1) + X(i-1,j+1) - X(i-1,j)
/// for finite cells and Y(i,inf) = X(i,inf) - X(i-1,inf), with X = 0 at i = -1.
DiagramGrid mobius_invert(const DiagramGrid& x);
/// X(I) = sum of Y(J) over grid cells J ⊇ I.
DiagramGrid cumulate(const DiagramGrid& y);
/// Sum of Y(J) over the support cells J ⊇ interval, for any interval.
GroupElement cumulative_at(const DiagramGrid& y, const Interval& interval);

/// Image classes of F over its grid, as A- or B-group elements.
DiagramGrid dX(const ConstructibleModule& f, GroupKind kind);
inline DiagramGrid dX_A(const ConstructibleModule& f) { return dX(f, GroupKind::A); }
inline DiagramGrid dX_B(const ConstructibleModule& f) { return dX(f, GroupKind::B); }

DiagramGrid type_A_diagram(const ConstructibleModule& f);
/// Throws NoBGroupError over FinSet.
DiagramGrid type_B_diagram(const ConstructibleModule& f);

/// Entrywise π.
DiagramGrid project(const DiagramGrid& y);
/// Entrywise sum after merging grids (diagram role only).
DiagramGrid add(const DiagramGrid& a, const DiagramGrid& b);
/// Re-indexes a diagram onto a finer grid.
DiagramGrid regrid(const DiagramGrid& y, const std::vector<Rational>& grid);

/// Diagram morphism Y1 -> Y2: for every support cell I of Y1,
/// cumulative(Y1)(I) ⪯ cumulative(Y2)(I).
bool diagram_leq(const DiagramGrid& y1, const DiagramGrid& y2);

struct PositivityWitness {
  std::size_t i = 0;
  std::size_t j = 0;
  GroupElement diagram_value;
  /// b-class of (im ∩ ker) / (im' ∩ ker) recomputed from the module.
  GroupElement subquotient_value;
};

struct PositivityReport {
  bool nonnegative = true;
  bool matches_subquotients = true;
  std::vector<PositivityWitness> cells;  // every grid cell
  bool ok() const noexcept { return nonnegative && matches_subquotients; }
};

/// Checks the type B diagram of F entrywise against the subquotient formula
/// and for nonnegativity.
PositivityReport positivity_check(const ConstructibleModule& f, const DiagramGrid& y_b);

std::string to_string(const DiagramGrid& y);

}  // namespace gpd
