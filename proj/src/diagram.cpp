#include "gpd/diagram.hpp"

#include <algorithm>
#include <sstream>

#include "gpd/errors.hpp"

namespace gpd {

bool Interval::contains(const Interval& other) const {
  if (other.lo < lo) return false;
  if (!hi) return true;
  return other.hi && *other.hi <= *hi;
}

Interval Interval::grow(const Rational& eps) const {
  Interval out{lo - eps, hi};
  if (out.hi) *out.hi += eps;
  return out;
}

std::string Interval::to_string() const {
  return "[" + gpd::to_string(lo) + ", " + (hi ? gpd::to_string(*hi) : std::string("inf")) + ")";
}

DiagramGrid::DiagramGrid(std::vector<Rational> grid, GroupTag tag, Role role)
    : grid_(std::move(grid)), tag_(std::move(tag)), role_(role) {
  for (std::size_t i = 1; i < grid_.size(); ++i)
    if (!(grid_[i - 1] < grid_[i])) throw ValidationError("diagram grid values must be strictly increasing");
}

void DiagramGrid::check_cell(std::size_t i, std::size_t j) const {
  if (!is_cell(i, j))
    throw ValidationError("no grid cell (" + std::to_string(i) + ", " + std::to_string(j) + ") on " +
                          std::to_string(grid_.size()) + " values");
}

GroupElement DiagramGrid::at(std::size_t i, std::size_t j) const {
  check_cell(i, j);
  auto it = entries_.find({i, j});
  return it == entries_.end() ? zero() : it->second;
}

void DiagramGrid::set(std::size_t i, std::size_t j, const GroupElement& value) {
  check_cell(i, j);
  if (!(value.tag() == tag_)) throw ValidationError("diagram entry has tag " + value.tag().to_string() + ", grid has " + tag_.to_string());
  for (const auto& [key, c] : value.terms())
    if (!tag_.admits(key)) throw ValidationError("[" + key.to_string() + "] is not a basis element of " + tag_.to_string());
  if (value.is_zero()) {
    entries_.erase({i, j});
  } else {
    entries_[{i, j}] = value;
  }
}

Interval DiagramGrid::interval(std::size_t i, std::size_t j) const {
  check_cell(i, j);
  Interval out{grid_[i], std::nullopt};
  if (j < grid_.size()) out.hi = grid_[j];
  return out;
}

DiagramGrid mobius_invert(const DiagramGrid& x) {
  DiagramGrid y(x.grid(), x.tag(), DiagramGrid::Role::Diagram);
  const std::size_t n = x.size();
  auto value = [&](std::size_t i_plus_one, std::size_t j) {
    // X with the row index shifted by one so that row -1 reads as zero
    return i_plus_one == 0 ? x.zero() : x.at(i_plus_one - 1, j);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      GroupElement v = value(i + 1, j) - value(i, j);
      if (j < n) v += value(i, j + 1) - value(i + 1, j + 1);
      y.set(i, j, v);
    }
  }
  return y;
}

DiagramGrid cumulate(const DiagramGrid& y) {
  DiagramGrid x(y.grid(), y.tag(), DiagramGrid::Role::Cumulative);
  const std::size_t n = y.size();
  // column suffix sums, then row prefix sums
  std::vector<std::vector<GroupElement>> suffix(n, std::vector<GroupElement>(n + 1, y.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    GroupElement acc = y.zero();
    for (std::size_t j = n; j > i; --j) {
      acc += y.at(i, j);
      suffix[i][j] = acc;
    }
  }
  for (std::size_t j = 1; j <= n; ++j) {
    GroupElement acc = y.zero();
    for (std::size_t i = 0; i < j; ++i) {
      acc += suffix[i][j];
      x.set(i, j, acc);
    }
  }
  return x;
}

GroupElement cumulative_at(const DiagramGrid& y, const Interval& interval) {
  GroupElement acc = y.zero();
  for (const auto& [cell, value] : y.entries())
    if (y.interval(cell.first, cell.second).contains(interval)) acc += value;
  return acc;
}

namespace {

GroupElement class_in(const IsoClass& c, GroupKind kind) { return kind == GroupKind::A ? a_class(c) : b_class(c); }

}  // namespace

DiagramGrid dX(const ConstructibleModule& f, GroupKind kind) {
  DiagramGrid x(f.critical(), GroupTag::of(f.category(), kind), DiagramGrid::Role::Cumulative);
  const std::size_t n = f.critical_count();
  for (std::size_t i = 0; i < n; ++i) {
    Morphism m = Morphism::identity(f.objects()[i + 1]);
    for (std::size_t j = i + 1; j <= n; ++j) {
      x.set(i, j, class_in(image_iso_class(m), kind));
      if (j < n) m = compose(f.maps()[j], m);
    }
  }
  return x;
}

DiagramGrid type_A_diagram(const ConstructibleModule& f) { return mobius_invert(dX(f, GroupKind::A)); }

DiagramGrid type_B_diagram(const ConstructibleModule& f) { return mobius_invert(dX(f, GroupKind::B)); }

DiagramGrid project(const DiagramGrid& y) {
  DiagramGrid out(y.grid(), GroupTag::of(y.tag().category, GroupKind::B), y.role());
  for (const auto& [cell, value] : y.entries()) out.set(cell.first, cell.second, project(value));
  return out;
}

DiagramGrid regrid(const DiagramGrid& y, const std::vector<Rational>& grid) {
  if (y.role() != DiagramGrid::Role::Diagram) throw ValidationError("regrid: only diagrams can be re-gridded");
  DiagramGrid out(grid, y.tag(), y.role());
  auto index = [&](const Rational& v) {
    auto it = std::lower_bound(grid.begin(), grid.end(), v);
    if (it == grid.end() || *it != v) throw ValidationError("regrid: value " + to_string(v) + " missing from the new grid");
    return static_cast<std::size_t>(it - grid.begin());
  };
  for (const auto& [cell, value] : y.entries()) {
    const std::size_t i = index(y.grid()[cell.first]);
    const std::size_t j = cell.second == y.size() ? grid.size() : index(y.grid()[cell.second]);
    out.set(i, j, value);
  }
  return out;
}

DiagramGrid add(const DiagramGrid& a, const DiagramGrid& b) {
  if (!(a.tag() == b.tag())) throw ValidationError("add: tag mismatch");
  std::vector<Rational> grid = a.grid();
  grid.insert(grid.end(), b.grid().begin(), b.grid().end());
  grid = sorted_unique(std::move(grid));
  DiagramGrid out = regrid(a, grid);
  const DiagramGrid other = regrid(b, grid);
  for (const auto& [cell, value] : other.entries()) out.set(cell.first, cell.second, out.at(cell.first, cell.second) + value);
  return out;
}

bool diagram_leq(const DiagramGrid& y1, const DiagramGrid& y2) {
  if (!(y1.tag() == y2.tag()))
    throw ValidationError("diagram_leq: tag mismatch " + y1.tag().to_string() + " vs " + y2.tag().to_string());
  for (const auto& [cell, value] : y1.entries()) {
    const Interval cell_interval = y1.interval(cell.first, cell.second);
    if (!leq(cumulative_at(y1, cell_interval), cumulative_at(y2, cell_interval))) return false;
  }
  return true;
}

PositivityReport positivity_check(const ConstructibleModule& f, const DiagramGrid& y_b) {
  const GroupTag tag = GroupTag::of(f.category(), GroupKind::B);
  if (!(y_b.tag() == tag)) throw ValidationError("positivity_check: diagram is not a B diagram of the module's category");
  if (y_b.grid() != f.critical()) throw ValidationError("positivity_check: diagram grid differs from the module's critical values");
  PositivityReport report;
  const std::size_t n = f.critical_count();
  for (std::size_t j = 1; j <= n; ++j) {
    std::optional<Subobject> kernel;
    if (j < n) kernel = kernel_subobject(f.maps()[j]);
    for (std::size_t i = 0; i < j; ++i) {
      Subobject whole = image_subobject(f.segment_map(i + 1, j));
      Subobject part = image_subobject(f.segment_map(i, j));
      if (kernel) {
        whole = intersect(whole, *kernel);
        part = intersect(part, *kernel);
      }
      PositivityWitness w{i, j, y_b.at(i, j), b_class(subquotient_class(whole, part))};
      if (!w.diagram_value.is_nonnegative()) report.nonnegative = false;
      if (!(w.diagram_value == w.subquotient_value)) report.matches_subquotients = false;
      report.cells.push_back(std::move(w));
    }
  }
  return report;
}

std::string to_string(const DiagramGrid& y) {
  std::ostringstream os;
  os << y.tag().to_string() << (y.role() == DiagramGrid::Role::Diagram ? " diagram" : " cumulative") << " on "
     << y.size() << " values";
  for (const auto& [cell, value] : y.entries())
    os << "\n  " << y.interval(cell.first, cell.second).to_string() << ": " << value.to_string();
  return os.str();
}

}  // namespace gpd
