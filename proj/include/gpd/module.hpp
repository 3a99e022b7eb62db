#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gpd/categories.hpp"
#include "gpd/rational.hpp"

namespace gpd {

/// A persistence module constructible with respect to critical values
/// s_0 < ... < s_{n-1}. Segment 0 is (-inf, s_0) and carries the identity
/// object; segment k >= 1 is [s_{k-1}, s_k) (the last one unbounded).
/// maps()[k] goes from segment k to segment k+1.
class ConstructibleModule {
 public:
  ConstructibleModule() = default;
  ConstructibleModule(CategoryId category, std::vector<Rational> critical, std::vector<Object> objects,
                      std::vector<Morphism> maps);

  /// The module that is e everywhere.
  static ConstructibleModule zero(const CategoryId& category);

  const CategoryId& category() const noexcept { return category_; }
  const std::vector<Rational>& critical() const noexcept { return critical_; }
  const std::vector<Object>& objects() const noexcept { return objects_; }
  const std::vector<Morphism>& maps() const noexcept { return maps_; }
  std::size_t critical_count() const noexcept { return critical_.size(); }

  /// Index of the segment containing r.
  std::size_t segment(const Rational& r) const { return count_at_most(critical_, r); }
  const Object& object_at(const Rational& r) const { return objects_[segment(r)]; }
  /// Composite of connecting maps from segment a to segment b (a <= b).
  Morphism segment_map(std::size_t a, std::size_t b) const;
  /// F(p <= q). Throws ValidationError if p > q.
  Morphism evaluate(const Rational& p, const Rational& q) const;

 private:
  CategoryId category_;
  std::vector<Rational> critical_;
  std::vector<Object> objects_;
  std::vector<Morphism> maps_;
};

/// r |-> F(r + eps): critical values move to s_i - eps.
ConstructibleModule shift(const ConstructibleModule& f, const Rational& eps);

/// Re-grids F onto a superset of its critical values, inserting identities.
ConstructibleModule refine(const ConstructibleModule& f, const std::vector<Rational>& grid);
std::pair<ConstructibleModule, ConstructibleModule> common_refinement(const ConstructibleModule& f,
                                                                      const ConstructibleModule& g);

/// Pointwise monoidal sum.
ConstructibleModule direct_sum(const ConstructibleModule& f, const ConstructibleModule& g);

/// Image class over the grid cell [s_i, s_j) (j < n) or [s_i, inf) (j == n):
/// the image of segment i+1 -> segment j.
IsoClass dX_iso(const ConstructibleModule& f, std::size_t i, std::size_t j);

/// Natural maps phi : F(r) -> G(r + eps) and psi : G(r) -> F(r + eps), each
/// constant on the segments of its own grid. phi lives on
/// sorted(S_F ∪ (S_G - eps)); phi_maps[k] is its value on segment k of that
/// grid (segment 0 = before the first value). psi is symmetric.
struct InterleavingPair {
  Rational eps;
  std::vector<Rational> phi_grid;
  std::vector<Morphism> phi_maps;
  std::vector<Rational> psi_grid;
  std::vector<Morphism> psi_maps;
};

struct InterleavingCheck {
  bool ok = true;
  std::string failure;  // empty when ok
};

using ShiftedMapFn = std::function<Morphism(const Rational& r)>;

/// Samples phi(r) and psi(r) once per segment of the required grids.
InterleavingPair make_interleaving(const ConstructibleModule& f, const ConstructibleModule& g, const Rational& eps,
                                   const ShiftedMapFn& phi, const ShiftedMapFn& psi);

/// phi = F(r <= r+2eps), psi = identity: an eps-interleaving of F and shift(F, eps).
InterleavingPair shift_interleaving(const ConstructibleModule& f, const Rational& eps);

/// Naturality of phi and psi plus both triangle identities. Throws
/// ValidationError when the pair's grids or objects do not fit F and G.
InterleavingCheck check_interleaving(const ConstructibleModule& f, const ConstructibleModule& g,
                                     const InterleavingPair& pair);

/// One representative point per segment of a sorted grid: v_0 - 1, v_0, v_1, ...
std::vector<Rational> segment_representatives(const std::vector<Rational>& grid);

}  // namespace gpd
