#include "gpd/module.hpp"

#include <algorithm>

#include "gpd/errors.hpp"

namespace gpd {

ConstructibleModule::ConstructibleModule(CategoryId category, std::vector<Rational> critical, std::vector<Object> objects,
                                         std::vector<Morphism> maps)
    : category_(std::move(category)), critical_(std::move(critical)), objects_(std::move(objects)), maps_(std::move(maps)) {
  for (std::size_t i = 1; i < critical_.size(); ++i)
    if (!(critical_[i - 1] < critical_[i])) throw ValidationError("critical values must be strictly increasing");
  if (objects_.size() != critical_.size() + 1)
    throw ValidationError("module needs " + std::to_string(critical_.size() + 1) + " objects, got " +
                          std::to_string(objects_.size()));
  if (maps_.size() != critical_.size())
    throw ValidationError("module needs " + std::to_string(critical_.size()) + " maps, got " + std::to_string(maps_.size()));
  for (const Object& o : objects_)
    if (!(o.category() == category_)) throw ValidationError("module object in the wrong category: " + o.to_string());
  if (!(objects_[0] == Object::identity_object(category_)))
    throw ValidationError("module must start at the identity object, got " + objects_[0].to_string());
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (!(maps_[i].source() == objects_[i]) || !(maps_[i].target() == objects_[i + 1]))
      throw ValidationError("map " + std::to_string(i) + " does not connect objects " + std::to_string(i) + " and " +
                            std::to_string(i + 1));
  }
}

ConstructibleModule ConstructibleModule::zero(const CategoryId& category) {
  return ConstructibleModule(category, {}, {Object::identity_object(category)}, {});
}

Morphism ConstructibleModule::segment_map(std::size_t a, std::size_t b) const {
  if (a > b || b >= objects_.size()) throw ValidationError("segment_map: bad segment range");
  Morphism m = Morphism::identity(objects_[a]);
  for (std::size_t k = a; k < b; ++k) m = compose(maps_[k], m);
  return m;
}

Morphism ConstructibleModule::evaluate(const Rational& p, const Rational& q) const {
  if (q < p) throw ValidationError("evaluate: need p <= q, got " + to_string(p) + " > " + to_string(q));
  return segment_map(segment(p), segment(q));
}

ConstructibleModule shift(const ConstructibleModule& f, const Rational& eps) {
  std::vector<Rational> critical = f.critical();
  for (auto& s : critical) s -= eps;
  return ConstructibleModule(f.category(), std::move(critical), f.objects(), f.maps());
}

ConstructibleModule refine(const ConstructibleModule& f, const std::vector<Rational>& grid) {
  std::vector<Rational> merged = f.critical();
  merged.insert(merged.end(), grid.begin(), grid.end());
  merged = sorted_unique(std::move(merged));
  std::vector<Object> objects{f.objects()[0]};
  std::vector<Morphism> maps;
  for (const Rational& s : merged) {
    const std::size_t seg = f.segment(s);
    const bool is_critical = std::binary_search(f.critical().begin(), f.critical().end(), s);
    maps.push_back(is_critical ? f.maps()[seg - 1] : Morphism::identity(f.objects()[seg]));
    objects.push_back(f.objects()[seg]);
  }
  return ConstructibleModule(f.category(), std::move(merged), std::move(objects), std::move(maps));
}

std::pair<ConstructibleModule, ConstructibleModule> common_refinement(const ConstructibleModule& f,
                                                                      const ConstructibleModule& g) {
  if (!(f.category() == g.category())) throw ValidationError("common_refinement: category mismatch");
  return {refine(f, g.critical()), refine(g, f.critical())};
}

ConstructibleModule direct_sum(const ConstructibleModule& f, const ConstructibleModule& g) {
  auto [a, b] = common_refinement(f, g);
  std::vector<Object> objects;
  std::vector<Morphism> maps;
  for (std::size_t k = 0; k < a.objects().size(); ++k) objects.push_back(direct_sum(a.objects()[k], b.objects()[k]));
  for (std::size_t k = 0; k < a.maps().size(); ++k) maps.push_back(direct_sum(a.maps()[k], b.maps()[k]));
  return ConstructibleModule(f.category(), a.critical(), std::move(objects), std::move(maps));
}

IsoClass dX_iso(const ConstructibleModule& f, std::size_t i, std::size_t j) {
  const std::size_t n = f.critical_count();
  if (!(i < j && j <= n))
    throw ValidationError("dX: malformed grid interval (" + std::to_string(i) + ", " + std::to_string(j) + ") on " +
                          std::to_string(n) + " values");
  return image_iso_class(f.segment_map(i + 1, j));
}

std::vector<Rational> segment_representatives(const std::vector<Rational>& grid) {
  std::vector<Rational> reps;
  if (grid.empty()) {
    reps.emplace_back(0);
    return reps;
  }
  reps.push_back(grid.front() - 1);
  reps.insert(reps.end(), grid.begin(), grid.end());
  return reps;
}

namespace {

std::vector<Rational> translated(const std::vector<Rational>& values, const Rational& delta) {
  std::vector<Rational> out = values;
  for (auto& v : out) v += delta;
  return out;
}

std::vector<Rational> merged(std::vector<Rational> a, const std::vector<Rational>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return sorted_unique(std::move(a));
}

const Morphism& lookup(const std::vector<Rational>& grid, const std::vector<Morphism>& maps, const Rational& r) {
  return maps[count_at_most(grid, r)];
}

}  // namespace

InterleavingPair make_interleaving(const ConstructibleModule& f, const ConstructibleModule& g, const Rational& eps,
                                   const ShiftedMapFn& phi, const ShiftedMapFn& psi) {
  if (eps < 0) throw ValidationError("interleaving needs eps >= 0");
  InterleavingPair pair;
  pair.eps = eps;
  pair.phi_grid = merged(f.critical(), translated(g.critical(), -eps));
  pair.psi_grid = merged(g.critical(), translated(f.critical(), -eps));
  for (const Rational& r : segment_representatives(pair.phi_grid)) pair.phi_maps.push_back(phi(r));
  for (const Rational& r : segment_representatives(pair.psi_grid)) pair.psi_maps.push_back(psi(r));
  return pair;
}

InterleavingPair shift_interleaving(const ConstructibleModule& f, const Rational& eps) {
  const ConstructibleModule g = shift(f, eps);
  return make_interleaving(
      f, g, eps, [&](const Rational& r) { return f.evaluate(r, r + 2 * eps); },
      [&](const Rational& r) { return Morphism::identity(g.object_at(r)); });
}

namespace {

// Checks one direction: naturality of `phi` and psi(r+eps) ∘ phi(r) = F(r <= r+2eps).
InterleavingCheck check_direction(const ConstructibleModule& f, const ConstructibleModule& g, const Rational& eps,
                                  const std::vector<Rational>& phi_grid, const std::vector<Morphism>& phi_maps,
                                  const std::vector<Rational>& psi_grid, const std::vector<Morphism>& psi_maps,
                                  const std::string& name) {
  const std::vector<Rational> expected = merged(f.critical(), translated(g.critical(), -eps));
  if (phi_grid != expected) throw ValidationError(name + " grid does not match the merged critical values");
  if (phi_maps.size() != phi_grid.size() + 1)
    throw ValidationError(name + " needs one map per segment (" + std::to_string(phi_grid.size() + 1) + ")");
  const std::vector<Rational> reps = segment_representatives(phi_grid);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const Morphism& m = phi_maps[k];
    if (!(m.source() == f.object_at(reps[k])) || !(m.target() == g.object_at(reps[k] + eps)))
      throw ValidationError(name + " segment " + std::to_string(k) + " has the wrong source or target");
  }
  for (std::size_t k = 0; k + 1 < reps.size(); ++k) {
    const Rational& a = reps[k];
    const Rational& b = reps[k + 1];
    if (!(compose(g.evaluate(a + eps, b + eps), phi_maps[k]) == compose(phi_maps[k + 1], f.evaluate(a, b))))
      return {false, name + " is not natural at " + to_string(b)};
  }
  const std::vector<Rational> composite_grid =
      merged(merged(phi_grid, translated(psi_grid, -eps)), translated(f.critical(), -2 * eps));
  for (const Rational& r : segment_representatives(composite_grid)) {
    const Morphism lhs = compose(lookup(psi_grid, psi_maps, r + eps), lookup(phi_grid, phi_maps, r));
    if (!(lhs == f.evaluate(r, r + 2 * eps))) return {false, "composite through " + name + " differs from the 2eps shift at " + to_string(r)};
  }
  return {};
}

}  // namespace

InterleavingCheck check_interleaving(const ConstructibleModule& f, const ConstructibleModule& g,
                                     const InterleavingPair& pair) {
  if (!(f.category() == g.category())) throw ValidationError("check_interleaving: category mismatch");
  InterleavingCheck a =
      check_direction(f, g, pair.eps, pair.phi_grid, pair.phi_maps, pair.psi_grid, pair.psi_maps, "phi");
  if (!a.ok) return a;
  return check_direction(g, f, pair.eps, pair.psi_grid, pair.psi_maps, pair.phi_grid, pair.phi_maps, "psi");
}

}  // namespace gpd
