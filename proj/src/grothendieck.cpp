#include "gpd/grothendieck.hpp"

#include <sstream>

#include "gpd/errors.hpp"

namespace gpd {

GroupTag GroupTag::of(const CategoryId& category, GroupKind kind) {
  if (kind == GroupKind::B && !category.is_abelian()) throw NoBGroupError("FinSet has no B group: it is not abelian");
  return {category, kind};
}

bool GroupTag::admits(const BasisKey& key) const {
  using K = BasisKey::Kind;
  switch (category.kind) {
    case CategoryKind::FinSet: return key.kind == K::Point;
    case CategoryKind::Vect: return key.kind == K::Line;
    case CategoryKind::Ab:
      return key.kind == K::Free || (kind == GroupKind::A && key.kind == K::Cyclic);
    case CategoryKind::FinAb: return key.kind == K::Cyclic && (kind == GroupKind::A || key.exponent == 1);
    case CategoryKind::RepN:
      if (key.kind != K::Jordan || (kind == GroupKind::B && key.size != 1)) return false;
      return category.field.normalize(key.eigenvalue) == key.eigenvalue;
  }
  return false;
}

std::string GroupTag::to_string() const {
  std::string s = (kind == GroupKind::A ? "A(" : "B(") + category.name();
  if (category.has_field()) s += "," + category.field.name();
  return s + ")";
}

std::int64_t GroupElement::coefficient(const BasisKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? 0 : it->second;
}

void GroupElement::add(const BasisKey& key, std::int64_t amount) {
  if (!tag_.admits(key)) throw ValidationError(key.to_string() + " is not a basis element of " + tag_.to_string());
  if (amount == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, 0);
  it->second += amount;
  if (it->second == 0) terms_.erase(it);
}

bool GroupElement::is_nonnegative() const noexcept {
  for (const auto& [key, c] : terms_)
    if (c < 0) return false;
  return true;
}

void GroupElement::require_same_tag(const GroupElement& other) const {
  if (!(tag_ == other.tag_))
    throw ValidationError("group element tag mismatch: " + tag_.to_string() + " vs " + other.tag_.to_string());
}

GroupElement& GroupElement::operator+=(const GroupElement& other) {
  require_same_tag(other);
  for (const auto& [key, c] : other.terms_) add(key, c);
  return *this;
}

GroupElement& GroupElement::operator-=(const GroupElement& other) {
  require_same_tag(other);
  for (const auto& [key, c] : other.terms_) add(key, -c);
  return *this;
}

GroupElement GroupElement::operator-() const {
  GroupElement out(tag_);
  for (const auto& [key, c] : terms_) out.terms_.emplace(key, -c);
  return out;
}

std::string GroupElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      os << (c < 0 ? "-" : "");
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag;
    os << '[' << key.to_string() << ']';
    first = false;
  }
  return os.str();
}

GroupElement a_class(const IsoClass& c) {
  GroupElement out(GroupTag::of(c.category, GroupKind::A));
  for (const auto& [key, mult] : c.parts) out.add(key, static_cast<std::int64_t>(mult));
  return out;
}

namespace {

// π on a single indecomposable: (simple key, multiplicity), multiplicity 0
// when the summand dies.
std::pair<BasisKey, std::int64_t> project_key(const BasisKey& key, const CategoryId& category) {
  using K = BasisKey::Kind;
  switch (category.kind) {
    case CategoryKind::FinSet: throw NoBGroupError("FinSet has no B group: it is not abelian");
    case CategoryKind::Vect: return {key, 1};
    case CategoryKind::Ab:
      if (key.kind == K::Free) return {key, 1};
      return {key, 0};  // torsion is forgotten
    case CategoryKind::FinAb: return {BasisKey::cyclic(key.prime, 1), static_cast<std::int64_t>(key.exponent)};
    case CategoryKind::RepN: return {BasisKey::jordan(key.eigenvalue, 1), static_cast<std::int64_t>(key.size)};
  }
  throw ValidationError("project: unknown category");
}

}  // namespace

GroupElement project(const GroupElement& a) {
  if (a.tag().kind != GroupKind::A) throw ValidationError("project: argument is not an A-group element");
  GroupElement out(GroupTag::of(a.tag().category, GroupKind::B));
  for (const auto& [key, c] : a.terms()) {
    auto [simple, weight] = project_key(key, a.tag().category);
    if (weight != 0) out.add(simple, c * weight);
  }
  return out;
}

GroupElement b_class(const IsoClass& c) { return project(a_class(c)); }

bool leq(const GroupElement& x, const GroupElement& y) { return (y - x).is_nonnegative(); }

}  // namespace gpd
