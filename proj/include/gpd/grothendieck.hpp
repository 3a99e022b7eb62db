#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "gpd/categories.hpp"

namespace gpd {

// A(C) is free on the indecomposables of C; B(C) is free on its simple
// objects (k, Z, Z/p or a 1x1 Jordan block). Both partial orders reduce to
// componentwise nonnegativity of the difference in these bases.

enum class GroupKind { A, B };

struct GroupTag {
  CategoryId category;
  GroupKind kind = GroupKind::A;

  /// Throws NoBGroupError for B over FinSet.
  static GroupTag of(const CategoryId& category, GroupKind kind);
  /// Whether `key` is a basis element of this group.
  bool admits(const BasisKey& key) const;
  std::string to_string() const;

  friend bool operator==(const GroupTag&, const GroupTag&) = default;
};

class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(GroupTag tag) : tag_(std::move(tag)) {}

  const GroupTag& tag() const noexcept { return tag_; }
  const std::map<BasisKey, std::int64_t>& terms() const noexcept { return terms_; }
  std::int64_t coefficient(const BasisKey& key) const;
  /// Adds `amount` copies of `key`; zero coefficients are pruned.
  void add(const BasisKey& key, std::int64_t amount);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_nonnegative() const noexcept;

  GroupElement& operator+=(const GroupElement& other);
  GroupElement& operator-=(const GroupElement& other);
  friend GroupElement operator+(GroupElement a, const GroupElement& b) { return a += b; }
  friend GroupElement operator-(GroupElement a, const GroupElement& b) { return a -= b; }
  GroupElement operator-() const;

  /// "16[Z] - [Z/2]", or "0".
  std::string to_string() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  void require_same_tag(const GroupElement& other) const;

  GroupTag tag_;
  std::map<BasisKey, std::int64_t> terms_;
};

GroupElement a_class(const IsoClass& c);
/// π applied to the class; throws NoBGroupError for FinSet.
GroupElement b_class(const IsoClass& c);
/// The quotient map π : A(C) -> B(C).
GroupElement project(const GroupElement& a);
/// x ⪯ y. Throws ValidationError on tag mismatch.
bool leq(const GroupElement& x, const GroupElement& y);

}  // namespace gpd
