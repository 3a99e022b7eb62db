#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gpd/field_matrix.hpp"
#include "gpd/int_matrix.hpp"
#include "gpd/rational.hpp"

namespace gpd {

// The five value categories. Ab and FinAb objects are presented on a fixed
// generating set: one generator per invariant factor (in divisibility order)
// followed by the free generators. Morphisms between them are integer
// matrices on those generators, rows reduced modulo the target orders.

enum class CategoryKind { FinSet, Vect, Ab, FinAb, RepN };

struct CategoryId {
  CategoryKind kind = CategoryKind::Vect;
  Field field;  // meaningful for Vect and RepN only

  static CategoryId finset() { return {CategoryKind::FinSet, Field()}; }
  static CategoryId vect(Field f) { return {CategoryKind::Vect, f}; }
  static CategoryId ab() { return {CategoryKind::Ab, Field()}; }
  static CategoryId finab() { return {CategoryKind::FinAb, Field()}; }
  static CategoryId repn(Field f) { return {CategoryKind::RepN, f}; }

  bool is_abelian() const noexcept { return kind != CategoryKind::FinSet; }
  bool has_field() const noexcept { return kind == CategoryKind::Vect || kind == CategoryKind::RepN; }
  /// "finset", "vect", "ab", "finab" or "repn"
  std::string name() const;
  /// Parses a category name; `field` is used for vect and repn.
  static CategoryId parse(std::string_view name, Field field = Field());

  friend bool operator==(const CategoryId&, const CategoryId&) = default;
};

/// Descriptor of an indecomposable (A-group basis) or a simple object
/// (B-group basis).
struct BasisKey {
  enum class Kind { Point, Line, Free, Cyclic, Jordan };

  Kind kind = Kind::Point;
  Integer prime = 0;      // Cyclic
  unsigned exponent = 0;  // Cyclic: the group is Z/prime^exponent
  Rational eigenvalue = 0;  // Jordan
  std::size_t size = 0;   // Jordan block size

  static BasisKey point() { return of_kind(Kind::Point); }
  static BasisKey line() { return of_kind(Kind::Line); }
  static BasisKey free() { return of_kind(Kind::Free); }
  static BasisKey cyclic(Integer p, unsigned m);
  static BasisKey jordan(Rational lambda, std::size_t m);

  /// "pt", "k", "Z", "Z/8", "J(1/2,3)"
  std::string to_string() const;
  static BasisKey parse(std::string_view text);

  friend bool operator==(const BasisKey& a, const BasisKey& b);
  friend bool operator<(const BasisKey& a, const BasisKey& b);

 private:
  static BasisKey of_kind(Kind kind) {
    BasisKey k;
    k.kind = kind;
    return k;
  }
};

/// Isomorphism class as a multiset of indecomposables.
struct IsoClass {
  CategoryId category;
  std::map<BasisKey, std::size_t> parts;

  bool is_identity() const noexcept { return parts.empty(); }
  std::size_t multiplicity(const BasisKey& key) const;
  /// Class of the monoidal sum.
  IsoClass operator+(const IsoClass& other) const;
  std::string to_string() const;

  friend bool operator==(const IsoClass&, const IsoClass&) = default;
};

class Object {
 public:
  Object() = default;

  static Object finite_set(std::size_t n);
  static Object vector_space(Field field, std::size_t dim);
  /// Invariant factors must each be >= 2 and form a divisibility chain.
  static Object abelian_group(std::size_t free_rank, std::vector<Integer> torsion);
  static Object finite_abelian_group(std::vector<Integer> torsion);
  static Object representation(FieldMatrix endomorphism);
  /// Monoidal unit: empty set, zero space, trivial group, 0x0 matrix.
  static Object identity_object(const CategoryId& category);

  const CategoryId& category() const noexcept { return category_; }
  /// Elements (FinSet), dimension (Vect, RepN) or generator count (Ab, FinAb).
  std::size_t size() const noexcept;
  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Integer>& torsion() const noexcept { return torsion_; }
  const FieldMatrix& endomorphism() const noexcept { return endomorphism_; }
  /// Order of each generator (0 for free), Ab and FinAb only.
  std::vector<Integer> generator_orders() const;
  /// Relations of an Ab/FinAb object as columns of an integer matrix.
  IntMatrix relations() const;

  bool is_identity_object() const noexcept { return size() == 0; }
  std::string to_string() const;

  friend bool operator==(const Object& a, const Object& b);

 private:
  CategoryId category_;
  std::size_t count_ = 0;  // FinSet / Vect
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
  FieldMatrix endomorphism_;
};

class Morphism {
 public:
  Morphism() = default;

  static Morphism identity(const Object& object);
  /// The map sending everything to the identity element (for FinSet only
  /// defined out of the empty set).
  static Morphism zero(const Object& source, const Object& target);
  static Morphism set_map(const Object& source, const Object& target, std::vector<std::size_t> table);
  /// Vect: any matrix; RepN: must intertwine the endomorphisms.
  static Morphism linear(const Object& source, const Object& target, FieldMatrix matrix);
  /// Ab / FinAb: must send relations into relations. Rows are reduced.
  static Morphism homomorphism(const Object& source, const Object& target, IntMatrix matrix);

  const Object& source() const noexcept { return source_; }
  const Object& target() const noexcept { return target_; }
  const CategoryId& category() const noexcept { return source_.category(); }
  const std::vector<std::size_t>& table() const noexcept { return table_; }
  const IntMatrix& integer_matrix() const noexcept { return integer_matrix_; }
  const FieldMatrix& matrix() const noexcept { return matrix_; }

  std::string to_string() const;

  friend bool operator==(const Morphism&, const Morphism&);

 private:
  Object source_;
  Object target_;
  std::vector<std::size_t> table_;
  IntMatrix integer_matrix_;
  FieldMatrix matrix_;
};

Morphism compose(const Morphism& g, const Morphism& f);
IsoClass iso_class(const Object& object);
IsoClass image_iso_class(const Morphism& f);
bool is_isomorphism(const Morphism& f);

/// Monoidal sum (disjoint union / direct sum) in canonical form.
Object direct_sum(const Object& a, const Object& b);
/// f □ g between the canonical sums of sources and targets.
Morphism direct_sum(const Morphism& f, const Morphism& g);

/// A concrete subobject of an object in an abelian backend: a lattice
/// containing the relations (Ab, FinAb) or a subspace (Vect, RepN).
struct Subobject {
  Object ambient;
  IntMatrix lattice;      // columns generate; ambient relations included
  FieldMatrix subspace;   // columns span
};

Subobject whole_subobject(const Object& object);
Subobject image_subobject(const Morphism& f);
Subobject kernel_subobject(const Morphism& f);
Subobject intersect(const Subobject& a, const Subobject& b);
/// Class of whole/part. Throws ContainmentError if part ⊄ whole.
IsoClass subquotient_class(const Subobject& whole, const Subobject& part);

}  // namespace gpd
