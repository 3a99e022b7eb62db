#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gpd/categories.hpp"
#include "gpd/module.hpp"

namespace gpd {

struct Simplex {
  std::vector<std::size_t> vertices;  // strictly increasing
  Rational value;

  std::size_t dimension() const noexcept { return vertices.size() - 1; }
};

/// Simplices sorted by (dimension, vertices), closed under faces, with face
/// values never above coface values.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  /// Validates and sorts. Throws FaceMissingError / ValueInversionError /
  /// ValidationError (the line numbers are those of `lines`, if given).
  explicit FilteredComplex(std::vector<Simplex> simplices, const std::vector<std::size_t>& lines = {});

  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
  std::size_t size() const noexcept { return simplices_.size(); }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  /// -1 for the empty complex.
  int dimension() const noexcept;
  /// Index of a simplex with these (sorted) vertices, or size() if absent.
  std::size_t find(const std::vector<std::size_t>& vertices) const;
  /// Indices of the codimension-1 faces, in the order of the removed vertex.
  const std::vector<std::size_t>& faces(std::size_t index) const { return faces_[index]; }
  /// Distinct filtration values, ascending.
  std::vector<Rational> critical_values() const;
  std::vector<Rational> values() const;
  /// Same simplices, new values (validated).
  FilteredComplex with_values(const std::vector<Rational>& values) const;

  std::string to_text() const;

 private:
  std::vector<Simplex> simplices_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
  std::vector<std::vector<std::size_t>> faces_;
  std::size_t vertex_count_ = 0;
};

/// `v0 v1 ... vk : value` per line; `#` starts a comment.
FilteredComplex parse_filtration(std::string_view text);

/// Homology coefficients: Z, Z/m (m >= 2), Q or F_p.
struct Coefficients {
  enum class Kind { Integers, Modular, Field };
  Kind kind = Kind::Integers;
  Integer modulus = 0;  // Modular
  Field field;          // Field

  static Coefficients integers() { return {}; }
  static Coefficients modular(Integer m);
  static Coefficients over(Field f) { return {Kind::Field, 0, f}; }
  /// "Z", "Q", "Fp:<p>", "Zm:<m>"
  static Coefficients parse(std::string_view text);
  std::string to_string() const;
  /// ab for Z, finab for Z/m, vect for a field.
  CategoryId category() const;
};

/// Subcomplex as a membership mask over the simplices of a complex.
using Mask = std::vector<bool>;

/// Computes and caches H_k of subcomplexes of one complex, together with
/// inclusion-induced maps. With `components` set, it computes the set of
/// connected components instead (FinSet, degree ignored).
class HomologyEngine {
 public:
  HomologyEngine(const FilteredComplex& complex, std::size_t degree, Coefficients coefficients);
  static HomologyEngine components(const FilteredComplex& complex);

  const CategoryId& category() const noexcept { return category_; }
  const FilteredComplex& complex() const noexcept { return complex_; }

  /// Simplices whose value under `values` is <= r.
  Mask sublevel(const std::vector<Rational>& values, const Rational& r) const;
  const Object& homology(const Mask& mask);
  /// Map induced by the inclusion a ⊆ b.
  Morphism induced(const Mask& a, const Mask& b);

  /// Sublevel module of the filtration `values` (one per simplex).
  ConstructibleModule module(const std::vector<Rational>& values);
  ConstructibleModule module() { return module(complex_.values()); }

  std::size_t cache_size() const noexcept { return cache_.size(); }

 private:
  struct Stage;
  HomologyEngine(const FilteredComplex& complex, std::size_t degree, Coefficients coefficients, bool components);
  const Stage& stage(const Mask& mask);
  Stage compute(const Mask& mask) const;

  FilteredComplex complex_;
  std::size_t degree_;
  Coefficients coefficients_;
  bool components_;
  CategoryId category_;
  std::map<Mask, std::shared_ptr<const Stage>> cache_;
};

ConstructibleModule persistent_module(const FilteredComplex& complex, std::size_t degree, Coefficients coefficients);
/// Connected components of the sublevel sets, in FinSet.
ConstructibleModule component_module(const FilteredComplex& complex);

/// Moves every value by a seeded offset in [-eps, eps] (multiples of
/// eps/512), then raises values so each simplex is at least as high as its
/// faces. The result stays within eps of the input.
FilteredComplex perturb(const FilteredComplex& complex, const Rational& eps, std::uint64_t seed);

/// Inclusion-induced eps-interleaving between the sublevel modules of two
/// filtrations of the same complex with |f - g| <= eps.
InterleavingPair inclusion_interleaving(HomologyEngine& engine, const std::vector<Rational>& f,
                                        const std::vector<Rational>& g, const Rational& eps,
                                        const ConstructibleModule& module_f, const ConstructibleModule& module_g);

}  // namespace gpd
