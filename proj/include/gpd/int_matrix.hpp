#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "gpd/rational.hpp"

namespace gpd {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Integer>& entries, std::size_t rows, std::size_t cols);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(const std::vector<std::vector<Integer>>& columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> column(std::size_t c) const;
  void set_column(std::size_t c, const std::vector<Integer>& values);
  std::vector<Integer> apply(const std::vector<Integer>& x) const;

  IntMatrix transpose() const;
  IntMatrix columns(std::size_t first, std::size_t count) const;
  /// [this | other]
  IntMatrix hconcat(const IntMatrix& other) const;
  /// [this ; other]
  IntMatrix vconcat(const IntMatrix& other) const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

Integer determinant(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);

/// Smith normal form: left * input * right == diagonal with the nonzero
/// diagonal entries d_1 | d_2 | ... | d_r positive and leading.
struct SmithForm {
  IntMatrix left;
  IntMatrix diagonal;
  IntMatrix right;
  IntMatrix left_inverse;
  IntMatrix right_inverse;
  std::vector<Integer> invariant_factors;

  std::size_t rank() const noexcept { return invariant_factors.size(); }
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Saturated basis (as columns) of the integer kernel {x : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// A full-rank sublattice of Z^n given by generators, with a coordinate map.
class Lattice {
 public:
  /// Columns of `generators` span the lattice.
  explicit Lattice(const IntMatrix& generators);

  std::size_t ambient_dimension() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return basis_.cols(); }
  /// Columns form a basis.
  const IntMatrix& basis() const noexcept { return basis_; }

  bool contains(const std::vector<Integer>& x) const;
  /// Coordinates of x in basis(); throws ValidationError if x is not in the lattice.
  std::vector<Integer> coordinates(const std::vector<Integer>& x) const;

 private:
  bool try_coordinates(const std::vector<Integer>& x, std::vector<Integer>* out) const;

  std::size_t ambient_ = 0;
  IntMatrix left_;                       // from the Smith form of the generators
  std::vector<Integer> factors_;         // invariant factors of the generators
  IntMatrix basis_;
};

/// The finitely generated group L / B for lattices B ⊆ L ⊆ Z^n, with an
/// explicit presentation: torsion generators first (invariant factors in
/// divisibility order), then free generators.
class LatticeQuotient {
 public:
  /// Throws ContainmentError naming the first column of `sub` outside `whole`.
  LatticeQuotient(const IntMatrix& whole, const IntMatrix& sub);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Integer>& torsion() const noexcept { return torsion_; }
  std::size_t generator_count() const noexcept { return torsion_.size() + free_rank_; }

  /// Ambient vectors representing the quotient generators, as columns.
  const IntMatrix& generators() const noexcept { return generators_; }
  /// Canonical coordinates of x ∈ L: torsion entries reduced into [0, d_i).
  std::vector<Integer> coordinates(const std::vector<Integer>& x) const;

 private:
  Lattice whole_;
  IntMatrix left_;              // Smith left transform of the sub-lattice coordinates
  std::vector<std::size_t> kept_;  // rows of left_ that survive (factor != 1)
  std::vector<Integer> moduli_;    // modulus for each kept row (0 = free)
  std::vector<Integer> torsion_;
  std::size_t free_rank_ = 0;
  IntMatrix generators_;
};

struct QuotientInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  friend bool operator==(const QuotientInvariants&, const QuotientInvariants&) = default;
};

/// Isomorphism type of L / B where L and B are the column lattices of the
/// arguments. Throws ContainmentError if B ⊄ L.
QuotientInvariants quotient_invariants(const IntMatrix& whole_generators, const IntMatrix& sub_generators);

/// Floor-style remainder in [0, |m|).
Integer mod_nonnegative(const Integer& a, const Integer& m);

}  // namespace gpd
